use eigenmode::eigen::ModeLabel;
use eigenmode::measure::Aggregate;
use eigenmode::reproduce::dominance_panel;
use eigenmode::sim::{simulate_session, simulate_treatment, AgentPolicy, PayoffMode, PolicyKind};
use eigenmode::GameSpec;

#[test]
fn full_inertia_freezes_the_opening_round() {
    let policy = AgentPolicy {
        inertia: 1.0,
        ..AgentPolicy::default()
    };
    let s = simulate_session(&GameSpec::new(1.618), &policy, 200, 11).unwrap();
    let first = s.points[0];
    assert!(s.points.iter().all(|p| *p == first));
}

#[test]
fn uniform_choice_matches_multinomial_moments() {
    let n = 6;
    let rounds = 20_000;
    let s = simulate_session(&GameSpec::new(4.236), &AgentPolicy::uniform(n), rounds, 7).unwrap();
    let (mean, std) = s.frequency_moments();
    // Each frequency is Binomial(6, 1/5) / 6.
    let std_expected = (0.2_f64 * 0.8 / n as f64).sqrt();
    let se = std_expected / (rounds as f64).sqrt();
    for i in 0..5 {
        assert!(
            (mean[i] - 0.2).abs() < 0.02 && (mean[i] - 0.2).abs() < 4.0 * se,
            "mean[{i}] = {}",
            mean[i]
        );
        assert!((std[i] - std_expected).abs() < 0.02, "std[{i}] = {}", std[i]);
    }
}

#[test]
fn sessions_are_deterministic_per_seed() {
    let spec = GameSpec::new(-0.618);
    let policy = AgentPolicy::default();
    let a = simulate_session(&spec, &policy, 300, 42).unwrap();
    let b = simulate_session(&spec, &policy, 300, 42).unwrap();
    assert_eq!(a, b);
    let c = simulate_session(&spec, &policy, 300, 43).unwrap();
    assert_ne!(a.points, c.points);
}

#[test]
fn parallel_treatment_is_reproducible_and_sessions_differ() {
    let spec = GameSpec::new(0.236);
    let policy = AgentPolicy::default();
    let a = simulate_treatment(&spec, &policy, 6, 150, 5).unwrap();
    let b = simulate_treatment(&spec, &policy, 6, 150, 5).unwrap();
    assert_eq!(a, b);
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            assert_ne!(a[i].points, a[j].points, "sessions {i} and {j} coincide");
        }
    }
}

#[test]
fn counts_track_frequencies() {
    let s = simulate_session(&GameSpec::new(1.618), &AgentPolicy::default(), 100, 3).unwrap();
    let counts = s.counts.as_ref().unwrap();
    for (c, p) in counts.iter().zip(&s.points) {
        assert_eq!(c.iter().sum::<u32>(), 6);
        for (x, n) in p.as_array().iter().zip(c) {
            assert_eq!(*x, *n as f64 / 6.0);
        }
    }
    assert_eq!(s.meta.agent_payoffs.len(), 6);
}

#[test]
fn payoff_modes_agree_on_choices() {
    // Banked payoff does not feed back into choices, so the draws that
    // matter for frequencies are consumed identically.
    let spec = GameSpec::new(4.236);
    let single = AgentPolicy::default();
    let all = AgentPolicy {
        payoff_mode: PayoffMode::AllOthers,
        ..single
    };
    let a = simulate_session(&spec, &single, 200, 9).unwrap();
    let b = simulate_session(&spec, &all, 200, 9).unwrap();
    assert_eq!(a.points, b.points);
    assert_ne!(a.meta.agent_payoffs, b.meta.agent_payoffs);
}

#[test]
fn invalid_policies_are_rejected() {
    let spec = GameSpec::new(1.0);
    let bad = [
        AgentPolicy {
            beta: -1.0,
            ..AgentPolicy::default()
        },
        AgentPolicy {
            inertia: 1.5,
            ..AgentPolicy::default()
        },
        AgentPolicy {
            population_size: 5,
            ..AgentPolicy::default()
        },
    ];
    for p in bad {
        assert!(simulate_session(&spec, &p, 10, 0).is_err(), "{p:?}");
    }
    assert!(simulate_session(&spec, &AgentPolicy::default(), 0, 0).is_err());
    assert!(simulate_treatment(&spec, &AgentPolicy::default(), 0, 10, 0).is_err());
}

#[test]
fn simulated_sessions_select_the_faster_mode() {
    let policy = AgentPolicy::default();
    for (a, mode) in [(4.236, ModeLabel::Alpha), (-0.618, ModeLabel::Beta)] {
        let spec = GameSpec::new(a);
        let sessions = simulate_treatment(&spec, &policy, 10, 600, 2024).unwrap();
        let row = dominance_panel(&spec, &sessions, Aggregate::Sum).unwrap();
        assert_eq!(row.expected, Some(mode));
        let hits = match mode {
            ModeLabel::Alpha => row.alpha_dominant,
            _ => row.beta_dominant,
        };
        assert!(hits >= 8, "a={a}: {hits}/10 sessions {mode:?}-dominant");
    }
}

#[test]
fn noisy_best_response_also_selects_alpha_at_large_a() {
    let policy = AgentPolicy {
        kind: PolicyKind::NoisyBestResponse,
        beta: 2.0,
        ..AgentPolicy::default()
    };
    let spec = GameSpec::new(4.236);
    let sessions = simulate_treatment(&spec, &policy, 10, 600, 77).unwrap();
    let row = dominance_panel(&spec, &sessions, Aggregate::Sum).unwrap();
    assert!(row.alpha_dominant >= 8, "{row:?}");
}
