//! Acceptance run: one PASS/FAIL line per criterion on stdout, failing cells
//! on stderr. Exits successfully either way so the workspace test run stays
//! usable while a known-unreachable criterion is red.

#![allow(clippy::needless_range_loop)]

use std::f64::consts::PI;

use eigenmode::eigen::{
    eigenvalues_closed_form, eigenvectors, linear_solution, sigma_alpha, sigma_beta, CycleScale, ModeLabel,
};
use eigenmode::game::jacobian_at_equilibrium;
use eigenmode::io::Treatment;
use eigenmode::measure::{angular_momentum_points, Aggregate};
use eigenmode::reproduce::{dominance_panel, reproduce_fixtures, ReproduceOptions};
use eigenmode::sim::{integrate_replicator, simulate_session, simulate_treatment, AgentPolicy};
use eigenmode::stats::{ols, t_test_one_sample, wilcoxon_exact_p, wilcoxon_normal_p};
use eigenmode::{GameSpec, SimplexPoint, SubspaceVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            passed: true,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.passed = false;
            self.notes.push(what.into());
        }
    }
}

/// `det(M)` by partial-pivot elimination.
fn det(mut m: [[Complex64; 5]; 5]) -> Complex64 {
    let mut d = Complex64::new(1.0, 0.0);
    for k in 0..5 {
        let p = (k..5)
            .max_by(|&a, &b| m[a][k].norm().total_cmp(&m[b][k].norm()))
            .unwrap();
        if m[p][k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != k {
            m.swap(p, k);
            d = -d;
        }
        d *= m[k][k];
        for r in k + 1..5 {
            let f = m[r][k] / m[k][k];
            for c in k..5 {
                let v = m[k][c];
                m[r][c] -= f * v;
            }
        }
    }
    d
}

fn mat_pow_trace(j: &[[f64; 5]; 5], power: u32) -> f64 {
    let mut acc = *j;
    for _ in 1..power {
        let mut next = [[0.0; 5]; 5];
        for r in 0..5 {
            for c in 0..5 {
                next[r][c] = (0..5).map(|k| acc[r][k] * j[k][c]).sum();
            }
        }
        acc = next;
    }
    (0..5).map(|i| acc[i][i]).sum()
}

/// Closed-form spectrum checked without the library's DFT: each value
/// annihilates `det(J - lambda I)` and the power sums match `tr(J^k)`.
fn independent_spectrum_check(out: &mut Outcome) {
    for t in Treatment::ALL {
        let spec = t.spec();
        let j = *jacobian_at_equilibrium(&spec).entries();
        let lambdas = eigenvalues_closed_form(&spec);
        for l in lambdas {
            let m: [[Complex64; 5]; 5] = std::array::from_fn(|r| {
                std::array::from_fn(|c| {
                    Complex64::new(j[r][c], 0.0) - if r == c { l } else { Complex64::new(0.0, 0.0) }
                })
            });
            let d = det(m).norm();
            out.check(d < 1e-10, format!("{t}: |det(J - {l})| = {d:e}"));
        }
        for k in 1..=5 {
            let sum: Complex64 = lambdas.iter().map(|l| l.powu(k)).sum();
            let tr = mat_pow_trace(&j, k);
            out.check(
                (sum - tr).norm() < 1e-10,
                format!("{t}: power sum {k} differs from trace by {:e}", (sum - tr).norm()),
            );
        }
    }
}

fn mode_deviation(label: ModeLabel, eps: f64, phase: f64) -> [f64; 5] {
    let modes = eigenvectors(&GameSpec::new(0.0));
    let mode = modes.iter().find(|m| m.label == label).unwrap();
    mode.eigenvector.map(|e| (Complex64::from_polar(eps, phase) * e).re)
}

fn linear_momentum(spec: &GameSpec, x0: &[f64; 5], steps: usize, h: f64) -> SubspaceVector {
    let sol = linear_solution(spec, x0).unwrap();
    let pts: Vec<[f64; 5]> = (0..=steps).map(|k| sol.evaluate(k as f64 * h)).collect();
    angular_momentum_points(&pts, &[0.0; 5]).unwrap().accumulated
}

fn t_density(x: f64, df: f64) -> f64 {
    let ln_c = ln_gamma_stirling((df + 1.0) / 2.0) - ln_gamma_stirling(df / 2.0) - 0.5 * (df * PI).ln();
    (ln_c - (df + 1.0) / 2.0 * (1.0 + x * x / df).ln()).exp()
}

/// Stirling series after shifting the argument above 10.
fn ln_gamma_stirling(mut x: f64) -> f64 {
    let mut shift = 0.0;
    while x < 10.0 {
        shift -= x.ln();
        x += 1.0;
    }
    shift + (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * x) - 1.0 / (360.0 * x.powi(3))
        + 1.0 / (1260.0 * x.powi(5))
}

/// Two-sided tail by Simpson's rule over `[|t|, 200]`.
fn t_tail_quadrature(t: f64, df: f64) -> f64 {
    let (a, b, n) = (t.abs(), 200.0, 200_000);
    let h = (b - a) / n as f64;
    let mut s = t_density(a, df) + t_density(b, df);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * t_density(a + i as f64 * h, df);
    }
    2.0 * s * h / 3.0
}

/// Exact signed-rank p by enumerating every sign assignment (distinct magnitudes).
fn wilcoxon_enumerated(xs: &[f64]) -> f64 {
    let n = xs.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| xs[a].abs().total_cmp(&xs[b].abs()));
    let mut rank = vec![0.0; n];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = (r + 1) as f64;
    }
    let w_plus: f64 = (0..n).filter(|&i| xs[i] > 0.0).map(|i| rank[i]).sum();
    let total = (n * (n + 1)) as f64 / 2.0;
    let observed = w_plus.min(total - w_plus);
    let mut extreme = 0u64;
    for mask in 0u64..(1 << n) {
        let w: f64 = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| rank[i]).sum();
        if w.min(total - w) <= observed + 1e-9 {
            extreme += 1;
        }
    }
    extreme as f64 / (1u64 << n) as f64
}

fn property_suite(out: &mut Outcome) {
    // Ratio invariance on single-mode linear trajectories.
    for a in [-4.236, -0.618, 0.236, 1.618, 4.236] {
        let spec = GameSpec::new(a);
        for (label, sigma) in [
            (ModeLabel::Alpha, sigma_alpha(CycleScale::Pi)),
            (ModeLabel::Beta, sigma_beta(CycleScale::Pi)),
        ] {
            let omega = eigenvectors(&spec)
                .iter()
                .find(|m| m.label == label)
                .unwrap()
                .eigenvalue
                .im;
            if omega.abs() < 1e-3 {
                continue;
            }
            let l = linear_momentum(&spec, &mode_deviation(label, 1e-2, 0.7), 400, 0.05);
            let ratios: Vec<f64> = (0..10).map(|k| l[k] / sigma[k]).collect();
            let mean = ratios.iter().sum::<f64>() / 10.0;
            let spread = ratios.iter().map(|r| (r - mean).abs()).fold(0.0, f64::max) / mean.abs();
            out.check(spread < 1e-6, format!("ratio spread a={a} {label:?}: {spread:e}"));
        }
    }

    // Cross-mode interference over random phases.
    let spec = GameSpec::new(4.236);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let restarts = 250;
    let mut cross = Vec::with_capacity(restarts);
    for _ in 0..restarts {
        let xa = mode_deviation(ModeLabel::Alpha, 1e-2, rng.random_range(0.0..2.0 * PI));
        let xb = mode_deviation(ModeLabel::Beta, 1e-2, rng.random_range(0.0..2.0 * PI));
        let both: [f64; 5] = std::array::from_fn(|i| xa[i] + xb[i]);
        let (steps, h) = (300, 0.05);
        cross.push(
            linear_momentum(&spec, &both, steps, h)
                - linear_momentum(&spec, &xa, steps, h)
                - linear_momentum(&spec, &xb, steps, h),
        );
    }
    let n = restarts as f64;
    for k in 0..10 {
        let m = cross.iter().map(|v| v[k]).sum::<f64>() / n;
        let se = (cross.iter().map(|v| (v[k] - m).powi(2)).sum::<f64>() / (n - 1.0) / n).sqrt();
        out.check(
            m.abs() <= 3.0 * se,
            format!("cross-mode mean component {k}: {m:e} vs 3 se {:e}", 3.0 * se),
        );
    }

    // Simplex conservation and radius near equilibrium.
    let dev = [6e-4, -3e-4, 2e-4, -4e-4, -1e-4];
    for a in [-4.236, -0.618, 0.236, 1.618, 4.236] {
        let x0 = SimplexPoint::new(std::array::from_fn(|i| 0.2 + dev[i])).unwrap();
        let s = integrate_replicator(&GameSpec::new(a), &x0, 50.0, 0.01).unwrap();
        out.check(
            s.simplex_drift() < 1e-7 * 50.0,
            format!("a={a}: simplex drift {:e}", s.simplex_drift()),
        );
        let r = |p: &SimplexPoint| p.as_array().iter().map(|x| (x - 0.2).powi(2)).sum::<f64>();
        let r0 = r(&s.points[0]);
        let worst = s.points.iter().map(|p| (r(p) / r0 - 1.0).abs()).fold(0.0, f64::max);
        out.check(worst < 0.01, format!("a={a}: radius change {worst}"));
    }

    // OLS against the normal equations solved by Cramer's rule.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let x1: Vec<f64> = (0..10).map(|_| rng.random_range(-2.0..2.0)).collect();
        let x2: Vec<f64> = (0..10).map(|_| rng.random_range(-2.0..2.0)).collect();
        let y: Vec<f64> = (0..10)
            .map(|i| 0.3 + 1.5 * x1[i] - 0.7 * x2[i] + rng.random_range(-0.1..0.1))
            .collect();
        let cols = [vec![1.0; 10], x1.clone(), x2.clone()];
        let g: [[f64; 3]; 3] =
            std::array::from_fn(|r| std::array::from_fn(|c| (0..10).map(|i| cols[r][i] * cols[c][i]).sum()));
        let rhs: [f64; 3] = std::array::from_fn(|r| (0..10).map(|i| cols[r][i] * y[i]).sum());
        let det3 = |m: &[[f64; 3]; 3]| {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        };
        let d = det3(&g);
        let fit = ols(&y, &[x1, x2], true).unwrap();
        for c in 0..3 {
            let mut mc = g;
            for r in 0..3 {
                mc[r][c] = rhs[r];
            }
            let beta = det3(&mc) / d;
            out.check(
                (fit.coefficients[c] - beta).abs() < 1e-9,
                format!("ols coefficient {c}: {} vs {beta}", fit.coefficients[c]),
            );
        }
    }

    // Student t tail against quadrature.
    let t = t_test_one_sample(&[1.0, 2.0, 3.0, 4.0, 5.0], 0.0).unwrap();
    out.check(
        (t.statistic - 4.2426).abs() < 1e-4,
        format!("t statistic {}", t.statistic),
    );
    out.check((t.p_value - 0.0132).abs() < 1e-4, format!("t p {}", t.p_value));
    let q = t_tail_quadrature(t.statistic, 4.0);
    out.check(
        (t.p_value - q).abs() < 1e-8,
        format!("t p {} vs quadrature {q}", t.p_value),
    );

    // Signed-rank exact p against enumeration and the normal approximation.
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let xs: Vec<f64> = (0..8).map(|_| rng.random_range(-1.0..1.5)).collect();
        let exact = wilcoxon_exact_p(&xs).unwrap();
        let oracle = wilcoxon_enumerated(&xs);
        out.check(
            (exact - oracle).abs() < 1e-12,
            format!("wilcoxon exact {exact} vs enumeration {oracle}"),
        );
        let normal = wilcoxon_normal_p(&xs).unwrap();
        out.check(
            (exact - normal).abs() < 0.05,
            format!("wilcoxon exact {exact} vs normal {normal}"),
        );
    }
}

fn simulator_suite(out: &mut Outcome) {
    let policy = AgentPolicy::default();
    for (a, mode) in [(4.236, ModeLabel::Alpha), (-0.618, ModeLabel::Beta)] {
        let spec = GameSpec::new(a);
        let sessions = simulate_treatment(&spec, &policy, 10, 600, 2024).unwrap();
        let row = dominance_panel(&spec, &sessions, Aggregate::Sum).unwrap();
        let hits = if mode == ModeLabel::Alpha {
            row.alpha_dominant
        } else {
            row.beta_dominant
        };
        out.check(hits >= 8, format!("a={a}: {hits}/10 sessions {mode:?}-dominant"));
    }
    let s = simulate_session(&GameSpec::new(1.618), &AgentPolicy::uniform(6), 20_000, 8).unwrap();
    let (mean, std) = s.frequency_moments();
    for i in 0..5 {
        out.check(
            (mean[i] - 0.2).abs() <= 0.02,
            format!("uniform mean x{}: {}", i + 1, mean[i]),
        );
        out.check(
            (std[i] - 0.1633).abs() <= 0.03,
            format!("uniform std x{}: {}", i + 1, std[i]),
        );
    }
}

fn main() {
    let report = match reproduce_fixtures(ReproduceOptions::default()) {
        Ok(r) => r,
        Err(e) => {
            println!("reproduction could not run: {e}");
            for c in 1..=9 {
                println!("criterion {c}: FAIL");
            }
            return;
        }
    };

    let mut results: Vec<(u8, Outcome)> = Vec::new();
    for c in 1..=7u8 {
        let mut o = Outcome::new();
        o.check(report.criterion_passed(c) == Some(true), "reference comparison failed");
        for f in report.failures().filter(|f| f.criterion == c) {
            o.notes.push(format!(
                "{} [{}]: expected {}, got {:.6}",
                f.cell, f.group, f.expected, f.actual
            ));
        }
        if c == 1 {
            independent_spectrum_check(&mut o);
        }
        results.push((c, o));
    }
    let mut o = Outcome::new();
    property_suite(&mut o);
    results.push((8, o));
    let mut o = Outcome::new();
    simulator_suite(&mut o);
    results.push((9, o));

    for (c, o) in &results {
        println!("criterion {c}: {}", if o.passed { "PASS" } else { "FAIL" });
        for note in &o.notes {
            eprintln!("  criterion {c}: {note}");
        }
    }
    let passed = results.iter().filter(|(_, o)| o.passed).count();
    println!("{passed}/{} criteria passed", results.len());
}
