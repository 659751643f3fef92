//! Reference values from the published session tables, computed through the
//! public API on the bundled session data.

use eigenmode::decompose::{mlr_decompose, session_statistics, subspace_invariance, theory_experiment_correlation};
use eigenmode::eigen::{sigma_alpha, sigma_beta, CycleScale};
use eigenmode::fixtures::{sessions, treatment_sessions};
use eigenmode::io::Treatment;
use eigenmode::measure::treatment_aggregate;
use eigenmode::stats::pearson;
use eigenmode::subspace::pair_index;
use eigenmode::SubspaceVector;

fn treatment(t: Treatment) -> Vec<SubspaceVector> {
    treatment_sessions(&sessions().unwrap(), t)
}

fn close(actual: f64, expected: f64, tol: f64) -> bool {
    (actual - expected).abs() <= tol
}

#[test]
fn first_session_of_treatment_one() {
    let fit = mlr_decompose(&treatment(Treatment::Tr1)[0], CycleScale::Pi);
    assert!(close(fit.k_alpha, -0.591, 5e-3), "{}", fit.k_alpha);
    assert!(close(fit.k_beta, 0.575, 5e-3), "{}", fit.k_beta);
    assert!(fit.p < 1e-3);
}

#[test]
fn unit_scale_coefficients_are_pi_scale_times_two_and_a_half_pi() {
    let l = treatment(Treatment::Tr1)[0];
    let pi = mlr_decompose(&l, CycleScale::Pi);
    let unit = mlr_decompose(&l, CycleScale::Unit);
    let f = 2.5 * std::f64::consts::PI;
    assert!(close(unit.k_alpha, pi.k_alpha * f, 1e-9));
    // Only the pi scale reproduces the published per-session coefficients.
    assert!(!close(unit.k_alpha, -0.591, 5e-3));
}

#[test]
fn treatment_five_mean_fit() {
    let agg = treatment_aggregate(&treatment(Treatment::Tr5)).unwrap();
    assert!(close(agg.norm_ampl, 11.5525, 1e-3), "{}", agg.norm_ampl);
    let fit = mlr_decompose(&agg.mean, CycleScale::Pi);
    assert!(close(fit.k_alpha, 1.4666, 1e-2), "{}", fit.k_alpha);
    assert!(close(fit.k_beta, -0.0943, 1e-2), "{}", fit.k_beta);
    assert!(close(fit.r_squared, 0.9979, 1e-2), "{}", fit.r_squared);
}

#[test]
fn treatment_one_aggregate() {
    let agg = treatment_aggregate(&treatment(Treatment::Tr1)).unwrap();
    assert!(close(agg.norm_ampl, 8.6771, 1e-3));
    assert!(close(agg.unit[pair_index(1, 2).unwrap()], 0.3478, 2e-3));
}

#[test]
fn session_means_and_t_tests() {
    let fits = |t| -> Vec<_> { treatment(t).iter().map(|l| mlr_decompose(l, CycleScale::Pi)).collect() };

    let tr1 = session_statistics(&fits(Treatment::Tr1)).unwrap();
    assert!(close(tr1.mean_k_alpha, -0.597, 1e-2));
    assert!(close(tr1.mean_k_beta, 0.923, 1e-2));
    assert!(tr1.test_k_beta.p_value < 1e-3);
    assert!(
        close(tr1.test_abs_equal.p_value, 0.090, 3e-2),
        "{}",
        tr1.test_abs_equal.p_value
    );

    let tr2 = session_statistics(&fits(Treatment::Tr2)).unwrap();
    assert!(
        close(tr2.test_k_beta.p_value, 0.005, 3e-3),
        "{}",
        tr2.test_k_beta.p_value
    );

    let tr3 = session_statistics(&fits(Treatment::Tr3)).unwrap();
    assert!(
        close(tr3.test_abs_equal.p_value, 0.386, 5e-2),
        "{}",
        tr3.test_abs_equal.p_value
    );

    let tr4 = session_statistics(&fits(Treatment::Tr4)).unwrap();
    assert!(close(tr4.mean_k_alpha, 0.707, 1e-2));
    assert!(tr4.test_k_alpha.p_value < 1e-3);
    assert!(
        close(tr4.test_k_beta.p_value, 0.155, 3e-2),
        "{}",
        tr4.test_k_beta.p_value
    );
}

#[test]
fn pooled_cross_subspace_correlations() {
    let pooled: Vec<SubspaceVector> = Treatment::ALL.into_iter().flat_map(treatment).collect();
    let inv = subspace_invariance(&pooled).unwrap();
    let rho = |a: (usize, usize), b: (usize, usize)| {
        inv.rho_matrix[pair_index(a.0, a.1).unwrap()][pair_index(b.0, b.1).unwrap()]
    };
    assert!(close(rho((1, 2), (2, 3)), 0.938, 2e-3));
    assert!(close(rho((1, 5), (4, 5)), -0.926, 2e-3));
    assert!(inv.violations.is_empty());
    assert!(inv.wilcoxon.p_value < 1e-6);
}

#[test]
fn eigencycles_are_nearly_uncorrelated() {
    let (rho, _) = pearson(
        sigma_alpha(CycleScale::Pi).values(),
        sigma_beta(CycleScale::Pi).values(),
    )
    .unwrap();
    assert!(close(rho, 0.0500, 1e-3), "{rho}");
    let c = theory_experiment_correlation(&sigma_alpha(CycleScale::Pi)).unwrap();
    assert!(close(c.rho_alpha, 1.0, 1e-12));
    assert!(close(c.rho_beta, 0.0500, 1e-3));
}

// The same treatment means reproduce the unit-vector correlation panel to
// three places (0.863 and 0.996); the summary panel quoting 0.840 and 0.999
// is not reachable from these sessions and is tracked by the acceptance run.
#[test]
fn treatment_means_against_eigencycles() {
    let tr2 = treatment_aggregate(&treatment(Treatment::Tr2)).unwrap();
    let c = theory_experiment_correlation(&tr2.mean).unwrap();
    assert!(close(c.rho_beta, 0.863, 2e-3), "{}", c.rho_beta);
    assert!(c.p_beta < 5e-3);

    let tr5 = treatment_aggregate(&treatment(Treatment::Tr5)).unwrap();
    let c = theory_experiment_correlation(&tr5.mean).unwrap();
    assert!(close(c.rho_alpha, 0.996, 2e-3), "{}", c.rho_alpha);
    assert!(c.p_alpha < 1e-4);
}

#[test]
fn forcing_the_unit_scale_breaks_coefficients_but_not_correlations() {
    use eigenmode::reproduce::{reproduce_fixtures, ReproduceOptions};
    let pi = reproduce_fixtures(ReproduceOptions { scale: CycleScale::Pi }).unwrap();
    let unit = reproduce_fixtures(ReproduceOptions {
        scale: CycleScale::Unit,
    })
    .unwrap();
    let passed = |r: &eigenmode::reproduce::Report, g: &str| r.group_comparisons(g).filter(|c| c.passed).count();
    assert!(passed(&pi, "session_k") >= 90);
    assert!(passed(&unit, "session_k") < 10);
    for g in ["pooled_correlations", "sign_prediction", "treatment_unit_vectors"] {
        assert_eq!(passed(&unit, g), passed(&pi, g), "{g}");
    }
    // R^2 and the F-test p are scale invariant.
    let cells = |r: &eigenmode::reproduce::Report| -> Vec<(String, f64)> {
        r.group_comparisons("treatment_fits")
            .filter(|c| c.cell.ends_with("R^2") || c.cell.ends_with(" p"))
            .map(|c| (c.cell.clone(), c.actual))
            .collect()
    };
    for ((name, a), (_, b)) in cells(&pi).into_iter().zip(cells(&unit)) {
        assert!((a - b).abs() < 1e-9, "{name}");
    }
}
