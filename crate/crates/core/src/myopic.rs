//! Myopic-response prediction of which eigenmode a population selects.
//!
//! A pair `(m, n)` cycles with strength `f(-A_mn)`, where `f` collapses a
//! payoff entry to a qualitative band. The thresholds sit at payoff scale;
//! applied to `J = A / 5` the `+-1` bands would be unreachable.

use crate::eigen::{sigma_alpha, sigma_beta, CycleScale};
use crate::game::{build_payoff_matrix, GameSpec};
use crate::stats::pearson;
use crate::subspace::{SubspaceVector, N_SUBSPACES, SUBSPACE_PAIRS};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MyopicPrediction {
    pub strengths: SubspaceVector,
    pub rho_alpha: f64,
    pub rho_beta: f64,
}

/// Step function: `+-2` beyond `+-1`, `+-1/2` inside, `+-1` on the boundary, `0` at `0`.
pub fn step_strength(v: f64) -> f64 {
    let mag = match v.abs() {
        m if m > 1.0 => 2.0,
        1.0 => 1.0,
        m if m > 0.0 => 0.5,
        _ => 0.0,
    };
    mag * v.signum()
}

pub fn response_strengths(spec: &GameSpec) -> SubspaceVector {
    let a = build_payoff_matrix(spec);
    let mut out = [0.0; N_SUBSPACES];
    for (o, &(m, n)) in out.iter_mut().zip(SUBSPACE_PAIRS.iter()) {
        *o = step_strength(-a[m - 1][n - 1]);
    }
    SubspaceVector(out)
}

/// Pearson projection of the strengths onto both eigencycle sets. Strengths
/// never have zero variance because the `13`/`14` entries are always `-1`/`+1`.
pub fn theory_projection(spec: &GameSpec) -> MyopicPrediction {
    let strengths = response_strengths(spec);
    let corr = |sigma: SubspaceVector| {
        pearson(strengths.values(), sigma.values())
            .map(|(r, _)| r)
            .expect("strengths and eigencycles have nonzero variance")
    };
    MyopicPrediction {
        strengths,
        rho_alpha: corr(sigma_alpha(CycleScale::Unit)),
        rho_beta: corr(sigma_beta(CycleScale::Unit)),
    }
}
