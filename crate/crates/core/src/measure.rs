//! Angular momentum of a strategy-frequency series in each 2-D subspace,
//! and its aggregation across sessions.
//!
//! For the pair `(m, n)` every transition contributes the cross product
//! `(x(t) - O) x (x(t+1) - x(t))` of the projected position and step.
//! Counter-clockwise motion in the `(x_m, x_n)` plane is positive.

use crate::error::{Error, Result};
use crate::game::SimplexPoint;
use crate::subspace::{SubspaceVector, N_STRATEGIES, N_SUBSPACES, SUBSPACE_PAIRS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Aggregate {
    /// Accumulated over all transitions (the scale of the bundled session data).
    #[default]
    Sum,
    /// Divided by the number of transitions.
    Mean,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentumResult {
    pub accumulated: SubspaceVector,
    /// `accumulated / (len - 1)`.
    pub mean: SubspaceVector,
    /// Euclidean norm of `accumulated`.
    pub norm_ampl: f64,
    /// Number of points in the series.
    pub len: usize,
}

impl MomentumResult {
    pub fn vector(&self, aggregate: Aggregate) -> SubspaceVector {
        match aggregate {
            Aggregate::Sum => self.accumulated,
            Aggregate::Mean => self.mean,
        }
    }
}

/// Accumulated cross product in the plane of strategies `m`, `n` (1-based).
/// `m > n` is allowed and yields the negated orientation.
pub fn pair_momentum(points: &[[f64; N_STRATEGIES]], m: usize, n: usize, origin: &[f64; N_STRATEGIES]) -> f64 {
    let (i, j) = (m - 1, n - 1);
    points
        .windows(2)
        .map(|w| {
            let (px, py) = (w[0][i] - origin[i], w[0][j] - origin[j]);
            let (dx, dy) = (w[1][i] - w[0][i], w[1][j] - w[0][j]);
            px * dy - py * dx
        })
        .sum()
}

/// Angular momentum of raw 5-vectors; points need not lie on the simplex.
pub fn angular_momentum_points(points: &[[f64; N_STRATEGIES]], origin: &[f64; N_STRATEGIES]) -> Result<MomentumResult> {
    if points.len() < 2 {
        return Err(Error::SeriesTooShort(points.len()));
    }
    let mut acc = [0.0; N_SUBSPACES];
    for (a, &(m, n)) in acc.iter_mut().zip(SUBSPACE_PAIRS.iter()) {
        *a = pair_momentum(points, m, n, origin);
    }
    let accumulated = SubspaceVector(acc);
    let transitions = (points.len() - 1) as f64;
    Ok(MomentumResult {
        accumulated,
        mean: accumulated.scaled(1.0 / transitions),
        norm_ampl: accumulated.norm(),
        len: points.len(),
    })
}

/// Angular momentum of a simplex series about `origin` (default: the equilibrium).
pub fn angular_momentum(series: &[SimplexPoint], origin: Option<&SimplexPoint>) -> Result<MomentumResult> {
    let points: Vec<[f64; N_STRATEGIES]> = series.iter().map(|p| p.into_array()).collect();
    let o = origin.copied().unwrap_or_else(SimplexPoint::equilibrium);
    angular_momentum_points(&points, o.as_array())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TreatmentAggregate {
    pub mean: SubspaceVector,
    pub unit: SubspaceVector,
    pub norm_ampl: f64,
}

/// Componentwise mean over sessions, its norm and direction.
pub fn treatment_aggregate(sessions: &[SubspaceVector]) -> Result<TreatmentAggregate> {
    let mean = SubspaceVector::mean_of(sessions).ok_or_else(|| Error::InsufficientData("no session vectors".into()))?;
    let unit = mean.normalized().ok_or(Error::DegenerateAggregate)?;
    Ok(TreatmentAggregate {
        mean,
        unit,
        norm_ampl: mean.norm(),
    })
}
