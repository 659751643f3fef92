//! The one-parameter five-strategy cyclic game and its replicator vector field.

use crate::error::{Error, Result};
use crate::subspace::N_STRATEGIES;

/// Dense 5x5 real matrix, row-major, 0-based.
pub type Matrix5 = [[f64; N_STRATEGIES]; N_STRATEGIES];

/// Tolerance used when validating simplex points.
pub const SIMPLEX_TOL: f64 = 1e-9;

/// The payoff parameter `a`, the single control knob of every treatment.
///
/// `a` must be finite; callers taking user input are expected to check this.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GameSpec {
    pub a: f64,
}

impl GameSpec {
    pub const N_STRATEGIES: usize = N_STRATEGIES;

    pub fn new(a: f64) -> Self {
        Self { a }
    }
}

/// A population state: five nonnegative frequencies summing to one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimplexPoint([f64; N_STRATEGIES]);

impl SimplexPoint {
    pub fn new(x: [f64; N_STRATEGIES]) -> Result<Self> {
        Self::with_tolerance(x, SIMPLEX_TOL)
    }

    pub fn with_tolerance(x: [f64; N_STRATEGIES], tol: f64) -> Result<Self> {
        if let Some(i) = x.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSimplex(format!("x{} is not finite", i + 1)));
        }
        if let Some(i) = x.iter().position(|&v| v < -tol) {
            return Err(Error::InvalidSimplex(format!("x{} = {} is negative", i + 1, x[i])));
        }
        let sum: f64 = x.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::InvalidSimplex(format!("components sum to {sum}, not 1")));
        }
        Ok(Self(x))
    }

    /// The interior Nash equilibrium `(1/5, ..., 1/5)`.
    pub fn equilibrium() -> Self {
        Self([1.0 / N_STRATEGIES as f64; N_STRATEGIES])
    }

    /// Pure strategy `index` (0-based).
    pub fn vertex(index: usize) -> Self {
        let mut x = [0.0; N_STRATEGIES];
        x[index] = 1.0;
        Self(x)
    }

    /// Frequencies from integer strategy counts.
    pub fn from_counts(counts: &[u32; N_STRATEGIES]) -> Result<Self> {
        let total: u32 = counts.iter().sum();
        if total == 0 {
            return Err(Error::InvalidSimplex("all counts are zero".into()));
        }
        let t = total as f64;
        Ok(Self(counts.map(|c| c as f64 / t)))
    }

    pub fn as_array(&self) -> &[f64; N_STRATEGIES] {
        &self.0
    }

    pub fn into_array(self) -> [f64; N_STRATEGIES] {
        self.0
    }
}

/// Jacobian of the replicator field at the interior equilibrium.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobianMatrix(pub Matrix5);

impl JacobianMatrix {
    pub fn entries(&self) -> &Matrix5 {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        (0..N_STRATEGIES).map(|i| self.0[i][i]).sum()
    }

    pub fn is_antisymmetric(&self, tol: f64) -> bool {
        (0..N_STRATEGIES).all(|i| (0..N_STRATEGIES).all(|j| (self.0[i][j] + self.0[j][i]).abs() <= tol))
    }
}

/// Circulant matrix whose row `k` is row `k - 1` shifted right by one.
pub fn circulant(first_row: [f64; N_STRATEGIES]) -> Matrix5 {
    let mut m = [[0.0; N_STRATEGIES]; N_STRATEGIES];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = first_row[(j + N_STRATEGIES - i) % N_STRATEGIES];
        }
    }
    m
}

/// Payoff matrix with first row `(0, a, 1, -1, -a)`.
pub fn build_payoff_matrix(spec: &GameSpec) -> Matrix5 {
    let a = spec.a;
    circulant([0.0, a, 1.0, -1.0, -a])
}

/// The matrix obtained by naively flipping `a` and relabelling strategies;
/// first row `(0, -a, -1, 1, a)`. It is not conjugate to `A(-a)`.
pub fn opposed_matrix(spec: &GameSpec) -> Matrix5 {
    let a = spec.a;
    circulant([0.0, -a, -1.0, 1.0, a])
}

/// Replicator field evaluated at an arbitrary (not necessarily valid) state.
pub(crate) fn replicator_field(payoff: &Matrix5, x: &[f64; N_STRATEGIES]) -> [f64; N_STRATEGIES] {
    let mut u = [0.0; N_STRATEGIES];
    for (ui, row) in u.iter_mut().zip(payoff.iter()) {
        *ui = row.iter().zip(x.iter()).map(|(aij, xj)| aij * xj).sum();
    }
    let mean: f64 = x.iter().zip(u.iter()).map(|(xi, ui)| xi * ui).sum();
    let mut v = [0.0; N_STRATEGIES];
    for i in 0..N_STRATEGIES {
        v[i] = x[i] * (u[i] - mean);
    }
    v
}

/// `dx_i/dt = x_i (U_i - U_bar)` with `U = A x` and `U_bar = sum_i x_i U_i`.
pub fn replicator_velocity(spec: &GameSpec, x: &SimplexPoint) -> [f64; N_STRATEGIES] {
    replicator_field(&build_payoff_matrix(spec), x.as_array())
}

/// `J = A / 5`: at the barycentre every `U_i` vanishes, so only the
/// `x_i * A_ij` term of the derivative survives.
pub fn jacobian_at_equilibrium(spec: &GameSpec) -> JacobianMatrix {
    let a = build_payoff_matrix(spec);
    JacobianMatrix(a.map(|row| row.map(|v| v / N_STRATEGIES as f64)))
}
