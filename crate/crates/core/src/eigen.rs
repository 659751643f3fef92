//! Eigensystem of the replicator Jacobian at the interior equilibrium.
//!
//! `J = A / 5` is circulant and antisymmetric, so its eigenvectors are the
//! discrete Fourier vectors `eta_k = exp(i theta (k - 1))` for every `a`; only
//! the eigenvalues move with `a`. Two independent complex modes exist:
//!
//! * alpha: `theta = 2 pi / 5`, eigenvalue `(2i/5)(a sin 72deg + sin 144deg)`
//! * beta: `theta = -4 pi / 5`, eigenvalue `(2i/5)(-a sin 144deg + sin 72deg)`
//!
//! plus their complex conjugates and the rest mode `(1, 1, 1, 1, 1)`.
//!
//! The eigencycle of a mode in subspace `(m, n)` is
//! `sigma = pi |eta_m| |eta_n| sin(arg eta_m - arg eta_n)` with unit-amplitude
//! components ("pi" scale). The ten-vector has Euclidean norm `2.5 pi`, because
//! `5 (sin^2 72deg + sin^2 144deg) = 6.25`; the "unit" scale divides that out.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::game::{jacobian_at_equilibrium, GameSpec, JacobianMatrix};
use crate::subspace::{SubspaceVector, N_STRATEGIES, N_SUBSPACES, SUBSPACE_PAIRS};

/// Reconstruction and residual tolerance for eigen computations.
pub const EIGEN_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModeLabel {
    Rest,
    Alpha,
    Beta,
    AlphaConj,
    BetaConj,
}

impl ModeLabel {
    pub const ALL: [ModeLabel; 5] = [
        ModeLabel::Rest,
        ModeLabel::Alpha,
        ModeLabel::Beta,
        ModeLabel::AlphaConj,
        ModeLabel::BetaConj,
    ];

    /// Phase advance between consecutive eigenvector components.
    pub fn phase_step(self) -> f64 {
        match self {
            ModeLabel::Rest => 0.0,
            ModeLabel::Alpha => 2.0 * PI / 5.0,
            ModeLabel::Beta => -4.0 * PI / 5.0,
            ModeLabel::AlphaConj => -2.0 * PI / 5.0,
            ModeLabel::BetaConj => 4.0 * PI / 5.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModeLabel::Rest => "rest",
            ModeLabel::Alpha => "alpha",
            ModeLabel::Beta => "beta",
            ModeLabel::AlphaConj => "alpha_conj",
            ModeLabel::BetaConj => "beta_conj",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleScale {
    /// Unit Euclidean norm over the ten subspaces.
    Unit,
    /// Unit-amplitude components, prefactor `pi`.
    Pi,
}

impl CycleScale {
    /// Ratio of the pi-scale to the unit-scale vector.
    pub const PI_OVER_UNIT: f64 = 2.5 * PI;
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenMode {
    pub label: ModeLabel,
    pub eigenvalue: Complex64,
    pub eigenvector: [Complex64; N_STRATEGIES],
    /// All zeros for the rest mode.
    pub eigencycle_unit: SubspaceVector,
    /// All zeros for the rest mode.
    pub eigencycle_pi: SubspaceVector,
}

/// `chi(+1)` and `chi(-1)` of the closed form. The radicand equals
/// `-16 (a sin 72deg + sin 144deg)^2` (resp. the beta analogue), so it is never
/// positive and the root lies on the imaginary axis.
pub fn chi(spec: &GameSpec, sign: f64) -> Complex64 {
    let a = spec.a;
    let radicand = sign * 2.0 * 5f64.sqrt() * (1.0 - 4.0 * a - a * a) - 10.0 * (a * a + 1.0);
    Complex64::new(0.0, (-radicand).max(0.0).sqrt() / 10.0)
}

/// `(0, chi+, chi-, -chi+, -chi-)`.
pub fn eigenvalues_closed_form(spec: &GameSpec) -> [Complex64; N_STRATEGIES] {
    let p = chi(spec, 1.0);
    let m = chi(spec, -1.0);
    [Complex64::new(0.0, 0.0), p, m, -p, -m]
}

/// Eigenvalues of the circulant Jacobian by a DFT of its first row:
/// `lambda_k = sum_j J[0][j] omega^(j k)`, `omega = exp(2 pi i / 5)`.
pub fn eigenvalues_circulant_oracle(spec: &GameSpec) -> [Complex64; N_STRATEGIES] {
    let j = jacobian_at_equilibrium(spec);
    let row = j.entries()[0];
    let mut out = [Complex64::new(0.0, 0.0); N_STRATEGIES];
    for (k, lambda) in out.iter_mut().enumerate() {
        *lambda = row
            .iter()
            .enumerate()
            .map(|(jj, &c)| c * Complex64::from_polar(1.0, 2.0 * PI * (jj * k) as f64 / 5.0))
            .sum();
    }
    out
}

fn mode_vector(label: ModeLabel) -> [Complex64; N_STRATEGIES] {
    let theta = label.phase_step();
    let mut v = [Complex64::new(0.0, 0.0); N_STRATEGIES];
    for (k, c) in v.iter_mut().enumerate() {
        *c = Complex64::from_polar(1.0, theta * k as f64);
    }
    v
}

fn apply(j: &JacobianMatrix, v: &[Complex64; N_STRATEGIES]) -> [Complex64; N_STRATEGIES] {
    let mut out = [Complex64::new(0.0, 0.0); N_STRATEGIES];
    for (o, row) in out.iter_mut().zip(j.entries().iter()) {
        *o = row.iter().zip(v.iter()).map(|(a, x)| x * *a).sum();
    }
    out
}

/// `|| J v - lambda v ||`.
pub fn eigen_residual(j: &JacobianMatrix, lambda: Complex64, v: &[Complex64; N_STRATEGIES]) -> f64 {
    apply(j, v)
        .iter()
        .zip(v.iter())
        .map(|(jv, x)| (jv - lambda * x).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Eigencycle set of an arbitrary complex vector (rescaled to unit-amplitude
/// components on average) at the given scale.
pub fn eigencycle_of_vector(v: &[Complex64; N_STRATEGIES], scale: CycleScale) -> Result<SubspaceVector> {
    let rms = (v.iter().map(|c| c.norm_sqr()).sum::<f64>() / N_STRATEGIES as f64).sqrt();
    if rms == 0.0 {
        return Err(Error::DegenerateMode);
    }
    let mut out = [0.0; N_SUBSPACES];
    for (o, &(m, n)) in out.iter_mut().zip(SUBSPACE_PAIRS.iter()) {
        let (em, en) = (v[m - 1] / rms, v[n - 1] / rms);
        *o = PI * (em * en.conj()).im;
    }
    let pi_scale = SubspaceVector::new(out);
    match scale {
        CycleScale::Pi => Ok(pi_scale),
        CycleScale::Unit => pi_scale.normalized().ok_or(Error::DegenerateMode),
    }
}

/// All five modes ordered rest, alpha, beta, alpha_conj, beta_conj. Each
/// eigenvector is paired with the closed-form eigenvalue of smallest residual.
pub fn eigenvectors(spec: &GameSpec) -> [EigenMode; N_STRATEGIES] {
    let j = jacobian_at_equilibrium(spec);
    let candidates = eigenvalues_closed_form(spec);
    ModeLabel::ALL.map(|label| {
        let v = mode_vector(label);
        let eigenvalue = candidates
            .iter()
            .copied()
            .min_by(|a, b| eigen_residual(&j, *a, &v).total_cmp(&eigen_residual(&j, *b, &v)))
            .expect("five candidates");
        let (unit, pi) = match label {
            ModeLabel::Rest => (SubspaceVector::zeros(), SubspaceVector::zeros()),
            _ => (
                eigencycle_of_vector(&v, CycleScale::Unit).expect("complex mode"),
                eigencycle_of_vector(&v, CycleScale::Pi).expect("complex mode"),
            ),
        };
        EigenMode {
            label,
            eigenvalue,
            eigenvector: v,
            eigencycle_unit: unit,
            eigencycle_pi: pi,
        }
    })
}

/// Eigencycle set of a mode; the rest mode is rejected.
pub fn eigencycle_set(mode: &EigenMode, scale: CycleScale) -> Result<SubspaceVector> {
    if mode.label == ModeLabel::Rest {
        return Err(Error::DegenerateMode);
    }
    Ok(match scale {
        CycleScale::Unit => mode.eigencycle_unit,
        CycleScale::Pi => mode.eigencycle_pi,
    })
}

/// `sigma_alpha`; independent of `a`.
pub fn sigma_alpha(scale: CycleScale) -> SubspaceVector {
    eigencycle_of_vector(&mode_vector(ModeLabel::Alpha), scale).expect("complex mode")
}

/// `sigma_beta`; independent of `a`.
pub fn sigma_beta(scale: CycleScale) -> SubspaceVector {
    eigencycle_of_vector(&mode_vector(ModeLabel::Beta), scale).expect("complex mode")
}

/// Solution of the linearised flow `dx/dt = J x` from a tangent deviation,
/// expanded in the eigenbasis: `x(t) = sum_i exp(lambda_i t) c_i xi_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution {
    pub coefficients: [Complex64; N_STRATEGIES],
    pub modes: [EigenMode; N_STRATEGIES],
}

pub fn linear_solution(spec: &GameSpec, x0: &[f64; N_STRATEGIES]) -> Result<LinearSolution> {
    let sum: f64 = x0.iter().sum();
    if sum.abs() > EIGEN_TOL || x0.iter().any(|v| !v.is_finite()) {
        return Err(Error::NotTangent(sum));
    }
    let modes = eigenvectors(spec);
    // The Fourier vectors are mutually orthogonal, so projection solves x0 = sum c_i xi_i.
    let coefficients = modes.map(|m| {
        let num: Complex64 = m.eigenvector.iter().zip(x0.iter()).map(|(e, &x)| e.conj() * x).sum();
        let den: f64 = m.eigenvector.iter().map(|e| e.norm_sqr()).sum();
        num / den
    });
    let solution = LinearSolution { coefficients, modes };
    let back = solution.evaluate_complex(0.0);
    let err = back
        .iter()
        .zip(x0.iter())
        .map(|(b, &x)| (b - x).norm())
        .fold(0.0, f64::max);
    if err > EIGEN_TOL {
        return Err(Error::InvalidArgument(format!(
            "eigenbasis reconstruction error {err:e}"
        )));
    }
    Ok(solution)
}

impl LinearSolution {
    pub fn evaluate_complex(&self, t: f64) -> [Complex64; N_STRATEGIES] {
        let mut out = [Complex64::new(0.0, 0.0); N_STRATEGIES];
        for (c, m) in self.coefficients.iter().zip(self.modes.iter()) {
            let w = c * (m.eigenvalue * t).exp();
            for (o, e) in out.iter_mut().zip(m.eigenvector.iter()) {
                *o += w * e;
            }
        }
        out
    }

    /// Real deviation from the equilibrium at time `t`.
    pub fn evaluate(&self, t: f64) -> [f64; N_STRATEGIES] {
        self.evaluate_complex(t).map(|c| c.re)
    }

    /// Largest imaginary component of the reconstructed state.
    pub fn imaginary_residual(&self, t: f64) -> f64 {
        self.evaluate_complex(t).iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn coefficient(&self, label: ModeLabel) -> Complex64 {
        let i = ModeLabel::ALL.iter().position(|&l| l == label).expect("known label");
        self.coefficients[i]
    }
}
