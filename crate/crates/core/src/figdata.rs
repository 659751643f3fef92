//! Plot-ready data: eigencycle Lissajous orbits and eigenfrequency curves.

use num_complex::Complex64;

use crate::eigen::{chi, eigenvectors, ModeLabel};
use crate::error::{Error, Result};
use crate::game::GameSpec;
use crate::subspace::{pair_label, N_SUBSPACES, SUBSPACE_PAIRS};

#[derive(Clone, Debug, PartialEq)]
pub struct LissajousPoint {
    pub mode: ModeLabel,
    /// Subspace label such as `"12"`.
    pub pair: String,
    /// Phase in `[0, 2 pi)`.
    pub phase: f64,
    pub x: f64,
    pub y: f64,
}

/// One period of `Re(xi exp(i phi))` projected onto each subspace, for the
/// alpha and beta modes, `samples` points per orbit.
pub fn lissajous(samples: usize) -> Result<Vec<LissajousPoint>> {
    if samples < 2 {
        return Err(Error::InvalidArgument(format!("need >= 2 samples, got {samples}")));
    }
    // Eigenvectors do not depend on a.
    let modes = eigenvectors(&GameSpec::new(0.0));
    let mut out = Vec::with_capacity(2 * N_SUBSPACES * samples);
    for mode in modes
        .iter()
        .filter(|m| matches!(m.label, ModeLabel::Alpha | ModeLabel::Beta))
    {
        for (k, &(m, n)) in SUBSPACE_PAIRS.iter().enumerate() {
            for s in 0..samples {
                let phase = 2.0 * std::f64::consts::PI * s as f64 / samples as f64;
                let rot = Complex64::from_polar(1.0, phase);
                out.push(LissajousPoint {
                    mode: mode.label,
                    pair: pair_label(k),
                    phase,
                    x: (mode.eigenvector[m - 1] * rot).re,
                    y: (mode.eigenvector[n - 1] * rot).re,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenCurvePoint {
    pub a: f64,
    pub im_chi_plus: f64,
    pub im_chi_minus: f64,
}

/// `Im chi+` and `Im chi-` on an evenly spaced grid over `[a_min, a_max]`.
pub fn eigenvalue_curve(a_min: f64, a_max: f64, points: usize) -> Result<Vec<EigenCurvePoint>> {
    if points < 2 || !a_min.is_finite() || !a_max.is_finite() || a_max <= a_min {
        return Err(Error::InvalidArgument(format!(
            "need >= 2 points on a nonempty finite range, got {points} on [{a_min}, {a_max}]"
        )));
    }
    Ok((0..points)
        .map(|i| {
            let a = a_min + (a_max - a_min) * i as f64 / (points - 1) as f64;
            let spec = GameSpec::new(a);
            EigenCurvePoint {
                a,
                im_chi_plus: chi(&spec, 1.0).im,
                im_chi_minus: chi(&spec, -1.0).im,
            }
        })
        .collect())
}
