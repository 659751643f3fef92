//! Regression of measured angular momentum onto the two eigencycle sets,
//! theory/experiment correlations and the cross-subspace invariance test.

use crate::eigen::{sigma_alpha, sigma_beta, CycleScale, ModeLabel};
use crate::error::{Error, Result};
use crate::stats::{ols, pearson, t_test_one_sample, t_test_paired_abs, wilcoxon_signed_rank, TestResult};
use crate::subspace::{SubspaceVector, N_SUBSPACES};

/// Fit of `L = c0 + k_alpha * sigma_alpha + k_beta * sigma_beta` over the ten subspaces.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecompositionResult {
    pub c0: f64,
    pub k_alpha: f64,
    pub k_beta: f64,
    /// Multiple correlation coefficient, `sqrt(R^2)`.
    pub rho: f64,
    pub r_squared: f64,
    /// Overall-regression F test on 2 and 7 dof.
    pub p: f64,
    pub scale: CycleScale,
    pub residuals: SubspaceVector,
}

impl DecompositionResult {
    /// The mode with the larger `|k|`.
    pub fn dominant_mode(&self) -> ModeLabel {
        if self.k_alpha.abs() >= self.k_beta.abs() {
            ModeLabel::Alpha
        } else {
            ModeLabel::Beta
        }
    }
}

pub fn mlr_decompose(l: &SubspaceVector, scale: CycleScale) -> DecompositionResult {
    let sa = sigma_alpha(scale);
    let sb = sigma_beta(scale);
    let fit = ols(l.values(), &[sa.values().to_vec(), sb.values().to_vec()], true)
        .expect("eigencycle regressors are fixed and full rank");
    let mut residuals = [0.0; N_SUBSPACES];
    residuals.copy_from_slice(&fit.residuals);
    let r_squared = fit.r_squared.clamp(0.0, 1.0);
    DecompositionResult {
        c0: fit.coefficients[0],
        k_alpha: fit.coefficients[1],
        k_beta: fit.coefficients[2],
        rho: r_squared.sqrt(),
        r_squared,
        p: fit.f_p_value,
        scale,
        residuals: SubspaceVector(residuals),
    }
}

/// Separate fits `L = c0 + k * sigma` on each eigencycle set alone.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleRegressorFits {
    pub c0_alpha: f64,
    pub k_alpha: f64,
    pub p_alpha: f64,
    pub c0_beta: f64,
    pub k_beta: f64,
    pub p_beta: f64,
}

pub fn single_regressor_fits(l: &SubspaceVector, scale: CycleScale) -> SingleRegressorFits {
    let fit = |sigma: SubspaceVector| {
        let f = ols(l.values(), &[sigma.values().to_vec()], true).expect("eigencycle regressor is nonconstant");
        (f.coefficients[0], f.coefficients[1], f.f_p_value)
    };
    let (c0_alpha, k_alpha, p_alpha) = fit(sigma_alpha(scale));
    let (c0_beta, k_beta, p_beta) = fit(sigma_beta(scale));
    SingleRegressorFits {
        c0_alpha,
        k_alpha,
        p_alpha,
        c0_beta,
        k_beta,
        p_beta,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoryCorrelation {
    pub rho_alpha: f64,
    pub p_alpha: f64,
    pub rho_beta: f64,
    pub p_beta: f64,
}

/// Pearson correlation of `L` with each eigencycle set (10 points, 8 dof).
pub fn theory_experiment_correlation(l: &SubspaceVector) -> Result<TheoryCorrelation> {
    let (rho_alpha, ta) = pearson(l.values(), sigma_alpha(CycleScale::Unit).values())?;
    let (rho_beta, tb) = pearson(l.values(), sigma_beta(CycleScale::Unit).values())?;
    Ok(TheoryCorrelation {
        rho_alpha,
        p_alpha: ta.p_value,
        rho_beta,
        p_beta: tb.p_value,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredictedSign {
    /// Both eigencycle components equal: the subspaces should co-vary.
    Plus,
    /// Both components opposite: the subspaces should anti-vary.
    Minus,
    Blank,
}

impl PredictedSign {
    pub fn value(self) -> f64 {
        match self {
            Self::Plus => 1.0,
            Self::Minus => -1.0,
            Self::Blank => 0.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Self::Plus => "+",
            Self::Minus => "-",
            Self::Blank => "",
        }
    }
}

/// Sign pattern implied by the eigencycle sets alone: whatever mixture of the
/// two modes is selected, subspaces with equal `(sigma_alpha, sigma_beta)`
/// components carry equal angular momentum.
pub fn predicted_signs() -> [[PredictedSign; N_SUBSPACES]; N_SUBSPACES] {
    let sa = sigma_alpha(CycleScale::Pi);
    let sb = sigma_beta(CycleScale::Pi);
    let close = |x: f64, y: f64| (x - y).abs() < 1e-9;
    let mut out = [[PredictedSign::Blank; N_SUBSPACES]; N_SUBSPACES];
    for i in 0..N_SUBSPACES {
        for j in 0..N_SUBSPACES {
            if i == j {
                continue;
            }
            out[i][j] = if close(sa[i], sa[j]) && close(sb[i], sb[j]) {
                PredictedSign::Plus
            } else if close(sa[i], -sa[j]) && close(sb[i], -sb[j]) {
                PredictedSign::Minus
            } else {
                PredictedSign::Blank
            };
        }
    }
    out
}

/// |rho| above which an observed sign contradicting a prediction counts as a violation.
pub const VIOLATION_THRESHOLD: f64 = 0.3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairCorrelation {
    /// 0-based subspace indices, `i < j`.
    pub i: usize,
    pub j: usize,
    pub rho: f64,
    pub predicted: PredictedSign,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport {
    pub rho_matrix: [[f64; N_SUBSPACES]; N_SUBSPACES],
    pub p_matrix: [[f64; N_SUBSPACES]; N_SUBSPACES],
    pub predicted_signs: [[PredictedSign; N_SUBSPACES]; N_SUBSPACES],
    pub violations: Vec<PairCorrelation>,
    /// The independent pairs with the largest `|rho|`, as many as there are signed pairs.
    pub top_pairs: Vec<PairCorrelation>,
    /// One margin per independent pair, positive when the observed `rho` sits
    /// closer to its predicted value (`+-1` for signed pairs, `0` for blank
    /// ones) than to the alternative.
    pub check_margins: Vec<f64>,
    pub wilcoxon: TestResult,
}

impl InvarianceReport {
    pub fn signed_pair_count(&self) -> usize {
        self.all_pairs().filter(|p| p.predicted != PredictedSign::Blank).count()
    }

    /// True when the top pairs are exactly the signed pairs, each with its predicted sign.
    pub fn top_pairs_match_prediction(&self) -> bool {
        self.top_pairs.len() == self.signed_pair_count()
            && self
                .top_pairs
                .iter()
                .all(|p| p.predicted != PredictedSign::Blank && p.rho.signum() == p.predicted.value())
    }

    pub fn all_pairs(&self) -> impl Iterator<Item = PairCorrelation> + '_ {
        (0..N_SUBSPACES).flat_map(move |i| {
            ((i + 1)..N_SUBSPACES).map(move |j| PairCorrelation {
                i,
                j,
                rho: self.rho_matrix[i][j],
                predicted: self.predicted_signs[i][j],
            })
        })
    }
}

fn check_margin(rho: f64, predicted: PredictedSign) -> f64 {
    match predicted {
        PredictedSign::Blank => (rho - 1.0).abs().min((rho + 1.0).abs()) - rho.abs(),
        s => rho.abs() - (rho - s.value()).abs(),
    }
}

/// Pairwise correlation of the ten subspace components across pooled sessions.
pub fn subspace_invariance(sessions: &[SubspaceVector]) -> Result<InvarianceReport> {
    if sessions.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "invariance needs >= 3 sessions, got {}",
            sessions.len()
        )));
    }
    let columns: Vec<Vec<f64>> = (0..N_SUBSPACES)
        .map(|k| sessions.iter().map(|s| s[k]).collect())
        .collect();
    let mut rho_matrix = [[1.0; N_SUBSPACES]; N_SUBSPACES];
    let mut p_matrix = [[0.0; N_SUBSPACES]; N_SUBSPACES];
    for i in 0..N_SUBSPACES {
        for j in (i + 1)..N_SUBSPACES {
            let (r, t) = pearson(&columns[i], &columns[j])?;
            rho_matrix[i][j] = r;
            rho_matrix[j][i] = r;
            p_matrix[i][j] = t.p_value;
            p_matrix[j][i] = t.p_value;
        }
    }
    let predicted_signs = predicted_signs();
    let mut report = InvarianceReport {
        rho_matrix,
        p_matrix,
        predicted_signs,
        violations: Vec::new(),
        top_pairs: Vec::new(),
        check_margins: Vec::new(),
        wilcoxon: TestResult {
            statistic: f64::NAN,
            p_value: f64::NAN,
            dof: 0.0,
            kind: crate::stats::TestKind::WilcoxonSignedRank,
            zero_variance: false,
        },
    };
    let pairs: Vec<PairCorrelation> = report.all_pairs().collect();
    report.violations = pairs
        .iter()
        .filter(|p| {
            p.predicted != PredictedSign::Blank
                && p.rho.abs() > VIOLATION_THRESHOLD
                && p.rho.signum() != p.predicted.value()
        })
        .copied()
        .collect();
    let mut ranked = pairs.clone();
    ranked.sort_by(|a, b| b.rho.abs().total_cmp(&a.rho.abs()));
    ranked.truncate(report.signed_pair_count());
    report.top_pairs = ranked;
    report.check_margins = pairs.iter().map(|p| check_margin(p.rho, p.predicted)).collect();
    report.wilcoxon = wilcoxon_signed_rank(&report.check_margins)?;
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SessionSummary {
    pub n: usize,
    pub mean_k_alpha: f64,
    pub mean_k_beta: f64,
    /// One-sample t tests of the session `k` values against 0.
    pub test_k_alpha: TestResult,
    pub test_k_beta: TestResult,
    /// Paired t test of `|k_alpha| = |k_beta|`.
    pub test_abs_equal: TestResult,
}

pub fn session_statistics(results: &[DecompositionResult]) -> Result<SessionSummary> {
    if results.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "session statistics need >= 2 sessions, got {}",
            results.len()
        )));
    }
    let ka: Vec<f64> = results.iter().map(|r| r.k_alpha).collect();
    let kb: Vec<f64> = results.iter().map(|r| r.k_beta).collect();
    let n = results.len() as f64;
    Ok(SessionSummary {
        n: results.len(),
        mean_k_alpha: ka.iter().sum::<f64>() / n,
        mean_k_beta: kb.iter().sum::<f64>() / n,
        test_k_alpha: t_test_one_sample(&ka, 0.0)?,
        test_k_beta: t_test_one_sample(&kb, 0.0)?,
        test_abs_equal: t_test_paired_abs(&ka, &kb)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_mixture_recovered() {
        let sa = sigma_alpha(CycleScale::Pi);
        let sb = sigma_beta(CycleScale::Pi);
        let l = sa * 0.5 + sb * 0.2;
        let d = mlr_decompose(&l, CycleScale::Pi);
        assert!(d.c0.abs() < 1e-12);
        assert!((d.k_alpha - 0.5).abs() < 1e-12);
        assert!((d.k_beta - 0.2).abs() < 1e-12);
        assert!((d.rho - 1.0).abs() < 1e-12);
        assert_eq!(d.dominant_mode(), ModeLabel::Alpha);
    }

    #[test]
    fn exactly_twenty_signed_pairs() {
        let s = predicted_signs();
        let signed = (0..10)
            .flat_map(|i| ((i + 1)..10).map(move |j| (i, j)))
            .filter(|&(i, j)| s[i][j] != PredictedSign::Blank)
            .count();
        assert_eq!(signed, 20);
        // 12 and 23 share both components; 15 and 45 are opposite.
        assert_eq!(s[0][4], PredictedSign::Plus);
        assert_eq!(s[3][9], PredictedSign::Minus);
        assert_eq!(s[4][0], PredictedSign::Plus);
    }

    #[test]
    fn correlation_of_sigma_alpha_with_itself() {
        let c = theory_experiment_correlation(&sigma_alpha(CycleScale::Pi)).unwrap();
        assert!((c.rho_alpha - 1.0).abs() < 1e-12);
        assert!((c.rho_beta - 0.05).abs() < 1e-3);
    }

    #[test]
    fn margins_sign() {
        assert!(check_margin(0.9, PredictedSign::Plus) > 0.0);
        assert!(check_margin(-0.9, PredictedSign::Plus) < 0.0);
        assert!(check_margin(-0.9, PredictedSign::Minus) > 0.0);
        assert!(check_margin(0.1, PredictedSign::Blank) > 0.0);
        assert!(check_margin(0.8, PredictedSign::Blank) < 0.0);
    }

    #[test]
    fn too_few_sessions() {
        let v = vec![SubspaceVector::zeros(); 2];
        assert!(matches!(subspace_invariance(&v), Err(Error::InsufficientData(_))));
        let d = mlr_decompose(&sigma_beta(CycleScale::Pi), CycleScale::Pi);
        assert!(session_statistics(&[d]).is_err());
    }

    #[test]
    fn identical_sessions_flag_zero_variance() {
        let d = mlr_decompose(&(sigma_alpha(CycleScale::Pi) * 0.3), CycleScale::Pi);
        let s = session_statistics(&[d; 5]).unwrap();
        assert!(s.test_k_alpha.zero_variance);
        assert_eq!(s.test_k_alpha.p_value, 0.0);
    }
}
