//! Statistical primitives: special functions, t/F/normal distributions,
//! correlation and location tests, Wilcoxon signed-rank and OLS.
//!
//! Special functions target an absolute accuracy of about 1e-10 or better.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const EPS: f64 = 1e-15;
const MAX_ITER: usize = 10_000;

// Lanczos approximation, g = 7, n = 9. Coefficients kept as published.
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection.
        (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x)
    } else {
        let x = x - 1.0;
        let mut a = LANCZOS[0];
        let t = x + 7.5;
        for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
    }
}

/// Regularized incomplete beta `I_x(a, b)`.
pub fn beta_inc_reg(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

/// Continued fraction for the incomplete beta (modified Lentz).
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    let tiny = 1e-300;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < tiny {
        d = tiny;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Regularized upper incomplete gamma `Q(a, x)`.
pub fn gamma_inc_upper_reg(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let ln_front = -x + a * x.ln() - ln_gamma(a);
    if x < a + 1.0 {
        // Series for P.
        let mut ap = a;
        let mut del = 1.0 / a;
        let mut sum = del;
        for _ in 0..MAX_ITER {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        1.0 - sum * ln_front.exp()
    } else {
        // Continued fraction for Q.
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..=MAX_ITER {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < EPS {
                break;
            }
        }
        ln_front.exp() * h
    }
}

pub fn erfc(x: f64) -> f64 {
    if x >= 0.0 {
        gamma_inc_upper_reg(0.5, x * x)
    } else {
        2.0 - gamma_inc_upper_reg(0.5, x * x)
    }
}

pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

/// Student t CDF with `df` degrees of freedom.
pub fn student_t_cdf(t: f64, df: f64) -> f64 {
    if t.is_infinite() {
        return if t > 0.0 { 1.0 } else { 0.0 };
    }
    let tail = 0.5 * beta_inc_reg(df / 2.0, 0.5, df / (df + t * t));
    if t > 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// Two-sided p-value `P(|T| >= |t|)`.
pub fn student_t_two_sided(t: f64, df: f64) -> f64 {
    if t.is_nan() {
        return f64::NAN;
    }
    if t.is_infinite() {
        return 0.0;
    }
    beta_inc_reg(df / 2.0, 0.5, df / (df + t * t)).clamp(0.0, 1.0)
}

/// Upper tail `P(F >= f)` of the F distribution.
pub fn f_survival(f: f64, d1: f64, d2: f64) -> f64 {
    if f.is_infinite() {
        return 0.0;
    }
    if f <= 0.0 {
        return 1.0;
    }
    beta_inc_reg(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f)).clamp(0.0, 1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TestKind {
    TOneSample,
    TPaired,
    WilcoxonSignedRank,
    PearsonT,
    FRegression,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TestResult {
    pub statistic: f64,
    /// Two-sided.
    pub p_value: f64,
    pub dof: f64,
    pub kind: TestKind,
    /// Set when the sample variance is zero and the statistic is degenerate.
    pub zero_variance: bool,
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance.
pub fn sample_variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

/// Sample Pearson correlation with the t-test p-value on `n - 2` dof.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<(f64, TestResult)> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidArgument(format!(
            "length mismatch: {} vs {}",
            xs.len(),
            ys.len()
        )));
    }
    let n = xs.len();
    if n < 3 {
        return Err(Error::InsufficientData(format!("pearson needs >= 3 points, got {n}")));
    }
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let rho = (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0);
    let df = (n - 2) as f64;
    let (t, p) = if rho.abs() == 1.0 {
        (rho.signum() * f64::INFINITY, 0.0)
    } else {
        let t = rho * (df / (1.0 - rho * rho)).sqrt();
        (t, student_t_two_sided(t, df))
    };
    Ok((
        rho,
        TestResult {
            statistic: t,
            p_value: p,
            dof: df,
            kind: TestKind::PearsonT,
            zero_variance: false,
        },
    ))
}

fn t_test_location(xs: &[f64], mu0: f64, kind: TestKind) -> Result<TestResult> {
    let n = xs.len();
    if n < 2 {
        return Err(Error::InsufficientData(format!("t test needs >= 2 values, got {n}")));
    }
    let df = (n - 1) as f64;
    let m = mean(xs);
    let var = sample_variance(xs);
    // Identical values can leave a rounding-level variance; treat them as constant.
    if var == 0.0 || xs.iter().all(|x| *x == xs[0]) {
        let (t, p) = if xs[0] == mu0 {
            (0.0, 1.0)
        } else {
            ((m - mu0).signum() * f64::INFINITY, 0.0)
        };
        return Ok(TestResult {
            statistic: t,
            p_value: p,
            dof: df,
            kind,
            zero_variance: true,
        });
    }
    let t = (m - mu0) / (var / n as f64).sqrt();
    Ok(TestResult {
        statistic: t,
        p_value: student_t_two_sided(t, df),
        dof: df,
        kind,
        zero_variance: false,
    })
}

/// One-sample t test of `mean(xs) = mu0`. Zero variance is reported through
/// `zero_variance` with `p = 1` when the mean equals `mu0`, else `p = 0`.
pub fn t_test_one_sample(xs: &[f64], mu0: f64) -> Result<TestResult> {
    t_test_location(xs, mu0, TestKind::TOneSample)
}

/// Paired t test of `|x_i| = |y_i|` (one-sample t on `|x_i| - |y_i|`).
pub fn t_test_paired_abs(xs: &[f64], ys: &[f64]) -> Result<TestResult> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidArgument(format!(
            "length mismatch: {} vs {}",
            xs.len(),
            ys.len()
        )));
    }
    let d: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| x.abs() - y.abs()).collect();
    t_test_location(&d, 0.0, TestKind::TPaired)
}

/// Tie-averaged ranks (1-based) of `values`.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

/// Largest sample size handled by exact enumeration.
pub const WILCOXON_EXACT_MAX: usize = 25;

struct SignedRanks {
    ranks: Vec<f64>,
    positive: Vec<bool>,
}

fn signed_ranks(xs: &[f64]) -> Result<SignedRanks> {
    let nonzero: Vec<f64> = xs.iter().copied().filter(|x| *x != 0.0).collect();
    if nonzero.is_empty() {
        return Err(Error::InsufficientData("all differences are zero".into()));
    }
    if nonzero.len() < 5 {
        return Err(Error::InsufficientData(format!(
            "signed-rank test needs >= 5 nonzero values, got {}",
            nonzero.len()
        )));
    }
    let abs: Vec<f64> = nonzero.iter().map(|x| x.abs()).collect();
    Ok(SignedRanks {
        ranks: average_ranks(&abs),
        positive: nonzero.iter().map(|x| *x > 0.0).collect(),
    })
}

impl SignedRanks {
    fn w_plus(&self) -> f64 {
        self.ranks
            .iter()
            .zip(&self.positive)
            .filter(|(_, p)| **p)
            .map(|(r, _)| r)
            .sum()
    }

    fn exact_p(&self) -> f64 {
        // Doubled tie-averaged ranks are integers; count sign patterns per doubled sum.
        let doubled: Vec<usize> = self.ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
        let total: usize = doubled.iter().sum();
        let mut counts = vec![0.0f64; total + 1];
        counts[0] = 1.0;
        for &r in &doubled {
            for s in (r..=total).rev() {
                counts[s] += counts[s - r];
            }
        }
        let patterns = 2f64.powi(doubled.len() as i32);
        let w = (2.0 * self.w_plus()).round() as usize;
        let lower: f64 = counts[..=w].iter().sum::<f64>() / patterns;
        let upper: f64 = counts[w..].iter().sum::<f64>() / patterns;
        (2.0 * lower.min(upper)).min(1.0)
    }

    fn normal_p(&self) -> f64 {
        let n = self.ranks.len() as f64;
        let mu = n * (n + 1.0) / 4.0;
        let mut ties = 0.0;
        let mut sorted = self.ranks.clone();
        sorted.sort_by(f64::total_cmp);
        let mut i = 0;
        while i < sorted.len() {
            let mut j = i;
            while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
                j += 1;
            }
            let t = (j - i + 1) as f64;
            ties += t * t * t - t;
            i = j + 1;
        }
        let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - ties / 48.0;
        let diff = (self.w_plus() - mu).abs() - 0.5;
        if diff <= 0.0 || var <= 0.0 {
            return 1.0;
        }
        (2.0 * (1.0 - normal_cdf(diff / var.sqrt()))).clamp(0.0, 1.0)
    }
}

/// Wilcoxon signed-rank test of symmetry about zero. Zeros are dropped and
/// tied magnitudes get averaged ranks. Exact enumeration up to
/// [`WILCOXON_EXACT_MAX`] values, normal approximation with continuity and tie
/// corrections above. The statistic is `W+`.
pub fn wilcoxon_signed_rank(xs: &[f64]) -> Result<TestResult> {
    let sr = signed_ranks(xs)?;
    let n = sr.ranks.len();
    let p = if n <= WILCOXON_EXACT_MAX {
        sr.exact_p()
    } else {
        sr.normal_p()
    };
    Ok(TestResult {
        statistic: sr.w_plus(),
        p_value: p,
        dof: n as f64,
        kind: TestKind::WilcoxonSignedRank,
        zero_variance: false,
    })
}

/// Normal-approximation p-value regardless of sample size.
pub fn wilcoxon_normal_p(xs: &[f64]) -> Result<f64> {
    Ok(signed_ranks(xs)?.normal_p())
}

/// Exact p-value regardless of sample size (cost grows with the rank sum).
pub fn wilcoxon_exact_p(xs: &[f64]) -> Result<f64> {
    Ok(signed_ranks(xs)?.exact_p())
}

#[derive(Clone, Debug, PartialEq)]
pub struct OlsFit {
    /// Intercept first when fitted with one, then one entry per design column.
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    /// Two-sided t-test p-value per coefficient.
    pub coefficient_p: Vec<f64>,
    pub residuals: Vec<f64>,
    pub r_squared: f64,
    pub f_statistic: f64,
    /// Overall-regression F-test p-value.
    pub f_p_value: f64,
    pub df_model: usize,
    pub df_resid: usize,
}

/// Ordinary least squares by Householder QR.
pub fn ols(y: &[f64], columns: &[Vec<f64>], intercept: bool) -> Result<OlsFit> {
    let n = y.len();
    if let Some(c) = columns.iter().find(|c| c.len() != n) {
        return Err(Error::InvalidArgument(format!(
            "design column has {} rows, response has {n}",
            c.len()
        )));
    }
    let mut design: Vec<Vec<f64>> = Vec::with_capacity(columns.len() + 1);
    if intercept {
        design.push(vec![1.0; n]);
    }
    design.extend(columns.iter().cloned());
    let p = design.len();
    if p == 0 || n <= p {
        return Err(Error::InsufficientData(format!("{n} observations for {p} parameters")));
    }

    // Column-major working copy, reduced in place to R; Q^T y accumulated alongside.
    let mut a = design.clone();
    let mut qty = y.to_vec();
    let scale = a
        .iter()
        .map(|c| c.iter().map(|v| v * v).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    for k in 0..p {
        let norm = a[k][k..].iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm <= 1e-12 * scale.max(1.0) {
            return Err(Error::RankDeficient);
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = a[k][k..].to_vec();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        for col in a.iter_mut().skip(k) {
            let dot: f64 = v.iter().zip(&col[k..]).map(|(vi, ci)| vi * ci).sum();
            let f = 2.0 * dot / vnorm2;
            for (ci, vi) in col[k..].iter_mut().zip(&v) {
                *ci -= f * vi;
            }
        }
        let dot: f64 = v.iter().zip(&qty[k..]).map(|(vi, yi)| vi * yi).sum();
        let f = 2.0 * dot / vnorm2;
        for (yi, vi) in qty[k..].iter_mut().zip(&v) {
            *yi -= f * vi;
        }
    }
    let r_diag_min = (0..p).map(|k| a[k][k].abs()).fold(f64::INFINITY, f64::min);
    if r_diag_min <= 1e-10 * scale.max(1.0) {
        return Err(Error::RankDeficient);
    }
    let mut beta = vec![0.0; p];
    for i in (0..p).rev() {
        let s: f64 = ((i + 1)..p).map(|j| a[j][i] * beta[j]).sum();
        beta[i] = (qty[i] - s) / a[i][i];
    }

    let fitted: Vec<f64> = (0..n)
        .map(|r| design.iter().zip(&beta).map(|(c, b)| c[r] * b).sum())
        .collect();
    let residuals: Vec<f64> = y.iter().zip(&fitted).map(|(yi, fi)| yi - fi).collect();
    let ssr: f64 = residuals.iter().map(|e| e * e).sum();
    let sst: f64 = if intercept {
        let m = mean(y);
        y.iter().map(|v| (v - m).powi(2)).sum()
    } else {
        y.iter().map(|v| v * v).sum()
    };
    let df_model = if intercept { p - 1 } else { p };
    let df_resid = n - p;
    let r_squared = if sst > 0.0 { 1.0 - ssr / sst } else { 1.0 };
    let (f_statistic, f_p_value) = if df_model == 0 {
        (f64::NAN, f64::NAN)
    } else if ssr <= 1e-30 * sst.max(1e-300) {
        (f64::INFINITY, 0.0)
    } else {
        let f = ((sst - ssr) / df_model as f64) / (ssr / df_resid as f64);
        (f, f_survival(f, df_model as f64, df_resid as f64))
    };

    // (R^T R)^-1 diagonal for standard errors: invert upper-triangular R.
    let sigma2 = ssr / df_resid as f64;
    let mut rinv = vec![vec![0.0; p]; p];
    for i in 0..p {
        rinv[i][i] = 1.0 / a[i][i];
        for j in (0..i).rev() {
            let s: f64 = ((j + 1)..=i).map(|k| a[k][j] * rinv[k][i]).sum();
            rinv[j][i] = -s / a[j][j];
        }
    }
    let std_errors: Vec<f64> = (0..p)
        .map(|i| (sigma2 * (i..p).map(|k| rinv[i][k].powi(2)).sum::<f64>()).sqrt())
        .collect();
    let coefficient_p = beta
        .iter()
        .zip(&std_errors)
        .map(|(b, se)| {
            if *se == 0.0 {
                if *b == 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                student_t_two_sided(b / se, df_resid as f64)
            }
        })
        .collect();

    Ok(OlsFit {
        coefficients: beta,
        std_errors,
        coefficient_p,
        residuals,
        r_squared,
        f_statistic,
        f_p_value,
        df_model,
        df_resid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Composite Simpson integral of the t density from -L to t, plus the
    /// analytic tail below -L (negligible at L = 400 for df >= 5).
    fn t_cdf_quadrature(t: f64, df: f64) -> f64 {
        let c = (ln_gamma((df + 1.0) / 2.0) - ln_gamma(df / 2.0)).exp() / (df * PI).sqrt();
        let dens = |x: f64| c * (1.0 + x * x / df).powf(-(df + 1.0) / 2.0);
        // Substitute x = tan(u) to map the real line onto (-pi/2, pi/2).
        let g = |u: f64| dens(u.tan()) / u.cos().powi(2);
        let (lo, hi) = (-PI / 2.0 + 1e-12, t.atan());
        let n = 20_000;
        let h = (hi - lo) / n as f64;
        let mut s = g(lo) + g(hi);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * g(lo + i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn t_cdf_matches_quadrature() {
        for df in [5.0, 8.0, 17.0, 50.0] {
            for k in -10..=10 {
                let t = k as f64;
                let got = student_t_cdf(t, df);
                let want = t_cdf_quadrature(t, df);
                assert!((got - want).abs() < 1e-8, "df={df} t={t}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn one_sample_known_value() {
        let r = t_test_one_sample(&[1.0, 2.0, 3.0, 4.0, 5.0], 0.0).unwrap();
        assert!((r.statistic - 4.242640687).abs() < 1e-8);
        // Frozen from the quadrature oracle above: 2 * (1 - F(4.2426; 4)).
        let oracle = 2.0 * (1.0 - t_cdf_quadrature(r.statistic, 4.0));
        assert!((r.p_value - oracle).abs() < 1e-8);
        assert!((r.p_value - 0.0132).abs() < 1e-4);
    }

    #[test]
    fn symmetric_sample_gives_p_one() {
        let r = t_test_one_sample(&[-2.0, -1.0, 1.0, 2.0], 0.0).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert!((r.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_variance_is_flagged() {
        let r = t_test_one_sample(&[0.7; 10], 0.0).unwrap();
        assert!(r.zero_variance);
        assert_eq!(r.p_value, 0.0);
        let r = t_test_paired_abs(&[1.0, -2.0, 3.0], &[-1.0, 2.0, 3.0]).unwrap();
        assert!(r.zero_variance);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn pearson_identity_and_permutation_oracle() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let (r, _) = pearson(&xs, &xs).unwrap();
        assert!((r - 1.0).abs() < 1e-15);

        let ys = [2.0, 1.0, 4.0, 3.0];
        let (rho, test) = pearson(&xs, &ys).unwrap();
        assert!((rho - 0.6).abs() < 1e-12);
        // Exhaustive permutation distribution of rho over 4! orderings.
        let mut perms = Vec::new();
        permute(&mut vec![0, 1, 2, 3], 0, &mut perms);
        assert_eq!(perms.len(), 24);
        let extreme = perms
            .iter()
            .filter(|p| {
                let yp: Vec<f64> = p.iter().map(|&i| ys[i]).collect();
                pearson(&xs, &yp).unwrap().0.abs() >= rho.abs() - 1e-12
            })
            .count();
        let perm_p = extreme as f64 / 24.0;
        // 10/24 orderings reach |rho| >= 0.6; the t approximation gives 0.4.
        assert!((perm_p - 10.0 / 24.0).abs() < 1e-12);
        assert!((test.p_value - 0.4).abs() < 1e-9);
        assert!((test.p_value - perm_p).abs() < 0.05);
    }

    fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == v.len() {
            out.push(v.clone());
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, out);
            v.swap(k, i);
        }
    }

    #[test]
    fn pearson_rejects_constant_input() {
        assert!(matches!(
            pearson(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]),
            Err(Error::ZeroVariance)
        ));
    }

    #[test]
    fn wilcoxon_extremes() {
        let all_pos: Vec<f64> = (1..=45).map(|i| i as f64 * 0.01).collect();
        let r = wilcoxon_signed_rank(&all_pos).unwrap();
        assert!(r.p_value < 1e-8);
        assert_eq!(r.statistic, 45.0 * 46.0 / 2.0);

        let balanced = [1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0];
        let r = wilcoxon_signed_rank(&balanced).unwrap();
        assert!((r.p_value - 1.0).abs() < 1e-12);

        assert!(matches!(
            wilcoxon_signed_rank(&[0.0; 6]),
            Err(Error::InsufficientData(_))
        ));
        assert!(wilcoxon_signed_rank(&[1.0, 2.0, 0.0, 0.0, -1.0]).is_err());
    }

    #[test]
    fn wilcoxon_exact_matches_sign_enumeration() {
        let xs = [0.8, -0.3, 1.7, 2.2, -0.9, 1.1, 0.4, 1.9];
        // Brute force: every one of the 2^8 sign assignments of the ranks.
        let abs: Vec<f64> = xs.iter().map(|x| f64::abs(*x)).collect();
        let ranks = average_ranks(&abs);
        let w_obs: f64 = ranks.iter().zip(&xs).filter(|(_, x)| **x > 0.0).map(|(r, _)| r).sum();
        let mut le = 0;
        let mut ge = 0;
        for mask in 0u32..256 {
            let w: f64 = (0..8).filter(|i| mask >> i & 1 == 1).map(|i| ranks[i]).sum();
            if w <= w_obs + 1e-12 {
                le += 1;
            }
            if w >= w_obs - 1e-12 {
                ge += 1;
            }
        }
        let brute = (2.0 * le.min(ge) as f64 / 256.0).min(1.0);
        let r = wilcoxon_signed_rank(&xs).unwrap();
        assert!((r.p_value - brute).abs() < 1e-12);
        let normal = wilcoxon_normal_p(&xs).unwrap();
        assert!((r.p_value - normal).abs() < 0.05, "{} vs {normal}", r.p_value);
    }

    #[test]
    fn ols_exact_line() {
        let x1 = vec![1.0, 2.0, 3.0, 4.0, 5.0];
        let x2 = vec![2.0, 1.0, 0.0, 1.0, 3.0];
        let y: Vec<f64> = x1.iter().zip(&x2).map(|(a, b)| 0.5 + 2.0 * a - 1.5 * b).collect();
        let fit = ols(&y, &[x1, x2], true).unwrap();
        assert!((fit.coefficients[0] - 0.5).abs() < 1e-12);
        assert!((fit.coefficients[1] - 2.0).abs() < 1e-12);
        assert!((fit.coefficients[2] + 1.5).abs() < 1e-12);
        assert!(fit.residuals.iter().all(|e| e.abs() < 1e-12));
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(fit.f_p_value, 0.0);
    }

    #[test]
    fn ols_noise_free_single_column() {
        let x = vec![0.3, -1.2, 2.5, 0.0, 4.1];
        let fit = ols(&x, std::slice::from_ref(&x), true).unwrap();
        assert!(fit.coefficients[0].abs() < 1e-12);
        assert!((fit.coefficients[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ols_rank_deficiency() {
        let x = vec![1.0, 2.0, 3.0, 4.0];
        let y = vec![1.0, 0.0, 2.0, 5.0];
        let twice: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
        assert!(matches!(ols(&y, &[x, twice], false), Err(Error::RankDeficient)));
        assert!(matches!(
            ols(&[1.0, 2.0], &[vec![1.0, 2.0]], true),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn special_function_spot_values() {
        assert!((ln_gamma(5.0) - 24f64.ln()).abs() < 1e-12);
        assert!((ln_gamma(0.5) - PI.sqrt().ln()).abs() < 1e-12);
        assert!((erfc(1.0) - 0.157_299_207_050_285_13).abs() < 1e-12);
        assert!((normal_cdf(1.959_963_984_540_054) - 0.975).abs() < 1e-12);
        assert!((beta_inc_reg(2.0, 3.0, 0.4) - 0.5248).abs() < 1e-12);
        assert!((f_survival(1.0, 2.0, 2.0) - 0.5).abs() < 1e-12);
    }
}
