//! Bayes factors for the precise test θ = 0 against θ ≠ 0.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mc::{self, Lattice, McConfig};
use crate::model::{equicorrelation_info, Dims, SuffStats};
use crate::priors::{
    AdaptiveGPrior, ConjugatePrior, FatTailedTPrior, GMixturePrior, MixingLaw, SemiConjugatePrior,
    VariancePrior,
};
use crate::quad::{self, Piece, QuadOptions};
use crate::special::{self, lgamma};

/// Numeric diagnostics attached to a Bayes factor.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BfDiagnostics {
    /// Estimated absolute error of `log_bf` from quadrature.
    pub quad_abs_err: f64,
    /// Monte Carlo standard error of `log_bf`.
    pub mc_std_err: f64,
    /// Maximising g for the adaptive prior.
    pub g_max: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BfResult {
    pub log_bf: f64,
    /// exp(log_bf); may be +inf when not representable.
    pub bf: f64,
    pub diag: BfDiagnostics,
}

impl BfResult {
    pub fn from_log(log_bf: f64, diag: BfDiagnostics) -> Self {
        Self { log_bf, bf: log_bf.exp(), diag }
    }

    pub fn exact(log_bf: f64) -> Self {
        Self::from_log(log_bf, BfDiagnostics::default())
    }
}

/// Evaluate a closed form at a finite t or at its |t| → ∞ limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Value,
    Limit,
}

/// Behaviour of a Bayes factor as |θ̂| → ∞.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum LimitKind {
    Zero,
    Finite(f64),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitResult {
    pub kind: LimitKind,
    /// ln of the finite limit, when finite.
    pub log_value: Option<f64>,
}

pub(crate) fn check_data(stats: &SuffStats, v0: &VariancePrior, v1: &VariancePrior) -> Result<()> {
    if stats.s_y2 == 0.0 && (v0.nu == 0.0 || v1.nu == 0.0) {
        return Err(Error::InvalidData("s_y² = 0 requires ν₀ > 0 and ν₁ > 0".into()));
    }
    Ok(())
}

/// ln of the variance-prior constant shared by the conjugate and semi-conjugate forms:
/// (k₁/k₀) Γ(a₁)/Γ(a₀) 2^{(ν₁-ν₀)/2}, with a_t = (n+ν_t-r₂)/2.
pub(crate) fn ln_c2(dims: &Dims, v0: &VariancePrior, v1: &VariancePrior) -> f64 {
    let a0 = 0.5 * (dims.nf() + v0.nu - dims.r2 as f64);
    let a1 = 0.5 * (dims.nf() + v1.nu - dims.r2 as f64);
    v1.ln_k() - v0.ln_k() + lgamma(a1) - lgamma(a0)
        + 0.5 * (v1.nu - v0.nu) * std::f64::consts::LN_2
}

/// Conjugate Bayes factor diagonalised against the information block:
/// with I = LL', the eigenpairs (λ, V) of L'ΩL give |Ω+I⁻¹||I| = Π(1+λ) and
/// θ̂'(I⁻¹+gΩ)⁻¹θ̂ = Σ η²/(1+gλ) with η = V'L'θ̂.
#[derive(Debug, Clone)]
pub(crate) struct ConjKernel {
    pub lambda: Vec<f64>,
    pub eta2: Vec<f64>,
}

impl ConjKernel {
    pub fn new(info: &DMatrix<f64>, omega: &DMatrix<f64>, theta: &DVector<f64>) -> Result<Self> {
        let l = info
            .clone()
            .cholesky()
            .ok_or_else(|| Error::InvalidModel("information block is not positive definite".into()))?
            .l();
        let m = l.transpose() * omega * &l;
        let m = 0.5 * (&m + m.transpose());
        let eig = SymmetricEigen::new(m);
        let eta = eig.eigenvectors.transpose() * (l.transpose() * theta);
        Ok(Self {
            lambda: eig.eigenvalues.iter().copied().collect(),
            eta2: eta.iter().map(|e| e * e).collect(),
        })
    }

    pub fn ssr(&self) -> f64 {
        self.eta2.iter().sum()
    }

    /// θ̂'(I⁻¹ + gΩ)⁻¹θ̂.
    pub fn quad(&self, g: f64) -> f64 {
        self.lambda.iter().zip(&self.eta2).map(|(l, e)| e / (1.0 + g * l)).sum()
    }

    /// Σ ln(1 + gλ).
    pub fn ln_det(&self, g: f64) -> f64 {
        self.lambda.iter().map(|l| (g * l).ln_1p()).sum()
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// ln B₁₀ for the conjugate prior with scale gΩ.
    pub fn ln_bf(&self, g: f64, dims: &Dims, s_y2: f64, v0: &VariancePrior, v1: &VariancePrior) -> f64 {
        let a0 = 0.5 * (dims.nf() + v0.nu - dims.r2 as f64);
        let a1 = 0.5 * (dims.nf() + v1.nu - dims.r2 as f64);
        ln_c2(dims, v0, v1) - 0.5 * self.ln_det(g) - a1 * (v1.sse(s_y2) + self.quad(g)).ln()
            + a0 * (v0.sse(s_y2) + self.ssr()).ln()
    }
}

/// Conjugate normal / scaled-inverse-χ² Bayes factor (closed form).
pub fn bf_conjugate(stats: &SuffStats, prior0: &VariancePrior, prior1: &ConjugatePrior) -> Result<BfResult> {
    check_data(stats, prior0, &prior1.variance)?;
    let omega = prior1.scale.resolve(&stats.info_theta)?;
    let k = ConjKernel::new(&stats.info_theta, &omega, &stats.theta_hat)?;
    let l = k.ln_bf(1.0, &stats.dims, stats.s_y2, prior0, &prior1.variance);
    if !l.is_finite() {
        return Err(Error::InvalidData(format!("non-finite log Bayes factor {l}")));
    }
    Ok(BfResult::exact(l))
}

/// Limit of the conjugate Bayes factor as |θ̂| → ∞. With equal degrees of
/// freedom the supremum over directions is reported, or the limit along
/// `direction` when given.
pub fn bf_conjugate_limit(
    prior0: &VariancePrior,
    prior1: &ConjugatePrior,
    dims: &Dims,
    info: &DMatrix<f64>,
    direction: Option<&DVector<f64>>,
) -> Result<LimitResult> {
    let (nu0, nu1) = (prior0.nu, prior1.variance.nu);
    if nu0 < nu1 {
        return Ok(LimitResult { kind: LimitKind::Zero, log_value: None });
    }
    if nu0 > nu1 {
        return Ok(LimitResult { kind: LimitKind::Infinite, log_value: None });
    }
    let omega = prior1.scale.resolve(info)?;
    let dir = match direction {
        Some(v) => v.clone(),
        None => DVector::from_element(dims.r1, 1.0),
    };
    let k = ConjKernel::new(info, &omega, &dir)?;
    let ratio = match direction {
        Some(_) => k.ssr() / k.quad(1.0),
        None => 1.0 + k.lambda_max(),
    };
    let a = 0.5 * (dims.nf() + nu1 - dims.r2 as f64);
    let lv = ln_c2(dims, prior0, &prior1.variance) - 0.5 * k.ln_det(1.0) + a * ratio.ln();
    Ok(LimitResult { kind: LimitKind::Finite(lv.exp()), log_value: Some(lv) })
}

/// Closed-form univariate Bayes factor for X_θ = 𝟏_n, Ω = 1, equicorrelation ρ,
/// objective variance priors, as a function of the t statistic.
pub fn bf_univariate_t(t: f64, n: usize, rho: f64, mode: Mode) -> Result<f64> {
    Ok(ln_bf_univariate_t(t, n, rho, mode)?.exp())
}

pub fn ln_bf_univariate_t(t: f64, n: usize, rho: f64, mode: Mode) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::Domain(format!("ρ must lie in [0, 1], got {rho}")));
    }
    let nf = n as f64;
    let c = equicorrelation_info(n, rho);
    let d = nf + 1.0 + (nf - 1.0) * rho;
    // n t²/(t²+n-1) written to survive t → ∞.
    let frac = match mode {
        Mode::Limit => nf,
        Mode::Value => {
            if t == 0.0 {
                0.0
            } else {
                nf / (1.0 + (nf - 1.0) / (t * t))
            }
        }
    };
    Ok(-0.5 * c.ln_1p() - 0.5 * nf * (-frac / d).ln_1p())
}

/// Breakpoints for ∫(SSE + I(x-θ̂)²)^{-a} N(x; 0, sd²)dx. The posterior mode is at most
/// sd²·a·√(I/SSE) from the origin, so the range covers it with 60 sd to spare.
pub(crate) fn semiconj_breaks(info: f64, sd: f64, th: f64, sse: f64, a: f64) -> Vec<f64> {
    let w = (sse / info).sqrt();
    let lim = sd * (60.0 + 2.0 * a * sd * (info / sse).sqrt());
    quad::frame_breaks(-lim, lim, &[0.0, th, th - w, th + w, -sd, sd])
}

/// ln of the normal-prior integral ∫(SSE₁ + (θ-θ̂)'I(θ-θ̂))^{-a} N(θ; 0, Ω)dθ and its relative error.
fn semiconj_integral(
    stats: &SuffStats,
    omega: &DMatrix<f64>,
    sse1: f64,
    a1: f64,
    cfg: &McConfig,
) -> Result<(f64, f64, f64)> {
    if stats.dims.r1 == 1 {
        let info = stats.info_theta[(0, 0)];
        let sd = omega[(0, 0)].sqrt();
        let th = stats.theta_hat[0];
        let logf = |x: f64| {
            let d = x - th;
            -a1 * (sse1 + info * d * d).ln() + special::normal_ln_pdf(x / sd) - sd.ln()
        };
        let brk = semiconj_breaks(info, sd, th, sse1, a1);
        let pieces: Vec<Piece> = brk.windows(2).map(|p| Piece::Finite(p[0], p[1])).collect();
        let r = quad::integrate_log(logf, &pieces, &QuadOptions::default());
        if !r.converged || !r.ln_value.is_finite() {
            return Err(Error::IntegrationFailure(format!(
                "semi-conjugate quadrature did not reach tolerance (rel err {:.2e})",
                r.rel_err
            )));
        }
        return Ok((r.ln_value, r.rel_err, 0.0));
    }
    let lo = omega
        .clone()
        .cholesky()
        .ok_or_else(|| Error::InvalidPrior("Ω is not positive definite".into()))?
        .l();
    let r = stats.dims.r1;
    let eval = |z: &DVector<f64>| {
        let d = &lo * z - &stats.theta_hat;
        let q = (d.transpose() * &stats.info_theta * &d)[(0, 0)];
        -a1 * (sse1 + q).ln()
    };
    let mut per_rep = cfg.n_points.max(1000).div_ceil(2 * mc::REPLICATES);
    loop {
        let lat = Lattice::new(r, per_rep, cfg.seed);
        let mut u = vec![0.0; r];
        let logs: Vec<f64> = (0..mc::REPLICATES)
            .map(|q| {
                let mut vals = Vec::with_capacity(2 * lat.n);
                for k in 0..lat.n {
                    lat.point(q, k, &mut u);
                    let z = DVector::from_iterator(r, u.iter().map(|&p| special::normal_quantile(p)));
                    vals.push(eval(&z));
                    vals.push(eval(&(-z)));
                }
                log_mean_exp(&vals)
            })
            .collect();
        let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let scaled: Vec<f64> = logs.iter().map(|l| (l - m).exp()).collect();
        let (mean, se) = mc::replicate_summary(&scaled);
        if 3.0 * se <= 1e-3 * mean {
            return Ok((m + mean.ln(), 0.0, se / mean));
        }
        if 2 * lat.n * mc::REPLICATES * 2 > (1 << 22) {
            return Err(Error::IntegrationFailure(format!(
                "semi-conjugate Monte Carlo relative error {:.2e} above 1e-3/3",
                se / mean
            )));
        }
        per_rep = lat.n * 2;
    }
}

pub(crate) fn log_mean_exp(v: &[f64]) -> f64 {
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + (v.iter().map(|x| (x - m).exp()).sum::<f64>() / v.len() as f64).ln()
}

/// Bayes factor with a normal prior on θ independent of σ².
pub fn bf_semiconjugate(
    stats: &SuffStats,
    prior0: &VariancePrior,
    prior1: &SemiConjugatePrior,
    cfg: &McConfig,
) -> Result<BfResult> {
    check_data(stats, prior0, &prior1.variance)?;
    let dims = stats.dims;
    let omega = prior1.scale.resolve(&stats.info_theta)?;
    let v1 = &prior1.variance;
    let a0 = 0.5 * (dims.nf() + prior0.nu - dims.r2 as f64);
    let a1 = 0.5 * (dims.nf() + v1.nu - dims.r2 as f64);
    let (lj, qerr, mcerr) = semiconj_integral(stats, &omega, v1.sse(stats.s_y2), a1, cfg)?;
    let l = ln_c2(&dims, prior0, v1) + lj + a0 * (prior0.sse(stats.s_y2) + stats.ssr).ln();
    Ok(BfResult::from_log(l, BfDiagnostics { quad_abs_err: qerr, mc_std_err: mcerr, g_max: None }))
}

/// Limit of the semi-conjugate Bayes factor: 0, C₂ (= 1 for equal variance priors) or ∞.
pub fn bf_semiconjugate_limit(prior0: &VariancePrior, prior1: &SemiConjugatePrior, dims: &Dims) -> LimitResult {
    let (nu0, nu1) = (prior0.nu, prior1.variance.nu);
    if nu0 < nu1 {
        LimitResult { kind: LimitKind::Zero, log_value: None }
    } else if nu0 > nu1 {
        LimitResult { kind: LimitKind::Infinite, log_value: None }
    } else {
        let l = ln_c2(dims, prior0, &prior1.variance);
        LimitResult { kind: LimitKind::Finite(l.exp()), log_value: Some(l) }
    }
}

/// Pieces covering the region where `logf` (a function of s = ln g) is within
/// `drop` of its maximum, with rays attached at the scan edges when needed.
pub(crate) fn log_g_pieces<F: Fn(f64) -> f64>(logf: &F, drop: f64) -> Result<(Vec<Piece>, f64)> {
    const LO: f64 = -60.0;
    const HI: f64 = 120.0;
    const STEP: f64 = 0.25;
    let steps = ((HI - LO) / STEP) as usize;
    let vals: Vec<(f64, f64)> = (0..=steps)
        .map(|i| {
            let s = LO + STEP * i as f64;
            (s, logf(s))
        })
        .collect();
    let (imax, peak) = vals
        .iter()
        .enumerate()
        .filter(|(_, v)| v.1.is_finite())
        .map(|(i, v)| (i, v.1))
        .fold((usize::MAX, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    if imax == usize::MAX {
        return Err(Error::IntegrationFailure("mixture integrand is nowhere finite".into()));
    }
    let mut lo_i = imax;
    while lo_i > 0 && vals[lo_i - 1].1 > peak - drop {
        lo_i -= 1;
    }
    let mut hi_i = imax;
    while hi_i < steps && vals[hi_i + 1].1 > peak - drop {
        hi_i += 1;
    }
    let s_lo = vals[lo_i.saturating_sub(1)].0;
    let s_hi = vals[(hi_i + 1).min(steps)].0;
    let s_pk = vals[imax].0;
    let mut pieces = Vec::new();
    if lo_i == 0 {
        pieces.push(Piece::LeftRay { b: s_lo, scale: 8.0 });
    }
    let brk = quad::frame_breaks(s_lo, s_hi, &[s_pk - 2.0, s_pk, s_pk + 2.0]);
    for w in brk.windows(2) {
        pieces.push(Piece::Finite(w[0], w[1]));
    }
    if hi_i == steps {
        pieces.push(Piece::RightRay { a: s_hi, scale: 8.0 });
    }
    Ok((pieces, peak))
}

/// Bayes factor under a mixture of g-priors: ∫ B₁₀(g) π(g) dg, integrated in s = ln g.
pub fn bf_mixture(stats: &SuffStats, prior0: &VariancePrior, mixture: &GMixturePrior) -> Result<BfResult> {
    check_data(stats, prior0, &mixture.variance)?;
    let dims = stats.dims;
    let base = mixture.base.resolve(&stats.info_theta)?;
    let k = ConjKernel::new(&stats.info_theta, &base, &stats.theta_hat)?;
    let v1 = mixture.variance;
    if let MixingLaw::PointMass { g0 } = mixture.law {
        return Ok(BfResult::exact(k.ln_bf(g0, &dims, stats.s_y2, prior0, &v1)));
    }
    let logf = |s: f64| {
        let g = s.exp();
        k.ln_bf(g, &dims, stats.s_y2, prior0, &v1) + mixture.law.ln_density_log_g(s)
    };
    let (pieces, _) = log_g_pieces(&logf, 80.0)?;
    let r = quad::integrate_log(logf, &pieces, &QuadOptions::default());
    if !r.ln_value.is_finite() {
        return Err(if r.ln_value == f64::INFINITY {
            Error::Divergent("mixture integral is not finite".into())
        } else {
            Error::IntegrationFailure("mixture integral evaluated to a non-finite value".into())
        });
    }
    if !r.converged {
        return Err(Error::IntegrationFailure(format!("mixture quadrature rel err {:.2e}", r.rel_err)));
    }
    Ok(BfResult::from_log(r.ln_value, BfDiagnostics { quad_abs_err: r.rel_err, ..Default::default() }))
}

/// Bayes factor under the g-prior with g chosen to maximise it.
pub fn bf_adaptive(stats: &SuffStats, prior0: &VariancePrior, prior1: &AdaptiveGPrior) -> Result<BfResult> {
    check_data(stats, prior0, &prior1.variance)?;
    let dims = stats.dims;
    let v1 = prior1.variance;
    let (n, r1, r2) = (dims.nf(), dims.r1f(), dims.r2f());
    if prior0.nu == 0.0 && v1.nu == 0.0 {
        // Closed-form maximiser in terms of t² = SSR(n-1)/s_y².
        let t2 = stats.ssr * (n - 1.0) / stats.s_y2;
        let g = (n - r2 - r1) * t2 / (r1 * (n - 1.0)) - 1.0;
        if !(g > 0.0) {
            return Ok(BfResult::from_log(0.0, BfDiagnostics { g_max: Some(0.0), ..Default::default() }));
        }
        let l = 0.5 * r1 * (r1 * (n - 1.0) / (t2 * (n - r1 - r2))).ln()
            + 0.5 * (n - r2) * ((n - 1.0 + t2) * (n - r1 - r2) / ((n - 1.0) * (n - r2))).ln();
        return Ok(BfResult::from_log(l, BfDiagnostics { g_max: Some(g), ..Default::default() }));
    }
    let base = crate::priors::PriorScale::GPrior(1.0).resolve(&stats.info_theta)?;
    let k = ConjKernel::new(&stats.info_theta, &base, &stats.theta_hat)?;
    let f = |s: f64| k.ln_bf(s.exp(), &dims, stats.s_y2, prior0, &v1);
    let (g, l) = maximise_log_g(&f, k.ln_bf(0.0, &dims, stats.s_y2, prior0, &v1));
    Ok(BfResult::from_log(l, BfDiagnostics { g_max: Some(g), ..Default::default() }))
}

/// Maximise f(ln g) over g ∈ {0} ∪ [1e-8, 1e12]: grid bracketing then golden section.
/// Ties go to the smaller g.
pub(crate) fn maximise_log_g<F: Fn(f64) -> f64>(f: &F, at_zero: f64) -> (f64, f64) {
    let lo = 1e-8f64.ln();
    let hi = 1e12f64.ln();
    let steps = 200;
    let h = (hi - lo) / steps as f64;
    let mut best = (0usize, f64::NEG_INFINITY);
    for i in 0..=steps {
        let v = f(lo + h * i as f64);
        if v > best.1 {
            best = (i, v);
        }
    }
    let mut a = lo + h * best.0.saturating_sub(1) as f64;
    let mut b = lo + h * (best.0 + 1).min(steps) as f64;
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() < 1e-12 {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    let s = 0.5 * (a + b);
    let mut cand = (s.exp(), f(s));
    if best.1 > cand.1 {
        cand = ((lo + h * best.0 as f64).exp(), best.1);
    }
    if at_zero >= cand.1 {
        (0.0, at_zero)
    } else {
        cand
    }
}

/// Bayes factor with a scaled Student-t prior on a scalar θ (r₁ = 1, r₂ = 0).
pub fn bf_fat_tail(stats: &SuffStats, prior0: &VariancePrior, tprior: &FatTailedTPrior) -> Result<BfResult> {
    let dims = stats.dims;
    if dims.r1 != 1 || dims.r2 != 0 {
        return Err(Error::Unsupported("fat-tailed t prior supports only r1 = 1, r2 = 0".into()));
    }
    let v1 = &tprior.variance;
    check_data(stats, prior0, v1)?;
    let a0 = 0.5 * (dims.nf() + prior0.nu);
    let a1 = 0.5 * (dims.nf() + v1.nu);
    let sse1 = v1.sse(stats.s_y2);
    let info = stats.info_theta[(0, 0)];
    let th = stats.theta_hat[0];
    let (tau, nu) = (tprior.tau, tprior.nu_t);
    let logf = |x: f64| {
        let d = x - th;
        -a1 * (sse1 + info * d * d).ln() + special::student_t_ln_pdf(x / tau, nu) - tau.ln()
    };
    let w = (sse1 / info).sqrt();
    let scale = tau.max(w).max(th.abs());
    let lo = th.min(0.0) - 4.0 * tau.max(w);
    let hi = th.max(0.0) + 4.0 * tau.max(w);
    let brk = quad::frame_breaks(lo, hi, &[0.0, th, th - w, th + w, -tau, tau]);
    let mut pieces = vec![Piece::LeftRay { b: lo, scale }];
    pieces.extend(brk.windows(2).map(|p| Piece::Finite(p[0], p[1])));
    pieces.push(Piece::RightRay { a: hi, scale });
    let r = quad::integrate_log(logf, &pieces, &QuadOptions::default());
    if !r.converged || !r.ln_value.is_finite() {
        return Err(Error::IntegrationFailure(format!("fat-t quadrature rel err {:.2e}", r.rel_err)));
    }
    let l = ln_c2(&dims, prior0, v1) + r.ln_value + a0 * (prior0.sse(stats.s_y2) + stats.ssr).ln();
    Ok(BfResult::from_log(l, BfDiagnostics { quad_abs_err: r.rel_err, ..Default::default() }))
}

/// Growth exponents of the fat-t Bayes factor as |θ̂| → ∞: B₁₀ ~ |θ̂|^{(n+ν₀) - min(n+ν₁, ν+1)}.
pub fn fat_tail_exponent(n: usize, nu0: f64, nu1: f64, nu_t: f64) -> f64 {
    let nf = n as f64;
    (nf + nu0) - (nf + nu1).min(nu_t + 1.0)
}

/// Zero / finite / infinite classification of the fat-t Bayes factor limit.
/// A bounded limit has no closed-form value and is returned as `Finite(NaN)`.
pub fn classify_fat_tail(n: usize, nu0: f64, nu1: f64, nu_t: f64) -> LimitKind {
    let e = fat_tail_exponent(n, nu0, nu1, nu_t);
    if e < 0.0 {
        LimitKind::Zero
    } else if e > 0.0 {
        LimitKind::Infinite
    } else {
        LimitKind::Finite(f64::NAN)
    }
}
