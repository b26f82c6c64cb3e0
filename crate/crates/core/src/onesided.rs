//! One-sided Bayes factors for θ ≤ 0 against θ ≰ 0, and the three-way test
//! θ = 0 / θ ≤ 0 / θ ≰ 0.
//!
//! Every one-sided factor is the ratio of posterior to prior odds of the
//! orthant under an encompassing prior centred at the origin.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mc::{self, McConfig};
use crate::model::{equicorrelation_info, Dims, SuffStats};
use crate::precise::{self, check_data, semiconj_breaks, ConjKernel, Mode};
use crate::priors::{
    prior_orthant_prob, AdaptiveGPrior, ConjugatePrior, GMixturePrior, MixingLaw, PriorScale,
    SemiConjugatePrior, VariancePrior,
};
use crate::quad::{self, Piece, QuadOptions};
use crate::special::{self, lgamma, ProbEstimate};

const P_FLOOR: f64 = 1e-300;
const P_CEIL: f64 = 1.0 - 1e-16;
const ESS_FLOOR: f64 = 1000.0;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct OnesidedDiagnostics {
    /// A probability was clamped into [1e-300, 1-1e-16] before the odds transform.
    pub clamped: bool,
    /// The directional condition for mixtures could not be verified for this Ω.
    pub condition_unverified: bool,
    pub quad_abs_err: f64,
    /// Delta-method standard error of `log_bf`.
    pub mc_std_err: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OnesidedResult {
    pub log_bf: f64,
    pub bf: f64,
    /// P(θ ≤ 0) under the encompassing prior.
    pub prior_prob: ProbEstimate,
    /// P(θ ≤ 0 | y) under the encompassing prior.
    pub post_prob: ProbEstimate,
    pub diag: OnesidedDiagnostics,
}

impl OnesidedResult {
    fn compose(prior: ProbEstimate, post: ProbEstimate, mut diag: OnesidedDiagnostics) -> Self {
        let mut clamped = false;
        let mut clamp = |x: f64| {
            let c = x.clamp(P_FLOOR, P_CEIL);
            clamped |= c != x;
            c
        };
        let (p, pc) = (clamp(prior.value), clamp(prior.complement));
        let (q, qc) = (clamp(post.value), clamp(post.complement));
        let log_bf = p.ln() - pc.ln() + qc.ln() - q.ln();
        let se_prior = prior.std_error / (p * pc);
        let se_post = post.std_error / (q * qc);
        diag.clamped |= clamped;
        diag.mc_std_err = se_prior.hypot(se_post);
        Self { log_bf, bf: log_bf.exp(), prior_prob: prior, post_prob: post, diag }
    }
}

/// Limiting posterior of the conjugate one-sided test along θ̂ = c·v, c → ∞.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OnesidedLimit {
    pub v_star: DVector<f64>,
    /// (I + Ω⁻¹)⁻¹.
    pub scale: DMatrix<f64>,
    pub df: f64,
    pub limit_log_bf: f64,
    pub prior_prob: ProbEstimate,
    pub post_prob: ProbEstimate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultipleResult {
    /// θ ≤ 0 (θ ≠ 0) against θ = 0.
    pub log_b10: f64,
    /// θ ≰ 0 against θ = 0.
    pub log_b20: f64,
    /// θ ≰ 0 against θ ≤ 0.
    pub log_b21: f64,
    /// Unconstrained alternative against θ = 0.
    pub log_bu0: f64,
    pub onesided: OnesidedResult,
}

/// Encompassing prior shared by the three hypotheses of the multiple test.
#[derive(Debug, Clone)]
pub enum Encompassing {
    Conjugate(ConjugatePrior),
    SemiConjugate(SemiConjugatePrior),
    Mixture(GMixturePrior),
}

/// Conjugate posterior of θ: multivariate t with location A·I·θ̂ and scale
/// (SSE + θ̂'(I⁻¹+Ω)⁻¹θ̂)/df · A, where A = (I + Ω⁻¹)⁻¹.
fn conjugate_posterior(
    info: &DMatrix<f64>,
    omega: &DMatrix<f64>,
    theta: &DVector<f64>,
    sse: f64,
    df: f64,
) -> Result<(DVector<f64>, DMatrix<f64>)> {
    let omega_inv = spd_inverse(omega, "Ω")?;
    let a = spd_inverse(&(info + omega_inv), "I + Ω⁻¹")?;
    let loc = &a * info * theta;
    let info_inv = spd_inverse(info, "information block")?;
    let m = (info_inv + omega)
        .cholesky()
        .ok_or_else(|| Error::InvalidPrior("I⁻¹ + Ω is not positive definite".into()))?;
    let q = theta.dot(&m.solve(theta));
    Ok((loc, a * ((sse + q) / df)))
}

fn spd_inverse(m: &DMatrix<f64>, what: &str) -> Result<DMatrix<f64>> {
    let inv = m
        .clone()
        .cholesky()
        .ok_or_else(|| Error::InvalidPrior(format!("{what} is not positive definite")))?
        .inverse();
    Ok(0.5 * (&inv + inv.transpose()))
}

fn post_df(dims: &Dims, v: &VariancePrior) -> f64 {
    dims.nf() + v.nu - dims.r2f()
}

/// One-sided Bayes factor under the conjugate encompassing prior N(0, σ²Ω).
pub fn bf_onesided_conjugate(
    stats: &SuffStats,
    encompassing: &ConjugatePrior,
    cfg: &McConfig,
) -> Result<OnesidedResult> {
    let v = &encompassing.variance;
    check_data(stats, v, v)?;
    cfg.validate()?;
    let omega = encompassing.scale.resolve(&stats.info_theta)?;
    let df = post_df(&stats.dims, v);
    let (loc, scale) =
        conjugate_posterior(&stats.info_theta, &omega, &stats.theta_hat, v.sse(stats.s_y2), df)?;
    let prior = prior_orthant_prob(&omega, cfg)?;
    let post = mc::mvt_orthant(&loc, &scale, df, &cfg.derive(1))?;
    Ok(OnesidedResult::compose(prior, post, OnesidedDiagnostics::default()))
}

/// ln B₁₀ for the univariate one-sided test with Ω = 1, ν = 0 and equicorrelated errors:
/// B₁₀ = 1/T_n(-m) - 1 with m = sign(t)·√(n²/(1+(n-1)ρ + t⁻²(n-1)(1+n+(n-1)ρ))).
/// In limit mode m = ±n/√(1+(n-1)ρ) with the sign of t (t ≥ 0 counts as positive).
pub fn ln_bf_onesided_univariate(t: f64, n: usize, rho: f64, mode: Mode) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::Domain(format!("ρ must lie in [0, 1], got {rho}")));
    }
    if t.is_nan() {
        return Err(Error::Domain("t is NaN".into()));
    }
    let nf = n as f64;
    let base = 1.0 + (nf - 1.0) * rho;
    let m = match mode {
        Mode::Limit => nf / base.sqrt(),
        Mode::Value => {
            if t == 0.0 {
                0.0
            } else {
                let extra = (nf - 1.0) * (nf + base) / (t * t);
                nf / (base + extra).sqrt()
            }
        }
    };
    let m = if t < 0.0 { -m } else { m };
    let (lo, hi) = special::student_t_ln_cdf_pair(-m, nf)?;
    Ok(hi - lo)
}

/// B₁₀ for the univariate one-sided test; see [`ln_bf_onesided_univariate`].
pub fn bf_onesided_univariate(t: f64, n: usize, rho: f64, mode: Mode) -> Result<f64> {
    ln_bf_onesided_univariate(t, n, rho, mode).map(f64::exp)
}

/// Limit of the conjugate one-sided Bayes factor along θ̂ = c·v as c → ∞: the
/// posterior orthant probability of a t with location
/// v* = A·I·v·√df / √(v'(I⁻¹+Ω)⁻¹v), scale A = (I + Ω⁻¹)⁻¹ and df = n + ν - r₂.
pub fn onesided_limit_direction(
    v: &DVector<f64>,
    encompassing: &ConjugatePrior,
    dims: &Dims,
    info: &DMatrix<f64>,
    cfg: &McConfig,
) -> Result<OnesidedLimit> {
    if v.len() != dims.r1 || info.nrows() != dims.r1 {
        return Err(Error::Domain(format!("direction must have length r1 = {}", dims.r1)));
    }
    let norm = v.norm();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::Domain("direction must be a non-zero finite vector".into()));
    }
    let v = v / norm;
    let omega = encompassing.scale.resolve(info)?;
    let df = post_df(dims, &encompassing.variance);
    if !(df > 0.0) {
        return Err(Error::InvalidModel(format!("posterior degrees of freedom {df} not positive")));
    }
    let omega_inv = spd_inverse(&omega, "Ω")?;
    let scale = spd_inverse(&(info + omega_inv), "I + Ω⁻¹")?;
    let m = (spd_inverse(info, "information block")? + &omega)
        .cholesky()
        .ok_or_else(|| Error::InvalidPrior("I⁻¹ + Ω is not positive definite".into()))?;
    let q = v.dot(&m.solve(&v));
    let v_star = &scale * info * &v * (df / q).sqrt();
    let prior = prior_orthant_prob(&omega, cfg)?;
    let post = mc::mvt_orthant(&v_star, &scale, df, &cfg.derive(1))?;
    let res = OnesidedResult::compose(prior, post, OnesidedDiagnostics::default());
    Ok(OnesidedLimit { v_star, scale, df, limit_log_bf: res.log_bf, prior_prob: prior, post_prob: post })
}

/// One-sided Bayes factor under the independence prior θ ~ N(0, Ω), σ² ~ inv-χ²(s², ν).
/// Limit mode returns the value the factor converges to as |θ̂| → ∞: the
/// posterior of θ tends to the prior, so the odds ratio tends to 1.
pub fn bf_onesided_independence(
    stats: &SuffStats,
    encompassing: &SemiConjugatePrior,
    cfg: &McConfig,
    mode: Mode,
) -> Result<OnesidedResult> {
    let v = &encompassing.variance;
    check_data(stats, v, v)?;
    cfg.validate()?;
    let omega = encompassing.scale.resolve(&stats.info_theta)?;
    let prior = prior_orthant_prob(&omega, cfg)?;
    if mode == Mode::Limit {
        return Ok(OnesidedResult::compose(prior, prior, OnesidedDiagnostics::default()));
    }
    let a = 0.5 * post_df(&stats.dims, v);
    let sse = v.sse(stats.s_y2);
    if stats.dims.r1 == 1 {
        let (post, err) = independence_quadrature(stats, omega[(0, 0)], sse, a)?;
        let diag = OnesidedDiagnostics { quad_abs_err: err, ..Default::default() };
        return Ok(OnesidedResult::compose(prior, post, diag));
    }
    let post = independence_importance(stats, &omega, sse, a, &cfg.derive(1))?;
    Ok(OnesidedResult::compose(prior, post, OnesidedDiagnostics::default()))
}

fn independence_quadrature(stats: &SuffStats, omega: f64, sse: f64, a: f64) -> Result<(ProbEstimate, f64)> {
    let info = stats.info_theta[(0, 0)];
    let sd = omega.sqrt();
    let th = stats.theta_hat[0];
    let logf = |x: f64| {
        let d = x - th;
        -a * (sse + info * d * d).ln() + special::normal_ln_pdf(x / sd)
    };
    let brk = semiconj_breaks(info, sd, th, sse, a);
    let opts = QuadOptions::default();
    let side = |neg: bool| {
        let pieces: Vec<Piece> = brk
            .windows(2)
            .filter(|p| if neg { p[1] <= 0.0 } else { p[0] >= 0.0 })
            .map(|p| Piece::Finite(p[0], p[1]))
            .collect();
        quad::integrate_log(logf, &pieces, &opts)
    };
    let (lo, hi) = (side(true), side(false));
    if !lo.converged || !hi.converged || !lo.ln_value.is_finite() || !hi.ln_value.is_finite() {
        return Err(Error::IntegrationFailure("independence posterior quadrature did not converge".into()));
    }
    let (p, pc) = log_pair(lo.ln_value, hi.ln_value);
    Ok((ProbEstimate::exact_pair(p, pc), lo.rel_err.max(hi.rel_err)))
}

/// (e^a/(e^a+e^b), e^b/(e^a+e^b)) without overflow.
fn log_pair(a: f64, b: f64) -> (f64, f64) {
    let d = b - a;
    let p = (-libm::log1p(d.exp())).exp();
    let pc = (-libm::log1p((-d).exp())).exp();
    (p, pc)
}

/// Posterior orthant probability under the independence prior by importance
/// sampling. The proposal is an equal mixture of the matching conjugate
/// posterior and the prior, which keeps the weights bounded when the data and
/// the prior disagree.
fn independence_importance(
    stats: &SuffStats,
    omega: &DMatrix<f64>,
    sse: f64,
    a: f64,
    cfg: &McConfig,
) -> Result<ProbEstimate> {
    let r = stats.dims.r1;
    let df = 2.0 * a;
    let info = &stats.info_theta;
    let th = &stats.theta_hat;
    // Conjugate prior with the same θ-scale at the posterior variance estimate.
    let s2_hat = sse / df;
    let (loc, scale) = conjugate_posterior(info, &(omega / s2_hat), th, sse, df)?;
    let ls = scale
        .clone()
        .cholesky()
        .ok_or_else(|| Error::InvalidPrior("posterior scale not positive definite".into()))?;
    let lo = omega
        .clone()
        .cholesky()
        .ok_or_else(|| Error::InvalidPrior("Ω is not positive definite".into()))?;
    let (ls_l, lo_l) = (ls.l(), lo.l());
    let ln_det_s: f64 = 2.0 * ls_l.diagonal().iter().map(|d| d.ln()).sum::<f64>();
    let ln_det_o: f64 = 2.0 * lo_l.diagonal().iter().map(|d| d.ln()).sum::<f64>();
    let rf = r as f64;
    let t_const = lgamma(0.5 * (df + rf)) - lgamma(0.5 * df) - 0.5 * rf * (df * std::f64::consts::PI).ln()
        - 0.5 * ln_det_s;
    let n_const = -0.5 * rf * (2.0 * std::f64::consts::PI).ln() - 0.5 * ln_det_o;
    let chi = ChiSquared::new(df).map_err(|e| Error::Domain(e.to_string()))?;

    let per_batch = cfg.n_points.div_ceil(mc::REPLICATES);
    let mut logw = Vec::with_capacity(per_batch * mc::REPLICATES);
    let mut inside = Vec::with_capacity(per_batch * mc::REPLICATES);
    for q in 0..mc::REPLICATES {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(q as u64);
        for _ in 0..per_batch {
            let z = DVector::from_iterator(r, (0..r).map(|_| rng.sample::<f64, _>(StandardNormal)));
            let x = if rng.random::<f64>() < 0.5 {
                let w: f64 = chi.sample(&mut rng);
                &loc + &ls_l * z * (df / w).sqrt()
            } else {
                &lo_l * z
            };
            let d = &x - &loc;
            let qs = d.dot(&ls.solve(&d));
            let qo = x.dot(&lo.solve(&x));
            let ln_t = t_const - 0.5 * (df + rf) * (qs / df).ln_1p();
            let ln_n = n_const - 0.5 * qo;
            let m = ln_t.max(ln_n);
            let ln_q = m + (0.5 * ((ln_t - m).exp() + (ln_n - m).exp())).ln();
            let e = &x - th;
            let ln_target = -a * (sse + e.dot(&(info * &e))).ln() + ln_n;
            logw.push(ln_target - ln_q);
            inside.push(x.iter().all(|v| *v <= 0.0));
        }
    }
    let mx = logw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = logw.iter().map(|l| (l - mx).exp()).collect();
    let (sw, sw2) = w.iter().fold((0.0, 0.0), |acc, x| (acc.0 + x, acc.1 + x * x));
    let ess = sw * sw / sw2;
    if !(ess >= ESS_FLOOR) {
        return Err(Error::McFailure(format!("importance sampling ESS {ess:.0} below {ESS_FLOOR}")));
    }
    let mut batch = Vec::with_capacity(mc::REPLICATES);
    let (mut s_in, mut s_out) = (0.0, 0.0);
    for q in 0..mc::REPLICATES {
        let (mut bi, mut bo) = (0.0, 0.0);
        for k in q * per_batch..(q + 1) * per_batch {
            if inside[k] {
                bi += w[k];
            } else {
                bo += w[k];
            }
        }
        s_in += bi;
        s_out += bo;
        batch.push(bi / (bi + bo));
    }
    let (_, se) = mc::replicate_summary(&batch);
    Ok(ProbEstimate { value: s_in / (s_in + s_out), complement: s_out / (s_in + s_out), std_error: se })
}

/// True when Ω is a scalar multiple of I⁻¹ (relative tolerance 1e-8).
fn proportional_to_inverse_info(omega: &DMatrix<f64>, info: &DMatrix<f64>) -> bool {
    let p = omega * info;
    let c = p.trace() / p.nrows() as f64;
    let dev = (&p - DMatrix::identity(p.nrows(), p.nrows()) * c).abs().max();
    c > 0.0 && dev <= 1e-8 * c
}

/// One-sided Bayes factor under a scale mixture of conjugate priors N(0, gσ²Ω), g ~ π.
/// The prior orthant probability does not depend on g; the posterior one is
/// averaged over the posterior of g, integrated in s = ln g.
pub fn bf_onesided_mixture(stats: &SuffStats, mixture: &GMixturePrior, cfg: &McConfig) -> Result<OnesidedResult> {
    let v = mixture.variance;
    check_data(stats, &v, &v)?;
    cfg.validate()?;
    let dims = stats.dims;
    let base = mixture.base.resolve(&stats.info_theta)?;
    let mut diag = OnesidedDiagnostics {
        condition_unverified: dims.r1 > 1 && !proportional_to_inverse_info(&base, &stats.info_theta),
        ..Default::default()
    };
    let prior = prior_orthant_prob(&base, cfg)?;
    let df = post_df(&dims, &v);
    let sse = v.sse(stats.s_y2);
    if let MixingLaw::PointMass { g0 } = mixture.law {
        let (loc, scale) = conjugate_posterior(&stats.info_theta, &(&base * g0), &stats.theta_hat, sse, df)?;
        let post = mc::mvt_orthant(&loc, &scale, df, &cfg.derive(1))?;
        return Ok(OnesidedResult::compose(prior, post, diag));
    }
    let k = ConjKernel::new(&stats.info_theta, &base, &stats.theta_hat)?;
    // ln p(s | y) up to a constant; the H₀ variance prior cancels.
    let ln_post_s = |s: f64| {
        let g = s.exp();
        -0.5 * k.ln_det(g) - 0.5 * df * (sse + k.quad(g)).ln() + mixture.law.ln_density_log_g(s)
    };
    if dims.r1 == 1 {
        let info = stats.info_theta[(0, 0)];
        let (w, th) = (base[(0, 0)], stats.theta_hat[0]);
        let ln_orthant = |s: f64| {
            let g = s.exp();
            let a = 1.0 / (info + 1.0 / (g * w));
            let loc = a * info * th;
            let q = th * th / (1.0 / info + g * w);
            let z = loc / ((sse + q) / df * a).sqrt();
            special::student_t_ln_cdf_pair(-z, df).unwrap_or((f64::NAN, f64::NAN))
        };
        let (pieces, _) = precise::log_g_pieces(&ln_post_s, 80.0)?;
        let opts = QuadOptions::default();
        let lo = quad::integrate_log(|s| ln_post_s(s) + ln_orthant(s).0, &pieces, &opts);
        let hi = quad::integrate_log(|s| ln_post_s(s) + ln_orthant(s).1, &pieces, &opts);
        if !lo.converged || !hi.converged || !lo.ln_value.is_finite() || !hi.ln_value.is_finite() {
            return Err(Error::IntegrationFailure("one-sided mixture quadrature did not converge".into()));
        }
        let (p, pc) = log_pair(lo.ln_value, hi.ln_value);
        diag.quad_abs_err = lo.rel_err.max(hi.rel_err);
        return Ok(OnesidedResult::compose(prior, ProbEstimate::exact_pair(p, pc), diag));
    }
    // r₁ > 1: trapezoid rule in s over the bulk of p(s | y), one orthant
    // evaluation per node on its own derived stream.
    const STEP: f64 = 0.125;
    let (pieces, peak) = precise::log_g_pieces(&ln_post_s, 40.0)?;
    let (s_lo, s_hi) = pieces.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |acc, p| match *p {
        Piece::Finite(a, b) => (acc.0.min(a), acc.1.max(b)),
        Piece::LeftRay { b, .. } => (acc.0.min(b), acc.1),
        Piece::RightRay { a, .. } => (acc.0, acc.1.max(a)),
    });
    if pieces.iter().any(|p| !matches!(p, Piece::Finite(..))) {
        diag.quad_abs_err = f64::NAN;
    }
    let nodes = ((s_hi - s_lo) / STEP).ceil() as usize;
    let (mut sw, mut sp, mut spc, mut var) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..=nodes {
        let s = s_lo + (s_hi - s_lo) * i as f64 / nodes as f64;
        let end = if i == 0 || i == nodes { 0.5 } else { 1.0 };
        let w = end * (ln_post_s(s) - peak).exp();
        if w < 1e-14 {
            continue;
        }
        let omega = &base * s.exp();
        let (loc, scale) = conjugate_posterior(&stats.info_theta, &omega, &stats.theta_hat, sse, df)?;
        // Point budget proportional to the node weight (peak node gets n_points/8).
        let budget = ((cfg.n_points / 8) as f64 * w).ceil() as usize;
        let node_cfg = McConfig { n_points: budget.max(1000), ..cfg.derive(i as u64 + 2) };
        let pr = mc::mvt_orthant(&loc, &scale, df, &node_cfg)?;
        sw += w;
        sp += w * pr.value;
        spc += w * pr.complement;
        var += w * w * pr.std_error * pr.std_error;
    }
    let post = ProbEstimate { value: sp / sw, complement: spc / sw, std_error: var.sqrt() / sw };
    Ok(OnesidedResult::compose(prior, post, diag))
}

/// One-sided Bayes factor under the g-prior with g → ∞, the maximiser for the
/// supported hypothesis. The posterior of θ is t with location θ̂, scale
/// SSE/df·I⁻¹ and df = n + ν - r₂; the prior orthant probability is that of N(0, I⁻¹).
pub fn bf_onesided_adaptive_g(stats: &SuffStats, prior: &AdaptiveGPrior, cfg: &McConfig) -> Result<OnesidedResult> {
    let v = &prior.variance;
    check_data(stats, v, v)?;
    cfg.validate()?;
    let info_inv = PriorScale::GPrior(1.0).resolve(&stats.info_theta)?;
    let df = post_df(&stats.dims, v);
    let scale = &info_inv * (v.sse(stats.s_y2) / df);
    let pp = prior_orthant_prob(&info_inv, cfg)?;
    let post = mc::mvt_orthant(&stats.theta_hat, &scale, df, &cfg.derive(1))?;
    Ok(OnesidedResult::compose(pp, post, OnesidedDiagnostics::default()))
}

/// Three-way test θ = 0 / θ ≤ 0 (θ ≠ 0) / θ ≰ 0 under one encompassing prior.
/// With Bu0 the precise factor and P, Q the prior and posterior orthant
/// probabilities: B₁₀ = Bu0·Q/P, B₂₀ = Bu0·(1-Q)/(1-P), B₂₁ = B₂₀/B₁₀.
pub fn bf_multiple(
    stats: &SuffStats,
    prior0: &VariancePrior,
    encompassing: &Encompassing,
    cfg: &McConfig,
) -> Result<MultipleResult> {
    let (bu0, os) = match encompassing {
        Encompassing::Conjugate(p) => {
            (precise::bf_conjugate(stats, prior0, p)?.log_bf, bf_onesided_conjugate(stats, p, cfg)?)
        }
        Encompassing::SemiConjugate(p) => (
            precise::bf_semiconjugate(stats, prior0, p, cfg)?.log_bf,
            bf_onesided_independence(stats, p, cfg, Mode::Value)?,
        ),
        Encompassing::Mixture(m) => {
            (precise::bf_mixture(stats, prior0, m)?.log_bf, bf_onesided_mixture(stats, m, cfg)?)
        }
    };
    let c = |x: f64| x.clamp(P_FLOOR, P_CEIL).ln();
    let (p, pc) = (c(os.prior_prob.value), c(os.prior_prob.complement));
    let (q, qc) = (c(os.post_prob.value), c(os.post_prob.complement));
    let log_b10 = bu0 + q - p;
    let log_b20 = bu0 + qc - pc;
    Ok(MultipleResult { log_b10, log_b20, log_b21: log_b20 - log_b10, log_bu0: bu0, onesided: os })
}

/// Univariate one-sided value under Ω = 1, ν = 0 recomputed from sufficient
/// statistics, used to cross-check the closed form.
pub fn univariate_onesided_stats(t: f64, n: usize, rho: f64) -> Result<(SuffStats, ConjugatePrior)> {
    let stats = SuffStats::univariate_from_t(n, rho, t, n as f64 - 1.0)?;
    debug_assert!((stats.info_theta[(0, 0)] - equicorrelation_info(n, rho)).abs() < 1e-9);
    let prior = ConjugatePrior { scale: PriorScale::Identity, variance: VariancePrior::objective() };
    Ok((stats, prior))
}
