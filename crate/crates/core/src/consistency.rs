//! Analytic verdicts on how a Bayes factor behaves as |θ̂| → ∞, and an
//! empirical probe that checks them by evaluating the factor along a ray.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mc::McConfig;
use crate::model::{equicorrelation_info, Dims, SuffStats};
use crate::onesided::{self, Encompassing};
use crate::precise::{self, ln_c2, ConjKernel, LimitKind, Mode};
use crate::priors::{
    AdaptiveGPrior, ConjugatePrior, FatTailedTPrior, GMixturePrior, MixingLaw, PriorScale, SemiConjugatePrior,
    TailClass, VariancePrior,
};
use crate::quad::{self, Piece, QuadOptions};

/// Which hypotheses are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TestKind {
    /// θ = 0 against θ ≠ 0.
    Precise,
    /// θ ≤ 0 against θ ≰ 0.
    Onesided,
    /// θ = 0 / θ ≤ 0 / θ ≰ 0.
    Multiple,
}

/// Prior under the alternative (or the encompassing prior for order tests).
#[derive(Debug, Clone)]
pub enum PriorFamily {
    Conjugate(ConjugatePrior),
    SemiConjugate(SemiConjugatePrior),
    Mixture(GMixturePrior),
    FatTail(FatTailedTPrior),
    Adaptive(AdaptiveGPrior),
}

impl PriorFamily {
    pub fn name(&self) -> &'static str {
        match self {
            PriorFamily::Conjugate(_) => "conjugate",
            PriorFamily::SemiConjugate(_) => "semi-conjugate",
            PriorFamily::Mixture(_) => "mixture",
            PriorFamily::FatTail(_) => "fat-t",
            PriorFamily::Adaptive(_) => "adaptive",
        }
    }

    fn variance(&self) -> VariancePrior {
        match self {
            PriorFamily::Conjugate(p) => p.variance,
            PriorFamily::SemiConjugate(p) => p.variance,
            PriorFamily::Mixture(p) => p.variance,
            PriorFamily::FatTail(p) => p.variance,
            PriorFamily::Adaptive(p) => p.variance,
        }
    }
}

/// Everything the auditor and the probe need to know about a configuration.
#[derive(Debug, Clone)]
pub struct AuditRequest {
    pub test: TestKind,
    /// Variance prior under the null (unused by one-sided tests).
    pub prior0: VariancePrior,
    pub family: PriorFamily,
    pub dims: Dims,
    /// Information block X_θ'Σ⁻¹X_θ.
    pub info: DMatrix<f64>,
    /// Direction along which θ̂ grows.
    pub direction: DVector<f64>,
}

impl AuditRequest {
    pub fn new(test: TestKind, prior0: VariancePrior, family: PriorFamily, dims: Dims, info: DMatrix<f64>) -> Result<Self> {
        if info.nrows() != dims.r1 || info.ncols() != dims.r1 {
            return Err(Error::InvalidModel(format!("information block must be {0}×{0}", dims.r1)));
        }
        let direction = DVector::from_element(dims.r1, 1.0 / (dims.r1 as f64).sqrt());
        Ok(Self { test, prior0, family, dims, info, direction })
    }

    /// Location test with X_θ = 𝟏_n and equicorrelated errors.
    pub fn univariate(test: TestKind, prior0: VariancePrior, family: PriorFamily, n: usize, rho: f64) -> Result<Self> {
        let dims = Dims::univariate(n)?;
        let info = DMatrix::from_element(1, 1, equicorrelation_info(n, rho));
        Self::new(test, prior0, family, dims, info)
    }

    pub fn with_direction(mut self, direction: DVector<f64>) -> Result<Self> {
        let norm = direction.norm();
        if direction.len() != self.dims.r1 || !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::Domain(format!("direction must be a non-zero vector of length {}", self.dims.r1)));
        }
        self.direction = direction / norm;
        Ok(self)
    }
}

/// Limiting behaviour of a Bayes factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VerdictKind {
    ConvergesToZero,
    /// Bounded limit; the value when it is available in closed form or by quadrature.
    FiniteLimit(Option<f64>),
    Diverges,
    /// The available results give no verdict.
    Inconclusive,
}

impl VerdictKind {
    fn tag(&self) -> &'static str {
        match self {
            VerdictKind::ConvergesToZero => "converges-to-zero",
            VerdictKind::FiniteLimit(_) => "finite",
            VerdictKind::Diverges => "diverges",
            VerdictKind::Inconclusive => "inconclusive",
        }
    }

    /// True when the Bayes factor is information consistent in the tested direction.
    pub fn is_consistent(&self) -> bool {
        matches!(self, VerdictKind::Diverges)
    }

    fn from_limit(k: LimitKind) -> Self {
        match k {
            LimitKind::Zero => VerdictKind::ConvergesToZero,
            LimitKind::Infinite => VerdictKind::Diverges,
            LimitKind::Finite(v) => VerdictKind::FiniteLimit(v.is_finite().then_some(v)),
        }
    }
}

/// The published result a verdict rests on. Serialised as the result's
/// citation tag in JSON output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Governing {
    ConjugateLimit,
    MixtureIntegral,
    MixtureTail,
    SemiConjugateLimit,
    FatTailTrichotomy,
    AdaptiveG,
    OnesidedConjugate,
    OnesidedMixture,
    OnesidedIndependence,
    OnesidedAdaptive,
}

impl Governing {
    pub fn tag(&self) -> &'static str {
        match self {
            Governing::ConjugateLimit => "Lemma 1",
            Governing::MixtureIntegral => "Lemma 2",
            Governing::MixtureTail => "Lemma 3",
            Governing::SemiConjugateLimit => "Lemma Eq. (5)",
            Governing::FatTailTrichotomy => "Section 3.3.2",
            Governing::AdaptiveG => "Lemma 4",
            Governing::OnesidedConjugate => "Lemma 5",
            Governing::OnesidedMixture => "Lemma 6",
            Governing::OnesidedIndependence => "Lemma 7",
            Governing::OnesidedAdaptive => "Lemma 8",
        }
    }

    fn from_tag(s: &str) -> Option<Self> {
        use Governing::*;
        [
            ConjugateLimit,
            MixtureIntegral,
            MixtureTail,
            SemiConjugateLimit,
            FatTailTrichotomy,
            AdaptiveG,
            OnesidedConjugate,
            OnesidedMixture,
            OnesidedIndependence,
            OnesidedAdaptive,
        ]
        .into_iter()
        .find(|g| g.tag() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "VerdictWire", into = "VerdictWire")]
pub struct Verdict {
    pub kind: VerdictKind,
    pub governing: Governing,
    pub detail: String,
    /// For the three-way test: behaviour of θ ≰ 0 against θ = 0. `kind` then
    /// describes θ ≰ 0 against θ ≤ 0.
    pub b20: Option<VerdictKind>,
}

#[derive(Serialize, Deserialize)]
struct VerdictWire {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    value: Option<f64>,
    lemma: String,
    detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    b20_kind: Option<String>,
}

fn kind_from_wire(tag: &str, value: Option<f64>) -> std::result::Result<VerdictKind, String> {
    Ok(match tag {
        "converges-to-zero" => VerdictKind::ConvergesToZero,
        "finite" => VerdictKind::FiniteLimit(value),
        "diverges" => VerdictKind::Diverges,
        "inconclusive" => VerdictKind::Inconclusive,
        _ => return Err(format!("unknown verdict kind {tag:?}")),
    })
}

impl From<Verdict> for VerdictWire {
    fn from(v: Verdict) -> Self {
        let value = match v.kind {
            VerdictKind::FiniteLimit(x) => x,
            _ => None,
        };
        VerdictWire {
            kind: v.kind.tag().into(),
            value,
            lemma: v.governing.tag().into(),
            detail: v.detail,
            b20_kind: v.b20.map(|k| k.tag().into()),
        }
    }
}

impl TryFrom<VerdictWire> for Verdict {
    type Error = String;
    fn try_from(w: VerdictWire) -> std::result::Result<Self, String> {
        let governing = Governing::from_tag(&w.lemma).ok_or_else(|| format!("unknown lemma tag {:?}", w.lemma))?;
        let b20 = w.b20_kind.as_deref().map(|t| kind_from_wire(t, None)).transpose()?;
        Ok(Verdict { kind: kind_from_wire(&w.kind, w.value)?, governing, detail: w.detail, b20 })
    }
}

fn verdict(kind: VerdictKind, governing: Governing, detail: impl Into<String>) -> Verdict {
    Verdict { kind, governing, detail: detail.into(), b20: None }
}

fn nu_relation(nu0: f64, nu1: f64) -> &'static str {
    if nu0 < nu1 {
        "ν₀ < ν₁"
    } else if nu0 > nu1 {
        "ν₀ > ν₁"
    } else {
        "ν₀ = ν₁"
    }
}

/// Analytic verdict for the configuration in `req`.
pub fn audit(req: &AuditRequest) -> Result<Verdict> {
    match req.test {
        TestKind::Precise => audit_precise(req),
        TestKind::Onesided => audit_onesided(req),
        TestKind::Multiple => {
            if matches!(req.family, PriorFamily::FatTail(_) | PriorFamily::Adaptive(_)) {
                return Err(Error::Unsupported(format!(
                    "three-way test needs a shared encompassing prior; {} is not supported",
                    req.family.name()
                )));
            }
            let b20 = audit_precise(req)?;
            let mut v = audit_onesided(req)?;
            v.detail = format!("B21: {}; B20 follows the precise test: {}", v.detail, b20.detail);
            v.b20 = Some(b20.kind);
            Ok(v)
        }
    }
}

fn audit_precise(req: &AuditRequest) -> Result<Verdict> {
    let dims = &req.dims;
    let nu0 = req.prior0.nu;
    let nu1 = req.family.variance().nu;
    let rel = nu_relation(nu0, nu1);
    match &req.family {
        PriorFamily::Conjugate(p) => {
            let lim = precise::bf_conjugate_limit(&req.prior0, p, dims, &req.info, None)?;
            let detail = match lim.kind {
                LimitKind::Finite(_) => format!("{rel}: bounded by C(1+λ_max)^{{(n+ν-r₂)/2}}"),
                _ => format!("{rel} for a conjugate prior"),
            };
            Ok(verdict(VerdictKind::from_limit(lim.kind), Governing::ConjugateLimit, detail))
        }
        PriorFamily::SemiConjugate(p) => {
            let lim = precise::bf_semiconjugate_limit(&req.prior0, p, dims);
            Ok(verdict(VerdictKind::from_limit(lim.kind), Governing::SemiConjugateLimit, format!("{rel}: limit 0, C or ∞")))
        }
        PriorFamily::Mixture(m) => audit_precise_mixture(req, m),
        PriorFamily::FatTail(t) => {
            if dims.r1 != 1 || dims.r2 != 0 {
                return Err(Error::Unsupported("fat-tailed t prior supports only r1 = 1, r2 = 0".into()));
            }
            let e = precise::fat_tail_exponent(dims.n, nu0, nu1, t.nu_t);
            let kind = VerdictKind::from_limit(precise::classify_fat_tail(dims.n, nu0, nu1, t.nu_t));
            let detail = format!(
                "n+ν₀ = {} against min(n+ν₁, ν+1) = {}: B₁₀ ~ |θ̂|^{e}",
                dims.nf() + nu0,
                (dims.nf() + nu1).min(t.nu_t + 1.0)
            );
            Ok(verdict(kind, Governing::FatTailTrichotomy, detail))
        }
        PriorFamily::Adaptive(_) => {
            Ok(verdict(VerdictKind::Diverges, Governing::AdaptiveG, "g chosen to maximise B₁₀ grows with |θ̂|"))
        }
    }
}

/// Exponent q in the consistency integral ∫(g+1)^q π(g)dg.
fn mixture_exponent(dims: &Dims, nu: f64) -> f64 {
    0.5 * (dims.nf() - dims.r1f() - dims.r2f() + nu)
}

fn audit_precise_mixture(req: &AuditRequest, m: &GMixturePrior) -> Result<Verdict> {
    let dims = &req.dims;
    let (nu0, nu1) = (req.prior0.nu, m.variance.nu);
    let rel = nu_relation(nu0, nu1);
    if nu0 > nu1 {
        return Ok(verdict(VerdictKind::Diverges, Governing::MixtureIntegral, format!("{rel}: any mixing density")));
    }
    let q = mixture_exponent(dims, nu1);
    if nu0 == nu1 {
        let div = mixture_integral_diverges(m, q)?;
        let kind = if div {
            VerdictKind::Diverges
        } else {
            VerdictKind::FiniteLimit(mixture_limit_value(req, m).ok())
        };
        let detail = format!("{rel}: ∫(g+1)^{q}π(g)dg {}", if div { "= ∞" } else { "< ∞" });
        return Ok(verdict(kind, Governing::MixtureIntegral, detail));
    }
    match m.tail() {
        TailClass::Polynomial { alpha, .. } => {
            let thr = 0.5 * (dims.nf() - dims.r1f() - dims.r2f() + nu0) + 1.0;
            let kind = if alpha < thr {
                VerdictKind::Diverges
            } else if alpha == thr {
                VerdictKind::FiniteLimit(None)
            } else {
                VerdictKind::ConvergesToZero
            };
            let cmp = if alpha < thr { "<" } else if alpha == thr { "=" } else { ">" };
            Ok(verdict(kind, Governing::MixtureTail, format!("{rel}: tail exponent α = {alpha} {cmp} (n-r₁-r₂+ν₀)/2+1 = {thr}")))
        }
        TailClass::PointMass { .. } => Ok(verdict(
            VerdictKind::ConvergesToZero,
            Governing::MixtureIntegral,
            format!("{rel}: a point mass has every moment"),
        )),
        TailClass::Custom => {
            if mixture_integral_diverges(m, q)? {
                Ok(verdict(
                    VerdictKind::Inconclusive,
                    Governing::MixtureTail,
                    format!("{rel}: ∫(g+1)^{q}π(g)dg = ∞ is necessary but not sufficient; tail is not polynomially bounded"),
                ))
            } else {
                Ok(verdict(
                    VerdictKind::ConvergesToZero,
                    Governing::MixtureIntegral,
                    format!("{rel}: ∫(g+1)^{q}π(g)dg < ∞"),
                ))
            }
        }
    }
}

/// C₂∫Π(1+gλᵢ)^{-1/2}(1+gλ_max)^{(n+ν-r₂)/2}π(g)dg, the bounded limit of a
/// mixture when ν₀ = ν₁ (largest over directions).
fn mixture_limit_value(req: &AuditRequest, m: &GMixturePrior) -> Result<f64> {
    let dims = &req.dims;
    let base = m.base.resolve(&req.info)?;
    let k = ConjKernel::new(&req.info, &base, &DVector::from_element(dims.r1, 1.0))?;
    let lmax = k.lambda_max();
    let a = 0.5 * (dims.nf() + m.variance.nu - dims.r2f());
    let c2 = ln_c2(dims, &req.prior0, &m.variance);
    let limit_at = |g: f64| c2 - 0.5 * k.ln_det(g) + a * (g * lmax).ln_1p();
    if let MixingLaw::PointMass { g0 } = m.law {
        return Ok(limit_at(g0).exp());
    }
    let f = |s: f64| limit_at(s.exp()) + m.law.ln_density_log_g(s);
    let (pieces, _) = precise::log_g_pieces(&f, 80.0)?;
    let r = quad::integrate_log(f, &pieces, &QuadOptions::default());
    if !r.converged || !r.ln_value.is_finite() {
        return Err(Error::IntegrationFailure("limit integral did not converge".into()));
    }
    Ok(r.ln_value.exp())
}

/// Whether ∫₀^∞ (g+1)^q π(g) dg is infinite. Polynomial tails π(g) ≍ g^{-α}
/// diverge iff q - α ≥ -1. Other tails are tested numerically on partial
/// integrals over [0, 10^k], k = 1..12.
pub fn mixture_integral_diverges(mixture: &GMixturePrior, q: f64) -> Result<bool> {
    match mixture.tail() {
        TailClass::Polynomial { alpha, .. } => Ok(q - alpha >= -1.0),
        TailClass::PointMass { .. } => Ok(false),
        TailClass::Custom => numeric_divergence(&mixture.law, q),
    }
}

fn numeric_divergence(law: &MixingLaw, q: f64) -> Result<bool> {
    const RATIO: f64 = 1.01;
    let f = |s: f64| {
        let g = s.exp();
        q * g.ln_1p() + law.ln_density_log_g(s)
    };
    let opts = QuadOptions::default();
    let mut partial = Vec::with_capacity(12);
    let mut acc = quad::integrate_log(f, &[Piece::LeftRay { b: -20.0, scale: 4.0 }], &opts).ln_value.exp();
    let mut s0 = -20.0;
    for k in 1..=12 {
        let s1 = k as f64 * std::f64::consts::LN_10;
        let brk = quad::frame_breaks(s0, s1, &(-20..=28).map(|i| i as f64).collect::<Vec<_>>());
        let pieces: Vec<Piece> = brk.windows(2).map(|w| Piece::Finite(w[0], w[1])).collect();
        let r = quad::integrate_log(f, &pieces, &opts);
        if r.ln_value.is_nan() {
            return Err(Error::IntegrationFailure("partial consistency integral is NaN".into()));
        }
        acc += r.ln_value.exp();
        if !acc.is_finite() {
            return Ok(true);
        }
        partial.push(acc);
        s0 = s1;
    }
    let last = partial[11] / partial[10];
    if last < RATIO {
        return Ok(false);
    }
    let inc = (partial[11] - partial[10]) / (partial[10] - partial[9]);
    if inc >= 1.0 / RATIO {
        return Ok(true);
    }
    Err(Error::Inconclusive(format!(
        "partial integrals still grow by a factor {last:.4} per decade while increments shrink by {inc:.4}"
    )))
}

fn audit_onesided(req: &AuditRequest) -> Result<Verdict> {
    let dims = &req.dims;
    match &req.family {
        PriorFamily::Conjugate(p) => {
            let lim = onesided::onesided_limit_direction(&req.direction, p, dims, &req.info, &McConfig::default())?;
            Ok(verdict(
                VerdictKind::FiniteLimit(Some(lim.limit_log_bf.exp())),
                Governing::OnesidedConjugate,
                "posterior orthant probability is bounded away from 0 and 1",
            ))
        }
        PriorFamily::SemiConjugate(_) => Ok(verdict(
            VerdictKind::FiniteLimit(Some(1.0)),
            Governing::OnesidedIndependence,
            "posterior of θ tends to the prior, so the orthant odds ratio tends to 1",
        )),
        PriorFamily::Mixture(m) => {
            let q = mixture_exponent(dims, m.variance.nu);
            let div = mixture_integral_diverges(m, q)?;
            let base = m.base.resolve(&req.info)?;
            let checked = dims.r1 == 1 || m.base.is_g_prior() || proportional(&base, &req.info);
            let mut detail = format!("∫(g+1)^{q}π(g)dg {}", if div { "= ∞" } else { "< ∞" });
            if !checked {
                detail.push_str("; directional condition on E(θ|g,y) assumed, not verified for this Ω");
            }
            let kind = if div { VerdictKind::Diverges } else { VerdictKind::FiniteLimit(None) };
            Ok(verdict(kind, Governing::OnesidedMixture, detail))
        }
        PriorFamily::Adaptive(_) => Ok(verdict(
            VerdictKind::Diverges,
            Governing::OnesidedAdaptive,
            "g → ∞ leaves the posterior centred at θ̂",
        )),
        PriorFamily::FatTail(_) => Err(Error::Unsupported("one-sided test with a fat-tailed t prior".into())),
    }
}

fn proportional(omega: &DMatrix<f64>, info: &DMatrix<f64>) -> bool {
    let p = omega * info;
    let c = p.trace() / p.nrows() as f64;
    c > 0.0 && (&p - DMatrix::identity(p.nrows(), p.nrows()) * c).abs().max() <= 1e-8 * c
}

/// Shape of log B along the probe ray.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", content = "value", rename_all = "kebab-case")]
pub enum ProbeShape {
    /// Level of ln B at the last grid point.
    Plateau(f64),
    /// Slope of ln B against ln|θ̂|.
    LinearGrowth(f64),
    Decay(f64),
}

impl ProbeShape {
    fn agrees(&self, kind: &VerdictKind) -> bool {
        matches!(
            (self, kind),
            (ProbeShape::Plateau(_), VerdictKind::FiniteLimit(_))
                | (ProbeShape::LinearGrowth(_), VerdictKind::Diverges)
                | (ProbeShape::Decay(_), VerdictKind::ConvergesToZero)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    /// |θ̂| = 10^k, k = 0..=decades.
    pub magnitudes: Vec<f64>,
    pub log_bfs: Vec<f64>,
    pub classification: ProbeShape,
    pub verdict: Verdict,
    pub agreement: bool,
    /// Three-way test: ln B₂₀ along the same ray (`log_bfs` holds ln B₂₁).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub log_b20: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b20_classification: Option<ProbeShape>,
}

/// Slope threshold separating a plateau from growth or decay.
pub const SLOPE_TOL: f64 = 0.02;

/// Least-squares slope of ln B on ln|θ̂| over the last three decades.
pub fn classify(magnitudes: &[f64], log_bfs: &[f64]) -> ProbeShape {
    let k = magnitudes.len();
    let start = k.saturating_sub(4);
    let xs: Vec<f64> = magnitudes[start..].iter().map(|m| m.ln()).collect();
    let ys = &log_bfs[start..];
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    if slope.abs() < SLOPE_TOL {
        ProbeShape::Plateau(log_bfs[k - 1])
    } else if slope > 0.0 {
        ProbeShape::LinearGrowth(slope)
    } else {
        ProbeShape::Decay(slope)
    }
}

/// Evaluate the Bayes factor at θ̂ = direction·10^k, k = 0..=decades, with
/// s_y² = n - 1, classify the tail and compare with [`audit`].
pub fn empirical_probe(req: &AuditRequest, decades: usize, cfg: &McConfig) -> Result<ProbeReport> {
    if decades < 4 {
        return Err(Error::Domain(format!("probe needs at least 4 decades, got {decades}")));
    }
    let verdict = audit(req)?;
    let s_y2 = req.dims.nf() - 1.0;
    let mut magnitudes = Vec::with_capacity(decades + 1);
    let mut primary = Vec::with_capacity(decades + 1);
    let mut secondary = Vec::with_capacity(decades + 1);
    for k in 0..=decades {
        let mag = 10f64.powi(k as i32);
        let stats = SuffStats::from_parts(req.dims, &req.direction * mag, req.info.clone(), s_y2)?;
        let pcfg = cfg.derive(k as u64);
        let (p, s) = evaluate(req, &stats, &pcfg)?;
        magnitudes.push(mag);
        primary.push(p);
        if let Some(s) = s {
            secondary.push(s);
        }
    }
    let classification = classify(&magnitudes, &primary);
    let mut agreement = classification.agrees(&verdict.kind);
    let (log_b20, b20_classification) = if secondary.is_empty() {
        (None, None)
    } else {
        let c = classify(&magnitudes, &secondary);
        if let Some(k) = &verdict.b20 {
            agreement &= c.agrees(k);
        }
        (Some(secondary), Some(c))
    };
    Ok(ProbeReport { magnitudes, log_bfs: primary, classification, verdict, agreement, log_b20, b20_classification })
}

fn evaluate(req: &AuditRequest, stats: &SuffStats, cfg: &McConfig) -> Result<(f64, Option<f64>)> {
    let p0 = &req.prior0;
    match req.test {
        TestKind::Precise => {
            let l = match &req.family {
                PriorFamily::Conjugate(p) => precise::bf_conjugate(stats, p0, p)?.log_bf,
                PriorFamily::SemiConjugate(p) => precise::bf_semiconjugate(stats, p0, p, cfg)?.log_bf,
                PriorFamily::Mixture(m) => precise::bf_mixture(stats, p0, m)?.log_bf,
                PriorFamily::FatTail(t) => precise::bf_fat_tail(stats, p0, t)?.log_bf,
                PriorFamily::Adaptive(a) => precise::bf_adaptive(stats, p0, a)?.log_bf,
            };
            Ok((l, None))
        }
        TestKind::Onesided => {
            let r = match &req.family {
                PriorFamily::Conjugate(p) => onesided::bf_onesided_conjugate(stats, p, cfg)?,
                PriorFamily::SemiConjugate(p) => onesided::bf_onesided_independence(stats, p, cfg, Mode::Value)?,
                PriorFamily::Mixture(m) => onesided::bf_onesided_mixture(stats, m, cfg)?,
                PriorFamily::Adaptive(a) => onesided::bf_onesided_adaptive_g(stats, a, cfg)?,
                PriorFamily::FatTail(_) => {
                    return Err(Error::Unsupported("one-sided test with a fat-tailed t prior".into()))
                }
            };
            Ok((r.log_bf, None))
        }
        TestKind::Multiple => {
            let enc = match &req.family {
                PriorFamily::Conjugate(p) => Encompassing::Conjugate(p.clone()),
                PriorFamily::SemiConjugate(p) => Encompassing::SemiConjugate(p.clone()),
                PriorFamily::Mixture(m) => Encompassing::Mixture(m.clone()),
                _ => return Err(Error::Unsupported("three-way test needs a shared encompassing prior".into())),
            };
            let r = onesided::bf_multiple(stats, p0, &enc, cfg)?;
            Ok((r.log_b21, Some(r.log_b20)))
        }
    }
}

/// Convenience: the conjugate prior with Ω = 1 used throughout the univariate tables.
pub fn unit_conjugate(variance: VariancePrior) -> PriorFamily {
    PriorFamily::Conjugate(ConjugatePrior { scale: PriorScale::Identity, variance })
}
