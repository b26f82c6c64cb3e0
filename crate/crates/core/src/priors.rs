//! Prior families on θ and σ², mixing densities on g, and prior orthant
//! probabilities.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mc::{self, McConfig};
use crate::quad::{self, Piece, QuadOptions};
use crate::special::{lgamma, ProbEstimate};

/// Prior scale Ω for θ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PriorScale {
    /// Ω = g (X_θ'Σ⁻¹X_θ)⁻¹.
    GPrior(f64),
    Identity,
    Matrix(DMatrix<f64>),
}

impl PriorScale {
    /// Ω as a matrix, given the information block X_θ'Σ⁻¹X_θ.
    pub fn resolve(&self, info: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        let r = info.nrows();
        let omega = match self {
            PriorScale::GPrior(g) => {
                if !(*g > 0.0) || !g.is_finite() {
                    return Err(Error::InvalidPrior(format!("g must be positive, got {g}")));
                }
                let inv = info
                    .clone()
                    .cholesky()
                    .ok_or_else(|| Error::InvalidModel("information block is not positive definite".into()))?
                    .inverse();
                inv * *g
            }
            PriorScale::Identity => DMatrix::identity(r, r),
            PriorScale::Matrix(m) => {
                if m.nrows() != r || m.ncols() != r {
                    return Err(Error::InvalidPrior(format!(
                        "Ω is {}×{}, expected {r}×{r}",
                        m.nrows(),
                        m.ncols()
                    )));
                }
                m.clone()
            }
        };
        check_spd(&omega)?;
        Ok(omega)
    }

    /// True when Ω is proportional to the inverse information.
    pub fn is_g_prior(&self) -> bool {
        matches!(self, PriorScale::GPrior(_))
    }
}

fn check_spd(m: &DMatrix<f64>) -> Result<()> {
    let asym = (m - m.transpose()).amax();
    if asym > 1e-10 * m.amax() || m.clone().cholesky().is_none() {
        return Err(Error::InvalidPrior("Ω must be symmetric positive definite".into()));
    }
    Ok(())
}

/// Scaled inverse-χ²(s², ν) prior on a variance; ν = 0 is the improper 1/σ² prior.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariancePrior {
    pub s2: f64,
    pub nu: f64,
}

impl VariancePrior {
    pub fn new(s2: f64, nu: f64) -> Result<Self> {
        if !(nu >= 0.0) || !nu.is_finite() {
            return Err(Error::InvalidPrior(format!("ν must be finite and ≥ 0, got {nu}")));
        }
        if nu == 0.0 {
            return Ok(Self::objective());
        }
        if !(s2 > 0.0) || !s2.is_finite() {
            return Err(Error::InvalidPrior(format!("s² must be positive when ν > 0, got {s2}")));
        }
        Ok(Self { s2, nu })
    }

    /// The improper π(σ²) ∝ σ⁻² prior.
    pub fn objective() -> Self {
        Self { s2: 0.0, nu: 0.0 }
    }

    /// ln of the normalising constant (ν/2)^{ν/2}(s²)^{ν/2}/Γ(ν/2), taken as 0 when ν = 0.
    pub fn ln_k(&self) -> f64 {
        if self.nu == 0.0 {
            0.0
        } else {
            let h = 0.5 * self.nu;
            h * h.ln() + h * self.s2.ln() - lgamma(h)
        }
    }

    /// νs² + s_y².
    pub fn sse(&self, s_y2: f64) -> f64 {
        self.nu * self.s2 + s_y2
    }
}

impl Default for VariancePrior {
    fn default() -> Self {
        Self::objective()
    }
}

/// θ | σ² ~ N(0, σ²Ω) with σ² ~ inv-χ²(s², ν).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjugatePrior {
    pub scale: PriorScale,
    pub variance: VariancePrior,
}

impl ConjugatePrior {
    pub fn g_prior(g: f64, variance: VariancePrior) -> Self {
        Self { scale: PriorScale::GPrior(g), variance }
    }
}

/// θ ~ N(0, Ω) independently of σ² ~ inv-χ²(s², ν).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemiConjugatePrior {
    pub scale: PriorScale,
    pub variance: VariancePrior,
}

/// Tail behaviour of a mixing density on g.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum TailClass {
    /// k_lo g^{-α} ≤ π(g) ≤ k_hi g^{-α} for g ≥ m.
    Polynomial { alpha: f64, k_lo: f64, k_hi: f64, m: f64 },
    PointMass { g0: f64 },
    Custom,
}

/// A user-supplied log density for g.
#[derive(Clone)]
pub struct CustomDensity {
    pub name: String,
    pub ln_density: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub tail: TailClass,
}

impl fmt::Debug for CustomDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomDensity").field("name", &self.name).field("tail", &self.tail).finish()
    }
}

/// Mixing law for g.
#[derive(Debug, Clone)]
pub enum MixingLaw {
    /// π(g) = ((a-2)/2)(1+g)^{-a/2}.
    HyperG { a: f64 },
    /// Inverse-gamma(1/2, n/2).
    ZellnerSiow { n: f64 },
    PointMass { g0: f64 },
    Custom(CustomDensity),
}

impl MixingLaw {
    /// ln of the density of s = ln g, i.e. ln π(e^s) + s. Not defined for point masses.
    pub fn ln_density_log_g(&self, s: f64) -> f64 {
        match self {
            MixingLaw::HyperG { a } => {
                let softplus = s.max(0.0) + (-s.abs()).exp().ln_1p();
                (0.5 * (a - 2.0)).ln() - 0.5 * a * softplus + s
            }
            MixingLaw::ZellnerSiow { n } => {
                0.5 * (0.5 * n).ln() - 0.5 * std::f64::consts::PI.ln() - 0.5 * s - 0.5 * n * (-s).exp()
            }
            MixingLaw::PointMass { .. } => f64::NAN,
            MixingLaw::Custom(c) => (c.ln_density)(s.exp()) + s,
        }
    }

    /// π(g).
    pub fn density(&self, g: f64) -> f64 {
        if !(g > 0.0) {
            return 0.0;
        }
        match self {
            MixingLaw::PointMass { .. } => 0.0,
            MixingLaw::Custom(c) => (c.ln_density)(g).exp(),
            _ => (self.ln_density_log_g(g.ln()) - g.ln()).exp(),
        }
    }

    pub fn tail(&self) -> TailClass {
        match *self {
            MixingLaw::HyperG { a } => {
                TailClass::Polynomial { alpha: 0.5 * a, k_lo: 0.5 * (a - 2.0) * 2f64.powf(-0.5 * a), k_hi: 0.5 * (a - 2.0), m: 1.0 }
            }
            MixingLaw::ZellnerSiow { n } => {
                let c = (0.5 * n).sqrt() / std::f64::consts::PI.sqrt();
                TailClass::Polynomial { alpha: 1.5, k_lo: c * (-0.5f64).exp(), k_hi: c, m: n }
            }
            MixingLaw::PointMass { g0 } => TailClass::PointMass { g0 },
            MixingLaw::Custom(ref c) => c.tail,
        }
    }

    pub fn name(&self) -> String {
        match self {
            MixingLaw::HyperG { a } => format!("hyper-g(a={a})"),
            MixingLaw::ZellnerSiow { n } => format!("zellner-siow(n={n})"),
            MixingLaw::PointMass { g0 } => format!("point-mass(g0={g0})"),
            MixingLaw::Custom(c) => c.name.clone(),
        }
    }
}

/// Mixture of conjugate priors θ | g, σ² ~ N(0, gσ²Ω_base), g ~ π.
#[derive(Debug, Clone)]
pub struct GMixturePrior {
    pub law: MixingLaw,
    pub base: PriorScale,
    /// Variance prior under the alternative.
    pub variance: VariancePrior,
}

impl GMixturePrior {
    pub fn with_variance(mut self, variance: VariancePrior) -> Self {
        self.variance = variance;
        self
    }

    pub fn with_base(mut self, base: PriorScale) -> Self {
        self.base = base;
        self
    }

    pub fn tail(&self) -> TailClass {
        self.law.tail()
    }
}

/// ∫ π(g) dg over (0, ∞) by quadrature in ln g.
pub fn mixing_mass(law: &MixingLaw) -> f64 {
    if let MixingLaw::PointMass { .. } = law {
        return 1.0;
    }
    // Locate the mode of the ln g density to centre the two rays.
    let mut best = (f64::NEG_INFINITY, 0.0);
    let mut s = -60.0;
    while s <= 120.0 {
        let v = law.ln_density_log_g(s);
        if v > best.0 {
            best = (v, s);
        }
        s += 0.5;
    }
    let pieces = [
        Piece::LeftRay { b: best.1, scale: 4.0 },
        Piece::RightRay { a: best.1, scale: 4.0 },
    ];
    let opts = QuadOptions { rel_tol: 1e-10, ..QuadOptions::default() };
    let r = quad::integrate_log(|s| law.ln_density_log_g(s), &pieces, &opts);
    r.ln_value.exp()
}

fn checked_mixture(law: MixingLaw) -> Result<GMixturePrior> {
    let mass = mixing_mass(&law);
    if !((mass - 1.0).abs() <= 1e-6) {
        return Err(Error::InvalidPrior(format!("mixing density {} integrates to {mass}", law.name())));
    }
    Ok(GMixturePrior { law, base: PriorScale::GPrior(1.0), variance: VariancePrior::objective() })
}

/// Hyper-g mixture, a > 2.
pub fn make_hyper_g(a: f64) -> Result<GMixturePrior> {
    if !(a > 2.0) || !a.is_finite() {
        return Err(Error::Domain(format!("hyper-g requires a > 2, got {a}")));
    }
    checked_mixture(MixingLaw::HyperG { a })
}

/// Zellner-Siow mixture: inverse-gamma(1/2, n/2) on g over a g-prior base.
pub fn make_zellner_siow(n: usize) -> Result<GMixturePrior> {
    if n < 2 {
        return Err(Error::Domain(format!("Zellner-Siow requires n ≥ 2, got {n}")));
    }
    checked_mixture(MixingLaw::ZellnerSiow { n: n as f64 })
}

/// Degenerate mixture at g0.
pub fn make_point_mass(g0: f64) -> Result<GMixturePrior> {
    if !(g0 > 0.0) || !g0.is_finite() {
        return Err(Error::Domain(format!("point mass requires g0 > 0, got {g0}")));
    }
    Ok(GMixturePrior {
        law: MixingLaw::PointMass { g0 },
        base: PriorScale::GPrior(1.0),
        variance: VariancePrior::objective(),
    })
}

/// User-supplied mixing density, given as ln π(g); normalisation is checked.
pub fn make_custom(
    name: &str,
    ln_density: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    tail: TailClass,
) -> Result<GMixturePrior> {
    checked_mixture(MixingLaw::Custom(CustomDensity { name: name.to_string(), ln_density, tail }))
}

/// Student-t prior on a scalar θ with scale τ and ν_t degrees of freedom.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FatTailedTPrior {
    pub tau: f64,
    pub nu_t: f64,
    pub variance: VariancePrior,
}

impl FatTailedTPrior {
    pub fn new(tau: f64, nu_t: f64, variance: VariancePrior) -> Result<Self> {
        if !(tau > 0.0) || !(nu_t > 0.0) || !tau.is_finite() || !nu_t.is_finite() {
            return Err(Error::InvalidPrior(format!("fat-t prior needs τ > 0 and ν > 0, got τ={tau}, ν={nu_t}")));
        }
        Ok(Self { tau, nu_t, variance })
    }
}

/// g-prior with g chosen to maximise the Bayes factor.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AdaptiveGPrior {
    pub variance: VariancePrior,
}

/// P(θ ≤ 0) for θ ~ N(0, Ω).
pub fn prior_orthant_prob(omega: &DMatrix<f64>, cfg: &McConfig) -> Result<ProbEstimate> {
    check_spd(omega)?;
    if omega.nrows() == 1 {
        return Ok(ProbEstimate::exact(0.5));
    }
    mc::mvn_orthant(&DVector::zeros(omega.nrows()), omega, cfg)
}
