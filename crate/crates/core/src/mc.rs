//! Orthant probabilities P(x ≤ 0) for multivariate normal and multivariate t
//! vectors by sequential conditioning over randomly shifted rank-1 lattices.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{self, ProbEstimate};

/// Number of independent random shifts; the standard error comes from their spread.
pub const REPLICATES: usize = 16;
const MAX_POINTS: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub n_points: usize,
    pub seed: u64,
    pub target_se: Option<f64>,
}

impl Default for McConfig {
    fn default() -> Self {
        Self { n_points: 200_000, seed: 20_240_601, target_se: None }
    }
}

impl McConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_points < 1000 {
            return Err(Error::Config(format!("n_points must be at least 1000, got {}", self.n_points)));
        }
        Ok(())
    }

    /// Configuration with a seed derived deterministically from this one.
    pub fn derive(&self, stream: u64) -> Self {
        let mut s = self.seed ^ 0x9E37_79B9_7F4A_7C15u64.wrapping_mul(stream.wrapping_add(1));
        s = (s ^ (s >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        s = (s ^ (s >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        Self { seed: s ^ (s >> 31), ..*self }
    }
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn next_prime(mut n: usize) -> usize {
    while !is_prime(n) {
        n += 1;
    }
    n
}

fn first_primes(k: usize) -> Vec<usize> {
    let mut v = Vec::with_capacity(k);
    let mut p = 2;
    while v.len() < k {
        if is_prime(p) {
            v.push(p);
        }
        p += 1;
    }
    v
}

/// Randomly shifted rank-1 lattice with the baker's (tent) transform.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub n: usize,
    z: Vec<f64>,
    shifts: Vec<Vec<f64>>,
}

impl Lattice {
    /// Lattice of prime size ≥ `points_per_replicate` in `dim` dimensions.
    pub fn new(dim: usize, points_per_replicate: usize, seed: u64) -> Self {
        let n = next_prime(points_per_replicate.max(31));
        let z = first_primes(dim)
            .into_iter()
            .map(|p| {
                let f = (p as f64).sqrt().fract();
                let zj = ((n as f64) * f).round() as usize % n;
                zj.max(1) as f64 / n as f64
            })
            .collect();
        let shifts = (0..REPLICATES)
            .map(|q| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(q as u64);
                (0..dim).map(|_| rng.random::<f64>()).collect()
            })
            .collect();
        Self { n, z, shifts }
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }

    /// Point `k` of replicate `q`, written into `out`; coordinates lie in (0, 1).
    pub fn point(&self, q: usize, k: usize, out: &mut [f64]) {
        let kf = k as f64;
        for (j, o) in out.iter_mut().enumerate() {
            let u = (kf * self.z[j] + self.shifts[q][j]).fract();
            let b = 1.0 - (2.0 * u - 1.0).abs();
            *o = b.clamp(1e-300, 1.0 - 1e-16);
        }
    }
}

/// Mean and standard error of the replicate means.
pub fn replicate_summary(means: &[f64]) -> (f64, f64) {
    let q = means.len() as f64;
    let m = means.iter().sum::<f64>() / q;
    let v = means.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (q - 1.0);
    (m, (v / q).sqrt())
}

/// Sequential-conditioning integrand for the orthant {x ≤ 0}.
struct Sov {
    /// Upper limits -μ in the chosen variable order.
    b: Vec<f64>,
    l: DMatrix<f64>,
    df: Option<f64>,
}

impl Sov {
    fn new(mean: &DVector<f64>, cov: &DMatrix<f64>, df: Option<f64>) -> Result<Self> {
        let r = mean.len();
        if cov.nrows() != r || cov.ncols() != r {
            return Err(Error::Domain("mean and covariance dimensions differ".into()));
        }
        if mean.iter().chain(cov.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Domain("non-finite orthant input".into()));
        }
        // Most restrictive coordinates first.
        let mut order: Vec<usize> = (0..r).collect();
        let key = |i: usize| -mean[i] / cov[(i, i)].sqrt();
        order.sort_by(|&i, &j| key(i).partial_cmp(&key(j)).unwrap().then(i.cmp(&j)));
        let pc = DMatrix::from_fn(r, r, |i, j| cov[(order[i], order[j])]);
        let l = pc
            .cholesky()
            .ok_or_else(|| Error::Domain("orthant covariance is not positive definite".into()))?
            .l();
        let b = order.iter().map(|&i| -mean[i]).collect();
        Ok(Self { b, l, df })
    }

    /// Integrand value at w ∈ (0,1)^{r-1}.
    fn eval(&self, w: &[f64], y: &mut [f64]) -> f64 {
        let r = self.b.len();
        let mut ln_prod = 0.0;
        let mut ssq = 0.0;
        for i in 0..r {
            let mut s = 0.0;
            for j in 0..i {
                s += self.l[(i, j)] * y[j];
            }
            let c = (self.b[i] - s) / self.l[(i, i)];
            match self.df {
                None => {
                    let e = special::normal_cdf(c);
                    if e <= 0.0 {
                        return 0.0;
                    }
                    ln_prod += e.ln();
                    if i + 1 < r {
                        y[i] = special::normal_quantile(w[i] * e);
                    }
                }
                Some(nu) => {
                    let dfi = nu + i as f64;
                    let sc = ((nu + ssq) / dfi).sqrt();
                    let le = special::student_t_ln_cdf_pair(c / sc, dfi).map(|p| p.0).unwrap_or(f64::NAN);
                    if !(le > f64::NEG_INFINITY) {
                        return 0.0;
                    }
                    ln_prod += le;
                    if i + 1 < r {
                        let lp = w[i].ln() + le;
                        let x = if lp < -std::f64::consts::LN_2 {
                            -special::t_upper_point(lp, dfi)
                        } else {
                            special::t_upper_point((-lp.exp_m1()).ln(), dfi)
                        };
                        y[i] = sc * x;
                        ssq += y[i] * y[i];
                    }
                }
            }
        }
        ln_prod.exp()
    }
}

fn qmc_orthant(sov: &Sov, cfg: &McConfig) -> Result<ProbEstimate> {
    cfg.validate()?;
    let r = sov.b.len();
    let dim = r - 1;
    let mut per_rep = cfg.n_points.div_ceil(REPLICATES);
    loop {
        let lat = Lattice::new(dim, per_rep, cfg.seed);
        let mut w = vec![0.0; dim];
        let mut y = vec![0.0; r];
        let means: Vec<f64> = (0..REPLICATES)
            .map(|q| {
                let mut acc = 0.0;
                for k in 0..lat.n {
                    lat.point(q, k, &mut w);
                    acc += sov.eval(&w, &mut y);
                }
                acc / lat.n as f64
            })
            .collect();
        let (m, se) = replicate_summary(&means);
        match cfg.target_se {
            Some(t) if se > t => {
                if lat.n * 2 * REPLICATES > MAX_POINTS {
                    return Err(Error::McFailure(format!(
                        "standard error {se:.3e} above target {t:.3e} at {} points",
                        lat.n * REPLICATES
                    )));
                }
                per_rep = lat.n * 2;
            }
            _ => {
                let v = m.clamp(0.0, 1.0);
                return Ok(ProbEstimate { value: v, complement: 1.0 - v, std_error: se });
            }
        }
    }
}

/// P(x ≤ 0) for x ~ N(mean, cov).
pub fn mvn_orthant(mean: &DVector<f64>, cov: &DMatrix<f64>, cfg: &McConfig) -> Result<ProbEstimate> {
    let r = mean.len();
    if r == 0 {
        return Err(Error::Domain("empty orthant".into()));
    }
    if r == 1 {
        let s = cov[(0, 0)];
        if !(s > 0.0) {
            return Err(Error::Domain("variance must be positive".into()));
        }
        let z = mean[0] / s.sqrt();
        return Ok(ProbEstimate::exact_pair(special::normal_cdf(-z), special::normal_cdf(z)));
    }
    qmc_orthant(&Sov::new(mean, cov, None)?, cfg)
}

/// P(x ≤ 0) for x multivariate t with location `mean`, scale matrix `scale` and `df` degrees of freedom.
pub fn mvt_orthant(
    mean: &DVector<f64>,
    scale: &DMatrix<f64>,
    df: f64,
    cfg: &McConfig,
) -> Result<ProbEstimate> {
    if !(df > 0.0) {
        return Err(Error::Domain(format!("degrees of freedom must be positive, got {df}")));
    }
    let r = mean.len();
    if r == 0 {
        return Err(Error::Domain("empty orthant".into()));
    }
    if r == 1 {
        let s = scale[(0, 0)];
        if !(s > 0.0) {
            return Err(Error::Domain("scale must be positive".into()));
        }
        let z = mean[0] / s.sqrt();
        let (lo, hi) = special::student_t_ln_cdf_pair(-z, df)?;
        return Ok(ProbEstimate::exact_pair(lo.exp(), hi.exp()));
    }
    qmc_orthant(&Sov::new(mean, scale, Some(df))?, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> McConfig {
        McConfig { n_points: 50_000, ..McConfig::default() }
    }

    #[test]
    fn independent_pair_is_quarter() {
        let p = mvn_orthant(&DVector::zeros(2), &DMatrix::identity(2, 2), &cfg()).unwrap();
        assert!((p.value - 0.25).abs() <= 3.0 * p.std_error + 1e-12, "{p:?}");
    }

    #[test]
    fn correlated_pair_arcsine_law() {
        let cov = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.5, 1.0]);
        let p = mvn_orthant(&DVector::zeros(2), &cov, &cfg()).unwrap();
        assert!((p.value - 1.0 / 3.0).abs() <= 3.0 * p.std_error + 1e-12, "{p:?}");
    }

    #[test]
    fn univariate_exact() {
        let p = mvn_orthant(&DVector::from_element(1, 1.5), &DMatrix::from_element(1, 1, 4.0), &cfg()).unwrap();
        assert!((p.value - special::normal_cdf(-0.75)).abs() < 1e-15);
        let p = mvt_orthant(&DVector::from_element(1, 2.0), &DMatrix::from_element(1, 1, 1.0), 2.0, &cfg()).unwrap();
        let want = 0.5 * (1.0 - 2.0 / 6f64.sqrt());
        assert!((p.value - want).abs() < 1e-14);
        assert_eq!(p.std_error, 0.0);
    }

    #[test]
    fn central_t_pair() {
        let p = mvt_orthant(&DVector::zeros(2), &DMatrix::identity(2, 2), 5.0, &cfg()).unwrap();
        assert!((p.value - 0.25).abs() <= 3.0 * p.std_error + 1e-12, "{p:?}");
    }

    #[test]
    fn t_approaches_normal() {
        let mean = DVector::from_vec(vec![0.4, -0.3, 0.8]);
        let cov = DMatrix::from_row_slice(3, 3, &[1.0, 0.3, 0.1, 0.3, 2.0, -0.4, 0.1, -0.4, 1.5]);
        let a = mvn_orthant(&mean, &cov, &cfg()).unwrap();
        let b = mvt_orthant(&mean, &cov, 1e6, &cfg()).unwrap();
        let joint = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
        assert!((a.value - b.value).abs() <= 3.0 * joint + 1e-6, "{a:?} {b:?}");
    }

    #[test]
    fn deterministic() {
        let cov = DMatrix::from_row_slice(2, 2, &[1.0, -0.2, -0.2, 1.0]);
        let m = DVector::from_vec(vec![1.0, 2.0]);
        let a = mvt_orthant(&m, &cov, 3.0, &cfg()).unwrap();
        let b = mvt_orthant(&m, &cov, 3.0, &cfg()).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
    }

    #[test]
    fn small_tail_probability_resolved() {
        // Independent coordinates: the orthant probability factorises.
        let m = DVector::from_vec(vec![5.0, 4.0]);
        let p = mvn_orthant(&m, &DMatrix::identity(2, 2), &cfg()).unwrap();
        let want = special::normal_cdf(-5.0) * special::normal_cdf(-4.0);
        assert!(((p.value - want) / want).abs() < 1e-10, "{p:?} {want}");
    }

    #[test]
    fn target_se_unattainable_fails() {
        let cov = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.5, 1.0]);
        let c = McConfig { target_se: Some(1e-30), n_points: 1000, ..McConfig::default() };
        assert!(matches!(mvn_orthant(&DVector::zeros(2), &cov, &c), Err(Error::McFailure(_))));
    }
}
