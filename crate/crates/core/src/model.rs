//! Linear model with known error covariance, the split of β into tested
//! coordinates θ = Rβ and nuisance coordinates γ = Dβ, and GLS summaries.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sample size and the numbers of tested (r1) and nuisance (r2) coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub n: usize,
    pub r1: usize,
    pub r2: usize,
}

impl Dims {
    pub fn new(n: usize, r1: usize, r2: usize) -> Result<Self> {
        if r1 == 0 {
            return Err(Error::InvalidModel("r1 must be at least 1".into()));
        }
        if n <= r1 + r2 {
            return Err(Error::InvalidModel(format!("need n > r1 + r2, got n={n}, r1={r1}, r2={r2}")));
        }
        Ok(Self { n, r1, r2 })
    }

    pub fn univariate(n: usize) -> Result<Self> {
        Self::new(n, 1, 0)
    }

    pub(crate) fn nf(&self) -> f64 {
        self.n as f64
    }
    pub(crate) fn r1f(&self) -> f64 {
        self.r1 as f64
    }
    pub(crate) fn r2f(&self) -> f64 {
        self.r2 as f64
    }
}

/// y = Xβ + ε, ε ~ N(0, σ²Σ), with restriction matrix R selecting θ = Rβ.
#[derive(Debug, Clone)]
pub struct ModelSpec {
    pub y: DVector<f64>,
    pub x: DMatrix<f64>,
    pub r: DMatrix<f64>,
    pub sigma: DMatrix<f64>,
}

impl ModelSpec {
    pub fn new(
        y: DVector<f64>,
        x: DMatrix<f64>,
        r: DMatrix<f64>,
        sigma: DMatrix<f64>,
    ) -> Result<Self> {
        let n = y.len();
        let k = x.ncols();
        if x.nrows() != n {
            return Err(Error::InvalidModel(format!("X has {} rows, y has {n}", x.nrows())));
        }
        if r.ncols() != k || r.nrows() == 0 || r.nrows() > k {
            return Err(Error::InvalidModel(format!(
                "R must be r1×K with 1 ≤ r1 ≤ K={k}, got {}×{}",
                r.nrows(),
                r.ncols()
            )));
        }
        if n <= k {
            return Err(Error::InvalidModel(format!("need n > K, got n={n}, K={k}")));
        }
        if sigma.nrows() != n || sigma.ncols() != n {
            return Err(Error::InvalidModel("Σ must be n×n".into()));
        }
        let asym = (&sigma - sigma.transpose()).amax();
        if asym > 1e-10 * sigma.amax().max(1.0) {
            return Err(Error::InvalidModel("Σ is not symmetric".into()));
        }
        if Cholesky::new(sigma.clone()).is_none() {
            return Err(Error::InvalidModel("Σ is not positive definite".into()));
        }
        let rank = row_rank(&r);
        if rank < r.nrows() {
            return Err(Error::RankDeficient { expected: r.nrows(), found: rank });
        }
        if y.iter().chain(x.iter()).chain(r.iter()).chain(sigma.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidData("non-finite entry in model".into()));
        }
        Ok(Self { y, x, r, sigma })
    }

    pub fn dims(&self) -> Dims {
        let r1 = self.r.nrows();
        Dims { n: self.y.len(), r1, r2: self.x.ncols() - r1 }
    }
}

/// Result of splitting β into θ = Rβ and γ = Dβ.
#[derive(Debug, Clone)]
pub struct Reparam {
    /// K×K transform with rows R then D.
    pub t: DMatrix<f64>,
    pub d: DMatrix<f64>,
    pub x_theta: DMatrix<f64>,
    pub x_gamma: DMatrix<f64>,
}

/// ρJ + (1-ρ)I.
pub fn equicorrelation(n: usize, rho: f64) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let lower = if n > 1 { -1.0 / (n as f64 - 1.0) } else { f64::NEG_INFINITY };
    if !(rho > lower && rho < 1.0) && !(n == 1 && rho.is_finite()) {
        return Err(Error::OutOfRange(format!(
            "equicorrelation needs ρ in ({lower}, 1) for a positive-definite matrix, got {rho}"
        )));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { rho }))
}

/// 𝟏'Σ⁻¹𝟏 for equicorrelation Σ; the algebraic limit ρ = 1 gives 1.
pub fn equicorrelation_info(n: usize, rho: f64) -> f64 {
    n as f64 / (1.0 + (n as f64 - 1.0) * rho)
}

/// Numerical row rank by pivoted Gram-Schmidt.
fn row_rank(a: &DMatrix<f64>) -> usize {
    pivoted_rows(a, a.nrows()).len()
}

/// Greedy column-pivoted orthogonalisation of the rows of `a`: returns the
/// indices of up to `want` rows in pivot order, stopping at numerical rank.
fn pivoted_rows(a: &DMatrix<f64>, want: usize) -> Vec<usize> {
    let m = a.nrows();
    let mut resid: Vec<DVector<f64>> = (0..m).map(|i| a.row(i).transpose()).collect();
    let scale = resid.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let tol = 1e-10 * scale.max(f64::MIN_POSITIVE);
    let mut chosen = Vec::new();
    let mut used = vec![false; m];
    while chosen.len() < want {
        let mut best = None;
        let mut best_norm = tol;
        for i in 0..m {
            if !used[i] {
                let nrm = resid[i].norm();
                if nrm > best_norm {
                    best_norm = nrm;
                    best = Some(i);
                }
            }
        }
        let Some(p) = best else { break };
        used[p] = true;
        chosen.push(p);
        let q = &resid[p] / best_norm;
        for i in 0..m {
            if !used[i] {
                let c = q.dot(&resid[i]);
                resid[i] -= &q * c;
            }
        }
    }
    chosen
}

fn spd_solve(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let ch = Cholesky::new(a.clone())
        .ok_or_else(|| Error::InvalidModel("matrix is not positive definite".into()))?;
    Ok(ch.solve(b))
}

/// Split β into θ = Rβ and γ = Dβ with block-orthogonal design columns.
pub fn reparametrize(model: &ModelSpec) -> Result<Reparam> {
    let dims = model.dims();
    let k = model.x.ncols();
    let sig_inv_x = spd_solve(&model.sigma, &model.x)?;
    let m = model.x.transpose() * &sig_inv_x;
    let rrt = &model.r * model.r.transpose();
    let proj = DMatrix::identity(k, k) - model.r.transpose() * spd_solve(&rrt, &model.r)?;
    let pm = &proj * &m;

    let rows = pivoted_rows(&pm, dims.r2);
    if rows.len() < dims.r2 {
        return Err(Error::RankDeficient { expected: dims.r2, found: rows.len() });
    }
    let mut d = DMatrix::zeros(dims.r2, k);
    for (i, &src) in rows.iter().enumerate() {
        // Normalise rows so T is well scaled.
        let row = pm.row(src);
        d.set_row(i, &(row / row.norm()));
    }
    let mut t = DMatrix::zeros(k, k);
    t.rows_mut(0, dims.r1).copy_from(&model.r);
    t.rows_mut(dims.r1, dims.r2).copy_from(&d);

    let sv = t.clone().svd(false, false).singular_values;
    let smax = sv.max();
    let smin = sv.min();
    let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(cond <= 1e12) {
        return Err(Error::SingularTransform { cond });
    }
    let t_inv = t.clone().try_inverse().ok_or(Error::SingularTransform { cond })?;
    let xt = &model.x * t_inv;
    let x_theta = xt.columns(0, dims.r1).into_owned();
    let x_gamma = xt.columns(dims.r1, dims.r2).into_owned();

    let rep = Reparam { t, d, x_theta, x_gamma };
    let (cross, scale) = cross_block(&model.sigma, &rep)?;
    if cross > 1e-8 * scale {
        return Err(Error::SingularTransform { cond });
    }
    Ok(rep)
}

/// Largest |entry| of X_θ'Σ⁻¹X_γ and the scale of the diagonal blocks.
pub fn cross_block(sigma: &DMatrix<f64>, rep: &Reparam) -> Result<(f64, f64)> {
    let a = spd_solve(sigma, &rep.x_theta)?;
    let b = spd_solve(sigma, &rep.x_gamma)?;
    let cross = if rep.x_gamma.ncols() == 0 { 0.0 } else { (rep.x_theta.transpose() * &b).amax() };
    let d1 = (rep.x_theta.transpose() * a).diagonal().amax();
    let d2 = if rep.x_gamma.ncols() == 0 { 0.0 } else { (rep.x_gamma.transpose() * b).diagonal().amax() };
    Ok((cross, (d1 * d2).sqrt().max(d1.max(d2) * 1e-300)))
}

/// GLS summaries for θ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuffStats {
    pub dims: Dims,
    pub theta_hat: DVector<f64>,
    pub gamma_hat: DVector<f64>,
    /// X_θ'Σ⁻¹X_θ.
    pub info_theta: DMatrix<f64>,
    /// Generalised residual sum of squares.
    pub s_y2: f64,
    /// θ̂'X_θ'Σ⁻¹X_θθ̂.
    pub ssr: f64,
    /// Signed t statistic when r1 = 1.
    pub t_stat: Option<f64>,
}

impl SuffStats {
    /// Assemble statistics from θ̂, the θ information block and s_y².
    pub fn from_parts(
        dims: Dims,
        theta_hat: DVector<f64>,
        info_theta: DMatrix<f64>,
        s_y2: f64,
    ) -> Result<Self> {
        if theta_hat.len() != dims.r1 || info_theta.nrows() != dims.r1 || info_theta.ncols() != dims.r1 {
            return Err(Error::InvalidModel("θ̂ and information must have dimension r1".into()));
        }
        if !(s_y2 >= 0.0) || !s_y2.is_finite() {
            return Err(Error::InvalidData(format!("s_y² must be finite and ≥ 0, got {s_y2}")));
        }
        if theta_hat.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidData("θ̂ must be finite".into()));
        }
        let asym = (&info_theta - info_theta.transpose()).amax();
        if asym > 1e-10 * info_theta.amax() || Cholesky::new(info_theta.clone()).is_none() {
            return Err(Error::InvalidModel("information block must be symmetric positive definite".into()));
        }
        let ssr = (theta_hat.transpose() * &info_theta * &theta_hat)[(0, 0)].max(0.0);
        let t_stat = (dims.r1 == 1).then(|| {
            let num = theta_hat[0] * info_theta[(0, 0)].sqrt();
            num / (s_y2 / (dims.nf() - 1.0)).sqrt()
        });
        Ok(Self {
            dims,
            theta_hat,
            gamma_hat: DVector::zeros(dims.r2),
            info_theta,
            s_y2,
            ssr,
            t_stat,
        })
    }

    /// Univariate location test with X_θ = 𝟏_n and equicorrelated errors,
    /// parameterised by the t statistic and s_y².
    pub fn univariate_from_t(n: usize, rho: f64, t: f64, s_y2: f64) -> Result<Self> {
        let dims = Dims::univariate(n)?;
        check_rho(n, rho)?;
        if !(s_y2 > 0.0) {
            return Err(Error::InvalidData("s_y² must be positive when t is given".into()));
        }
        let info = equicorrelation_info(n, rho);
        let theta = t * (s_y2 / (n as f64 - 1.0)).sqrt() / info.sqrt();
        Self::from_parts(dims, DVector::from_element(1, theta), DMatrix::from_element(1, 1, info), s_y2)
    }

    /// Univariate location test parameterised by θ̂ and s_y².
    pub fn univariate_from_theta(n: usize, rho: f64, theta_hat: f64, s_y2: f64) -> Result<Self> {
        let dims = Dims::univariate(n)?;
        check_rho(n, rho)?;
        let info = equicorrelation_info(n, rho);
        Self::from_parts(dims, DVector::from_element(1, theta_hat), DMatrix::from_element(1, 1, info), s_y2)
    }

    /// Copy with θ̂ replaced (s_y² and information unchanged).
    pub fn with_theta(&self, theta_hat: DVector<f64>) -> Result<Self> {
        Self::from_parts(self.dims, theta_hat, self.info_theta.clone(), self.s_y2)
    }
}

fn check_rho(n: usize, rho: f64) -> Result<()> {
    let lower = if n > 1 { -1.0 / (n as f64 - 1.0) } else { f64::NEG_INFINITY };
    if !(rho > lower && rho <= 1.0) {
        return Err(Error::OutOfRange(format!("ρ must lie in ({lower}, 1], got {rho}")));
    }
    Ok(())
}

/// GLS estimates of θ and γ, their information block, and residual sums.
pub fn sufficient_stats(model: &ModelSpec, rep: &Reparam) -> Result<SuffStats> {
    let dims = model.dims();
    let k = model.x.ncols();
    let mut xt = DMatrix::zeros(dims.n, k);
    xt.columns_mut(0, dims.r1).copy_from(&rep.x_theta);
    xt.columns_mut(dims.r1, dims.r2).copy_from(&rep.x_gamma);
    let chol: Cholesky<f64, Dyn> = Cholesky::new(model.sigma.clone())
        .ok_or_else(|| Error::InvalidModel("Σ is not positive definite".into()))?;
    let sx = chol.solve(&xt);
    let sy = chol.solve(&model.y);
    let m = xt.transpose() * &sx;
    let rhs = xt.transpose() * &sy;
    let delta = Cholesky::new(m.clone())
        .ok_or_else(|| Error::InvalidModel("X'Σ⁻¹X is not positive definite".into()))?
        .solve(&rhs);
    let resid = &model.y - &xt * &delta;
    let s_y2 = resid.dot(&chol.solve(&resid)).max(0.0);
    let theta_hat = delta.rows(0, dims.r1).into_owned();
    let gamma_hat = delta.rows(dims.r1, dims.r2).into_owned();
    let info = m.view((0, 0), (dims.r1, dims.r1)).into_owned();
    let info = 0.5 * (&info + info.transpose());
    let mut s = SuffStats::from_parts(dims, theta_hat, info, s_y2)?;
    s.gamma_hat = gamma_hat;
    Ok(s)
}

/// GLS estimate of β in the original coordinates.
pub fn gls_beta(model: &ModelSpec) -> Result<DVector<f64>> {
    let chol = Cholesky::new(model.sigma.clone())
        .ok_or_else(|| Error::InvalidModel("Σ is not positive definite".into()))?;
    let m = model.x.transpose() * chol.solve(&model.x);
    let rhs = model.x.transpose() * chol.solve(&model.y);
    Ok(spd_solve(&m, &DMatrix::from_column_slice(rhs.len(), 1, rhs.as_slice()))?.column(0).into_owned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn equicorrelation_examples() {
        assert_eq!(equicorrelation(3, 0.0).unwrap(), DMatrix::identity(3, 3));
        let s = equicorrelation(2, 0.5).unwrap();
        assert_eq!(s, DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.5, 1.0]));
        let s = equicorrelation(5, 0.5).unwrap();
        let one = DVector::from_element(5, 1.0);
        let q = one.dot(&s.clone().cholesky().unwrap().solve(&one));
        assert!((q - 5.0 / 3.0).abs() < 1e-12);
        assert!(equicorrelation(4, 1.0).is_err());
        assert!(equicorrelation(4, -0.4).is_err());
    }

    #[test]
    fn identity_restriction_has_no_nuisance() {
        let x = DMatrix::from_row_slice(4, 2, &[1.0, 0.0, 1.0, 1.0, 1.0, 2.0, 1.0, 3.0]);
        let m = ModelSpec::new(
            DVector::from_vec(vec![1.0, 2.0, 2.5, 4.0]),
            x.clone(),
            DMatrix::identity(2, 2),
            DMatrix::identity(4, 4),
        )
        .unwrap();
        let rep = reparametrize(&m).unwrap();
        assert_eq!(rep.d.nrows(), 0);
        assert!((&rep.x_theta - &x).amax() < 1e-14);
    }

    #[test]
    fn perfect_fit_and_hand_example() {
        let one = DMatrix::from_element(4, 1, 1.0);
        let m = ModelSpec::new(
            DVector::from_element(4, 3.0),
            one.clone(),
            DMatrix::identity(1, 1),
            DMatrix::identity(4, 4),
        )
        .unwrap();
        let s = sufficient_stats(&m, &reparametrize(&m).unwrap()).unwrap();
        assert!((s.theta_hat[0] - 3.0).abs() < 1e-14);
        assert!(s.s_y2.abs() < 1e-24);

        let m = ModelSpec::new(
            DVector::from_vec(vec![1.0, 2.0, 3.0, 4.0]),
            one,
            DMatrix::identity(1, 1),
            DMatrix::identity(4, 4),
        )
        .unwrap();
        let s = sufficient_stats(&m, &reparametrize(&m).unwrap()).unwrap();
        assert!((s.theta_hat[0] - 2.5).abs() < 1e-14);
        assert!((s.s_y2 - 5.0).abs() < 1e-12);
    }

    #[test]
    fn orthonormal_two_column_example() {
        // Columns of X orthonormal: X'X = I, so D ∝ (0, 1) and the blocks decouple.
        let s = 0.5f64.sqrt();
        let x = DMatrix::from_row_slice(5, 2, &[s, 0.0, s, 0.0, 0.0, 1.0 / 3f64.sqrt(), 0.0, 1.0 / 3f64.sqrt(), 0.0, 1.0 / 3f64.sqrt()]);
        let m = ModelSpec::new(
            DVector::from_vec(vec![1.0, 0.0, 2.0, -1.0, 0.5]),
            x,
            DMatrix::from_row_slice(1, 2, &[1.0, 0.0]),
            DMatrix::identity(5, 5),
        )
        .unwrap();
        let rep = reparametrize(&m).unwrap();
        assert!(rep.d[(0, 0)].abs() < 1e-14);
        assert!((rep.d[(0, 1)].abs() - 1.0).abs() < 1e-14);
        let cross = (rep.x_theta.transpose() * &rep.x_gamma).amax();
        assert!(cross < 1e-14);
    }

    #[test]
    fn equicorrelated_random_design_decouples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x = DMatrix::from_fn(10, 3, |_, _| rng.random::<f64>() - 0.5);
        let y = DVector::from_fn(10, |_, _| rng.random::<f64>());
        let sigma = equicorrelation(10, 0.5).unwrap();
        let m = ModelSpec::new(y, x, DMatrix::from_row_slice(1, 3, &[1.0, 0.0, 0.0]), sigma.clone()).unwrap();
        let rep = reparametrize(&m).unwrap();
        let (cross, _) = cross_block(&sigma, &rep).unwrap();
        assert!(cross < 1e-8);
        // θ̂ agrees with the first coordinate of the direct GLS fit.
        let s = sufficient_stats(&m, &rep).unwrap();
        let beta = gls_beta(&m).unwrap();
        assert!((s.theta_hat[0] - beta[0]).abs() < 1e-10);
    }

    #[test]
    fn t_statistic_matches_univariate_formula() {
        let n = 6;
        let rho = 0.3;
        let sigma = equicorrelation(n, rho).unwrap();
        let y = DVector::from_vec(vec![0.3, 1.2, -0.4, 2.0, 0.9, 1.1]);
        let m = ModelSpec::new(y, DMatrix::from_element(n, 1, 1.0), DMatrix::identity(1, 1), sigma).unwrap();
        let s = sufficient_stats(&m, &reparametrize(&m).unwrap()).unwrap();
        let info = equicorrelation_info(n, rho);
        let want = s.theta_hat[0] * info.sqrt() / (s.s_y2 / (n as f64 - 1.0)).sqrt();
        assert!((s.t_stat.unwrap() - want).abs() < 1e-12);
        assert!((s.info_theta[(0, 0)] - info).abs() < 1e-12);
    }

    #[test]
    fn rank_deficient_restriction_rejected() {
        let r = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 2.0, 2.0]);
        let e = ModelSpec::new(
            DVector::zeros(4),
            DMatrix::from_fn(4, 2, |i, j| (i * j) as f64 + 1.0),
            r,
            DMatrix::identity(4, 4),
        );
        assert!(matches!(e, Err(Error::RankDeficient { .. })));
    }
}
