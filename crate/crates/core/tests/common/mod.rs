//! Shared fixtures: random GLS instances and brute-force oracles that work from
//! the raw (y, X, Σ) rather than the library's reduced statistics.
#![allow(dead_code)]

use infocon::model::{self, ModelSpec, SuffStats};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use statrs::function::gamma::ln_gamma;

pub const LN_2PI: f64 = 1.837_877_066_409_345_3;

/// y = Xβ + ε with ε ~ N(0, σ²Σ), X fully restricted (θ = β, r2 = 0).
pub struct Instance {
    pub y: DVector<f64>,
    pub x: DMatrix<f64>,
    pub sigma: DMatrix<f64>,
    pub sinv: DMatrix<f64>,
    pub ln_det_sigma: f64,
}

impl Instance {
    pub fn random(seed: u64, n: usize, k: usize, rho: f64, beta: &[f64]) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = DMatrix::from_fn(n, k, |_, _| rng.sample::<f64, _>(StandardNormal));
        let sigma = model::equicorrelation(n, rho).unwrap();
        let l = sigma.clone().cholesky().unwrap().l();
        let e = DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let y = &x * DVector::from_column_slice(beta) + l * e;
        Self::new(y, x, sigma)
    }

    pub fn new(y: DVector<f64>, x: DMatrix<f64>, sigma: DMatrix<f64>) -> Self {
        let ch = sigma.clone().cholesky().unwrap();
        let ln_det_sigma = 2.0 * ch.l().diagonal().iter().map(|d| d.ln()).sum::<f64>();
        Self { sinv: ch.inverse(), y, x, sigma, ln_det_sigma }
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn k(&self) -> usize {
        self.x.ncols()
    }

    pub fn stats(&self) -> SuffStats {
        let k = self.k();
        let spec = ModelSpec::new(self.y.clone(), self.x.clone(), DMatrix::identity(k, k), self.sigma.clone()).unwrap();
        let rep = model::reparametrize(&spec).unwrap();
        model::sufficient_stats(&spec, &rep).unwrap()
    }

    /// Precomputed pieces of (y-Xβ)'Σ⁻¹(y-Xβ).
    pub fn quad_form(&self) -> QuadForm {
        QuadForm {
            yy: self.y.dot(&(&self.sinv * &self.y)),
            xy: self.x.transpose() * &self.sinv * &self.y,
            xx: self.x.transpose() * &self.sinv * &self.x,
        }
    }

    /// ln N(y; Xβ, σ²Σ).
    pub fn ln_lik(&self, q: &QuadForm, beta: &[f64], s2: f64) -> f64 {
        let n = self.n() as f64;
        -0.5 * n * (LN_2PI + s2.ln()) - 0.5 * self.ln_det_sigma - 0.5 * q.rss(beta) / s2
    }

    /// ln ∫ N(y; 0, σ²V) π(σ²) dσ² for V = Σ + X M X', σ² integrated analytically.
    pub fn ln_marginal_student(&self, m: Option<&DMatrix<f64>>, nu: f64, s2: f64) -> f64 {
        let n = self.n() as f64;
        // Woodbury and the matrix determinant lemma keep V = Σ + XMX' well conditioned for huge M.
        let yy = self.y.dot(&(&self.sinv * &self.y));
        let (ln_det, q) = match m {
            Some(m) => {
                let xx = self.x.transpose() * &self.sinv * &self.x;
                let b = self.x.transpose() * &self.sinv * &self.y;
                let minv = m.clone().try_inverse().unwrap();
                let inner = (&minv + &xx).cholesky().unwrap();
                let ld_inner = 2.0 * inner.l().diagonal().iter().map(|d| d.ln()).sum::<f64>();
                let ld_m = m.determinant().ln();
                (self.ln_det_sigma + ld_m + ld_inner, yy - b.dot(&inner.solve(&b)))
            }
            None => (self.ln_det_sigma, yy),
        };
        let h = 0.5 * (n + nu);
        -0.5 * n * LN_2PI - 0.5 * ln_det + ln_k(nu, s2) + ln_gamma(h) + h * std::f64::consts::LN_2
            - h * (q + nu * s2).ln()
    }
}

pub struct QuadForm {
    pub yy: f64,
    pub xy: DVector<f64>,
    pub xx: DMatrix<f64>,
}

impl QuadForm {
    pub fn rss(&self, b: &[f64]) -> f64 {
        let b = DVector::from_column_slice(b);
        self.yy - 2.0 * b.dot(&self.xy) + b.dot(&(&self.xx * &b))
    }
}

/// ln of the inv-χ²(s², ν) normalising constant (1 for the improper ν = 0 prior).
pub fn ln_k(nu: f64, s2: f64) -> f64 {
    if nu == 0.0 {
        0.0
    } else {
        0.5 * nu * (0.5 * nu * s2).ln() - ln_gamma(0.5 * nu)
    }
}

/// ln density of inv-χ²(s², ν) at σ².
pub fn ln_inv_chi2(s2_var: f64, nu: f64, s2: f64) -> f64 {
    ln_k(nu, s2) - (0.5 * nu + 1.0) * s2_var.ln() - 0.5 * nu * s2 / s2_var
}

/// ln N(θ; 0, Ω) for Ω given by its inverse and log-determinant.
pub fn ln_normal(theta: &[f64], omega_inv: &DMatrix<f64>, ln_det_omega: f64) -> f64 {
    let t = DVector::from_column_slice(theta);
    -0.5 * theta.len() as f64 * LN_2PI - 0.5 * ln_det_omega - 0.5 * t.dot(&(omega_inv * &t))
}

/// Streaming log-sum-exp.
#[derive(Default)]
pub struct LogSum {
    max: f64,
    sum: f64,
    started: bool,
}

impl LogSum {
    pub fn add(&mut self, v: f64) {
        if !v.is_finite() {
            return;
        }
        if !self.started {
            self.max = v;
            self.sum = 1.0;
            self.started = true;
        } else if v > self.max {
            self.sum = self.sum * (self.max - v).exp() + 1.0;
            self.max = v;
        } else {
            self.sum += (v - self.max).exp();
        }
    }

    pub fn ln(&self) -> f64 {
        self.max + self.sum.ln()
    }
}

/// Uniform grid of `m` points with trapezoid weights on [a, b].
pub fn trapezoid(a: f64, b: f64, m: usize) -> Vec<(f64, f64)> {
    let h = (b - a) / (m - 1) as f64;
    (0..m).map(|i| (a + h * i as f64, if i == 0 || i == m - 1 { 0.5 * h } else { h })).collect()
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(m: usize) -> Vec<(f64, f64)> {
    (0..m)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=m {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Composite Gauss-Legendre on [a, b] with `panels` panels of `m` nodes.
pub fn composite_gl(a: f64, b: f64, panels: usize, m: usize) -> Vec<(f64, f64)> {
    let gl = gauss_legendre(m);
    let h = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * m);
    for p in 0..panels {
        let (lo, hi) = (a + h * p as f64, a + h * (p + 1) as f64);
        for &(x, w) in &gl {
            out.push((0.5 * (lo + hi) + 0.5 * (hi - lo) * x, 0.5 * (hi - lo) * w));
        }
    }
    out
}

/// σ² grid in u = ln σ² centred on the residual scale.
pub fn log_var_grid(inst: &Instance) -> Vec<(f64, f64)> {
    let q = inst.quad_form();
    let c = (q.yy / inst.n() as f64).ln();
    trapezoid(c - 18.0, c + 18.0, 721)
}

/// Per-coordinate θ range covering both the prior and the likelihood.
pub fn theta_range(inst: &Instance, prior_sd: f64) -> Vec<(f64, f64)> {
    let st = inst.stats();
    let inv = st.info_theta.clone().try_inverse().unwrap();
    let s2 = st.s_y2 / (inst.n() - inst.k()) as f64;
    (0..inst.k())
        .map(|i| {
            let th = st.theta_hat[i];
            let sd = (inv[(i, i)] * s2).sqrt();
            let w = 14.0 * sd.max(0.2 * prior_sd);
            (th.min(0.0) - w, th.max(0.0) + w)
        })
        .collect()
}

/// ln ∫∫ N(y; 0, σ²Σ) π₀(σ²) dσ² on the u grid.
pub fn ln_m0_grid(inst: &Instance, nu: f64, s2: f64) -> f64 {
    let q = inst.quad_form();
    let zero = vec![0.0; inst.k()];
    let mut acc = LogSum::default();
    for (u, w) in log_var_grid(inst) {
        let v = u.exp();
        acc.add(inst.ln_lik(&q, &zero, v) + ln_inv_chi2(v, nu, s2) + u + w.ln());
    }
    acc.ln()
}

/// ln of a brute-force integral of N(y; Xθ, σ²Σ) p(θ) π(σ²) over a θ grid (r1 = 1 or 2) and ln σ².
pub fn ln_m1_grid<F: Fn(&[f64]) -> f64>(inst: &Instance, nu: f64, s2: f64, prior: F, prior_sd: f64, m: usize) -> f64 {
    let q = inst.quad_form();
    let ranges = theta_range(inst, prior_sd);
    let grids: Vec<Vec<(f64, f64)>> = ranges.iter().map(|&(a, b)| composite_gl(a, b, m / 8, 8)).collect();
    let ugrid = log_var_grid(inst);
    let mut acc = LogSum::default();
    let n = inst.n() as f64;
    let lvar: Vec<(f64, f64)> = ugrid
        .iter()
        .map(|&(u, w)| {
            let v = u.exp();
            (1.0 / v, -0.5 * n * (LN_2PI + u) - 0.5 * inst.ln_det_sigma + ln_inv_chi2(v, nu, s2) + u + w.ln())
        })
        .collect();
    let mut visit = |theta: &[f64], wt: f64| {
        let lp = prior(theta) + wt.ln();
        let rss = q.rss(theta);
        for &(inv_v, c) in &lvar {
            acc.add(lp + c - 0.5 * rss * inv_v);
        }
    };
    match grids.len() {
        1 => {
            for &(t, w) in &grids[0] {
                visit(&[t], w);
            }
        }
        2 => {
            for &(t0, w0) in &grids[0] {
                for &(t1, w1) in &grids[1] {
                    visit(&[t0, t1], w0 * w1);
                }
            }
        }
        _ => panic!("grid oracle supports r1 ≤ 2"),
    }
    acc.ln()
}

/// ln of the multivariate Student-t density t_df(loc, scale) at x.
pub fn ln_mvt(x: &DVector<f64>, loc: &DVector<f64>, scale: &DMatrix<f64>, df: f64) -> f64 {
    let p = x.len() as f64;
    let ch = scale.clone().cholesky().unwrap();
    let ln_det = 2.0 * ch.l().diagonal().iter().map(|d| d.ln()).sum::<f64>();
    let d = x - loc;
    let q = d.dot(&ch.solve(&d));
    ln_gamma(0.5 * (df + p)) - ln_gamma(0.5 * df) - 0.5 * p * (df * std::f64::consts::PI).ln() - 0.5 * ln_det
        - 0.5 * (df + p) * (1.0 + q / df).ln()
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}
pub mod cases;
