//! Check cases shared by the acceptance report and the focused test files.

use super::*;
use infocon::consistency::{AuditRequest, PriorFamily, TestKind};
use infocon::mc::McConfig;
use infocon::model::{Dims, SuffStats};
use infocon::onesided::bf_onesided_mixture;
use infocon::precise::{bf_conjugate, bf_fat_tail, bf_mixture, bf_semiconjugate};
use infocon::priors::{
    make_hyper_g, make_point_mass, make_zellner_siow, AdaptiveGPrior, ConjugatePrior, FatTailedTPrior, GMixturePrior,
    MixingLaw, PriorScale, SemiConjugatePrior, VariancePrior,
};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{Continuous, ContinuousCDF, StudentsT};

/// A library value next to its reference, both as ln B.
pub struct Pair {
    pub label: String,
    pub lib: f64,
    pub reference: f64,
}

impl Pair {
    pub fn rel(&self) -> f64 {
        rel(self.lib.exp(), self.reference.exp())
    }

    pub fn abs(&self) -> f64 {
        (self.lib - self.reference).abs()
    }
}

pub fn var(nu: f64, s2: f64) -> VariancePrior {
    VariancePrior::new(s2, nu).unwrap()
}

// ---------------------------------------------------------------------------
// Univariate closed forms written directly from the model (Ω = 1, ν = 0).

/// Information of the location model with equicorrelated errors.
pub fn info_1d(n: usize, rho: f64) -> f64 {
    n as f64 / (1.0 + (n as f64 - 1.0) * rho)
}

/// Precise Bayes factor: (1+I)^{-1/2} ((s²+SSR)/(s²+SSR/(1+I)))^{n/2} with SSR = t²s²/(n-1).
pub fn precise_1d(t: f64, n: usize, rho: f64) -> f64 {
    let i = info_1d(n, rho);
    let nf = n as f64;
    let ssr = t * t / (nf - 1.0);
    -0.5 * (1.0 + i).ln() + 0.5 * nf * ((1.0 + ssr) / (1.0 + ssr / (1.0 + i))).ln()
}

pub fn precise_1d_limit(n: usize, rho: f64) -> f64 {
    0.5 * (n as f64 - 1.0) * (1.0 + info_1d(n, rho)).ln()
}

/// One-sided Bayes factor (1-Q)/Q with Q the posterior P(θ ≤ 0) of t_n(Iθ̂/(1+I), ·).
pub fn onesided_1d(t: f64, n: usize, rho: f64) -> f64 {
    let i = info_1d(n, rho);
    let nf = n as f64;
    let s2 = nf - 1.0;
    let th = t * (s2 / (nf - 1.0)).sqrt() / i.sqrt();
    let loc = i * th / (1.0 + i);
    let scale = ((s2 + th * th * i / (1.0 + i)) / nf / (1.0 + i)).sqrt();
    let d = StudentsT::new(0.0, 1.0, nf).unwrap();
    let q = d.cdf(-loc / scale);
    ((1.0 - q) / q).ln()
}

pub fn onesided_1d_limit(n: usize, rho: f64) -> f64 {
    let nf = n as f64;
    let m = (nf * info_1d(n, rho)).sqrt();
    let q = StudentsT::new(0.0, 1.0, nf).unwrap().cdf(-m);
    ((1.0 - q) / q).ln()
}

// ---------------------------------------------------------------------------
// Brute-force oracle equivalences.

fn semiconj_case(label: &str, inst: &Instance, omega: DMatrix<f64>, v0: (f64, f64), v1: (f64, f64)) -> Pair {
    let stats = inst.stats();
    let prior = SemiConjugatePrior { scale: PriorScale::Matrix(omega.clone()), variance: var(v1.0, v1.1) };
    let lib = bf_semiconjugate(&stats, &var(v0.0, v0.1), &prior, &McConfig::default()).unwrap().log_bf;
    let oi = omega.clone().try_inverse().unwrap();
    let ld = omega.determinant().ln();
    let sd = omega.diagonal().max().sqrt();
    let m = if inst.k() == 1 { 512 } else { 160 };
    let m1 = ln_m1_grid(inst, v1.0, v1.1, |t| ln_normal(t, &oi, ld), sd, m);
    let m0 = ln_m0_grid(inst, v0.0, v0.1);
    Pair { label: label.into(), lib, reference: m1 - m0 }
}

pub fn semiconjugate_pairs() -> Vec<Pair> {
    let a = Instance::random(11, 6, 1, 0.3, &[0.8]);
    let b = Instance::random(12, 8, 2, 0.2, &[0.5, -0.4]);
    vec![
        semiconj_case("semi-conjugate r1=1 objective", &a, DMatrix::from_element(1, 1, 1.5), (0.0, 0.0), (0.0, 0.0)),
        semiconj_case("semi-conjugate r1=1 proper", &a, DMatrix::from_element(1, 1, 0.7), (3.0, 1.0), (2.0, 1.5)),
        semiconj_case(
            "semi-conjugate r1=2 objective",
            &b,
            DMatrix::from_row_slice(2, 2, &[1.0, 0.3, 0.3, 0.8]),
            (0.0, 0.0),
            (0.0, 0.0),
        ),
    ]
}

/// ln ∫ π(g) m₁(g) dg on a ln g grid, m₁ from the n-dimensional Student marginal of y.
fn mixture_oracle(inst: &Instance, law: &MixingLaw, base: &DMatrix<f64>, nu1: f64, s1: f64) -> f64 {
    let mut acc = LogSum::default();
    for (s, w) in trapezoid(-30.0, 45.0, 3001) {
        let m = base * s.exp();
        acc.add(law.ln_density_log_g(s) + inst.ln_marginal_student(Some(&m), nu1, s1) + w.ln());
    }
    acc.ln()
}

fn mixture_case(label: &str, inst: &Instance, mix: GMixturePrior, v0: (f64, f64)) -> Pair {
    let stats = inst.stats();
    let lib = bf_mixture(&stats, &var(v0.0, v0.1), &mix).unwrap().log_bf;
    let base = mix.base.resolve(&stats.info_theta).unwrap();
    let v1 = mix.variance;
    let reference = mixture_oracle(inst, &mix.law, &base, v1.nu, v1.s2) - inst.ln_marginal_student(None, v0.0, v0.1);
    Pair { label: label.into(), lib, reference }
}

pub fn mixture_pairs() -> Vec<Pair> {
    let a = Instance::random(21, 6, 1, 0.4, &[0.9]);
    let b = Instance::random(22, 8, 2, 0.1, &[0.6, 0.3]);
    vec![
        mixture_case("hyper-g a=3 r1=1", &a, make_hyper_g(3.0).unwrap(), (0.0, 0.0)),
        mixture_case("zellner-siow r1=2", &b, make_zellner_siow(8).unwrap(), (0.0, 0.0)),
        mixture_case("hyper-g a=4 r1=2 proper", &b, make_hyper_g(4.0).unwrap().with_variance(var(2.0, 1.0)), (1.0, 2.0)),
        mixture_case(
            "hyper-g a=3 r1=2 identity base",
            &b,
            make_hyper_g(3.0).unwrap().with_base(PriorScale::Identity),
            (0.0, 0.0),
        ),
    ]
}

/// Point-mass mixtures against the conjugate prior at the same g.
pub fn point_mass_pairs() -> Vec<Pair> {
    let inst = Instance::random(31, 7, 2, 0.3, &[0.4, 0.7]);
    let stats = inst.stats();
    [(1.0, 0.0, PriorScale::GPrior(1.0)), (7.5, 2.0, PriorScale::GPrior(1.0)), (0.3, 1.0, PriorScale::Identity)]
        .into_iter()
        .map(|(g0, nu, base)| {
            let v = var(nu, 1.2);
            let mix = make_point_mass(g0).unwrap().with_variance(v).with_base(base.clone());
            let lib = bf_mixture(&stats, &v, &mix).unwrap().log_bf;
            let omega = base.resolve(&stats.info_theta).unwrap() * g0;
            let conj = ConjugatePrior { scale: PriorScale::Matrix(omega), variance: v };
            let reference = bf_conjugate(&stats, &v, &conj).unwrap().log_bf;
            Pair { label: format!("point mass g0={g0}"), lib, reference }
        })
        .collect()
}

fn fat_case(label: &str, inst: &Instance, tau: f64, nu_t: f64, v0: (f64, f64), v1: (f64, f64)) -> Pair {
    let stats = inst.stats();
    let prior = FatTailedTPrior::new(tau, nu_t, var(v1.0, v1.1)).unwrap();
    let lib = bf_fat_tail(&stats, &var(v0.0, v0.1), &prior).unwrap().log_bf;
    let t = StudentsT::new(0.0, tau, nu_t).unwrap();
    let m1 = ln_m1_grid(inst, v1.0, v1.1, |x| t.ln_pdf(x[0]), tau, 1024);
    Pair { label: label.into(), lib, reference: m1 - ln_m0_grid(inst, v0.0, v0.1) }
}

pub fn fat_tail_pairs() -> Vec<Pair> {
    let a = Instance::random(41, 6, 1, 0.2, &[1.1]);
    let b = Instance::random(42, 4, 1, 0.0, &[0.3]);
    vec![
        fat_case("fat-t cauchy objective", &a, 1.0, 1.0, (0.0, 0.0), (0.0, 0.0)),
        fat_case("fat-t t3 proper", &a, 0.5, 3.0, (2.0, 1.0), (2.0, 0.8)),
        fat_case("fat-t t0.5 n=4", &b, 2.0, 0.5, (0.0, 0.0), (0.0, 0.0)),
    ]
}

/// Conjugate posterior of θ given g: t_{n+ν}(μ, SSE/(n+ν)·P⁻¹) with P = X'Σ⁻¹X + (gΩ)⁻¹.
fn posterior_given_g(inst: &Instance, base: &DMatrix<f64>, g: f64, nu: f64, s2: f64) -> (DVector<f64>, DMatrix<f64>, f64) {
    let q = inst.quad_form();
    let p = &q.xx + (base * g).try_inverse().unwrap();
    let pinv = p.clone().try_inverse().unwrap();
    let mu = &pinv * &q.xy;
    let df = inst.n() as f64 + nu;
    let sse = nu * s2 + q.yy - mu.dot(&(&p * &mu));
    (mu, pinv * (sse / df), df)
}

/// P(θ ≤ 0) for a bivariate t by composite Gauss-Legendre over the negative quadrant.
fn bivariate_t_orthant(mu: &DVector<f64>, scale: &DMatrix<f64>, df: f64) -> f64 {
    let sd: Vec<f64> = (0..2).map(|i| scale[(i, i)].sqrt()).collect();
    let grids: Vec<Vec<(f64, f64)>> =
        (0..2).map(|i| composite_gl(mu[i].min(0.0) - 60.0 * sd[i], 0.0, 40, 8)).collect();
    let inv = scale.clone().try_inverse().unwrap();
    let ln_c = ln_mvt(mu, mu, scale, df);
    let mut total = 0.0;
    for &(a, wa) in &grids[0] {
        let da = a - mu[0];
        for &(b, wb) in &grids[1] {
            let db = b - mu[1];
            let q = inv[(0, 0)] * da * da + 2.0 * inv[(0, 1)] * da * db + inv[(1, 1)] * db * db;
            total += wa * wb * (ln_c - 0.5 * (df + 2.0) * (q / df).ln_1p()).exp();
        }
    }
    total
}

fn onesided_mixture_case(label: &str, inst: &Instance, mix: GMixturePrior) -> Pair {
    let stats = inst.stats();
    let lib = bf_onesided_mixture(&stats, &mix, &McConfig::default()).unwrap().log_bf;
    let base = mix.base.resolve(&stats.info_theta).unwrap();
    let (nu, s2) = (mix.variance.nu, mix.variance.s2);
    let (mut num, mut den) = (LogSum::default(), LogSum::default());
    let nodes = if inst.k() == 1 { 3001 } else { 451 };
    for (s, w) in trapezoid(-30.0, 45.0, nodes) {
        let g = s.exp();
        let lw = mix.law.ln_density_log_g(s) + inst.ln_marginal_student(Some(&(&base * g)), nu, s2) + w.ln();
        let (mu, sc, df) = posterior_given_g(inst, &base, g, nu, s2);
        let q = if inst.k() == 1 {
            StudentsT::new(mu[0], sc[(0, 0)].sqrt(), df).unwrap().cdf(0.0)
        } else {
            bivariate_t_orthant(&mu, &sc, df)
        };
        num.add(lw + q.ln());
        den.add(lw);
    }
    let post = (num.ln() - den.ln()).exp();
    let prior = if inst.k() == 1 {
        0.5
    } else {
        let r = base[(0, 1)] / (base[(0, 0)] * base[(1, 1)]).sqrt();
        0.25 + r.asin() / (2.0 * std::f64::consts::PI)
    };
    let reference = (prior / (1.0 - prior)).ln() + ((1.0 - post) / post).ln();
    Pair { label: label.into(), lib, reference }
}

pub fn onesided_mixture_pairs() -> Vec<Pair> {
    let a = Instance::random(51, 6, 1, 0.3, &[0.5]);
    let b = Instance::random(52, 7, 1, 0.0, &[-0.2]);
    let c = Instance::random(53, 8, 2, 0.2, &[0.3, 0.2]);
    vec![
        onesided_mixture_case("one-sided hyper-g r1=1", &a, make_hyper_g(3.0).unwrap()),
        onesided_mixture_case(
            "one-sided zellner-siow r1=1 proper",
            &b,
            make_zellner_siow(7).unwrap().with_variance(var(2.0, 1.0)),
        ),
        onesided_mixture_case("one-sided hyper-g r1=2", &c, make_hyper_g(3.0).unwrap()),
    ]
}

// ---------------------------------------------------------------------------
// Savage-Dickey density ratio.

fn random_spd(rng: &mut ChaCha8Rng, r: usize) -> DMatrix<f64> {
    let b = DMatrix::from_fn(r, r, |_, _| rng.random_range(-1.0..1.0));
    &b * b.transpose() + DMatrix::identity(r, r) * 0.5
}

/// With ν₀ = ν₁ + r₁ and s₀² = ν₁s₁²/(ν₁ + r₁), the conjugate Bayes factor equals the
/// ratio of the marginal prior t density of θ at 0 to its marginal posterior t density at 0.
pub fn savage_dickey_pairs(count: usize, seed: u64) -> Vec<Pair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let r1 = rng.random_range(1..=3usize);
            let r2 = rng.random_range(0..=2usize);
            let n = rng.random_range(r1 + r2 + 3..=15usize);
            let info = random_spd(&mut rng, r1) * (n as f64 / 2.0);
            let omega = random_spd(&mut rng, r1);
            let theta = DVector::from_fn(r1, |_, _| rng.random_range(-1.5..1.5));
            let s_y2 = rng.random_range(0.5..(2.0 * n as f64));
            let nu1 = rng.random_range(0.5..6.0);
            let s1 = rng.random_range(0.2..3.0);
            let nu0 = nu1 + r1 as f64;
            let s0 = nu1 * s1 / nu0;
            let dims = Dims::new(n, r1, r2).unwrap();
            let stats = SuffStats::from_parts(dims, theta.clone(), info.clone(), s_y2).unwrap();
            let prior1 = ConjugatePrior { scale: PriorScale::Matrix(omega.clone()), variance: var(nu1, s1) };
            let lib = bf_conjugate(&stats, &var(nu0, s0), &prior1).unwrap().log_bf;

            let zero = DVector::zeros(r1);
            let ln_prior0 = ln_mvt(&zero, &zero, &(&omega * s1), nu1);
            let a = (&info + omega.clone().try_inverse().unwrap()).try_inverse().unwrap();
            let loc = &a * &info * &theta;
            let m = info.clone().try_inverse().unwrap() + &omega;
            let q = theta.dot(&(m.try_inverse().unwrap() * &theta));
            let df = n as f64 - r2 as f64 + nu1;
            let scale = &a * ((nu1 * s1 + s_y2 + q) / df);
            let ln_post0 = ln_mvt(&zero, &loc, &scale, df);
            Pair { label: format!("config {i}: n={n} r1={r1} r2={r2} ν₁={nu1:.2}"), lib, reference: ln_prior0 - ln_post0 }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Verdict × probe matrix.

pub fn probe_matrix() -> Vec<(String, AuditRequest)> {
    let obj = VariancePrior::objective();
    let unit = |nu: f64| var(nu, if nu > 0.0 { 1.0 } else { 0.0 });
    let conj = |nu: f64| PriorFamily::Conjugate(ConjugatePrior { scale: PriorScale::Identity, variance: unit(nu) });
    let semi = |nu: f64| PriorFamily::SemiConjugate(SemiConjugatePrior { scale: PriorScale::Identity, variance: unit(nu) });
    let fat = |nu1: f64, nu_t: f64| PriorFamily::FatTail(FatTailedTPrior::new(1.0, nu_t, unit(nu1)).unwrap());
    let mix = |m: GMixturePrior, nu1: f64| PriorFamily::Mixture(m.with_variance(unit(nu1)));
    let adaptive = PriorFamily::Adaptive(AdaptiveGPrior::default());
    let p = TestKind::Precise;
    let o = TestKind::Onesided;
    let cases: Vec<(&str, TestKind, VariancePrior, PriorFamily)> = vec![
        ("precise conjugate ν₀<ν₁", p, obj, conj(2.0)),
        ("precise conjugate ν₀=ν₁", p, obj, conj(0.0)),
        ("precise conjugate ν₀>ν₁", p, unit(2.0), conj(0.0)),
        ("precise semi-conjugate ν₀<ν₁", p, unit(1.0), semi(2.0)),
        ("precise semi-conjugate ν₀=ν₁", p, obj, semi(0.0)),
        ("precise semi-conjugate ν₀>ν₁", p, unit(2.0), semi(1.0)),
        ("precise hyper-g a=3 (consistent)", p, obj, mix(make_hyper_g(3.0).unwrap(), 0.0)),
        ("precise hyper-g a=9 (inconsistent, finite)", p, obj, mix(make_hyper_g(9.0).unwrap(), 0.0)),
        ("precise hyper-g a=10 ν₀<ν₁ (inconsistent, zero)", p, obj, mix(make_hyper_g(10.0).unwrap(), 2.0)),
        ("precise zellner-siow", p, obj, mix(make_zellner_siow(7).unwrap(), 0.0)),
        ("precise fat-t cauchy (diverges)", p, obj, fat(0.0, 1.0)),
        ("precise fat-t ν=6 (finite)", p, obj, fat(0.0, 6.0)),
        ("precise fat-t ν₀<ν₁ ν=20 (zero)", p, obj, fat(2.0, 20.0)),
        ("precise adaptive", p, obj, adaptive.clone()),
        ("one-sided conjugate", o, obj, conj(0.0)),
        ("one-sided independence", o, obj, semi(0.0)),
        ("one-sided hyper-g a=3", o, obj, mix(make_hyper_g(3.0).unwrap(), 0.0)),
        ("one-sided adaptive", o, obj, adaptive),
    ];
    cases
        .into_iter()
        .map(|(label, t, p0, fam)| (label.to_string(), AuditRequest::univariate(t, p0, fam, 7, 0.5).unwrap()))
        .collect()
}
