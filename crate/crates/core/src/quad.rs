//! Globally adaptive Gauss-Kronrod (7/15) quadrature, including a log-space
//! driver for integrands whose values span many orders of magnitude.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-8, abs_tol: 1e-12, max_panels: 10_000 }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    pub panels: usize,
    pub converged: bool,
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    let k = k * h;
    let g = g * h;
    let err = (k - g).abs();
    (k, if err.is_nan() { f64::INFINITY } else { err })
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.partial_cmp(&o.err).unwrap_or(Ordering::Equal)
    }
}

/// Integrate `f` over [a, b].
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> QuadResult {
    integrate_breaks(f, &[a, b], opts)
}

/// Integrate `f` over [breaks[0], breaks[last]] with the given interior breakpoints.
pub fn integrate_breaks<F: FnMut(f64) -> f64>(
    mut f: F,
    breaks: &[f64],
    opts: &QuadOptions,
) -> QuadResult {
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut err = 0.0;
    for w in breaks.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let (v, e) = gk15(&mut f, w[0], w[1]);
        total += v;
        err += e;
        heap.push(Panel { a: w[0], b: w[1], value: v, err: e });
    }
    let mut panels = heap.len();
    loop {
        if err <= opts.abs_tol.max(opts.rel_tol * total.abs()) {
            return QuadResult { value: total, abs_err: err, panels, converged: true };
        }
        if panels >= opts.max_panels || !total.is_finite() {
            break;
        }
        let p = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        let m = 0.5 * (p.a + p.b);
        if !(m > p.a && m < p.b) {
            // Panel cannot be split further in floating point.
            heap.push(Panel { err: 0.0, ..p });
            err = heap.iter().map(|q| q.err).sum();
            continue;
        }
        let (v1, e1) = gk15(&mut f, p.a, m);
        let (v2, e2) = gk15(&mut f, m, p.b);
        total += v1 + v2 - p.value;
        err += e1 + e2 - p.err;
        heap.push(Panel { a: p.a, b: m, value: v1, err: e1 });
        heap.push(Panel { a: m, b: p.b, value: v2, err: e2 });
        panels += 1;
        if panels % 64 == 0 {
            // Resum to shed accumulated rounding in the running totals.
            total = heap.iter().map(|q| q.value).sum();
            err = heap.iter().map(|q| q.err).sum();
        }
    }
    total = heap.iter().map(|q| q.value).sum();
    err = heap.iter().map(|q| q.err).sum();
    QuadResult {
        value: total,
        abs_err: err,
        panels,
        converged: err <= opts.abs_tol.max(opts.rel_tol * total.abs()),
    }
}

/// Result of a log-space integration.
#[derive(Debug, Clone, Copy)]
pub struct LogQuad {
    /// ln of the integral.
    pub ln_value: f64,
    /// Estimated relative error of the integral (absolute error of `ln_value`).
    pub rel_err: f64,
    pub converged: bool,
}

/// One piece of the real line over which a log-integrand is integrated.
#[derive(Debug, Clone, Copy)]
pub enum Piece {
    /// Finite interval [a, b].
    Finite(f64, f64),
    /// [a, ∞) mapped by x = a + scale·u/(1-u).
    RightRay { a: f64, scale: f64 },
    /// (-∞, b] mapped by x = b - scale·u/(1-u).
    LeftRay { b: f64, scale: f64 },
}

impl Piece {
    /// (x, ln|dx/du|) for u in [0, 1] (finite pieces use u directly as x).
    fn map(&self, u: f64) -> (f64, f64) {
        match *self {
            Piece::Finite(_, _) => (u, 0.0),
            Piece::RightRay { a, scale } => {
                let om = 1.0 - u;
                (a + scale * u / om, scale.ln() - 2.0 * om.ln())
            }
            Piece::LeftRay { b, scale } => {
                let om = 1.0 - u;
                (b - scale * u / om, scale.ln() - 2.0 * om.ln())
            }
        }
    }

    fn domain(&self) -> (f64, f64) {
        match *self {
            Piece::Finite(a, b) => (a, b),
            _ => (0.0, 1.0),
        }
    }
}

/// Integrate exp(logf) over the union of `pieces`, scaling by the largest
/// observed log value so that neither overflow nor underflow occurs.
pub fn integrate_log<F: FnMut(f64) -> f64>(
    mut logf: F,
    pieces: &[Piece],
    opts: &QuadOptions,
) -> LogQuad {
    // Seed the shift from a coarse scan.
    let mut shift = f64::NEG_INFINITY;
    for p in pieces {
        let (lo, hi) = p.domain();
        for i in 0..=16 {
            let u = lo + (hi - lo) * (i as f64 + 0.5) / 17.0;
            let (x, lj) = p.map(u);
            let v = logf(x) + lj;
            if v > shift {
                shift = v;
            }
        }
    }
    if !shift.is_finite() {
        shift = 0.0;
    }
    for _attempt in 0..4 {
        let mut seen = f64::NEG_INFINITY;
        let mut total = 0.0;
        let mut err = 0.0;
        let mut ok = true;
        let local = QuadOptions { abs_tol: 0.0, ..*opts };
        for p in pieces {
            let (lo, hi) = p.domain();
            let r = integrate(
                |u| {
                    if u >= 1.0 && !matches!(p, Piece::Finite(..)) {
                        return 0.0;
                    }
                    let (x, lj) = p.map(u);
                    let v = logf(x) + lj;
                    if v > seen {
                        seen = v;
                    }
                    let e = (v - shift).exp();
                    if e.is_finite() {
                        e
                    } else if v.is_nan() {
                        0.0
                    } else {
                        f64::MAX
                    }
                },
                lo,
                hi,
                &local,
            );
            total += r.value;
            err += r.abs_err;
            ok &= r.converged;
        }
        if seen > shift + 600.0 {
            shift = seen;
            continue;
        }
        if total > 0.0 {
            let rel = err / total;
            // Pieces converge individually to rel_tol of their own share; the
            // sum is judged against the overall tolerance.
            let converged = ok || rel <= opts.rel_tol;
            return LogQuad { ln_value: total.ln() + shift, rel_err: rel, converged };
        }
        if seen.is_finite() && seen > shift - 700.0 {
            shift = seen;
            continue;
        }
        return LogQuad { ln_value: f64::NEG_INFINITY, rel_err: 0.0, converged: ok };
    }
    LogQuad { ln_value: f64::NAN, rel_err: f64::INFINITY, converged: false }
}

/// Breakpoints, sorted and de-duplicated, restricted to (lo, hi) and framed by them.
pub fn frame_breaks(lo: f64, hi: f64, interior: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = interior.iter().copied().filter(|x| *x > lo && *x < hi).collect();
    v.push(lo);
    v.push(hi);
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.dedup();
    v
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j as f64 + 1.0) * z * p2 - j as f64 * p3) / (j as f64 + 1.0);
            }
            pp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}
