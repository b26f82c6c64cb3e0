//! One-sided test θ ≤ 0 against θ ≰ 0 with a conjugate encompassing prior:
//! the closed form, the orthant-probability path and a bivariate case.
//!
//! cargo run --example onesided

use infocon::mc::McConfig;
use infocon::model::{Dims, SuffStats};
use infocon::onesided::{bf_onesided_conjugate, bf_onesided_univariate};
use infocon::precise::Mode;
use infocon::priors::{ConjugatePrior, PriorScale, VariancePrior};
use nalgebra::{DMatrix, DVector};

fn main() -> infocon::Result<()> {
    let cfg = McConfig::default();
    let prior = ConjugatePrior { scale: PriorScale::Identity, variance: VariancePrior::objective() };
    for n in [2usize, 5, 7, 10, 20] {
        let closed = bf_onesided_univariate(4.0, n, 0.5, Mode::Value)?;
        let stats = SuffStats::univariate_from_t(n, 0.5, 4.0, n as f64 - 1.0)?;
        let orth = bf_onesided_conjugate(&stats, &prior, &cfg)?;
        println!("n={n:<3} closed form B={closed:<10.4} orthant path B={:<10.4} limit B={:.4e}", orth.bf, bf_onesided_univariate(4.0, n, 0.5, Mode::Limit)?);
    }

    let info = DMatrix::from_row_slice(2, 2, &[6.0, 2.0, 2.0, 5.0]);
    let stats = SuffStats::from_parts(Dims::new(12, 2, 0)?, DVector::from_vec(vec![0.8, 0.5]), info, 11.0)?;
    let r = bf_onesided_conjugate(&stats, &prior, &cfg)?;
    println!(
        "bivariate: P(θ≤0)={:.5} P(θ≤0|y)={:.3e} ± {:.1e}  ln B={:.4} (se {:.1e})",
        r.prior_prob.value, r.post_prob.value, r.post_prob.std_error, r.log_bf, r.diag.mc_std_err
    );
    Ok(())
}
