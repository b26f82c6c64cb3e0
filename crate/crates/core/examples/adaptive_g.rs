//! Empirical-Bayes g: the Bayes factor at the g that maximises it.
//!
//! cargo run --example adaptive_g

use infocon::model::SuffStats;
use infocon::precise::bf_adaptive;
use infocon::priors::{AdaptiveGPrior, VariancePrior};

fn main() -> infocon::Result<()> {
    let (n, rho) = (7usize, 0.5);
    let v = VariancePrior::objective();
    let prior = AdaptiveGPrior { variance: v };
    for t in [0.5, 1.5, 4.0, 20.0, 1e3] {
        let stats = SuffStats::univariate_from_t(n, rho, t, n as f64 - 1.0)?;
        let bf = bf_adaptive(&stats, &v, &prior)?;
        println!("t={t:<8} ĝ={:<14.6e} ln B={:.5}", bf.diag.g_max.unwrap_or(0.0), bf.log_bf);
    }
    Ok(())
}
