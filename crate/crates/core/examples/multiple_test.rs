//! Three hypotheses θ = 0, θ ≤ 0, θ ≰ 0 under one encompassing prior, and how
//! the pairwise Bayes factors behave as t grows when ν₀ exceeds the prior ν.
//!
//! cargo run --example multiple_test

use infocon::mc::McConfig;
use infocon::model::SuffStats;
use infocon::onesided::{bf_multiple, Encompassing};
use infocon::priors::{ConjugatePrior, PriorScale, VariancePrior};

fn main() -> infocon::Result<()> {
    let cfg = McConfig::default();
    let enc = Encompassing::Conjugate(ConjugatePrior { scale: PriorScale::Identity, variance: VariancePrior::objective() });
    let p0 = VariancePrior::new(1.0, 2.0)?;
    println!("{:>8}{:>12}{:>12}{:>12}", "t", "ln B10", "ln B20", "ln B21");
    for t in [1.0, 10.0, 1e2, 1e3, 1e4, 1e5] {
        let stats = SuffStats::univariate_from_t(7, 0.5, t, 6.0)?;
        let r = bf_multiple(&stats, &p0, &enc, &cfg)?;
        println!("{t:>8.0e}{:>12.4}{:>12.4}{:>12.4}", r.log_b10, r.log_b20, r.log_b21);
    }
    Ok(())
}
