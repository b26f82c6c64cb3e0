//! From raw data to sufficient statistics: GLS fit under an equicorrelated Σ,
//! restriction θ = Rβ, and the conjugate Bayes factor for θ = 0.
//!
//! cargo run --example gls_reparametrize

use infocon::model::{equicorrelation, gls_beta, reparametrize, sufficient_stats, ModelSpec};
use infocon::precise::bf_conjugate;
use infocon::priors::{ConjugatePrior, PriorScale, VariancePrior};
use nalgebra::{DMatrix, DVector};

fn main() -> infocon::Result<()> {
    let x_col = [0.5, -0.2, 1.4, 0.9, -1.1, 1.0, 0.3, -0.6];
    let y = DVector::from_vec(vec![1.2, 0.7, 2.9, 1.8, 0.1, 2.2, 1.1, 0.4]);
    let x = DMatrix::from_fn(8, 2, |i, j| if j == 0 { 1.0 } else { x_col[i] });
    let r = DMatrix::from_row_slice(1, 2, &[0.0, 1.0]);
    let model = ModelSpec::new(y, x, r, equicorrelation(8, 0.3)?)?;

    let beta = gls_beta(&model)?;
    println!("GLS β̂ = ({:.5}, {:.5})", beta[0], beta[1]);
    let stats = sufficient_stats(&model, &reparametrize(&model)?)?;
    println!("θ̂ = {:.5}, information = {:.5}, s_y² = {:.5}", stats.theta_hat[0], stats.info_theta[(0, 0)], stats.s_y2);
    println!("t = {:.5}", stats.t_stat.unwrap_or(f64::NAN));

    let v = VariancePrior::objective();
    for (name, scale) in [("Ω = 1", PriorScale::Identity), ("g-prior g = n", PriorScale::GPrior(8.0))] {
        let bf = bf_conjugate(&stats, &v, &ConjugatePrior { scale, variance: v })?;
        println!("{name:<14} ln B = {:.5}  B = {:.5}", bf.log_bf, bf.bf);
    }
    Ok(())
}
