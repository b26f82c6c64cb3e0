//! Orthant probabilities P(x ≤ 0) for normal and t vectors by randomised lattice QMC.
//!
//! cargo run --example orthant_probabilities

use infocon::mc::{mvn_orthant, mvt_orthant, McConfig};
use nalgebra::{DMatrix, DVector};

fn main() -> infocon::Result<()> {
    let cfg = McConfig::default();
    for (r, rho) in [(2usize, 0.0), (2, 0.5), (3, 0.5), (4, 0.5), (6, -0.1)] {
        let cov = DMatrix::from_fn(r, r, |i, j| if i == j { 1.0 } else { rho });
        let p = mvn_orthant(&DVector::zeros(r), &cov, &cfg)?;
        println!("normal r={r} ρ={rho:<5} P={:.6} ± {:.1e}", p.value, p.std_error);
    }
    let cov = DMatrix::from_row_slice(3, 3, &[1.0, 0.4, 0.1, 0.4, 2.0, -0.3, 0.1, -0.3, 1.5]);
    let mean = DVector::from_vec(vec![0.3, -0.2, 0.5]);
    for df in [1.0, 5.0, 50.0] {
        let p = mvt_orthant(&mean, &cov, df, &cfg)?;
        println!("t df={df:<4} shifted mean  P={:.6} ± {:.1e}", p.value, p.std_error);
    }
    Ok(())
}
