//! Mixtures of g-priors: hyper-g, Zellner-Siow and a point mass, as the t statistic grows.
//!
//! cargo run --example mixture_priors

use infocon::model::SuffStats;
use infocon::precise::bf_mixture;
use infocon::priors::{make_hyper_g, make_point_mass, make_zellner_siow, VariancePrior};

fn main() -> infocon::Result<()> {
    let (n, rho) = (10usize, 0.3);
    let v = VariancePrior::objective();
    let priors = [
        ("hyper-g a=3", make_hyper_g(3.0)?),
        ("hyper-g a=12", make_hyper_g(12.0)?),
        ("Zellner-Siow", make_zellner_siow(n)?),
        ("point mass g=n", make_point_mass(n as f64)?),
    ];
    println!("{:<16}{:>12}{:>12}{:>12}{:>12}", "prior", "t=2", "t=10", "t=100", "t=1e4");
    for (name, prior) in &priors {
        let mut row = format!("{name:<16}");
        for t in [2.0, 10.0, 100.0, 1e4] {
            let stats = SuffStats::univariate_from_t(n, rho, t, n as f64 - 1.0)?;
            row.push_str(&format!("{:>12.4}", bf_mixture(&stats, &v, prior)?.log_bf));
        }
        println!("{row}");
    }
    println!("(entries are ln B; hyper-g a=12 stays bounded, the others grow without limit)");
    Ok(())
}
