//! Precise-test Bayes factors for a univariate t-test with equicorrelated errors,
//! at t = 4 and in the limit |t| → ∞.
//!
//! cargo run --example table1_precise_limits

use infocon::precise::{bf_univariate_t, Mode};
use infocon::special::{p_value_t, Sides};

fn main() -> infocon::Result<()> {
    let ns = [2usize, 5, 7, 10, 20];
    println!("{:<14}{}", "", ns.map(|n| format!("{:>12}", format!("n={n}"))).join(""));
    for rho in [0.0, 0.5, 1.0] {
        for mode in [Mode::Limit, Mode::Value] {
            let label = format!("ρ={rho} {}", if mode == Mode::Limit { "limit" } else { "t=4" });
            let cells: Vec<String> =
                ns.iter().map(|&n| bf_univariate_t(4.0, n, rho, mode).map(|b| format!("{b:>12.4e}"))).collect::<Result<_, _>>()?;
            println!("{label:<14}{}", cells.join(""));
        }
    }
    let ps: Vec<String> =
        ns.iter().map(|&n| p_value_t(4.0, n as f64 - 1.0, Sides::Two).map(|p| format!("{p:>12.4e}"))).collect::<Result<_, _>>()?;
    println!("{:<14}{}", "p (two-sided)", ps.join(""));
    Ok(())
}
