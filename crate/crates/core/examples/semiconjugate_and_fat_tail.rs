//! Priors not scaled by σ²: the independence (semi-conjugate) normal prior and a
//! fat-tailed t prior, with their limiting behaviour.
//!
//! cargo run --example semiconjugate_and_fat_tail

use infocon::mc::McConfig;
use infocon::model::{Dims, SuffStats};
use infocon::precise::{bf_fat_tail, LimitKind, bf_semiconjugate, bf_semiconjugate_limit, classify_fat_tail};
use infocon::priors::{FatTailedTPrior, PriorScale, SemiConjugatePrior, VariancePrior};

fn main() -> infocon::Result<()> {
    let (n, rho) = (7usize, 0.5);
    let cfg = McConfig::default();
    for (nu0, nu1) in [(0.0, 0.0), (1.0, 2.0), (2.0, 1.0)] {
        let v0 = VariancePrior::new(1.0, nu0)?;
        let prior = SemiConjugatePrior { scale: PriorScale::Identity, variance: VariancePrior::new(1.0, nu1)? };
        let mut row = format!("semi-conjugate ν₀={nu0} ν₁={nu1}:");
        for t in [4.0, 100.0, 1e4] {
            let stats = SuffStats::univariate_from_t(n, rho, t, n as f64 - 1.0)?;
            row.push_str(&format!(" t={t:e} ln B={:.4}", bf_semiconjugate(&stats, &v0, &prior, &cfg)?.log_bf));
        }
        println!("{row}  limit {:?}", bf_semiconjugate_limit(&v0, &prior, &Dims::univariate(n)?).kind);
    }
    for nu_t in [1.0, 6.0] {
        let v = VariancePrior::objective();
        let prior = FatTailedTPrior::new(1.0, nu_t, v)?;
        let mut row = format!("fat-t ν={nu_t}:");
        for t in [4.0, 100.0, 1e4] {
            let stats = SuffStats::univariate_from_t(n, rho, t, n as f64 - 1.0)?;
            row.push_str(&format!(" t={t:e} ln B={:.4}", bf_fat_tail(&stats, &v, &prior)?.log_bf));
        }
        let limit = match classify_fat_tail(n, 0.0, 0.0, nu_t) {
            LimitKind::Finite(v) if v.is_nan() => "bounded".to_string(),
            k => format!("{k:?}"),
        };
        println!("{row}  limit {limit}");
    }
    Ok(())
}
