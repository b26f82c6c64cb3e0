//! Analytic information-consistency verdicts, each checked by a numerical probe
//! that evaluates ln B over eight decades of |θ̂|.
//!
//! cargo run --example consistency_audit

use infocon::consistency::{empirical_probe, unit_conjugate, AuditRequest, PriorFamily, TestKind};
use infocon::mc::McConfig;
use infocon::priors::{make_hyper_g, make_zellner_siow, FatTailedTPrior, PriorScale, SemiConjugatePrior, VariancePrior};

fn main() -> infocon::Result<()> {
    let v = |nu: f64| VariancePrior::new(1.0, nu);
    let semi = |nu: f64| -> infocon::Result<PriorFamily> {
        Ok(PriorFamily::SemiConjugate(SemiConjugatePrior { scale: PriorScale::Identity, variance: v(nu)? }))
    };
    let cases = [
        ("conjugate ν₀=ν₁=0", TestKind::Precise, v(0.0)?, unit_conjugate(v(0.0)?)),
        ("semi-conjugate ν₀=1 ν₁=2", TestKind::Precise, v(1.0)?, semi(2.0)?),
        ("hyper-g a=3", TestKind::Precise, v(0.0)?, PriorFamily::Mixture(make_hyper_g(3.0)?)),
        ("Zellner-Siow", TestKind::Precise, v(0.0)?, PriorFamily::Mixture(make_zellner_siow(7)?)),
        ("Cauchy", TestKind::Precise, v(0.0)?, PriorFamily::FatTail(FatTailedTPrior::new(1.0, 1.0, v(0.0)?)?)),
        ("one-sided conjugate", TestKind::Onesided, v(0.0)?, unit_conjugate(v(0.0)?)),
    ];
    let cfg = McConfig::default();
    for (label, test, p0, fam) in cases {
        let rep = empirical_probe(&AuditRequest::univariate(test, p0, fam, 7, 0.5)?, 8, &cfg)?;
        println!(
            "{label:<26} verdict {:<28} probe {:<34} agree={}",
            format!("{:?}", rep.verdict.kind),
            format!("{:?}", rep.classification),
            rep.agreement
        );
    }
    Ok(())
}
