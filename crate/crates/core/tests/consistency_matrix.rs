//! Analytic verdicts against empirical probes, and threshold behaviour of the auditor.

mod common;

use common::cases;
use infocon::consistency::{audit, empirical_probe, AuditRequest, PriorFamily, TestKind, Verdict, VerdictKind};
use infocon::mc::McConfig;
use infocon::precise::{ln_bf_univariate_t, Mode};
use infocon::priors::{make_hyper_g, VariancePrior};

#[test]
fn verdicts_agree_with_probes() {
    let cfg = McConfig::default();
    let matrix = cases::probe_matrix();
    assert!(matrix.len() >= 14);
    let mut failures = Vec::new();
    for (label, req) in &matrix {
        let rep = empirical_probe(req, 8, &cfg).unwrap();
        println!("{label}: {:?} vs {:?}", rep.classification, rep.verdict.kind);
        if !rep.agreement {
            failures.push(label.clone());
        }
    }
    assert!(failures.is_empty(), "disagreements: {failures:?}");
}

#[test]
fn univariate_conjugate_limit_matches_closed_form() {
    for n in [2usize, 5, 7, 10, 20] {
        for rho in [0.0, 0.5, 0.9] {
            let req = AuditRequest::univariate(
                TestKind::Precise,
                VariancePrior::objective(),
                infocon::consistency::unit_conjugate(VariancePrior::objective()),
                n,
                rho,
            )
            .unwrap();
            let v = match audit(&req).unwrap().kind {
                VerdictKind::FiniteLimit(Some(v)) => v,
                k => panic!("{k:?}"),
            };
            let c = ln_bf_univariate_t(1.0, n, rho, Mode::Limit).unwrap().exp();
            assert!(((v - c) / c).abs() < 1e-10, "n={n} ρ={rho}: {v} vs {c}");
        }
    }
}

/// With ν₀ < ν₁ the hyper-g verdict flips at α = (n-r₁-r₂+ν₀)/2 + 1 (α = a/2).
#[test]
fn polynomial_tail_threshold_has_no_gap() {
    for (n, nu0) in [(7usize, 0.0), (10, 1.0), (5, 3.0)] {
        let thr = 0.5 * (n as f64 - 1.0 + nu0) + 1.0;
        let verdict_at = |alpha: f64| {
            let v1 = VariancePrior::new(1.0, nu0 + 2.0).unwrap();
            let fam = PriorFamily::Mixture(make_hyper_g(2.0 * alpha).unwrap().with_variance(v1));
            let p0 = VariancePrior::new(1.0, nu0).unwrap();
            audit(&AuditRequest::univariate(TestKind::Precise, p0, fam, n, 0.3).unwrap()).unwrap().kind
        };
        assert_eq!(verdict_at(thr - 1e-6), VerdictKind::Diverges, "n={n}");
        assert_eq!(verdict_at(thr + 1e-6), VerdictKind::ConvergesToZero, "n={n}");
    }
}

#[test]
fn verdict_json_round_trip() {
    for (_, req) in cases::probe_matrix() {
        let v = audit(&req).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        let back: Verdict = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v, "{s}");
        let tag = serde_json::from_str::<serde_json::Value>(&s).unwrap()["lemma"].as_str().unwrap().to_string();
        assert!(tag.starts_with("Lemma") || tag.starts_with("Section"), "{tag}");
        if let VerdictKind::FiniteLimit(Some(x)) = v.kind {
            assert!(x > 0.0);
        }
    }
}
