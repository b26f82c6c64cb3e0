//! Library Bayes factors against brute-force integrals over the raw likelihood.

mod common;

use common::cases::{self, Pair};

const TOL: f64 = 1e-3;

fn check(pairs: Vec<Pair>, tol: f64) {
    for p in &pairs {
        println!("{}: library ln B = {:.10}, oracle ln B = {:.10}, rel = {:.2e}", p.label, p.lib, p.reference, p.rel());
    }
    for p in &pairs {
        assert!(p.rel() < tol, "{}: rel {:.3e} ≥ {tol}", p.label, p.rel());
    }
}

#[test]
fn semiconjugate_matches_grid() {
    check(cases::semiconjugate_pairs(), TOL);
}

#[test]
fn mixtures_match_grid() {
    check(cases::mixture_pairs(), TOL);
}

#[test]
fn point_mass_equals_fixed_g() {
    for p in cases::point_mass_pairs() {
        assert!(p.abs() < 1e-10, "{}: {} vs {}", p.label, p.lib, p.reference);
    }
}

#[test]
fn fat_tail_matches_grid() {
    check(cases::fat_tail_pairs(), TOL);
}

#[test]
fn onesided_mixture_matches_grid() {
    check(cases::onesided_mixture_pairs(), TOL);
}

#[test]
fn savage_dickey_ratio() {
    let pairs = cases::savage_dickey_pairs(10, 7);
    for p in &pairs {
        println!("{}: ln B = {:.12}, density ratio = {:.12}", p.label, p.lib, p.reference);
    }
    for p in &pairs {
        assert!(p.rel() < 1e-8, "{}: rel {:.3e}", p.label, p.rel());
    }
}
