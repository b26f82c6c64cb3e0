//! Randomised invariants.

mod common;

use common::cases;
use infocon::cli::config::{Dataset, PriorSpec, RunConfig, RunMode, Synthetic, VarianceSpec};
use infocon::consistency::{audit, TestKind, Verdict};
use infocon::mc::McConfig;
use infocon::model::SuffStats;
use infocon::onesided::{bf_multiple, bf_onesided_conjugate, ln_bf_onesided_univariate, Encompassing};
use infocon::precise::{bf_conjugate, ln_bf_univariate_t, Mode};
use infocon::priors::{ConjugatePrior, PriorScale, VariancePrior};
use infocon::special::{p_value_t, Sides};
use proptest::prelude::*;

fn unit() -> ConjugatePrior {
    ConjugatePrior { scale: PriorScale::Identity, variance: VariancePrior::objective() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn precise_is_monotone_in_abs_t(n in 2usize..40, rho in 0.0f64..1.0, t in 0.0f64..50.0, dt in 1e-6f64..10.0) {
        let a = ln_bf_univariate_t(t, n, rho, Mode::Value).unwrap();
        let b = ln_bf_univariate_t(-(t + dt), n, rho, Mode::Value).unwrap();
        prop_assert!(b >= a - 1e-12);
        prop_assert!(b <= ln_bf_univariate_t(t, n, rho, Mode::Limit).unwrap() + 1e-12);
    }

    #[test]
    fn closed_form_matches_generic_path(n in 2usize..40, rho in 0.0f64..0.99, t in -30.0f64..30.0) {
        let stats = SuffStats::univariate_from_t(n, rho, t, n as f64 - 1.0).unwrap();
        let g = bf_conjugate(&stats, &VariancePrior::objective(), &unit()).unwrap().log_bf;
        let c = ln_bf_univariate_t(t, n, rho, Mode::Value).unwrap();
        prop_assert!((g - c).abs() <= 1e-10 * c.abs().max(1.0));
    }

    #[test]
    fn onesided_is_antisymmetric(n in 2usize..40, rho in 0.0f64..1.0, t in -40.0f64..40.0) {
        let a = ln_bf_onesided_univariate(t, n, rho, Mode::Value).unwrap();
        let b = ln_bf_onesided_univariate(-t, n, rho, Mode::Value).unwrap();
        prop_assert!((a + b).abs() <= 1e-9 * a.abs().max(1.0));
    }

    #[test]
    fn onesided_closed_form_matches_oracle(n in 2usize..30, rho in 0.0f64..1.0, t in -8.0f64..8.0) {
        let a = ln_bf_onesided_univariate(t, n, rho, Mode::Value).unwrap();
        prop_assert!((a - cases::onesided_1d(t, n, rho)).abs() <= 1e-8 * a.abs().max(1.0));
    }

    #[test]
    fn one_sided_p_is_half_two_sided(t in 1e-6f64..40.0, df in 1.0f64..60.0) {
        let one = p_value_t(t, df, Sides::One).unwrap();
        let two = p_value_t(t, df, Sides::Two).unwrap();
        prop_assert!((2.0 * one - two).abs() <= 1e-12 * two.max(1e-300));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multiple_test_composition(n in 3usize..15, rho in 0.0f64..0.9, t in -6.0f64..6.0, nu0 in 0.0f64..4.0, seed in 0u64..1000) {
        let stats = SuffStats::univariate_from_t(n, rho, t, n as f64 - 1.0).unwrap();
        let cfg = McConfig { n_points: 4000, seed, target_se: None };
        let p0 = VariancePrior::new(1.0, nu0).unwrap();
        let r = bf_multiple(&stats, &p0, &Encompassing::Conjugate(unit()), &cfg).unwrap();
        prop_assert!((r.log_b21 - (r.log_b20 - r.log_b10)).abs() <= 1e-10 * r.log_b21.abs().max(1.0));
        let os = bf_onesided_conjugate(&stats, &unit(), &cfg).unwrap();
        prop_assert!((r.log_b21 - os.log_bf).abs() <= 1e-10 * os.log_bf.abs().max(1.0));
        let bu0 = bf_conjugate(&stats, &p0, &unit()).unwrap().log_bf;
        prop_assert!((r.log_bu0 - bu0).abs() <= 1e-12 * bu0.abs().max(1.0));
    }

    #[test]
    fn run_config_round_trips(
        n in 2usize..100,
        rho in 0.0f64..1.0,
        t in -50.0f64..50.0,
        nu in proptest::option::of(0.0f64..10.0),
        s2 in proptest::option::of(0.1f64..10.0),
        fam in prop::sample::select(vec!["conjugate", "semi-conjugate", "hyper-g", "zellner-siow", "fat-t", "adaptive-g"]),
        onesided in any::<bool>(),
        limit in any::<bool>(),
        seed in any::<u64>(),
        n_points in 1000usize..1_000_000,
    ) {
        let mut prior1 = PriorSpec::family(fam);
        prior1.nu = nu;
        prior1.s2 = s2;
        let cfg = RunConfig {
            dataset: Dataset::Synthetic(Synthetic { n, rho, t: Some(t), theta_hat: None, s_y2: None }),
            test: if onesided { TestKind::Onesided } else { TestKind::Precise },
            prior0: VarianceSpec { s2, nu },
            prior1,
            mode: if limit { RunMode::Limit } else { RunMode::Value },
            seed,
            n_points,
            output: None,
        };
        let s = serde_json::to_string(&cfg).unwrap();
        let back: RunConfig = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, cfg);
    }
}

#[test]
fn verdicts_round_trip_through_json() {
    for (_, req) in cases::probe_matrix() {
        let v = audit(&req).unwrap();
        let back: Verdict = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(back, v);
    }
}
