mod common;

use common::{random_state, Draw};
use proptest::prelude::*;
use thermoq_core::bosonic::{equivalence_map, lindblad_rhs, steady_state_bosonic, BosonicCoupling, LindbladGenerator};
use thermoq_core::collision::{
    master_rhs, steady_state, time_averaged_channel, time_averaged_map, CollisionGenerator, CouplingRates,
    InteractionSpec,
};
use thermoq_core::model::{
    bath_population, bath_qubit, carnot_efficiency, cooling_predicate, cycle_entropy, cycle_ledger, efficiency,
    entropy_signals_cooling, virtual_beta, Bath, BathTriple, FridgeSpec,
};
use thermoq_core::op::DensityOperator;

fn draws() -> impl Strategy<Value = Draw> {
    (
        0.5f64..2.0,
        0.02f64..8.0,
        0.5f64..2.0,
        1.0f64..2.0,
        0.0f64..5.3,
        (-2.3f64..2.3, -2.3f64..2.3, -2.3f64..2.3),
    )
        .prop_map(|(e1, gap, t_c, sink_ratio, log_hot_ratio, (lp_c, lp_r, lp_h))| {
            let t_r = t_c * sink_ratio;
            Draw {
                spec: FridgeSpec::new(e1, e1 * (1.0 + gap)).unwrap(),
                baths: BathTriple::new(t_c, t_r, t_r * log_hot_ratio.exp()).unwrap(),
                rates: CouplingRates::new(lp_c.exp(), lp_r.exp(), lp_h.exp()).unwrap(),
            }
        })
}

fn seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cooling_statements_agree(d in draws()) {
        let predicate = cooling_predicate(&d.spec, &d.baths);
        let by_entropy = entropy_signals_cooling(&d.spec, cycle_entropy(&d.spec, &d.baths));
        let by_beta = virtual_beta(&d.spec, &d.baths) - d.baths.beta(Bath::Cold) > 1e-12;
        prop_assert_eq!(predicate, by_entropy);
        prop_assert_eq!(predicate, by_beta);
    }

    #[test]
    fn efficiency_identity_holds(d in draws()) {
        let beta_v = virtual_beta(&d.spec, &d.baths);
        let (b_r, b_h) = (d.baths.beta(Bath::Sink), d.baths.beta(Bath::Hot));
        prop_assert!((efficiency(&d.spec) * (beta_v - b_r) - (b_r - b_h)).abs() < 1e-12);
        let ledger = cycle_ledger(&d.spec);
        prop_assert!((ledger.q_c / ledger.q_h - efficiency(&d.spec)).abs() < 1e-12);
    }

    #[test]
    fn bath_population_increases(e in 0.1f64..5.0, beta in 0.05f64..5.0, de in 0.01f64..1.0) {
        prop_assert!(bath_population(e + de, beta).r > bath_population(e, beta).r);
        prop_assert!(bath_population(e, beta + de).r > bath_population(e, beta).r);
    }

    #[test]
    fn maps_are_cptp(d in draws(), s in seed(), g in 0.1f64..10.0) {
        let mut rng = common::rng(s);
        for bath in Bath::ALL {
            let inter = InteractionSpec::fridge(&d.spec, bath, g).unwrap();
            let q = bath_qubit(&d.spec, &d.baths, bath);
            let channel = time_averaged_channel(&inter, &q);
            let choi = thermoq_core::eigen::HermitianEigen::new(&channel.choi().hermitian_part());
            prop_assert!(choi.values[0] > -1e-10);
            let rho = random_state(&mut rng, 4);
            prop_assert!(DensityOperator::new(channel.apply(rho.operator())).is_ok());
            let tau = DensityOperator::new(q.state()).unwrap();
            let stronger = time_averaged_map(&inter.with_strength(10.0 * g), &tau, &rho).unwrap();
            let base = time_averaged_map(&inter, &tau, &rho).unwrap();
            prop_assert!(base.operator().max_abs_diff(stronger.operator()) < 1e-10);
        }
    }

    #[test]
    fn generators_preserve_trace_and_hermiticity(d in draws(), s in seed()) {
        let mut rng = common::rng(s);
        let rho = random_state(&mut rng, 4);
        let collision = CollisionGenerator::fridge(&d.spec, &d.baths, &d.rates).unwrap();
        let bosonic = LindbladGenerator::new(&d.spec, &d.baths, &BosonicCoupling::new(0.7, 1.3, 0.2).unwrap());
        for out in [master_rhs(&collision, &rho), lindblad_rhs(&bosonic, rho.operator())] {
            prop_assert!(out.trace().norm() < 1e-12);
            prop_assert!(out.hermiticity_defect() < 1e-12);
        }
    }

    #[test]
    fn steady_state_laws(d in draws()) {
        let r = steady_state(&CollisionGenerator::fridge(&d.spec, &d.baths, &d.rates).unwrap()).unwrap();
        prop_assert!(r.residual < 1e-10);
        prop_assert!(r.max_coherence < 1e-10);
        prop_assert!(r.first_law_defect().abs() < 1e-10);
        prop_assert!(r.entropy_production() >= -1e-12);
        prop_assert!(r.rate_equation_deviation < 1e-10);
        let gap = virtual_beta(&d.spec, &d.baths) - d.baths.beta(Bath::Cold);
        if gap.abs() > 1e-10 {
            prop_assert_eq!(r.cooling, gap > 0.0);
            prop_assert_eq!(r.q_c > 0.0, gap > 0.0);
        }
        if r.q_h > 1e-12 {
            prop_assert!((r.q_c / r.q_h - efficiency(&d.spec)).abs() < 1e-8);
            if let Some(carnot) = carnot_efficiency(&d.baths) {
                prop_assert!(r.q_c / r.q_h < carnot);
            }
        }
    }

    #[test]
    fn cooling_sign_ignores_coupling_strengths(d in draws(), which in 0usize..3, up in any::<bool>()) {
        let factor = if up { 100.0 } else { 0.01 };
        let scaled = d.rates.scaled(Bath::ALL[which], factor).unwrap();
        let a = steady_state(&CollisionGenerator::fridge(&d.spec, &d.baths, &d.rates).unwrap()).unwrap();
        let b = steady_state(&CollisionGenerator::fridge(&d.spec, &d.baths, &scaled).unwrap()).unwrap();
        let gap = virtual_beta(&d.spec, &d.baths) - d.baths.beta(Bath::Cold);
        if gap.abs() > 1e-10 {
            prop_assert_eq!(a.q_c > 0.0, b.q_c > 0.0);
        }
    }

    #[test]
    fn models_share_steady_state(d in draws()) {
        let c = steady_state(&CollisionGenerator::fridge(&d.spec, &d.baths, &d.rates).unwrap()).unwrap();
        let b = steady_state_bosonic(&LindbladGenerator::new(&d.spec, &d.baths, &equivalence_map(&d.rates, &d.baths, &d.spec))).unwrap();
        prop_assert!(c.rho_s.operator().max_abs_diff(b.rho_s.operator()) < 1e-10);
        prop_assert_eq!(c.cooling, b.cooling);
        prop_assert!(b.first_law_defect().abs() < 1e-10);
    }
}
