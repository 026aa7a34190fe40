mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use tqd_lhm::model::{build_liouvillian, rhs_derivative, vec_index, CoherenceDecay, DensityMatrix};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn operator_matches_term_by_term_equations(p in common::params(), rho in common::hermitian_state()) {
        let sys = build_liouvillian(&p).unwrap();
        let diff = sys.apply(&rho).max_abs_diff(&rhs_derivative(&p, &rho));
        prop_assert!(diff <= 1e-12, "diff {diff}");
    }

    #[test]
    fn derivative_is_traceless(p in common::params(), rho in common::hermitian_state()) {
        let d = rhs_derivative(&p, &rho);
        prop_assert!(d.trace().norm() <= 1e-12);
        let sys = build_liouvillian(&p).unwrap();
        prop_assert!(sys.apply(&rho).trace().norm() <= 1e-12);
    }

    #[test]
    fn derivative_preserves_hermiticity(p in common::params(), rho in common::hermitian_state()) {
        prop_assert!(rhs_derivative(&p, &rho).is_hermitian(1e-12));
    }

    #[test]
    fn derivative_is_linear(
        p in common::params(),
        a in common::hermitian_state(),
        b in common::hermitian_state(),
        s in (-2.0..2.0f64, -2.0..2.0f64),
        t in (-2.0..2.0f64, -2.0..2.0f64),
    ) {
        let (s, t) = (Complex64::new(s.0, s.1), Complex64::new(t.0, t.1));
        let lhs = rhs_derivative(&p, &(a * s + b * t));
        let rhs = rhs_derivative(&p, &a) * s + rhs_derivative(&p, &b) * t;
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn literal_decay_map_agrees_across_paths(p in common::params(), rho in common::hermitian_state()) {
        let mut p = p;
        p.coherence_decay = Some(CoherenceDecay::literal(&p));
        let sys = build_liouvillian(&p).unwrap();
        prop_assert!(sys.apply(&rho).max_abs_diff(&rhs_derivative(&p, &rho)) <= 1e-12);
    }
}

#[test]
fn population_rows_cancel_before_substitution() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..20 {
        let p = common::params().new_tree(&mut runner).unwrap().current();
        let sys = build_liouvillian(&p).unwrap();
        for c in 0..16 {
            let s: Complex64 = (1..=4).map(|k| sys.generator[(vec_index(k, k), c)]).sum();
            assert!(s.norm() <= 1e-15);
        }
    }
}

#[test]
fn pump_only_rate_pair_from_operator() {
    let mut p = tqd_lhm::model::TqdParams::decoupled();
    p.pump_rate = 0.3;
    p.gamma_21 = 0.8;
    let rho = DensityMatrix::from_populations([0.6, 0.4, 0.0, 0.0]);
    let d = build_liouvillian(&p).unwrap().apply(&rho);
    let expected = 0.3 * 0.6 - (0.8 + 0.3) * 0.4;
    assert!((d.get(2, 2).re - expected).abs() < 1e-15);
}
