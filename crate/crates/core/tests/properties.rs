use hodos_core::instances::{random_graph, random_partite_complex};
use hodos_core::operators::{
    down, down_up, expanderized_down_up, expanderized_up_down, q_down, q_up, up, up_down,
    WalkOperator,
};
use hodos_core::spectral::{adjoint, gap_lifting_check, operator_norm_deviation, spectrum};
use hodos_core::subsets::binomial;
use hodos_core::Complex;
use proptest::prelude::*;

fn complex_strategy() -> impl Strategy<Value = (Complex, u64)> {
    (1usize..=4, any::<u64>())
        .prop_map(|(n, seed)| (random_partite_complex(n, 40, seed).unwrap(), seed))
}

fn max_diff(a: &WalkOperator, b: &WalkOperator) -> f64 {
    (&a.matrix - &b.matrix).abs().max()
}

fn assert_healthy(p: &WalkOperator) -> Result<(), TestCaseError> {
    prop_assert!(p.row_sum_error() < 1e-12);
    prop_assert!(p.stationarity_error() < 1e-12);
    prop_assert!(p.detailed_balance_error() < 1e-12);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn marginals_agree_by_both_routes((x, _) in complex_strategy()) {
        for j in 0..=x.rank() {
            let direct = x.marginal(j).unwrap();
            let rec = x.marginal_by_recursion(j).unwrap();
            let err = direct.iter().zip(&rec).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            prop_assert!(err < 1e-12, "level {j}: {err}");
            prop_assert!((direct.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn level_walks_are_reversible_and_psd((x, _) in complex_strategy()) {
        for ell in 0..=x.rank() {
            for p in [down_up(&x, ell).unwrap(), up_down(&x, ell).unwrap()] {
                assert_healthy(&p)?;
                prop_assert!(spectrum(&p, true).unwrap().lambda_min >= -1e-10);
            }
        }
    }

    #[test]
    fn down_is_adjoint_of_up((x, _) in complex_strategy()) {
        let n = x.rank();
        for ell in 0..n {
            let d = down(&x, n, ell).unwrap();
            let u_star = adjoint(&up(&x, ell, n).unwrap()).unwrap();
            prop_assert!(max_diff(&d, &u_star) < 1e-12);
        }
    }

    #[test]
    fn expanderized_walks_are_reversible((x, seed) in complex_strategy()) {
        let n = x.rank();
        for ell in 0..=n {
            let h = random_graph(binomial(n, ell) as usize, seed ^ ell as u64).unwrap();
            assert_healthy(&expanderized_up_down(&x, ell, &h).unwrap())?;
            let paqx = expanderized_down_up(&x, ell, &h).unwrap();
            assert_healthy(&paqx)?;
            prop_assert!(spectrum(&paqx, true).unwrap().lambda_min >= -1e-10);
        }
    }

    #[test]
    fn q_factorizations((x, seed) in complex_strategy()) {
        let n = x.rank();
        for ell in 0..=n {
            let h = random_graph(binomial(n, ell) as usize, seed.wrapping_add(ell as u64)).unwrap();
            let qd = q_down(&x, ell, &h).unwrap();
            let qu = q_up(&x, ell, &h).unwrap();
            prop_assert!(max_diff(&qd.compose(&qu).unwrap(), &expanderized_down_up(&x, ell, &h).unwrap()) < 1e-12);
            prop_assert!(max_diff(&qu.compose(&qd).unwrap(), &expanderized_up_down(&x, ell, &h.square()).unwrap()) < 1e-12);
            prop_assert!(max_diff(&qu, &adjoint(&qd).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn squaring_squares_lambda(m in 1usize..12, seed in any::<u64>()) {
        let h = random_graph(m, seed).unwrap();
        let l = h.lambda();
        prop_assert!((h.square().lambda() - l * l).abs() < 1e-9);
        prop_assert_eq!(h.square().degree(), h.degree() * h.degree());
    }

    #[test]
    fn expanderized_bounds_hold((x, seed) in complex_strategy()) {
        let n = x.rank();
        for ell in 1..n {
            let h = random_graph(binomial(n, ell) as usize, seed.wrapping_mul(3).wrapping_add(ell as u64)).unwrap();
            let d = operator_norm_deviation(&x, ell, &h).unwrap();
            prop_assert!(d.norm <= d.lambda + 1e-9, "{d:?}");
            for r in gap_lifting_check(&x, ell, &h).unwrap() {
                prop_assert!(r.passed, "{r:?}");
            }
        }
    }
}
