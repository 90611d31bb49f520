//! The codimension-2 marginal bound for Ising models is not implied at the
//! boundary `‖J‖ = 1`: with `J = 11ᵀ/6` and no field on six spins, the
//! smallest link marginal falls below `½e^{−1}`. The gap bound still holds.

use hodos_core::models::{ising_link_check, IsingInstance};

fn mean_field(n: usize, norm: f64) -> IsingInstance {
    IsingInstance {
        j: vec![vec![norm / n as f64; n]; n],
        h: vec![0.0; n],
    }
}

#[test]
fn marginal_bound_fails_at_unit_norm_on_six_spins() {
    let reports = ising_link_check(&mean_field(6, 1.0)).unwrap();
    assert!(reports[0].passed, "{:?}", reports[0]);
    let marginal = &reports[1];
    assert!(!marginal.passed);
    assert!((marginal.constant - 0.5 * (-1.0f64).exp()).abs() < 1e-15);
    assert!((marginal.value - 0.1785).abs() < 5e-4, "{marginal:?}");
}

#[test]
fn marginal_bound_holds_below_unit_norm() {
    for n in 2..=6 {
        for norm in [0.3, 0.7] {
            for r in ising_link_check(&mean_field(n, norm)).unwrap() {
                assert!(r.passed, "n={n} norm={norm}: {r:?}");
            }
        }
    }
}

#[test]
fn marginal_bound_holds_at_unit_norm_up_to_five_spins() {
    for n in 2..=5 {
        for r in ising_link_check(&mean_field(n, 1.0)).unwrap() {
            assert!(r.passed, "n={n}: {r:?}");
        }
    }
}
