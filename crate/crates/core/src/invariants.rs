//! Property tests spanning several modules.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use proptest::prelude::*;

use crate::asymptotics::{lr_leading_exact, lr_leading_largek, saturation_value, v_group, v_group_max,
    v_group_max_numeric, v_lieb_robinson};
use crate::critical::{critical_radicand, lr_critical, signed_walk_sum};
use crate::oracle::{
    build_hamiltonian, frobenius_norm, lr_direct_generic, operator_norm, pauli_string_matrix, DenseOperator,
    DirectOracle, HeisenbergPropagator,
};
use crate::pauli::{Pauli, PauliString};
use crate::walk::highprec::lr_walk_highprec;
use crate::walk::{build_adjacency, walk_coefficients, WalkEngine};
use crate::ChainParams;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn rows_have_unit_norm(n in 1usize..120, j in 0.0f64..5.0, s in 0.0f64..15.0) {
        let r = WalkEngine::new(ChainParams::new(n, j).unwrap()).first_row(s).unwrap();
        let norm: f64 = r.iter().map(|x| x * x).sum();
        prop_assert!((norm.sqrt() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn correlations_nest_and_stay_bounded(n in 1usize..120, j in 0.0f64..5.0, s in 0.0f64..15.0) {
        let c = WalkEngine::new(ChainParams::new(n, j).unwrap()).correlations(s).unwrap();
        prop_assert!(c.iter().all(|&x| (0.0..=2.0).contains(&x)));
        prop_assert!(c.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn zero_time_is_exactly_zero(n in 1usize..200, j in 0.0f64..5.0) {
        let c = WalkEngine::new(ChainParams::new(n, j).unwrap()).correlations(0.0).unwrap();
        prop_assert!(c.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn adjacency_is_skew_tridiagonal(n in 1usize..40, j in 0.0f64..5.0) {
        let a = build_adjacency(ChainParams::new(n, j).unwrap());
        let m = a.matrix();
        prop_assert_eq!(m + m.transpose(), DMatrix::zeros(2 * n, 2 * n));
        for r in 0..2 * n {
            for c in 0..2 * n {
                if r.abs_diff(c) != 1 {
                    prop_assert_eq!(m[(r, c)], 0.0);
                }
            }
        }
    }

    #[test]
    fn coefficient_parity(n in 1usize..12, j in 0.0f64..3.0, steps in 0usize..16) {
        let c = walk_coefficients(ChainParams::new(n, j).unwrap(), steps);
        for (m, v) in c.iter().enumerate() {
            if m > steps || (steps + m) % 2 == 1 {
                prop_assert_eq!(v.norm(), 0.0);
            } else if steps % 2 == 0 {
                prop_assert_eq!(v.im, 0.0);
            } else {
                prop_assert_eq!(v.re, 0.0);
            }
        }
    }

    #[test]
    fn group_velocity_is_odd(q in -PI..PI, j in 0.05f64..5.0) {
        let a = v_group(q, j).unwrap();
        let b = v_group(-q, j).unwrap();
        prop_assert!((a + b).abs() < 1e-12);
    }

    #[test]
    fn group_velocity_below_its_maximum(q in 0.0..PI, j in 0.05f64..5.0) {
        prop_assert!(v_group(q, j).unwrap() <= v_group_max(j).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn maximizer_location(j in 0.05f64..5.0) {
        let g = 1.0 / j;
        let m = v_group_max_numeric(j).unwrap();
        let expected = if g >= 1.0 { 1.0 / g } else { g };
        prop_assert!((m.q0.cos() - expected).abs() < 1e-8);
    }

    #[test]
    fn lieb_robinson_exceeds_front(j in 0.01f64..10.0) {
        prop_assert!(v_lieb_robinson(j) > v_group_max(j).unwrap());
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn walk_matches_dense_oracle(n in 1usize..8, j in 0.0f64..3.0, s in 0.0f64..3.0) {
        let p = ChainParams::new(n, j).unwrap();
        let walk = WalkEngine::new(p).correlations(s).unwrap();
        let direct = DirectOracle::new(p).unwrap().correlations(s);
        for k in 0..n {
            prop_assert!((walk[k] - direct[k]).abs() < 1e-10);
        }
    }

    #[test]
    fn norm_is_unitarily_invariant(n in 2usize..6, j in 0.1f64..3.0, s in 0.05f64..2.0, k in 1usize..6) {
        let k = k.min(n);
        let p = ChainParams::new(n, j).unwrap();
        let prop = HeisenbergPropagator::new(&build_hamiltonian(p).unwrap()).unwrap();
        let z1 = pauli_string_matrix(&PauliString::from_sites(n, &[(1, Pauli::Z)])).unwrap();
        let zk = pauli_string_matrix(&PauliString::from_sites(n, &[(k, Pauli::Z)])).unwrap();
        let forward = zk.commutator(&prop.evolve(&z1, s).unwrap()).unwrap();
        // [Z_k(-s), Z_1] = U^dagger [Z_k, Z_1(s)] U.
        let backward = prop.evolve(&zk, -s).unwrap().commutator(&z1).unwrap();
        prop_assert!((frobenius_norm(&forward) - frobenius_norm(&backward)).abs() < 1e-12);
        prop_assert!((lr_direct_generic(p, k, s).unwrap() - frobenius_norm(&forward)).abs() < 1e-12);
    }

    #[test]
    fn operator_and_frobenius_norms_agree(n in 2usize..6, j in 0.1f64..3.0, s in 0.3f64..3.0, k in 1usize..6) {
        let k = k.min(n);
        let p = ChainParams::new(n, j).unwrap();
        let prop = HeisenbergPropagator::new(&build_hamiltonian(p).unwrap()).unwrap();
        let z1 = pauli_string_matrix(&PauliString::from_sites(n, &[(1, Pauli::Z)])).unwrap();
        let zk = pauli_string_matrix(&PauliString::from_sites(n, &[(k, Pauli::Z)])).unwrap();
        let q: DenseOperator = zk.commutator(&prop.evolve(&z1, s).unwrap()).unwrap();
        let (op, fro) = (operator_norm(&q), frobenius_norm(&q));
        prop_assert!((op - fro).abs() <= 1e-10 * fro + 1e-13);
    }

    #[test]
    fn radicand_nonnegative(k in 1usize..=100, s in 0.0f64..30.0) {
        let r = critical_radicand(k, s).unwrap();
        prop_assert!(r.closed >= -1e-10 * r.z * r.z);
        prop_assert!(r.tail >= 0.0);
    }

    #[test]
    fn highprec_follows_leading_edge(k in 1usize..=8, j in 0.2f64..3.0) {
        let p = ChainParams::new(10, j).unwrap();
        let s = 1e-4;
        let walk = lr_walk_highprec(p, k, s, 80).unwrap();
        let lead = lr_leading_exact(k, s, j).unwrap();
        prop_assert!((walk.log10 - lead.log10).abs() < 1e-5);
    }
}

#[test]
fn critical_form_matches_ten_qubit_oracle() {
    let oracle = DirectOracle::new(ChainParams::new(10, 1.0).unwrap()).unwrap();
    for i in 0..=40 {
        let s = 0.02 * i as f64;
        let direct = oracle.correlations(s);
        for k in 1..=3 {
            assert!((lr_critical(k, s).unwrap() - direct[k - 1]).abs() < 1e-6, "k={k} s={s}");
        }
    }
}

#[test]
fn signed_sums_match_matrix_powers() {
    // Unit-weight skew tridiagonal matrix on a line long enough to look unbounded.
    let dim = 16;
    let a = DMatrix::<f64>::from_fn(dim, dim, |r, c| {
        if c == r + 1 {
            1.0
        } else if r == c + 1 {
            -1.0
        } else {
            0.0
        }
    });
    let mut power = DMatrix::<f64>::identity(dim, dim);
    for n in 0..=12 {
        for m in 0..=12 {
            assert_eq!(signed_walk_sum(n, m).unwrap() as f64, power[(0, m)], "n={n} m={m}");
        }
        power = &power * &a;
    }
}

#[test]
fn stirling_form_converges() {
    let mut prev = f64::INFINITY;
    for k in [2usize, 5, 10, 50, 200, 1000, 5000] {
        for s in [0.1, 10.0] {
            let exact = lr_leading_exact(k, s, 2.0).unwrap().log10;
            let large = lr_leading_largek(k, s, 2.0).unwrap().log10;
            let d = (exact - large).abs();
            assert!(d < 0.2 / k as f64, "k={k}: {d}");
            if s == 0.1 {
                assert!(d < prev);
                prev = d;
            }
        }
    }
}

#[test]
fn saturation_and_velocity_continuous_at_critical_coupling() {
    let eps = 1e-9;
    assert!((saturation_value(1.0 - eps) - saturation_value(1.0 + eps)).abs() < 1e-8);
    assert!((v_group_max(1.0 - eps).unwrap() - v_group_max(1.0 + eps).unwrap()).abs() < 1e-8);
}
