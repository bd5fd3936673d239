use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use supercoh_core::linalg::{cokernel, reduce, smith_normal_form, solve_mod, AbelianGroupPresentation, IntMatrix};

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..7, r * c).prop_map(move |v| IntMatrix::from_i64(r, c, &v).unwrap())
    })
}

/// Order of the finite cokernel of a square nonsingular matrix is `|det|`.
fn finite_order(g: &AbelianGroupPresentation) -> Option<BigInt> {
    g.order()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_invariants(m in matrix()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(m.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(m.cols()));
        prop_assert!(s.d.is_diagonal());
        let diag = s.diagonal();
        prop_assert_eq!(diag.len(), s.rank());
        for w in diag.windows(2) {
            prop_assert!(w[0].is_positive() && (&w[1] % &w[0]).is_zero());
        }
        prop_assert!(s.u.determinant().unwrap().abs().is_one());
        prop_assert!(s.v.determinant().unwrap().abs().is_one());
    }

    #[test]
    fn cokernel_ignores_row_and_column_order(m in matrix(), rot in 0usize..5) {
        let g = cokernel(&m, 0);
        let t = m.transpose();
        // Rotating columns (relations) and rows (generators) must not change the group.
        let (r, c) = (m.rows(), m.cols());
        let mut permuted = IntMatrix::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                permuted[((i + rot) % r, (j + rot) % c)] = m[(i, j)].clone();
            }
        }
        prop_assert_eq!(cokernel(&permuted, 0), g.clone());
        if r == c && r > 0 {
            let det = m.determinant().unwrap();
            if !det.is_zero() {
                prop_assert_eq!(finite_order(&g), Some(det.abs()));
            }
            prop_assert_eq!(cokernel(&t, 0).order(), g.order());
        }
    }

    #[test]
    fn solutions_verify(m in matrix(), x in prop::collection::vec(-4i64..5, 5), n in prop::sample::select(vec![0u64, 2, 3, 4, 6, 8, 12])) {
        let x: Vec<BigInt> = x[..m.cols()].iter().map(|&v| BigInt::from(v)).collect();
        let b = m.mul_vec(&x).unwrap();
        let sol = solve_mod(&m, &b, n).unwrap().expect("solvable by construction");
        let back = m.mul_vec(&sol).unwrap();
        for (u, v) in back.iter().zip(&b) {
            prop_assert_eq!(reduce(u, n), reduce(v, n));
        }
    }

    #[test]
    fn unsolvable_systems_are_detected(n in prop::sample::select(vec![0u64, 4, 8])) {
        // 2x = 1 has no solution over Z, Z/4 or Z/8.
        let m = IntMatrix::from_i64(1, 1, &[2]).unwrap();
        prop_assert!(solve_mod(&m, &[BigInt::one()], n).unwrap().is_none());
    }

    #[test]
    fn presentations_round_trip_through_text(orders in prop::collection::vec(prop::sample::select(vec![0u64, 2, 3, 4, 6, 8, 9]), 0..5)) {
        let g = AbelianGroupPresentation::from_orders(&orders);
        let text = g.to_string();
        prop_assert_eq!(text.parse::<AbelianGroupPresentation>().unwrap(), g.clone());
        let torsion: u64 = orders.iter().filter(|&&o| o != 0).product();
        if g.is_finite() {
            prop_assert_eq!(g.order().unwrap(), BigInt::from(torsion));
        }
        let evens = orders.iter().filter(|&&o| o % 2 == 0).count();
        prop_assert_eq!(g.mod2_rank(), evens);
    }
}

#[test]
fn display_order() {
    let g = AbelianGroupPresentation::from_orders(&[4, 8, 0]);
    assert_eq!(g.to_string(), "Z ⊕ Z/8 ⊕ Z/4");
    assert_eq!(AbelianGroupPresentation::trivial().to_string(), "0");
}
