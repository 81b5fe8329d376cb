mod common;

use common::*;
use proptest::prelude::*;
use repro_matrix::Matrix;

proptest! {
    #![proptest_config(config(500))]

    #[test]
    fn transform_times_input_is_rref(field in field_strategy(), r in 1usize..5, c in 1usize..6, seed: u64) {
        let a = if seed % 2 == 0 {
            matrix(field, r, c, seed)
        } else {
            repro_matrix::random::random_low_rank(&mut repro_matrix::random::seeded(seed), field, r, c, (seed as usize / 2) % 3)
        };
        let red = a.rref();
        prop_assert_eq!(&red.transform * &a, red.rref.clone());
        prop_assert_eq!(red.rank, red.pivot_cols.len());
        prop_assert_eq!(red.transform.rank(), r);
        prop_assert_eq!(red.rref.rref().rref, red.rref);
        for v in a.nullspace_basis() {
            prop_assert!((&a * &v).is_zero());
        }
        prop_assert_eq!(a.nullspace_basis().len(), c - red.rank);
    }

    #[test]
    fn rank_of_product_is_bounded(field in field_strategy(), p in 1usize..5, q in 1usize..5, s in 1usize..5, seed: u64) {
        let a = matrix(field, p, q, seed);
        let b = matrix(field, q, s, seed.wrapping_add(1));
        prop_assert!((&a * &b).rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn vec_kron_identity(use_q: bool, p in 1usize..4, q in 1usize..4, r in 1usize..4, s in 1usize..4, seed: u64) {
        let field = if use_q { Q } else { GF3 };
        let pm = matrix(field, p, q, seed);
        let y = matrix(field, q, r, seed ^ 1);
        let qm = matrix(field, r, s, seed ^ 2);
        let lhs = (&(&pm * &y) * &qm).vec();
        let rhs = &qm.transpose().kron(&pm).unwrap() * &y.vec();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(Matrix::unvec(&y.vec(), q, r).unwrap(), y);
    }

    #[test]
    fn powers_add(field in field_strategy(), n in 1usize..4, e1 in 0u32..4, e2 in 0u32..4, seed: u64) {
        let a = square(field, n, seed);
        prop_assert_eq!(a.power(e1 + e2).unwrap(), &a.power(e1).unwrap() * &a.power(e2).unwrap());
    }

    #[test]
    fn transpose_reverses_products(field in field_strategy(), p in 1usize..4, q in 1usize..4, s in 1usize..4, seed: u64) {
        let a = matrix(field, p, q, seed);
        let b = matrix(field, q, s, seed ^ 7);
        prop_assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }
}

#[test]
fn hand_computed_product() {
    let a = Matrix::from_i64(Q, &[&[1, 1], &[0, 1]]);
    let b = Matrix::from_i64(Q, &[&[1, 0], &[1, 1]]);
    // rows times columns: (1+1, 0+1), (0+1, 0+1)
    assert_eq!(&a * &b, Matrix::from_i64(Q, &[&[2, 1], &[1, 1]]));
}

#[test]
fn mismatched_shapes_are_errors() {
    let a = Matrix::zeros(Q, 2, 3);
    assert!(a.try_mul(&a).is_err());
    assert!(a.try_add(&Matrix::zeros(Q, 3, 2)).is_err());
    assert!(a.power(2).is_err());
    assert!(a.try_add(&Matrix::zeros(GF2, 2, 3)).is_err());
}
