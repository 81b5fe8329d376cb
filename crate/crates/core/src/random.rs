//! Seeded random matrices and consistent problem instances.
//!
//! Rational entries are `a/b` with `a ∈ {−3..3}` and `b ∈ {1, 2, 3}`.
//! Consistent instances are built from a planted solution, so the right-hand
//! sides are consistent by construction.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cline::ClineProblem;
use crate::gen_inverse::index;
use crate::kcomm::KCommProblem;
use crate::matrix::Matrix;
use crate::penrose::PenroseProblem;
use crate::scalar::{ExactScalar, FieldSpec};

pub type InstanceRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_scalar(rng: &mut impl Rng, field: FieldSpec) -> ExactScalar {
    match field {
        FieldSpec::Rationals => field
            .from_fraction(rng.gen_range(-3..=3), rng.gen_range(1..=3))
            .expect("nonzero denominator"),
        FieldSpec::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

pub fn random_matrix(rng: &mut impl Rng, field: FieldSpec, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| random_scalar(rng, field))
}

/// A product of `rows × rank` and `rank × cols` random factors, so the rank
/// is at most `rank`.
pub fn random_low_rank(rng: &mut impl Rng, field: FieldSpec, rows: usize, cols: usize, rank: usize) -> Matrix {
    if rank == 0 {
        return Matrix::zeros(field, rows, cols);
    }
    &random_matrix(rng, field, rows, rank) * &random_matrix(rng, field, rank, cols)
}

/// A square matrix that is singular about two thirds of the time and may
/// have a nilpotent part, so indices above one occur.
pub fn random_square(rng: &mut impl Rng, field: FieldSpec, n: usize) -> Matrix {
    match rng.gen_range(0..3) {
        0 => random_matrix(rng, field, n, n),
        1 => {
            let rank = rng.gen_range(0..n);
            random_low_rank(rng, field, n, n, rank)
        }
        _ => {
            let strict_upper = Matrix::from_fn(field, n, n, |i, j| {
                if j > i {
                    random_scalar(rng, field)
                } else {
                    field.zero()
                }
            });
            let rank = rng.gen_range(0..=n);
            &strict_upper + &random_low_rank(rng, field, n, n, rank).scale(&field.from_i64(rng.gen_range(0..2)))
        }
    }
}

fn power_at_least_index(rng: &mut impl Rng, a: &Matrix) -> u32 {
    let idx = index(a).expect("square") as u32;
    idx.max(1) + rng.gen_range(0..=1)
}

/// `A^m·X·B^n = C` with `C` built from a planted `X`; `m ≥ Ind(A)`, `n ≥ Ind(B)`.
pub fn consistent_cline(rng: &mut impl Rng, field: FieldSpec, p: usize, q: usize) -> ClineProblem {
    let a = random_square(rng, field, p);
    let b = random_square(rng, field, q);
    let m = power_at_least_index(rng, &a);
    let n = power_at_least_index(rng, &b);
    let x = random_matrix(rng, field, p, q);
    let c = &(&a.power(m).expect("square") * &x) * &b.power(n).expect("square");
    ClineProblem::new(a, b, c, m, n).expect("shapes are coherent")
}

/// `A^m·X = B ∧ X·D^n = E` with `B = A^m·X`, `E = X·D^n` for a planted `X`.
pub fn consistent_penrose(rng: &mut impl Rng, field: FieldSpec, p: usize, q: usize) -> PenroseProblem {
    let a = random_square(rng, field, p);
    let d = random_square(rng, field, q);
    let m = power_at_least_index(rng, &a);
    let n = power_at_least_index(rng, &d);
    let x = random_matrix(rng, field, p, q);
    let b = &a.power(m).expect("square") * &x;
    let e = &x * &d.power(n).expect("square");
    PenroseProblem::new(a, b, d, e, m, n).expect("shapes are coherent")
}

/// A k-commutative system with at least one solution. There is no planted
/// solution here; candidates are drawn until the oracle finds one.
pub fn consistent_kcomm(rng: &mut impl Rng, field: FieldSpec, n: usize) -> KCommProblem {
    loop {
        let a = random_square(rng, field, n);
        let k = rng.gen_range(1..=3);
        let problem = KCommProblem::new(a, k).expect("square and k ≥ 1");
        if problem.system().solve().expect("square shapes").is_consistent() {
            return problem;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_matrices() {
        let f = FieldSpec::Rationals;
        let a = random_matrix(&mut seeded(7), f, 3, 4);
        let b = random_matrix(&mut seeded(7), f, 3, 4);
        assert_eq!(a, b);
    }

    #[test]
    fn rational_entries_stay_in_range() {
        let mut rng = seeded(1);
        for _ in 0..200 {
            let (n, d) = random_scalar(&mut rng, FieldSpec::Rationals).to_fraction();
            let (n, d): (i64, i64) = (n.try_into().unwrap(), d.try_into().unwrap());
            assert!((-3..=3).contains(&n) && (1..=3).contains(&d), "{n}/{d}");
        }
    }

    #[test]
    fn planted_instances_are_consistent() {
        let mut rng = seeded(3);
        for field in [FieldSpec::Rationals, FieldSpec::Prime(5)] {
            for _ in 0..10 {
                assert!(consistent_cline(&mut rng, field, 2, 3).system().solve().unwrap().is_consistent());
                assert!(consistent_penrose(&mut rng, field, 3, 2).system().solve().unwrap().is_consistent());
                assert!(consistent_kcomm(&mut rng, field, 3).system().solve().unwrap().is_consistent());
            }
        }
    }

    #[test]
    fn low_rank_bound() {
        let mut rng = seeded(11);
        for r in 0..3 {
            assert!(random_low_rank(&mut rng, FieldSpec::Prime(3), 4, 5, r).rank() <= r);
        }
    }
}
