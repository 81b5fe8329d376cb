#![allow(dead_code)]

use proptest::prelude::*;
use repro_matrix::random::{random_matrix, random_square, seeded};
use repro_matrix::{FieldSpec, Matrix};

pub const Q: FieldSpec = FieldSpec::Rationals;
pub const GF2: FieldSpec = FieldSpec::Prime(2);
pub const GF3: FieldSpec = FieldSpec::Prime(3);

pub fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(Q), Just(GF2), Just(GF3), Just(FieldSpec::Prime(7))]
}

/// Matrices are drawn from the crate's seeded generator; proptest picks the seed.
pub fn matrix(field: FieldSpec, rows: usize, cols: usize, seed: u64) -> Matrix {
    random_matrix(&mut seeded(seed), field, rows, cols)
}

pub fn square(field: FieldSpec, n: usize, seed: u64) -> Matrix {
    random_square(&mut seeded(seed), field, n)
}

/// Every matrix of the given shape over a prime field.
pub fn all(field: FieldSpec, rows: usize, cols: usize) -> Vec<Matrix> {
    repro_matrix::sweep::all_matrices(field, rows, cols)
}

/// Case count with failure persistence off; integration tests have no
/// source-adjacent place for regression files.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::with_cases(cases)
    }
}
