//! Deciding whether an affine map Y ↦ C₀ + Σ ±P·Y·Q is reproductive.

use repro_matrix::{AffineGenerator, FieldSpec, LinearTerm, Matrix};

fn main() {
    let q = FieldSpec::Rationals;
    let p = Matrix::diag(q, &[1, 0]);
    let i = Matrix::identity(q, 2);

    // Y ↦ C + Y − P·Y = C + (I − P)·Y; the linear part is a projection and
    // C lies in its kernel
    let c = Matrix::from_i64(q, &[&[3, 1], &[0, 0]]);
    let h = AffineGenerator::new(c, vec![LinearTerm::plus(i.clone(), i.clone()), LinearTerm::minus(p.clone(), i.clone())], (2, 2))
        .unwrap();
    report("h", &h);

    // moving the constant off the fixed set breaks it
    let shifted = h.with_constant(Matrix::from_i64(q, &[&[3, 1], &[1, 0]])).unwrap();
    report("shifted h", &shifted);

    // Y ↦ 2Y is not idempotent at all
    let doubling = AffineGenerator::new(Matrix::zeros(q, 2, 2), vec![LinearTerm::plus(i.scale(&q.from_i64(2)), i)], (2, 2)).unwrap();
    report("doubling", &doubling);
}

fn report(name: &str, h: &AffineGenerator) {
    let v = h.is_reproductive().unwrap();
    println!(
        "{name}: reproductive {} (M² = M: {}, L(C₀) = 0: {}), image dimension {}",
        v.reproductive,
        v.linear_idempotent,
        v.constant_fixed,
        h.image().dimension()
    );
    if !v.constant_fixed {
        println!("  h(h(0)) − h(0) = {}", v.defect);
    }
}
