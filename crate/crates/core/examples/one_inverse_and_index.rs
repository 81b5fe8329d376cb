//! A {1}-inverse from the rank normal form, the full set of them, and the index.

use repro_matrix::gen_inverse::rank_sequence;
use repro_matrix::{all_one_inverses, index, one_inverse, FieldSpec, Matrix};

fn main() {
    let q = FieldSpec::Rationals;
    let a = Matrix::from_i64(q, &[&[1, 2, 3], &[2, 4, 6]]);
    let cert = one_inverse(&a);
    println!("A = {a}, rank {}", cert.input_rank);
    println!("G = {} ({})", cert.g, cert.construction.as_str());
    println!("A G A = {}", &(&a * &cert.g) * &a);

    let all = all_one_inverses(&a).unwrap();
    println!("A{{1}} is a {}-dimensional affine set", all.dimension());

    let gf2 = FieldSpec::Prime(2);
    let p = Matrix::diag(gf2, &[1, 0]);
    let set = all_one_inverses(&p).unwrap();
    println!("over {gf2}, diag(1, 0) has {} {{1}}-inverses:", set.cardinality().unwrap());
    for g in set.enumerate(100).unwrap() {
        println!("  {g}");
    }

    for m in [
        Matrix::identity(q, 2),
        Matrix::diag(q, &[1, 0]),
        Matrix::from_i64(q, &[&[0, 1], &[0, 0]]),
        Matrix::from_i64(q, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]),
    ] {
        println!("Ind({m}) = {}, ranks of powers {:?}", index(&m).unwrap(), rank_sequence(&m).unwrap());
    }
}
