//! Products, powers, reduced row echelon form, Kronecker products and vec.

use repro_matrix::{FieldSpec, Matrix};

fn main() {
    let q = FieldSpec::Rationals;
    let a = Matrix::from_i64(q, &[&[1, 2], &[2, 4]]);
    let red = a.rref();
    println!("A = {a}");
    println!("rref(A) = {}, rank {}, pivots {:?}", red.rref, red.rank, red.pivot_cols);
    println!("transform T with T A = rref(A): {}", red.transform);
    println!("nullspace basis: {:?}", a.nullspace_basis().iter().map(ToString::to_string).collect::<Vec<_>>());

    let n = Matrix::from_i64(q, &[&[0, 1], &[0, 0]]);
    println!("N^2 = {}", n.power(2).unwrap());

    let p = Matrix::from_i64(q, &[&[1, 1], &[0, 1]]);
    let y = Matrix::from_i64(q, &[&[1, 2], &[3, 4]]);
    let lhs = (&(&p * &y) * &n).vec();
    let rhs = &n.transpose().kron(&p).unwrap() * &y.vec();
    println!("vec(P Y N) = {}", lhs.transpose());
    println!("(N^T ⊗ P) vec(Y) = {}", rhs.transpose());

    let gf2 = FieldSpec::Prime(2);
    let b = Matrix::from_i64(gf2, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
    println!("over {gf2}, rank of {b} is {}", b.rank());
}
