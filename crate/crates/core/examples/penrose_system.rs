//! A^m X = B together with X D^n = E.

use repro_matrix::{FieldSpec, Matrix, PenroseContext, PenroseProblem, PowerPolicy};

fn main() {
    let q = FieldSpec::Rationals;
    let a = Matrix::diag(q, &[2, 0]);
    let d = Matrix::diag(q, &[1, 0]);
    let x = Matrix::from_i64(q, &[&[1, 1], &[1, 1]]);
    let problem = PenroseProblem::new(a.clone(), &a * &x, d.clone(), &x * &d, 1, 1).unwrap();
    let ctx = PenroseContext::new(&problem, None, None, PowerPolicy::Strict).unwrap();

    for clause in ctx.consistency().clauses {
        println!("{}: {}", clause.name, clause.holds);
    }
    let x1 = ctx.x1().unwrap();
    println!("X1 = {x1}");
    println!("variant with an extra A factor: {} (solves: {})", ctx.x1_literal(), ctx.literal_x1_solves());

    let f = ctx.f_generator().unwrap();
    println!("{f}");
    let oracle = problem.system().solve().unwrap();
    println!("solution set dimension {}, image matches: {}", oracle.dimension(), f.image().sets_equal(&oracle).unwrap());

    // B outside the column space of A: the first clause fails
    let inconsistent = PenroseProblem::new(a, Matrix::identity(q, 2), d, &x * &Matrix::diag(q, &[1, 0]), 1, 1).unwrap();
    let report = PenroseContext::new(&inconsistent, None, None, PowerPolicy::Strict).unwrap().consistency();
    let failed: Vec<_> = report.failed_clauses().map(|c| c.name.as_str()).collect();
    println!("failed clauses: {failed:?}");
}
