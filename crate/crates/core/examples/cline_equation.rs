//! A^m X B^n = C: consistency, the reproductive general solution, and what
//! happens when another particular solution is used as the constant.

use repro_matrix::{ClineContext, ClineProblem, FieldSpec, Matrix, PowerPolicy};

fn main() {
    let q = FieldSpec::Rationals;
    let a = Matrix::from_i64(q, &[&[1, 1], &[0, 0]]);
    let b = Matrix::from_i64(q, &[&[2, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
    let c = Matrix::from_i64(q, &[&[4, 0, 0], &[0, 0, 0]]);
    let problem = ClineProblem::new(a, b, c, 2, 2).unwrap();
    let ctx = ClineContext::new(&problem, None, None, PowerPolicy::Strict).unwrap();
    println!("Ind(A) = {}, Ind(B) = {}", ctx.index_a, ctx.index_b);

    let report = ctx.consistency();
    for clause in &report.clauses {
        println!("{}: {}", clause.name, clause.holds);
    }
    let f = ctx.f_generator().unwrap();
    println!("{f}");
    println!("f reproductive: {}", f.is_reproductive().unwrap().reproductive);

    let oracle = problem.system().solve().unwrap();
    println!("image of f equals the solution set: {}", f.image().sets_equal(&oracle).unwrap());

    let x0 = &ctx.canonical_particular() + &oracle.basis()[0];
    let g = ctx.g_generator(&x0).unwrap();
    println!("x0 = {x0} solves: {}", problem.is_solution(&x0));
    println!("g built on x0 reproductive: {}", g.is_reproductive().unwrap().reproductive);

    let bad = ClineProblem::new(Matrix::zeros(q, 2, 2), Matrix::identity(q, 2), Matrix::identity(q, 2), 1, 1).unwrap();
    let report = ClineContext::new(&bad, None, None, PowerPolicy::Strict).unwrap().consistency();
    println!("A = 0, C = I: consistent {}, defect {}", report.consistent, report.clauses[0].defect);
}
