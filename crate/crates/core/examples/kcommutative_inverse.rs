//! A X A = A with A^k X = X A^k: finding Ā, X̂ = Ā A Ā and the general solution.

use repro_matrix::{find_kcomm_inverse, FieldSpec, KCommProblem, Matrix};

fn main() {
    let q = FieldSpec::Rationals;
    let n = Matrix::from_i64(q, &[&[0, 1], &[0, 0]]);
    for k in [1, 2] {
        let problem = KCommProblem::new(n.clone(), k).unwrap();
        match find_kcomm_inverse(&problem).unwrap() {
            None => println!("k = {k}: no solution"),
            Some(ctx) => {
                println!("k = {k}: Ā = {}, X̂ = {}", ctx.abar, ctx.xhat());
                println!("  dimension of the solution set: {}", problem.system().solve().unwrap().dimension());
            }
        }
    }

    let gf3 = FieldSpec::Prime(3);
    let a = Matrix::from_i64(gf3, &[&[1, 2, 0], &[0, 0, 0], &[0, 1, 0]]);
    let problem = KCommProblem::new(a, 2).unwrap();
    let ctx = find_kcomm_inverse(&problem).unwrap().expect("consistent");
    println!("singular: {}", problem.is_singular());
    let f = ctx.f_generator();
    println!("{f}");
    println!("f reproductive: {}", f.is_reproductive().unwrap().reproductive);
    for check in ctx.lemma_report(None).unwrap().checks {
        println!("  {}: {}", check.name, check.holds);
    }
}
