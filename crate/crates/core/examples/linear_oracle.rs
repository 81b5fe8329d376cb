//! Solving a conjunction of linear matrix constraints directly.

use repro_matrix::oracle::DEFAULT_ENUMERATION_CAP;
use repro_matrix::{FieldSpec, LinearMatrixSystem, LinearTerm, Matrix};

fn main() {
    let gf3 = FieldSpec::Prime(3);
    let p = Matrix::from_i64(gf3, &[&[1, 1], &[0, 1]]);
    let i = Matrix::identity(gf3, 2);

    // P X − X P = diag(1, 2)
    let system = LinearMatrixSystem::new(gf3, 2, 2)
        .with_constraint(
            vec![LinearTerm::plus(p.clone(), i.clone()), LinearTerm::minus(i.clone(), p.clone())],
            Matrix::diag(gf3, &[1, 2]),
        )
        .unwrap();
    let set = system.solve().unwrap();
    println!("particular {}", set.particular().unwrap());
    println!("dimension {}, {} solutions", set.dimension(), set.cardinality().unwrap());
    for x in set.enumerate(DEFAULT_ENUMERATION_CAP).unwrap() {
        assert!(system.is_satisfied_by(&x));
        println!("  {x}");
    }

    // adding X P = P X on top makes it inconsistent
    let stricter = system
        .with_constraint(
            vec![LinearTerm::plus(i.clone(), p.clone()), LinearTerm::minus(p, i)],
            Matrix::zeros(gf3, 2, 2),
        )
        .unwrap();
    println!("with commutation as well: consistent = {}", stricter.solve().unwrap().is_consistent());
}
