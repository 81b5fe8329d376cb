//! Cline's equation `A^m·X·B^n = C`.
//!
//! With {1}-inverses `G` of `A^m` and `G'` of `B^n`, the equation is
//! consistent iff `A^m·G·C·G'·B^n = C`, and then
//!
//! ```text
//! f(Y) = G·C·G' + Y − G·A^m·Y·B^n·G'
//! g(Y) = X0     + Y − G·A^m·Y·B^n·G'
//! ```
//!
//! both parametrize the whole solution set. `f` is reproductive; `g` is
//! reproductive exactly when `X0 = G·C·G'`.

use crate::gen_inverse::{index, one_inverse, Construction, OneInverseCertificate};
use crate::generator::AffineGenerator;
use crate::matrix::Matrix;
use crate::oracle::{LinearMatrixSystem, LinearTerm};
use crate::report::{
    require_positive, require_same_field, require_shape, require_square, ClauseCheck, ConsistencyReport,
    EquationError, PowerPolicy,
};
use crate::scalar::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClineProblem {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub m: u32,
    pub n: u32,
}

impl ClineProblem {
    pub fn new(a: Matrix, b: Matrix, c: Matrix, m: u32, n: u32) -> Result<ClineProblem, EquationError> {
        require_square("A", &a)?;
        require_square("B", &b)?;
        require_shape("C", &c, (a.rows(), b.rows()))?;
        require_same_field(&[("A", &a), ("B", &b), ("C", &c)])?;
        require_positive("m", m)?;
        require_positive("n", n)?;
        Ok(ClineProblem { a, b, c, m, n })
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    /// `A^m·X·B^n = C` for the oracle.
    pub fn system(&self) -> LinearMatrixSystem {
        let am = self.a.power(self.m).expect("A is square");
        let bn = self.b.power(self.n).expect("B is square");
        LinearMatrixSystem::new(self.field(), self.a.rows(), self.b.rows())
            .with_constraint(vec![LinearTerm::plus(am, bn)], self.c.clone())
            .expect("shapes validated at construction")
    }

    pub fn is_solution(&self, x: &Matrix) -> bool {
        self.system().is_satisfied_by(x)
    }
}

/// Powers of `A` and `B` together with the {1}-inverses used by the formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClineContext {
    pub problem: ClineProblem,
    pub am: Matrix,
    pub bn: Matrix,
    pub g_am: OneInverseCertificate,
    pub g_bn: OneInverseCertificate,
    pub index_a: usize,
    pub index_b: usize,
    /// Set when `m < Ind(A)` or `n < Ind(B)` was accepted under [`PowerPolicy::AllowSmall`].
    pub small_power: bool,
}

impl ClineContext {
    /// Computes `A^m`, `B^n` and their {1}-inverses. Supplied inverses are
    /// verified; missing ones come from [`one_inverse`].
    pub fn new(
        problem: &ClineProblem,
        g_am: Option<Matrix>,
        g_bn: Option<Matrix>,
        policy: PowerPolicy,
    ) -> Result<ClineContext, EquationError> {
        let index_a = index(&problem.a)?;
        let index_b = index(&problem.b)?;
        let small_power = (problem.m as usize) < index_a || (problem.n as usize) < index_b;
        if policy == PowerPolicy::Strict {
            if (problem.m as usize) < index_a {
                return Err(EquationError::IndexTooSmall {
                    matrix: "A",
                    power: problem.m,
                    index: index_a,
                });
            }
            if (problem.n as usize) < index_b {
                return Err(EquationError::IndexTooSmall {
                    matrix: "B",
                    power: problem.n,
                    index: index_b,
                });
            }
        }
        let am = problem.a.power(problem.m)?;
        let bn = problem.b.power(problem.n)?;
        let g_am = certify(&am, g_am, "A^m")?;
        let g_bn = certify(&bn, g_bn, "B^n")?;
        Ok(ClineContext {
            problem: problem.clone(),
            am,
            bn,
            g_am,
            g_bn,
            index_a,
            index_b,
            small_power,
        })
    }

    /// `G·C·G'`, the constant of the f-generator.
    pub fn canonical_particular(&self) -> Matrix {
        &(&self.g_am.g * &self.problem.c) * &self.g_bn.g
    }

    /// Evaluates `A^m·G·C·G'·B^n = C`.
    pub fn consistency(&self) -> ConsistencyReport {
        let lhs = &(&(&self.am * &self.g_am.g) * &self.problem.c) * &(&self.g_bn.g * &self.bn);
        let clause = ClauseCheck::compare("A^m (A^m)^(1) C (B^n)^(1) B^n = C", &lhs, &self.problem.c);
        let consistent = clause.holds;
        ConsistencyReport {
            consistent,
            clauses: vec![clause],
            witnesses: vec![
                ("(A^m)^(1)".into(), self.g_am.g.clone()),
                ("(B^n)^(1)".into(), self.g_bn.g.clone()),
            ],
            particular: consistent.then(|| self.canonical_particular()),
        }
    }

    fn linear_terms(&self) -> Vec<LinearTerm> {
        let field = self.problem.field();
        vec![
            LinearTerm::plus(
                Matrix::identity(field, self.am.rows()),
                Matrix::identity(field, self.bn.rows()),
            ),
            LinearTerm::minus(&self.g_am.g * &self.am, &self.bn * &self.g_bn.g),
        ]
    }

    fn generator(&self, constant: Matrix, name: &str, constant_label: String) -> AffineGenerator {
        let (m, n) = (self.problem.m, self.problem.n);
        let shape = self.problem.c.shape();
        AffineGenerator::new(constant, self.linear_terms(), shape)
            .expect("terms compose with a p x q parameter")
            .with_formula(format!(
                "X = {name}(Y) = {constant_label} + Y - (A^{m})^(1) A^{m} Y B^{n} (B^{n})^(1)"
            ))
    }

    /// `f(Y) = G·C·G' + Y − G·A^m·Y·B^n·G'`.
    pub fn f_generator(&self) -> Result<AffineGenerator, EquationError> {
        if !self.consistency().consistent {
            return Err(EquationError::Inconsistent);
        }
        let (m, n) = (self.problem.m, self.problem.n);
        Ok(self.generator(
            self.canonical_particular(),
            "f",
            format!("(A^{m})^(1) C (B^{n})^(1)"),
        ))
    }

    /// `g(Y) = X0 + Y − G·A^m·Y·B^n·G'` for a verified solution `X0`.
    pub fn g_generator(&self, x0: &Matrix) -> Result<AffineGenerator, EquationError> {
        if !self.problem.is_solution(x0) {
            return Err(EquationError::NotASolution);
        }
        Ok(self.generator(x0.clone(), "g", "X0".into()))
    }
}

fn certify(
    m: &Matrix,
    supplied: Option<Matrix>,
    name: &str,
) -> Result<OneInverseCertificate, EquationError> {
    match supplied {
        None => Ok(one_inverse(m)),
        Some(g) => OneInverseCertificate::verify(m, g, Construction::UserSupplied)
            .ok_or_else(|| EquationError::InvalidOneInverse(name.to_string())),
    }
}
