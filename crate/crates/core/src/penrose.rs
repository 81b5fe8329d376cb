//! The generalized Penrose system `A^m·X = B ∧ X·D^n = E`.
//!
//! With `G ∈ (A^m){1}` and `G' ∈ (D^n){1}` the system is consistent iff
//! `A^m·G·B = B`, `E·G'·D^n = E` and `A^m·E = B·D^n`. A common solution is
//!
//! ```text
//! X1 = G·B + E·G' − G·A^m·E·G'
//! ```
//!
//! and `f(Y) = X1 + (I − G·A^m)·Y·(I − D^n·G')` is the reproductive general
//! solution; replacing `X1` by any solution `X0` gives `g`, reproductive iff
//! `X0 = X1`.
//!
//! A variant of `X1` with an extra factor, `G·A^m·A·E·G'`, is easy to
//! mistake for it. [`PenroseContext::x1_literal`] evaluates that variant so
//! reports can show whether it differs from `X1` and whether it solves the
//! system.

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
pub struct PenroseProblem {
    pub a: Matrix,
    pub b: Matrix,
    pub d: Matrix,
    pub e: Matrix,
    pub m: u32,
    pub n: u32,
}

impl PenroseProblem {
    pub fn new(a: Matrix, b: Matrix, d: Matrix, e: Matrix, m: u32, n: u32) -> Result<PenroseProblem, EquationError> {
        require_square("A", &a)?;
        require_square("D", &d)?;
        let shape = (a.rows(), d.rows());
        require_shape("B", &b, shape)?;
        require_shape("E", &e, shape)?;
        require_same_field(&[("A", &a), ("B", &b), ("D", &d), ("E", &e)])?;
        require_positive("m", m)?;
        require_positive("n", n)?;
        Ok(PenroseProblem { a, b, d, e, m, n })
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    /// `{A^m·X = B, X·D^n = E}` for the oracle.
    pub fn system(&self) -> LinearMatrixSystem {
        let field = self.field();
        let (p, q) = self.b.shape();
        let am = self.a.power(self.m).expect("A is square");
        let dn = self.d.power(self.n).expect("D is square");
        LinearMatrixSystem::new(field, p, q)
            .with_constraint(vec![LinearTerm::plus(am, Matrix::identity(field, q))], self.b.clone())
            .and_then(|s| s.with_constraint(vec![LinearTerm::plus(Matrix::identity(field, p), dn)], self.e.clone()))
            .expect("shapes validated at construction")
    }

    pub fn is_solution(&self, x: &Matrix) -> bool {
        self.system().is_satisfied_by(x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PenroseContext {
    pub problem: PenroseProblem,
    pub am: Matrix,
    pub dn: Matrix,
    pub g_am: OneInverseCertificate,
    pub g_dn: OneInverseCertificate,
    /// `G·B + E·G' − G·A^m·E·G'`; a solution whenever the system is consistent.
    pub x1: Matrix,
    pub index_a: usize,
    pub index_d: usize,
    pub small_power: bool,
}

impl PenroseContext {
    pub fn new(
        problem: &PenroseProblem,
        g_am: Option<Matrix>,
        g_dn: Option<Matrix>,
        policy: PowerPolicy,
    ) -> Result<PenroseContext, EquationError> {
        let index_a = index(&problem.a)?;
        let index_d = index(&problem.d)?;
        let small_power = (problem.m as usize) < index_a || (problem.n as usize) < index_d;
        if policy == PowerPolicy::Strict {
            if (problem.m as usize) < index_a {
                return Err(EquationError::IndexTooSmall {
                    matrix: "A",
                    power: problem.m,
                    index: index_a,
                });
            }
            if (problem.n as usize) < index_d {
                return Err(EquationError::IndexTooSmall {
                    matrix: "D",
                    power: problem.n,
                    index: index_d,
                });
            }
        }
        let am = problem.a.power(problem.m)?;
        let dn = problem.d.power(problem.n)?;
        let g_am = certify(&am, g_am, "A^m")?;
        let g_dn = certify(&dn, g_dn, "D^n")?;
        let x1 = &(&(&g_am.g * &problem.b) + &(&problem.e * &g_dn.g))
            - &(&(&(&g_am.g * &am) * &problem.e) * &g_dn.g);
        let ctx = PenroseContext {
            problem: problem.clone(),
            am,
            dn,
            g_am,
            g_dn,
            x1,
            index_a,
            index_d,
            small_power,
        };
        if ctx.consistency().consistent && !ctx.problem.is_solution(&ctx.x1) {
            return Err(EquationError::X1Unverified);
        }
        Ok(ctx)
    }

    /// The three-clause criterion; each failing clause carries its defect.
    pub fn consistency(&self) -> ConsistencyReport {
        let PenroseProblem { b, e, .. } = &self.problem;
        let first = ClauseCheck::compare("A^m (A^m)^(1) B = B", &(&(&self.am * &self.g_am.g) * b), b);
        let second = ClauseCheck::compare("E (D^n)^(1) D^n = E", &(&(e * &self.g_dn.g) * &self.dn), e);
        let third = ClauseCheck::compare("A^m E = B D^n", &(&self.am * e), &(b * &self.dn));
        let consistent = first.holds && second.holds && third.holds;
        ConsistencyReport {
            consistent,
            clauses: vec![first, second, third],
            witnesses: vec![
                ("(A^m)^(1)".into(), self.g_am.g.clone()),
                ("(D^n)^(1)".into(), self.g_dn.g.clone()),
            ],
            particular: consistent.then(|| self.x1.clone()),
        }
    }

    /// The common solution `X1`, checked against both equations.
    pub fn x1(&self) -> Result<Matrix, EquationError> {
        if !self.consistency().consistent {
            return Err(EquationError::Inconsistent);
        }
        if !self.problem.is_solution(&self.x1) {
            return Err(EquationError::X1Unverified);
        }
        Ok(self.x1.clone())
    }

    /// `G·B + E·G' − G·A^m·A·E·G'`, the variant with the extra `A` factor.
    pub fn x1_literal(&self) -> Matrix {
        let PenroseProblem { a, b, e, .. } = &self.problem;
        let correction = &(&(&(&self.g_am.g * &self.am) * a) * e) * &self.g_dn.g;
        &(&(&self.g_am.g * b) + &(e * &self.g_dn.g)) - &correction
    }

    pub fn literal_x1_differs(&self) -> bool {
        self.x1_literal() != self.x1
    }

    pub fn literal_x1_solves(&self) -> bool {
        self.problem.is_solution(&self.x1_literal())
    }

    fn generator(&self, constant: Matrix, name: &str, constant_label: &str) -> AffineGenerator {
        let field = self.problem.field();
        let (p, q) = self.problem.b.shape();
        let left = &Matrix::identity(field, p) - &(&self.g_am.g * &self.am);
        let right = &Matrix::identity(field, q) - &(&self.dn * &self.g_dn.g);
        let (m, n) = (self.problem.m, self.problem.n);
        AffineGenerator::new(constant, vec![LinearTerm::plus(left, right)], (p, q))
            .expect("term composes with a p x q parameter")
            .with_formula(format!(
                "X = {name}(Y) = {constant_label} + (I - (A^{m})^(1) A^{m}) Y (I - D^{n} (D^{n})^(1))"
            ))
    }

    /// `f(Y) = X1 + (I − G·A^m)·Y·(I − D^n·G')`.
    pub fn f_generator(&self) -> Result<AffineGenerator, EquationError> {
        let x1 = self.x1()?;
        Ok(self.generator(x1, "f", "X1"))
    }

    /// `g(Y) = X0 + (I − G·A^m)·Y·(I − D^n·G')`.
    pub fn g_generator(&self, x0: &Matrix) -> Result<AffineGenerator, EquationError> {
        if !self.problem.is_solution(x0) {
            return Err(EquationError::NotASolution);
        }
        Ok(self.generator(x0.clone(), "g", "X0"))
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
