//! The k-commutative {1}-inverse system `A·X·A = A ∧ A^k·X = X·A^k`.
//!
//! A solution `Ā` (a k-commutative {1}-inverse) is found with the linear
//! oracle; no closed-form consistency test is used. From `Ā`:
//!
//! ```text
//! X̂   = Ā·A·Ā
//! f(Y) = X̂ + Y − (I − Ā·A)·Y·A^k·Ā^k − Ā^k·A^k·Y·(I − A·Ā) − Ā·A·Y·A·Ā
//! ```
//!
//! `f` is the reproductive general solution. Replacing `X̂` by any solution
//! `X0` gives `g`, which is reproductive iff `X0 = X̂`.

use crate::gen_inverse::Construction;
use crate::generator::AffineGenerator;
use crate::matrix::Matrix;
use crate::oracle::{LinearMatrixSystem, LinearTerm};
use crate::report::{require_positive, require_square, ClauseCheck, EquationError, LemmaReport};
use crate::scalar::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KCommProblem {
    pub a: Matrix,
    pub k: u32,
}

impl KCommProblem {
    pub fn new(a: Matrix, k: u32) -> Result<KCommProblem, EquationError> {
        require_square("A", &a)?;
        require_positive("k", k)?;
        Ok(KCommProblem { a, k })
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    /// `{A·X·A = A, A^k·X − X·A^k = 0}` for the oracle.
    pub fn system(&self) -> LinearMatrixSystem {
        let field = self.field();
        let p = self.a.rows();
        let ak = self.a.power(self.k).expect("A is square");
        let i = Matrix::identity(field, p);
        LinearMatrixSystem::new(field, p, p)
            .with_constraint(vec![LinearTerm::plus(self.a.clone(), self.a.clone())], self.a.clone())
            .and_then(|s| {
                s.with_constraint(
                    vec![LinearTerm::plus(ak.clone(), i.clone()), LinearTerm::minus(i, ak)],
                    Matrix::zeros(field, p, p),
                )
            })
            .expect("square shapes compose")
    }

    pub fn is_solution(&self, x: &Matrix) -> bool {
        self.system().is_satisfied_by(x)
    }

    pub fn is_singular(&self) -> bool {
        self.a.rank() < self.a.rows()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KCommContext {
    pub problem: KCommProblem,
    /// `Ā`.
    pub abar: Matrix,
    pub construction: Construction,
    /// `X̂ = Ā·A·Ā`.
    pub xhat: Matrix,
    pub ak: Matrix,
    pub abark: Matrix,
}

/// Solves the system with the oracle and uses its particular solution as `Ā`.
/// Returns `Ok(None)` when the system has no solution.
pub fn find_kcomm_inverse(problem: &KCommProblem) -> Result<Option<KCommContext>, EquationError> {
    let set = problem.system().solve()?;
    match set.particular() {
        None => Ok(None),
        Some(abar) => KCommContext::with_inverse(problem, abar.clone(), Construction::OracleDerived).map(Some),
    }
}

impl KCommContext {
    /// Builds the context from a given `Ā`, verifying both defining identities.
    pub fn with_inverse(
        problem: &KCommProblem,
        abar: Matrix,
        construction: Construction,
    ) -> Result<KCommContext, EquationError> {
        if abar.shape() != problem.a.shape() || abar.field() != problem.field() || !problem.is_solution(&abar) {
            return Err(EquationError::InvalidOneInverse("A (k-commutative)".into()));
        }
        let a = &problem.a;
        let xhat = &(&abar * a) * &abar;
        if !problem.is_solution(&xhat) {
            return Err(EquationError::XhatUnverified);
        }
        Ok(KCommContext {
            ak: a.power(problem.k)?,
            abark: abar.power(problem.k)?,
            problem: problem.clone(),
            abar,
            construction,
            xhat,
        })
    }

    /// `X̂ = Ā·A·Ā`.
    pub fn xhat(&self) -> &Matrix {
        &self.xhat
    }

    fn linear_terms(&self) -> Vec<LinearTerm> {
        let field = self.problem.field();
        let a = &self.problem.a;
        let i = Matrix::identity(field, a.rows());
        let abar_a = &self.abar * a;
        let a_abar = a * &self.abar;
        vec![
            LinearTerm::plus(i.clone(), i.clone()),
            LinearTerm::minus(&i - &abar_a, &self.ak * &self.abark),
            LinearTerm::minus(&self.abark * &self.ak, &i - &a_abar),
            LinearTerm::minus(abar_a, a_abar),
        ]
    }

    fn generator(&self, constant: Matrix, name: &str, constant_label: &str) -> AffineGenerator {
        let k = self.problem.k;
        let shape = self.problem.a.shape();
        AffineGenerator::new(constant, self.linear_terms(), shape)
            .expect("square terms compose")
            .with_formula(format!(
                "X = {name}(Y) = {constant_label} + Y - (I - Ā A) Y A^{k} Ā^{k} - Ā^{k} A^{k} Y (I - A Ā) - Ā A Y A Ā"
            ))
    }

    /// Generator with constant `X̂`.
    pub fn f_generator(&self) -> AffineGenerator {
        self.generator(self.xhat.clone(), "f", "Ā A Ā")
    }

    /// Generator with constant `x0`, which must solve the system.
    pub fn g_generator(&self, x0: &Matrix) -> Result<AffineGenerator, EquationError> {
        if !self.problem.is_solution(x0) {
            return Err(EquationError::NotASolution);
        }
        Ok(self.generator(x0.clone(), "g", "X0"))
    }

    /// Evaluates the supporting identities
    /// `A^k·Ā^k = Ā^k·A^k`, `A^k·Ā^k·A^k = A^k`,
    /// `X0·A^k·Ā^k = A^k·Ā^{k+1}` and `Ā^k·A^k·X0 = A^k·Ā^{k+1}`.
    /// Without `x0` the last two use `X̂`.
    pub fn lemma_report(&self, x0: Option<&Matrix>) -> Result<LemmaReport, EquationError> {
        let x0 = match x0 {
            Some(x) if !self.problem.is_solution(x) => return Err(EquationError::NotASolution),
            Some(x) => x,
            None => &self.xhat,
        };
        let (ak, abark) = (&self.ak, &self.abark);
        let ak_abark = ak * abark;
        let abark_ak = abark * ak;
        let rhs = &ak_abark * &self.abar;
        Ok(LemmaReport {
            checks: vec![
                ClauseCheck::compare("A^k Ā^k = Ā^k A^k", &ak_abark, &abark_ak),
                ClauseCheck::compare("A^k Ā^k A^k = A^k", &(&ak_abark * ak), ak),
                ClauseCheck::compare("X0 A^k Ā^k = A^k Ā^(k+1)", &(x0 * &ak_abark), &rhs),
                ClauseCheck::compare("Ā^k A^k X0 = A^k Ā^(k+1)", &(&abark_ak * x0), &rhs),
            ],
        })
    }
}
