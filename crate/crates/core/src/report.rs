//! Verdicts shared by the equation solvers.

use thiserror::Error;

use crate::generator::ReproError;
use crate::matrix::{Matrix, MatrixError};
use crate::oracle::OracleError;

/// One identity that was evaluated exactly: `lhs − rhs` is the defect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseCheck {
    pub name: String,
    pub holds: bool,
    pub defect: Matrix,
}

impl ClauseCheck {
    pub fn compare(name: impl Into<String>, lhs: &Matrix, rhs: &Matrix) -> ClauseCheck {
        let defect = lhs - rhs;
        ClauseCheck {
            name: name.into(),
            holds: defect.is_zero(),
            defect,
        }
    }
}

/// Consistency verdict with the evidence needed to re-check it by hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub clauses: Vec<ClauseCheck>,
    /// Named auxiliary matrices, e.g. the {1}-inverses that were used.
    pub witnesses: Vec<(String, Matrix)>,
    /// Canonical particular solution when consistent.
    pub particular: Option<Matrix>,
}

impl ConsistencyReport {
    pub fn failed_clauses(&self) -> impl Iterator<Item = &ClauseCheck> {
        self.clauses.iter().filter(|c| !c.holds)
    }
}

/// Lemma identities evaluated for one k-commutative instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub checks: Vec<ClauseCheck>,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Whether the `m ≥ Ind(A)` style hypotheses are enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PowerPolicy {
    #[default]
    Strict,
    AllowSmall,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquationError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("power {power} of {matrix} is below its index {index}")]
    IndexTooSmall {
        matrix: &'static str,
        power: u32,
        index: usize,
    },
    #[error("supplied matrix is not a valid {{1}}-inverse of {0}")]
    InvalidOneInverse(String),
    #[error("the system is inconsistent")]
    Inconsistent,
    #[error("x0 is not a solution of the system")]
    NotASolution,
    #[error("X1 fails the equations on a consistent instance")]
    X1Unverified,
    #[error("Ā·A·Ā fails the equations")]
    XhatUnverified,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Generator(#[from] ReproError),
}

pub(crate) fn require_square(name: &str, m: &Matrix) -> Result<(), EquationError> {
    if m.is_square() {
        Ok(())
    } else {
        Err(EquationError::InvalidProblem(format!(
            "{name} must be square, got {}x{}",
            m.rows(),
            m.cols()
        )))
    }
}

pub(crate) fn require_shape(name: &str, m: &Matrix, shape: (usize, usize)) -> Result<(), EquationError> {
    if m.shape() == shape {
        Ok(())
    } else {
        Err(EquationError::InvalidProblem(format!(
            "{name} must be {}x{}, got {}x{}",
            shape.0,
            shape.1,
            m.rows(),
            m.cols()
        )))
    }
}

pub(crate) fn require_same_field(ms: &[(&str, &Matrix)]) -> Result<(), EquationError> {
    let field = ms[0].1.field();
    match ms.iter().find(|(_, m)| m.field() != field) {
        Some((name, m)) => Err(EquationError::InvalidProblem(format!(
            "{name} is over {} but {} is over {field}",
            m.field(),
            ms[0].0
        ))),
        None => Ok(()),
    }
}

pub(crate) fn require_positive(name: &str, v: u32) -> Result<(), EquationError> {
    if v >= 1 {
        Ok(())
    } else {
        Err(EquationError::InvalidProblem(format!("{name} must be at least 1")))
    }
}
