//! Exact solvers for three families of matrix equations and a decision
//! procedure for reproductivity of their solution formulas.
//!
//! * [`cline`]: `A^m·X·B^n = C`
//! * [`penrose`]: `A^m·X = B ∧ X·D^n = E`
//! * [`kcomm`]: `A·X·A = A ∧ A^k·X = X·A^k` (k-commutative {1}-inverses)
//!
//! Each solver decides consistency and emits its general solution as an
//! [`AffineGenerator`] `X = h(Y)`. [`AffineGenerator::is_reproductive`]
//! decides `h∘h = h` exactly, and the [`oracle`] module solves any linear
//! matrix system by vectorization, independently of the closed forms, so
//! every formula can be cross-checked against ground truth.
//!
//! Arithmetic is exact over ℚ or GF(p); see [`scalar`].

pub mod cli;
pub mod cline;
pub mod gen_inverse;
pub mod generator;
pub mod kcomm;
pub mod matrix;
pub mod oracle;
pub mod penrose;
pub mod problem;
pub mod random;
pub mod report;
pub mod scalar;
pub mod sweep;

pub use cline::{ClineContext, ClineProblem};
pub use gen_inverse::{all_one_inverses, index, one_inverse, OneInverseCertificate};
pub use generator::{AffineGenerator, ReproVerdict};
pub use kcomm::{find_kcomm_inverse, KCommContext, KCommProblem};
pub use matrix::{Matrix, MatrixError, RrefResult};
pub use oracle::{AffineSolutionSet, LinearMatrixSystem, LinearTerm, Sign};
pub use penrose::{PenroseContext, PenroseProblem};
pub use report::{ClauseCheck, ConsistencyReport, EquationError, LemmaReport, PowerPolicy};
pub use scalar::{ExactScalar, FieldSpec};
