//! Affine solution generators `h(Y) = C₀ + Σ sᵢ·Pᵢ·Y·Qᵢ` and exact
//! reproductivity decisions.
//!
//! A generator is reproductive when `h∘h = h`. Writing `L` for the linear
//! part with matrix `M` (so `vec(h(Y)) = vec(C₀) + M·vec(Y)`), we get
//! `h(h(Y)) = C₀ + L(C₀) + L(L(Y))`, hence `h∘h = h` exactly when `M² = M`
//! and `L(C₀) = 0`. Both conditions are finite checks.

use std::fmt;

use thiserror::Error;

use crate::matrix::Matrix;
use crate::oracle::{AffineSolutionSet, LinearTerm};
use crate::scalar::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReproError {
    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("generator maps {param:?} matrices to {output:?} matrices and cannot be composed with itself")]
    NotComposable {
        param: (usize, usize),
        output: (usize, usize),
    },
    #[error("invalid generator: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineGenerator {
    constant: Matrix,
    terms: Vec<LinearTerm>,
    y_rows: usize,
    y_cols: usize,
    formula: Option<String>,
}

/// Outcome of [`AffineGenerator::is_reproductive`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReproVerdict {
    pub reproductive: bool,
    /// `M² = M`.
    pub linear_idempotent: bool,
    /// `L(C₀) = 0`.
    pub constant_fixed: bool,
    /// `h(h(0)) − h(0) = L(C₀)`.
    pub defect: Matrix,
}

impl AffineGenerator {
    pub fn new(
        constant: Matrix,
        terms: Vec<LinearTerm>,
        y_shape: (usize, usize),
    ) -> Result<AffineGenerator, ReproError> {
        for (i, t) in terms.iter().enumerate() {
            if t.left.field() != constant.field() || t.right.field() != constant.field() {
                return Err(ReproError::Invalid(format!("term {i} is over a different field")));
            }
            match t.output_shape(y_shape) {
                Some(s) if s == constant.shape() => {}
                _ => {
                    return Err(ReproError::Invalid(format!(
                        "term {i} does not map {y_shape:?} matrices to {:?}",
                        constant.shape()
                    )))
                }
            }
        }
        Ok(AffineGenerator {
            constant,
            terms,
            y_rows: y_shape.0,
            y_cols: y_shape.1,
            formula: None,
        })
    }

    /// `h(Y) = Y` on `n × m` matrices.
    pub fn identity(field: FieldSpec, rows: usize, cols: usize) -> AffineGenerator {
        AffineGenerator::new(
            Matrix::zeros(field, rows, cols),
            vec![LinearTerm::plus(Matrix::identity(field, rows), Matrix::identity(field, cols))],
            (rows, cols),
        )
        .expect("identity generator is well formed")
    }

    /// Attaches a human-readable formula used when printing.
    pub fn with_formula(mut self, formula: impl Into<String>) -> AffineGenerator {
        self.formula = Some(formula.into());
        self
    }

    pub fn constant(&self) -> &Matrix {
        &self.constant
    }

    pub fn terms(&self) -> &[LinearTerm] {
        &self.terms
    }

    pub fn param_shape(&self) -> (usize, usize) {
        (self.y_rows, self.y_cols)
    }

    pub fn formula(&self) -> Option<&str> {
        self.formula.as_deref()
    }

    pub fn field(&self) -> FieldSpec {
        self.constant.field()
    }

    /// Same linear part, different constant.
    pub fn with_constant(&self, constant: Matrix) -> Result<AffineGenerator, ReproError> {
        if constant.shape() != self.constant.shape() {
            return Err(ReproError::ShapeMismatch {
                expected: self.constant.shape(),
                got: constant.shape(),
            });
        }
        Ok(AffineGenerator {
            constant,
            ..self.clone()
        })
    }

    /// Linear part `L(y) = Σ sᵢ·Pᵢ·y·Qᵢ`.
    pub fn linear_part(&self, y: &Matrix) -> Result<Matrix, ReproError> {
        if y.shape() != self.param_shape() {
            return Err(ReproError::ShapeMismatch {
                expected: self.param_shape(),
                got: y.shape(),
            });
        }
        Ok(self
            .terms
            .iter()
            .fold(Matrix::zeros(self.field(), self.constant.rows(), self.constant.cols()), |acc, t| {
                &acc + &t.apply(y)
            }))
    }

    /// `h(y) = C₀ + L(y)`.
    pub fn apply(&self, y: &Matrix) -> Result<Matrix, ReproError> {
        Ok(&self.constant + &self.linear_part(y)?)
    }

    /// `M = Σ sᵢ·(Qᵢᵀ ⊗ Pᵢ)`, with `vec(h(Y) − C₀) = M·vec(Y)`.
    pub fn linear_matrix(&self) -> Matrix {
        let out = self.constant.rows() * self.constant.cols();
        let inp = self.y_rows * self.y_cols;
        self.terms
            .iter()
            .fold(Matrix::zeros(self.field(), out, inp), |acc, t| &acc + &t.vectorized())
    }

    /// Decides `h∘h = h`.
    pub fn is_reproductive(&self) -> Result<ReproVerdict, ReproError> {
        if self.constant.shape() != self.param_shape() {
            return Err(ReproError::NotComposable {
                param: self.param_shape(),
                output: self.constant.shape(),
            });
        }
        let m = self.linear_matrix();
        let linear_idempotent = &m * &m == m;
        let defect = self.linear_part(&self.constant)?;
        let constant_fixed = defect.is_zero();
        Ok(ReproVerdict {
            reproductive: linear_idempotent && constant_fixed,
            linear_idempotent,
            constant_fixed,
            defect,
        })
    }

    /// The affine set `{h(Y) : all Y}`: particular `C₀`, directions from
    /// the independent columns of `M`.
    pub fn image(&self) -> AffineSolutionSet {
        let m = self.linear_matrix();
        let (r, c) = self.constant.shape();
        let columns: Vec<Matrix> = m
            .rref()
            .pivot_cols
            .into_iter()
            .map(|j| Matrix::unvec(&m.column(j), r, c).expect("column length is r·c"))
            .collect();
        AffineSolutionSet::from_parts(self.constant.clone(), columns)
            .expect("image directions share the constant's shape")
    }
}

/// Free-function forms matching the operation names used elsewhere.
pub fn apply(h: &AffineGenerator, y: &Matrix) -> Result<Matrix, ReproError> {
    h.apply(y)
}

pub fn linear_matrix_of(h: &AffineGenerator) -> Matrix {
    h.linear_matrix()
}

pub fn is_reproductive(h: &AffineGenerator) -> Result<ReproVerdict, ReproError> {
    h.is_reproductive()
}

pub fn image_of(h: &AffineGenerator) -> AffineSolutionSet {
    h.image()
}

impl fmt::Display for AffineGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(formula) = &self.formula {
            writeln!(f, "{formula}")?;
        }
        write!(f, "h(Y) = {}", self.constant)?;
        for t in &self.terms {
            write!(f, " {} {}·Y·{}", t.sign.symbol(), t.left, t.right)?;
        }
        Ok(())
    }
}
