//! Ground-truth solver for conjunctions of linear matrix constraints
//! `Σ_j ±P_j·X·Q_j = R`.
//!
//! Each constraint is vectorized with `vec(P·X·Q) = (Qᵀ ⊗ P)·vec(X)`, the
//! blocks are stacked, and the resulting ordinary linear system is solved by
//! RREF. The result is an [`AffineSolutionSet`]: a particular solution plus a
//! nullspace basis, both reshaped back to the unknown's shape.
//!
//! Nothing here knows about {1}-inverses or the closed-form solution
//! formulas, which is what makes it usable as an independent check on them.

use thiserror::Error;

use crate::matrix::{nullspace_from_rref, Matrix, MatrixError};
use crate::scalar::{FieldError, FieldSpec};

/// Default ceiling on the number of matrices [`AffineSolutionSet::enumerate`] may yield.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("a linear matrix system needs at least one constraint")]
    NoConstraints,
    #[error(transparent)]
    NotEnumerable(FieldError),
    #[error("enumeration would yield {size} matrices, above the cap of {cap}")]
    CapExceeded { size: String, cap: u64 },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// One summand `sign · left · X · right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearTerm {
    pub left: Matrix,
    pub right: Matrix,
    pub sign: Sign,
}

impl LinearTerm {
    pub fn new(left: Matrix, right: Matrix, sign: Sign) -> LinearTerm {
        LinearTerm { left, right, sign }
    }

    pub fn plus(left: Matrix, right: Matrix) -> LinearTerm {
        LinearTerm::new(left, right, Sign::Plus)
    }

    pub fn minus(left: Matrix, right: Matrix) -> LinearTerm {
        LinearTerm::new(left, right, Sign::Minus)
    }

    /// `sign · left · x · right`.
    pub fn apply(&self, x: &Matrix) -> Matrix {
        let v = &(&self.left * x) * &self.right;
        match self.sign {
            Sign::Plus => v,
            Sign::Minus => -&v,
        }
    }

    /// `sign · (rightᵀ ⊗ left)`, the action of the term on `vec(X)`.
    pub fn vectorized(&self) -> Matrix {
        let k = self.right.transpose().kron(&self.left).expect("terms share a field");
        match self.sign {
            Sign::Plus => k,
            Sign::Minus => -&k,
        }
    }

    /// Output shape for an unknown of shape `x`, or `None` if not composable.
    pub fn output_shape(&self, x: (usize, usize)) -> Option<(usize, usize)> {
        (self.left.cols() == x.0 && self.right.rows() == x.1).then(|| (self.left.rows(), self.right.cols()))
    }
}

/// `Σ terms = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub terms: Vec<LinearTerm>,
    pub rhs: Matrix,
}

/// A conjunction of linear constraints in one matrix unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMatrixSystem {
    field: FieldSpec,
    x_rows: usize,
    x_cols: usize,
    constraints: Vec<LinearConstraint>,
}

impl LinearMatrixSystem {
    pub fn new(field: FieldSpec, x_rows: usize, x_cols: usize) -> LinearMatrixSystem {
        LinearMatrixSystem {
            field,
            x_rows,
            x_cols,
            constraints: Vec::new(),
        }
    }

    /// Adds `Σ terms = rhs`, checking every term against the unknown's shape.
    pub fn with_constraint(mut self, terms: Vec<LinearTerm>, rhs: Matrix) -> Result<Self, OracleError> {
        if terms.is_empty() {
            return Err(OracleError::DimensionMismatch("constraint without terms".into()));
        }
        for (i, t) in terms.iter().enumerate() {
            for m in [&t.left, &t.right, &rhs] {
                if m.field() != self.field {
                    return Err(OracleError::FieldMismatch(self.field, m.field()));
                }
            }
            match t.output_shape((self.x_rows, self.x_cols)) {
                Some(shape) if shape == rhs.shape() => {}
                Some(shape) => {
                    return Err(OracleError::DimensionMismatch(format!(
                        "term {i} produces {shape:?} but the right-hand side is {:?}",
                        rhs.shape()
                    )))
                }
                None => {
                    return Err(OracleError::DimensionMismatch(format!(
                        "term {i} ({}x{} · X · {}x{}) does not accept a {}x{} unknown",
                        t.left.rows(),
                        t.left.cols(),
                        t.right.rows(),
                        t.right.cols(),
                        self.x_rows,
                        self.x_cols
                    )))
                }
            }
        }
        self.constraints.push(LinearConstraint { terms, rhs });
        Ok(self)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn unknown_shape(&self) -> (usize, usize) {
        (self.x_rows, self.x_cols)
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    /// True iff `x` satisfies every constraint exactly.
    pub fn is_satisfied_by(&self, x: &Matrix) -> bool {
        x.shape() == self.unknown_shape()
            && self.constraints.iter().all(|c| {
                let lhs = c
                    .terms
                    .iter()
                    .map(|t| t.apply(x))
                    .reduce(|a, b| &a + &b)
                    .expect("constraints are non-empty");
                lhs == c.rhs
            })
    }

    /// Stacked coefficient matrix `M` and right-hand side `vec(R)`.
    pub fn vectorized(&self) -> Result<(Matrix, Matrix), OracleError> {
        if self.constraints.is_empty() {
            return Err(OracleError::NoConstraints);
        }
        let mut blocks = Vec::with_capacity(self.constraints.len());
        let mut rhs = Vec::with_capacity(self.constraints.len());
        for c in &self.constraints {
            let m = c
                .terms
                .iter()
                .map(LinearTerm::vectorized)
                .reduce(|a, b| &a + &b)
                .expect("constraints are non-empty");
            blocks.push(m);
            rhs.push(c.rhs.vec());
        }
        Ok((Matrix::vstack(&blocks)?, Matrix::vstack(&rhs)?))
    }

    /// Solves the system exactly.
    pub fn solve(&self) -> Result<AffineSolutionSet, OracleError> {
        let (m, r) = self.vectorized()?;
        let n = m.cols();
        let reduced = m.hstack(&r)?.rref();
        let shape = self.unknown_shape();
        if reduced.pivot_cols.last() == Some(&n) {
            return Ok(AffineSolutionSet::inconsistent(self.field, shape));
        }
        let mut particular = Matrix::zeros(self.field, n, 1);
        for (i, &p) in reduced.pivot_cols.iter().enumerate() {
            particular.set(p, 0, reduced.rref.get(i, n).clone());
        }
        // the augmented RREF restricted to the first n columns is the RREF of M
        let coeff = Matrix::from_fn(self.field, m.rows(), n, |i, j| reduced.rref.get(i, j).clone());
        let basis = nullspace_from_rref(&coeff, &reduced.pivot_cols)
            .into_iter()
            .map(|v| Matrix::unvec(&v, shape.0, shape.1))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AffineSolutionSet {
            field: self.field,
            shape,
            particular: Some(Matrix::unvec(&particular, shape.0, shape.1)?),
            basis,
        })
    }
}

/// Exact solution set `particular + span(basis)` of a linear matrix system,
/// or the empty set when the system is inconsistent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSolutionSet {
    field: FieldSpec,
    shape: (usize, usize),
    particular: Option<Matrix>,
    basis: Vec<Matrix>,
}

impl AffineSolutionSet {
    pub fn inconsistent(field: FieldSpec, shape: (usize, usize)) -> AffineSolutionSet {
        AffineSolutionSet {
            field,
            shape,
            particular: None,
            basis: Vec::new(),
        }
    }

    /// `particular + span(basis)`; the basis is reduced to an independent subset.
    pub fn from_parts(particular: Matrix, basis: Vec<Matrix>) -> Result<AffineSolutionSet, OracleError> {
        let shape = particular.shape();
        let field = particular.field();
        if let Some(b) = basis.iter().find(|b| b.shape() != shape) {
            return Err(OracleError::ShapeMismatch {
                expected: shape,
                got: b.shape(),
            });
        }
        let basis = independent_subset(&basis);
        Ok(AffineSolutionSet {
            field,
            shape,
            particular: Some(particular),
            basis,
        })
    }

    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }

    pub fn particular(&self) -> Option<&Matrix> {
        self.particular.as_ref()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    fn check_shape(&self, x: &Matrix) -> Result<(), OracleError> {
        if x.shape() != self.shape {
            return Err(OracleError::ShapeMismatch {
                expected: self.shape,
                got: x.shape(),
            });
        }
        if x.field() != self.field {
            return Err(OracleError::FieldMismatch(self.field, x.field()));
        }
        Ok(())
    }

    /// Exact membership test: `vec(x - particular) ∈ span(vec(basis))`.
    pub fn contains(&self, x: &Matrix) -> Result<bool, OracleError> {
        self.check_shape(x)?;
        let Some(p) = &self.particular else {
            return Ok(false);
        };
        let diff = x - p;
        if diff.is_zero() {
            return Ok(true);
        }
        if self.basis.is_empty() {
            return Ok(false);
        }
        Ok(in_span(&self.basis, &diff))
    }

    /// Same solution set: both empty, or mutually containing particulars and
    /// equal direction spaces.
    pub fn sets_equal(&self, other: &AffineSolutionSet) -> Result<bool, OracleError> {
        if self.shape != other.shape {
            return Err(OracleError::ShapeMismatch {
                expected: self.shape,
                got: other.shape,
            });
        }
        if self.field != other.field {
            return Err(OracleError::FieldMismatch(self.field, other.field));
        }
        match (&self.particular, &other.particular) {
            (None, None) => Ok(true),
            (Some(a), Some(b)) => Ok(self.contains(b)?
                && other.contains(a)?
                && spans_equal(&self.basis, &other.basis)),
            _ => Ok(false),
        }
    }

    /// Number of elements as a decimal string, `None` over ℚ with positive dimension.
    pub fn cardinality(&self) -> Option<String> {
        if !self.is_consistent() {
            return Some("0".into());
        }
        match self.field.order() {
            _ if self.basis.is_empty() => Some("1".into()),
            None => None,
            Some(p) => Some(num_bigint::BigUint::from(p).pow(self.basis.len() as u32).to_string()),
        }
    }

    /// Every element of the set over a finite field, at most `cap` of them.
    ///
    /// Elements are produced in odometer order over the basis coefficients
    /// (first basis vector varies fastest).
    pub fn enumerate(&self, cap: u64) -> Result<SolutionIter<'_>, OracleError> {
        let Some(p) = self.field.order() else {
            return Err(OracleError::NotEnumerable(FieldError::NotEnumerable(self.field)));
        };
        let d = self.basis.len() as u32;
        let size = (p as u128).checked_pow(d);
        if size.is_none_or(|s| s > cap as u128) {
            return Err(OracleError::CapExceeded {
                size: self.cardinality().unwrap_or_default(),
                cap,
            });
        }
        Ok(SolutionIter {
            set: self,
            coeffs: self.particular.as_ref().map(|_| vec![0; self.basis.len()]),
            modulus: p as u32,
        })
    }
}

/// Iterator returned by [`AffineSolutionSet::enumerate`].
pub struct SolutionIter<'a> {
    set: &'a AffineSolutionSet,
    coeffs: Option<Vec<u32>>,
    modulus: u32,
}

impl Iterator for SolutionIter<'_> {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        let coeffs = self.coeffs.as_mut()?;
        let field = self.set.field;
        let mut x = self.set.particular.clone().expect("consistent set");
        for (c, b) in coeffs.iter().zip(&self.set.basis) {
            if *c != 0 {
                x = &x + &b.scale(&field.from_i64(*c as i64));
            }
        }
        let mut carry = true;
        for c in coeffs.iter_mut() {
            *c += 1;
            if *c < self.modulus {
                carry = false;
                break;
            }
            *c = 0;
        }
        if carry {
            self.coeffs = None;
        }
        Some(x)
    }
}

/// Column matrix of the vectorized matrices.
fn vec_columns(ms: &[Matrix]) -> Matrix {
    let cols: Vec<Matrix> = ms.iter().map(Matrix::vec).collect();
    Matrix::from_columns(ms[0].field(), &cols).expect("equal shapes")
}

fn in_span(basis: &[Matrix], x: &Matrix) -> bool {
    let b = vec_columns(basis);
    let rank = b.rank();
    b.hstack(&x.vec()).expect("equal shapes").rank() == rank
}

fn spans_equal(a: &[Matrix], b: &[Matrix]) -> bool {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => true,
        (true, false) => b.iter().all(Matrix::is_zero),
        (false, true) => a.iter().all(Matrix::is_zero),
        (false, false) => {
            let ma = vec_columns(a);
            let mb = vec_columns(b);
            let ra = ma.rank();
            ra == mb.rank() && ma.hstack(&mb).expect("equal shapes").rank() == ra
        }
    }
}

/// Keeps the members of `ms` at the pivot columns of their vectorized matrix.
pub(crate) fn independent_subset(ms: &[Matrix]) -> Vec<Matrix> {
    if ms.is_empty() {
        return Vec::new();
    }
    vec_columns(ms)
        .rref()
        .pivot_cols
        .into_iter()
        .map(|j| ms[j].clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;
    const GF2: FieldSpec = FieldSpec::Prime(2);

    fn axa_system(a: &Matrix) -> LinearMatrixSystem {
        LinearMatrixSystem::new(a.field(), a.cols(), a.rows())
            .with_constraint(vec![LinearTerm::plus(a.clone(), a.clone())], a.clone())
            .unwrap()
    }

    /// All 2x2 matrices over GF(2), by brute force.
    fn all_gf2_2x2() -> Vec<Matrix> {
        (0..16u32)
            .map(|bits| Matrix::from_fn(GF2, 2, 2, |i, j| GF2.from_i64(((bits >> (2 * i + j)) & 1) as i64)))
            .collect()
    }

    #[test]
    fn identity_system_has_unique_solution() {
        let c = Matrix::from_i64(Q, &[&[1, 2], &[3, 4]]);
        let i = Matrix::identity(Q, 2);
        let s = LinearMatrixSystem::new(Q, 2, 2)
            .with_constraint(vec![LinearTerm::plus(i.clone(), i)], c.clone())
            .unwrap()
            .solve()
            .unwrap();
        assert_eq!(s.particular(), Some(&c));
        assert_eq!(s.dimension(), 0);
    }

    #[test]
    fn vacuous_system_is_full_space() {
        let z = Matrix::zeros(Q, 2, 2);
        let s = LinearMatrixSystem::new(Q, 2, 2)
            .with_constraint(vec![LinearTerm::plus(z.clone(), z.clone())], z)
            .unwrap()
            .solve()
            .unwrap();
        assert!(s.is_consistent());
        assert_eq!(s.dimension(), 4);
    }

    #[test]
    fn axa_over_gf2_matches_brute_force() {
        let a = Matrix::diag(GF2, &[1, 0]);
        let sys = axa_system(&a);
        let s = sys.solve().unwrap();
        let brute: Vec<Matrix> = all_gf2_2x2()
            .into_iter()
            .filter(|x| &(&a * x) * &a == a)
            .collect();
        assert_eq!(brute.len(), 8);
        assert!(brute.iter().all(|x| x.get(0, 0).is_one()));
        let mut got: Vec<Matrix> = s.enumerate(DEFAULT_ENUMERATION_CAP).unwrap().collect();
        got.sort();
        let mut want = brute;
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn contains_examples() {
        let a = Matrix::diag(Q, &[1, 0]);
        let s = axa_system(&a).solve().unwrap();
        assert!(s.contains(s.particular().unwrap()).unwrap());
        let i = Matrix::identity(Q, 2);
        let only_zero = LinearMatrixSystem::new(Q, 2, 2)
            .with_constraint(vec![LinearTerm::plus(i.clone(), i.clone())], Matrix::zeros(Q, 2, 2))
            .unwrap()
            .solve()
            .unwrap();
        assert!(!only_zero.contains(&i).unwrap());
        assert!(matches!(
            only_zero.contains(&Matrix::zeros(Q, 2, 3)),
            Err(OracleError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn enumerate_edge_cases() {
        let i = Matrix::identity(GF2, 2);
        let unique = LinearMatrixSystem::new(GF2, 2, 2)
            .with_constraint(vec![LinearTerm::plus(i.clone(), i.clone())], i.clone())
            .unwrap()
            .solve()
            .unwrap();
        assert_eq!(unique.enumerate(10).unwrap().collect::<Vec<_>>(), vec![i]);
        let zq = Matrix::zeros(Q, 1, 1);
        let q_set = LinearMatrixSystem::new(Q, 1, 1)
            .with_constraint(vec![LinearTerm::plus(zq.clone(), zq.clone())], zq)
            .unwrap()
            .solve()
            .unwrap();
        assert!(matches!(q_set.enumerate(10), Err(OracleError::NotEnumerable(_))));
        let z = Matrix::zeros(GF2, 2, 2);
        let full = LinearMatrixSystem::new(GF2, 2, 2)
            .with_constraint(vec![LinearTerm::plus(z.clone(), z.clone())], z)
            .unwrap()
            .solve()
            .unwrap();
        assert_eq!(full.enumerate(16).unwrap().count(), 16);
        assert!(matches!(full.enumerate(15), Err(OracleError::CapExceeded { .. })));
    }

    #[test]
    fn inconsistent_system() {
        let z = Matrix::zeros(Q, 2, 2);
        let i = Matrix::identity(Q, 2);
        let s = LinearMatrixSystem::new(Q, 2, 2)
            .with_constraint(vec![LinearTerm::plus(z.clone(), z)], i)
            .unwrap()
            .solve()
            .unwrap();
        assert!(!s.is_consistent());
        assert_eq!(s.cardinality().as_deref(), Some("0"));
    }

    #[test]
    fn scaled_constraint_gives_equal_set() {
        let i = Matrix::identity(Q, 2);
        let z = Matrix::zeros(Q, 2, 2);
        let s1 = LinearMatrixSystem::new(Q, 2, 2)
            .with_constraint(vec![LinearTerm::plus(i.clone(), i.clone())], z.clone())
            .unwrap()
            .solve()
            .unwrap();
        let s2 = LinearMatrixSystem::new(Q, 2, 2)
            .with_constraint(vec![LinearTerm::plus(i.scale(&Q.from_i64(2)), i.clone())], z)
            .unwrap()
            .solve()
            .unwrap();
        assert!(s1.sets_equal(&s1).unwrap());
        assert!(s1.sets_equal(&s2).unwrap());
    }

    #[test]
    fn assembly_rejects_bad_shapes() {
        let a = Matrix::zeros(Q, 2, 3);
        let err = LinearMatrixSystem::new(Q, 2, 2).with_constraint(
            vec![LinearTerm::plus(a.clone(), Matrix::identity(Q, 2))],
            Matrix::zeros(Q, 2, 2),
        );
        assert!(matches!(err, Err(OracleError::DimensionMismatch(_))));
        assert_eq!(
            LinearMatrixSystem::new(Q, 2, 2).solve(),
            Err(OracleError::NoConstraints)
        );
    }
}
