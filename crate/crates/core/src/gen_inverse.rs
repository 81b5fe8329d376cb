//! {1}-inverses (solutions of `A·G·A = A`) and the matrix index.

use crate::matrix::{Matrix, MatrixError};
use crate::oracle::{AffineSolutionSet, LinearMatrixSystem, LinearTerm, OracleError};

/// How a {1}-inverse was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    RankNormalForm,
    OracleDerived,
    UserSupplied,
}

impl Construction {
    pub fn as_str(self) -> &'static str {
        match self {
            Construction::RankNormalForm => "rank-normal-form",
            Construction::OracleDerived => "oracle-derived",
            Construction::UserSupplied => "user-supplied",
        }
    }
}

/// A matrix `g` together with the fact that `a·g·a = a` was checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneInverseCertificate {
    pub g: Matrix,
    pub input_rank: usize,
    pub construction: Construction,
}

impl OneInverseCertificate {
    /// Certifies a caller-provided `g`, returning `None` if `a·g·a ≠ a` or the shape is wrong.
    pub fn verify(a: &Matrix, g: Matrix, construction: Construction) -> Option<OneInverseCertificate> {
        let ok = g.field() == a.field()
            && g.shape() == (a.cols(), a.rows())
            && &(a * &g) * a == *a;
        ok.then(|| OneInverseCertificate {
            g,
            input_rank: a.rank(),
            construction,
        })
    }
}

/// Deterministic {1}-inverse from the rank normal form.
///
/// With `T·a = R` (RREF, pivots `c_0 < … < c_{r-1}`), take `S` (`cols × rows`)
/// with `S[c_i][i] = 1` and zeros elsewhere, and return `g = S·T`. Since `a`
/// equals its pivot columns times the nonzero rows of `R`, `a·S·R = a` and
/// so `a·g·a = a`. This is `Q·[[I_r,0],[0,0]]·P` for the normal form
/// `P·a·Q = [[I_r,0],[0,0]]` with `P = T`.
pub fn one_inverse(a: &Matrix) -> OneInverseCertificate {
    let field = a.field();
    let reduced = a.rref();
    let mut s = Matrix::zeros(field, a.cols(), a.rows());
    for (i, &c) in reduced.pivot_cols.iter().enumerate() {
        s.set(c, i, field.one());
    }
    let g = &s * &reduced.transform;
    assert!(&(a * &g) * a == *a, "rank normal form produced an invalid {{1}}-inverse");
    OneInverseCertificate {
        g,
        input_rank: reduced.rank,
        construction: Construction::RankNormalForm,
    }
}

/// The linear system `a·X·a = a` in the unknown `X` (`cols × rows`).
pub fn one_inverse_system(a: &Matrix) -> LinearMatrixSystem {
    LinearMatrixSystem::new(a.field(), a.cols(), a.rows())
        .with_constraint(vec![LinearTerm::plus(a.clone(), a.clone())], a.clone())
        .expect("a·X·a = a is well formed for any a")
}

/// The full set `a{1}`, solved by the linear oracle.
pub fn all_one_inverses(a: &Matrix) -> Result<AffineSolutionSet, OracleError> {
    one_inverse_system(a).solve()
}

/// Smallest `k ≥ 0` with `rank(a^k) = rank(a^{k+1})`.
pub fn index(a: &Matrix) -> Result<usize, MatrixError> {
    Ok(rank_sequence(a)?.len() - 2)
}

/// `rank(a^0), rank(a^1), …` up to and including the first repeated value.
pub fn rank_sequence(a: &Matrix) -> Result<Vec<usize>, MatrixError> {
    if !a.is_square() {
        return Err(MatrixError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let mut ranks = vec![a.rows()];
    let mut power = Matrix::identity(a.field(), a.rows());
    loop {
        power = &power * a;
        let r = power.rank();
        let prev = *ranks.last().expect("non-empty");
        ranks.push(r);
        if r == prev {
            return Ok(ranks);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;
    const GF2: FieldSpec = FieldSpec::Prime(2);

    #[test]
    fn one_inverse_examples() {
        let i3 = Matrix::identity(Q, 3);
        assert_eq!(one_inverse(&i3).g, i3);
        let z = Matrix::zeros(Q, 2, 3);
        let cert = one_inverse(&z);
        assert_eq!(cert.g, Matrix::zeros(Q, 3, 2));
        assert_eq!(cert.input_rank, 0);
        let d = Matrix::diag(Q, &[1, 0]);
        assert_eq!(one_inverse(&d).g, d);
    }

    #[test]
    fn one_inverse_of_invertible_is_inverse() {
        let a = Matrix::from_i64(Q, &[&[2, 1], &[1, 1]]);
        let g = one_inverse(&a).g;
        assert!((&a * &g).is_identity());
    }

    #[test]
    fn one_inverse_rectangular() {
        let a = Matrix::from_i64(Q, &[&[1, 2, 3], &[2, 4, 6]]);
        let cert = one_inverse(&a);
        assert_eq!(cert.g.shape(), (3, 2));
        assert_eq!(&(&a * &cert.g) * &a, a);
        assert_eq!(cert.input_rank, 1);
    }

    #[test]
    fn all_one_inverses_examples() {
        let i2 = Matrix::identity(GF2, 2);
        let s = all_one_inverses(&i2).unwrap();
        assert_eq!(s.dimension(), 0);
        assert_eq!(s.particular(), Some(&i2));
        let z = all_one_inverses(&Matrix::zeros(GF2, 2, 2)).unwrap();
        assert_eq!(z.enumerate(100).unwrap().count(), 16);
        let d = Matrix::diag(GF2, &[1, 0]);
        let all: Vec<Matrix> = all_one_inverses(&d).unwrap().enumerate(100).unwrap().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|g| g.get(0, 0).is_one()));
    }

    #[test]
    fn verify_rejects_non_inverses() {
        let d = Matrix::diag(Q, &[1, 0]);
        assert!(OneInverseCertificate::verify(&d, Matrix::zeros(Q, 2, 2), Construction::UserSupplied).is_none());
        assert!(OneInverseCertificate::verify(&d, Matrix::zeros(Q, 2, 3), Construction::UserSupplied).is_none());
        let ok = OneInverseCertificate::verify(&d, Matrix::diag(Q, &[1, 7]), Construction::UserSupplied).unwrap();
        assert_eq!(ok.construction, Construction::UserSupplied);
    }

    #[test]
    fn index_examples() {
        assert_eq!(index(&Matrix::from_i64(Q, &[&[2, 1], &[1, 1]])).unwrap(), 0);
        assert_eq!(rank_sequence(&Matrix::diag(Q, &[1, 0])).unwrap(), vec![2, 1, 1]);
        assert_eq!(index(&Matrix::diag(Q, &[1, 0])).unwrap(), 1);
        let n = Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]);
        assert_eq!(rank_sequence(&n).unwrap(), vec![2, 1, 0, 0]);
        assert_eq!(index(&n).unwrap(), 2);
        assert_eq!(index(&Matrix::zeros(Q, 3, 3)).unwrap(), 1);
        assert!(index(&Matrix::zeros(Q, 2, 3)).is_err());
    }
}
