//! Exact field scalars: arbitrary-precision rationals and prime-field residues.
//!
//! Every scalar carries the field it belongs to, so arithmetic between
//! elements of different fields is detected instead of silently coerced.
//! The checked operations (`try_add`, `try_div`, ...) report mismatches as
//! [`FieldError`]; the operator impls on references panic on mismatch and are
//! meant for code that already validated its inputs (matrix kernels).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest admissible prime modulus.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field {0} is infinite and cannot be enumerated")]
    NotEnumerable(FieldSpec),
    #[error("invalid modulus {0}: must be a prime in [2, 2^31]")]
    InvalidModulus(u64),
    #[error("cannot parse {input:?} as an element of {field}: {reason}")]
    Parse {
        field: FieldSpec,
        input: String,
        reason: String,
    },
}

/// Which exact field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    /// Integers modulo a prime `p`.
    Prime(u32),
}

impl FieldSpec {
    /// `GF(p)`; rejects composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<FieldSpec, FieldError> {
        if !(2..=MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(FieldError::InvalidModulus(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn is_finite(self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    /// Number of elements, `None` for ℚ.
    pub fn order(self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(p as u64),
        }
    }

    pub fn zero(self) -> ExactScalar {
        self.from_i64(0)
    }

    pub fn one(self) -> ExactScalar {
        self.from_i64(1)
    }

    /// Image of an integer in this field (reduced mod p for prime fields).
    pub fn from_i64(self, v: i64) -> ExactScalar {
        match self {
            FieldSpec::Rationals => ExactScalar::Rational(BigRational::from_integer(v.into())),
            FieldSpec::Prime(p) => ExactScalar::Residue {
                value: v.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    /// Image of the fraction `num/den`; for prime fields the denominator is inverted mod p.
    pub fn from_fraction(self, num: i64, den: i64) -> Result<ExactScalar, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        self.from_i64(num).try_div(&self.from_i64(den))
    }

    /// Parses `"a"`, `"-a"` or `"a/b"`. Prime-field entries are reduced mod p.
    pub fn parse_scalar(self, input: &str) -> Result<ExactScalar, FieldError> {
        let err = |reason: &str| FieldError::Parse {
            field: self,
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let text = input.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (text, None),
        };
        let num = BigInt::from_str(num).map_err(|_| err("not an integer numerator"))?;
        let den = match den {
            Some(d) => BigInt::from_str(d).map_err(|_| err("not an integer denominator"))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        match self {
            FieldSpec::Rationals => Ok(ExactScalar::Rational(BigRational::new(num, den))),
            FieldSpec::Prime(p) => {
                let reduce = |v: &BigInt| {
                    v.mod_floor(&BigInt::from(p))
                        .to_u32()
                        .expect("residue below modulus")
                };
                let n = ExactScalar::Residue {
                    value: reduce(&num),
                    modulus: p,
                };
                let d = ExactScalar::Residue {
                    value: reduce(&den),
                    modulus: p,
                };
                n.try_div(&d)
                    .map_err(|_| err("denominator is divisible by the modulus"))
            }
        }
    }

    /// All elements of a prime field, `0` first, in increasing residue order.
    pub fn elements(self) -> Result<impl Iterator<Item = ExactScalar>, FieldError> {
        match self {
            FieldSpec::Rationals => Err(FieldError::NotEnumerable(self)),
            FieldSpec::Prime(p) => Ok((0..p).map(move |value| ExactScalar::Residue { value, modulus: p })),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Accepts `Q`, `GF(p)` and `GFp`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("GF")
            .map(|rest| rest.trim_start_matches('(').trim_end_matches(')'))
            .ok_or_else(|| FieldError::Parse {
                field: FieldSpec::Rationals,
                input: s.to_string(),
                reason: "expected Q, GF(p) or GFp".into(),
            })?;
        let p: u64 = digits.parse().map_err(|_| FieldError::Parse {
            field: FieldSpec::Rationals,
            input: s.to_string(),
            reason: "modulus is not an integer".into(),
        })?;
        FieldSpec::prime(p)
    }
}

/// Lists every element of a finite field, `0` first.
pub fn enumerate_field(spec: FieldSpec) -> Result<Vec<ExactScalar>, FieldError> {
    Ok(spec.elements()?.collect())
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of ℚ or of GF(p).
///
/// Rationals are kept in lowest terms with a positive denominator (the
/// `num-rational` normal form); residues always lie in `[0, modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExactScalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` to two scalars of the same field.
pub fn scalar_arith(a: &ExactScalar, b: &ExactScalar, op: ArithOp) -> Result<ExactScalar, FieldError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

impl ExactScalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            ExactScalar::Rational(_) => FieldSpec::Rationals,
            ExactScalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rational(r) => r.is_zero(),
            ExactScalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            ExactScalar::Rational(r) => r.is_one(),
            ExactScalar::Residue { value, .. } => *value == 1,
        }
    }

    fn check_same(&self, other: &ExactScalar) -> Result<(), FieldError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn try_add(&self, other: &ExactScalar) -> Result<ExactScalar, FieldError> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &ExactScalar) -> Result<ExactScalar, FieldError> {
        self.check_same(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn try_mul(&self, other: &ExactScalar) -> Result<ExactScalar, FieldError> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &ExactScalar) -> Result<ExactScalar, FieldError> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    /// Multiplicative inverse.
    pub fn inverse(&self) -> Result<ExactScalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            ExactScalar::Rational(r) => ExactScalar::Rational(r.recip()),
            ExactScalar::Residue { value, modulus } => ExactScalar::Residue {
                value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
        })
    }

    fn neg_ref(&self) -> ExactScalar {
        match self {
            ExactScalar::Rational(r) => ExactScalar::Rational(-r),
            ExactScalar::Residue { value, modulus } => ExactScalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    fn add_unchecked(&self, other: &ExactScalar) -> ExactScalar {
        match (self, other) {
            (ExactScalar::Rational(a), ExactScalar::Rational(b)) => ExactScalar::Rational(a + b),
            (ExactScalar::Residue { value: a, modulus }, ExactScalar::Residue { value: b, .. }) => {
                ExactScalar::Residue {
                    value: ((*a as u64 + *b as u64) % *modulus as u64) as u32,
                    modulus: *modulus,
                }
            }
            _ => panic!("field mismatch: {} vs {}", self.field(), other.field()),
        }
    }

    fn mul_unchecked(&self, other: &ExactScalar) -> ExactScalar {
        match (self, other) {
            (ExactScalar::Rational(a), ExactScalar::Rational(b)) => ExactScalar::Rational(a * b),
            (ExactScalar::Residue { value: a, modulus }, ExactScalar::Residue { value: b, .. }) => {
                ExactScalar::Residue {
                    value: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                    modulus: *modulus,
                }
            }
            _ => panic!("field mismatch: {} vs {}", self.field(), other.field()),
        }
    }

    /// Numerator and denominator for rationals; `(value, 1)` for residues.
    pub fn to_fraction(&self) -> (BigInt, BigInt) {
        match self {
            ExactScalar::Rational(r) => (r.numer().clone(), r.denom().clone()),
            ExactScalar::Residue { value, .. } => (BigInt::from(*value), BigInt::one()),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, ExactScalar::Rational(r) if r.is_negative())
    }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for ExactScalar {
    /// `a/b` with `b > 0` in lowest terms, or `a` when `b = 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            ExactScalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            ExactScalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &'a ExactScalar) -> ExactScalar {
        self.add_unchecked(rhs)
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &'a ExactScalar) -> ExactScalar {
        self.add_unchecked(&rhs.neg_ref())
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &'a ExactScalar) -> ExactScalar {
        self.mul_unchecked(rhs)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> ExactScalar {
        FieldSpec::Rationals.from_fraction(n, d).unwrap()
    }

    #[test]
    fn fraction_addition() {
        let r = scalar_arith(&q(1, 2), &q(1, 3), ArithOp::Add).unwrap();
        assert_eq!(r, q(5, 6));
        assert_eq!(r.to_string(), "5/6");
    }

    #[test]
    fn gf7_division_matches_multiplication_table() {
        let f = FieldSpec::prime(7).unwrap();
        // find the unique c with 4*c = 2 by scanning the table
        let expected = f
            .elements()
            .unwrap()
            .find(|c| (&f.from_i64(4) * c) == f.from_i64(2))
            .unwrap();
        let got = scalar_arith(&f.from_i64(2), &f.from_i64(4), ArithOp::Div).unwrap();
        assert_eq!(got, expected);
        assert_eq!(got, f.from_i64(4));
    }

    #[test]
    fn zero_absorbs() {
        for f in [FieldSpec::Rationals, FieldSpec::Prime(5)] {
            let x = f.from_i64(3);
            assert!(scalar_arith(&x, &f.zero(), ArithOp::Mul).unwrap().is_zero());
        }
    }

    #[test]
    fn mismatch_and_division_errors() {
        let a = FieldSpec::Rationals.one();
        let b = FieldSpec::Prime(3).one();
        assert!(matches!(a.try_add(&b), Err(FieldError::FieldMismatch(..))));
        assert_eq!(a.try_div(&FieldSpec::Rationals.zero()), Err(FieldError::DivisionByZero));
        assert_eq!(b.try_div(&FieldSpec::Prime(3).zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn enumeration() {
        let gf2: Vec<_> = enumerate_field(FieldSpec::Prime(2)).unwrap();
        assert_eq!(gf2, vec![FieldSpec::Prime(2).zero(), FieldSpec::Prime(2).one()]);
        let gf3: Vec<String> = enumerate_field(FieldSpec::Prime(3))
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(gf3, ["0", "1", "2"]);
        assert_eq!(
            enumerate_field(FieldSpec::Rationals),
            Err(FieldError::NotEnumerable(FieldSpec::Rationals))
        );
    }

    #[test]
    fn modulus_validation() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(2_147_483_647).is_ok());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::prime(MAX_MODULUS).is_err());
    }

    #[test]
    fn parsing() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.parse_scalar("6/-4").unwrap().to_string(), "-3/2");
        assert_eq!(q.parse_scalar("-7").unwrap().to_string(), "-7");
        assert!(matches!(q.parse_scalar("1/0"), Err(FieldError::Parse { .. })));
        assert!(q.parse_scalar("x").is_err());
        let f5 = FieldSpec::Prime(5);
        assert_eq!(f5.parse_scalar("-1").unwrap().to_string(), "4");
        assert_eq!(f5.parse_scalar("1/2").unwrap().to_string(), "3");
        assert!(f5.parse_scalar("1/5").is_err());
        assert_eq!("GF(7)".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert_eq!("GF3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert!("GF(4)".parse::<FieldSpec>().is_err());
    }

    fn scalar_in(field: FieldSpec) -> BoxedStrategy<ExactScalar> {
        match field {
            FieldSpec::Rationals => (-50i64..50, 1i64..20)
                .prop_map(|(n, d)| FieldSpec::Rationals.from_fraction(n, d).unwrap())
                .boxed(),
            FieldSpec::Prime(p) => (0..p as i64).prop_map(move |v| FieldSpec::Prime(p).from_i64(v)).boxed(),
        }
    }

    fn field_axioms(a: ExactScalar, b: ExactScalar, c: ExactScalar) {
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a + &b, &b + &a);
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rational_field_axioms(a in scalar_in(FieldSpec::Rationals), b in scalar_in(FieldSpec::Rationals), c in scalar_in(FieldSpec::Rationals)) {
            field_axioms(a, b, c);
        }

        #[test]
        fn gf7_field_axioms(a in scalar_in(FieldSpec::Prime(7)), b in scalar_in(FieldSpec::Prime(7)), c in scalar_in(FieldSpec::Prime(7))) {
            field_axioms(a, b, c);
        }

        #[test]
        fn gf2_field_axioms(a in scalar_in(FieldSpec::Prime(2)), b in scalar_in(FieldSpec::Prime(2)), c in scalar_in(FieldSpec::Prime(2))) {
            field_axioms(a, b, c);
        }

        #[test]
        fn rationals_stay_reduced(n in -1000i64..1000, d in 1i64..1000, m in -1000i64..1000, e in 1i64..1000) {
            let x = &q(n, d) * &q(m, e);
            let (num, den) = (&x + &q(1, 7)).to_fraction();
            prop_assert!(den > BigInt::zero());
            prop_assert!(num.abs().gcd(&den).is_one());
        }
    }
}
