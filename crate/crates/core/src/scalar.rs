//! Exact ground-field scalars: arbitrary-precision rationals and residues
//! modulo a prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("cannot parse scalar {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("operation {0:?} needs a second operand")]
    MissingOperand(ScalarOp),
}

/// The ground field every computation is carried out over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl FieldSpec {
    /// The prime field of order `p`; fails unless `p` is prime.
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: (v as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, ScalarError> {
        self.from_i64(num).try_div(&self.from_i64(den))
    }

    fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Residue {
                    value: r.to_u64().expect("residue below modulus"),
                    modulus: p,
                }
            }
        }
    }

    /// Parses `"num/den"` or an integer. Residues may be given as any
    /// integer and are reduced.
    pub fn parse(&self, text: &str) -> Result<Scalar, ScalarError> {
        let err = |reason: &str| ScalarError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let t = text.trim();
        if t.is_empty() {
            return Err(err("empty"));
        }
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (t, None),
        };
        let parse_int = |s: &str| -> Result<BigInt, ScalarError> {
            let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("not an integer"));
            }
            if digits.len() > 4096 {
                return Err(err("too many digits"));
            }
            BigInt::from_str(s).map_err(|e| err(&e.to_string()))
        };
        let n = self.from_bigint(&parse_int(num)?);
        match den {
            None => Ok(n),
            Some(d) => {
                let d = self.from_bigint(&parse_int(d)?);
                n.try_div(&d)
            }
        }
    }

    /// Reads a scalar from a JSON string or integer.
    pub fn from_json(&self, v: &Value) -> Result<Scalar, ScalarError> {
        match v {
            Value::String(s) => self.parse(s),
            Value::Number(n) => match (n.as_i64(), n.as_u64()) {
                (Some(i), _) => Ok(self.from_i64(i)),
                (None, Some(u)) => Ok(self.from_bigint(&BigInt::from(u))),
                _ => Err(ScalarError::Parse {
                    text: n.to_string(),
                    reason: "not an integer".into(),
                }),
            },
            other => Err(ScalarError::Parse {
                text: other.to_string(),
                reason: "expected a string or integer".into(),
            }),
        }
    }

    /// All field elements in increasing residue order; `None` for the rationals.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        match *self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some((0..p).map(move |value| Scalar::Residue { value, modulus: p })),
        }
    }
}

/// An exact element of a [`FieldSpec`] field, always in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithOutcome {
    Value(Scalar),
    Bool(bool),
}

/// Dispatches one field operation; binary operations require `y`.
pub fn scalar_arith(op: ScalarOp, x: &Scalar, y: Option<&Scalar>) -> Result<ArithOutcome, ScalarError> {
    let second = || y.ok_or(ScalarError::MissingOperand(op));
    Ok(match op {
        ScalarOp::Add => ArithOutcome::Value(x.try_add(second()?)?),
        ScalarOp::Sub => ArithOutcome::Value(x.try_sub(second()?)?),
        ScalarOp::Mul => ArithOutcome::Value(x.try_mul(second()?)?),
        ScalarOp::Div => ArithOutcome::Value(x.try_div(second()?)?),
        ScalarOp::Neg => ArithOutcome::Value(-x),
        ScalarOp::Inv => ArithOutcome::Value(x.inv()?),
        ScalarOp::Eq => {
            let y = second()?;
            x.check_field(y)?;
            ArithOutcome::Bool(x == y)
        }
    })
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Only rationals have a sign; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }

    fn check_field(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => Scalar::Residue {
                value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Canonical JSON form: rationals as `"num/den"` strings, residues as integers.
    pub fn to_json(&self) -> Value {
        match self {
            Scalar::Rational(_) => Value::String(self.to_string()),
            Scalar::Residue { value, .. } => Value::from(*value),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

// Operator forms panic on a field mismatch; every caller inside the crate
// works over a single validated field.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar field mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar field mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn rational_addition() {
        let x = Q.from_ratio(1, 2).unwrap();
        let y = Q.from_ratio(1, 3).unwrap();
        let sum = scalar_arith(ScalarOp::Add, &x, Some(&y)).unwrap();
        assert_eq!(sum, ArithOutcome::Value(Q.from_ratio(5, 6).unwrap()));
    }

    #[test]
    fn inverse_in_f3() {
        let f3 = FieldSpec::prime(3).unwrap();
        let two = f3.from_i64(2);
        assert_eq!(two.inv().unwrap(), two);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let x = Q.from_ratio(3, 4).unwrap();
        let r = scalar_arith(ScalarOp::Div, &x, Some(&Q.zero()));
        assert_eq!(r, Err(ScalarError::DivisionByZero));
        assert_eq!(Q.zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(Q.one().try_add(&f5.one()), Err(ScalarError::FieldMismatch(..))));
        assert!(matches!(
            scalar_arith(ScalarOp::Eq, &Q.one(), Some(&f5.one())),
            Err(ScalarError::FieldMismatch(..))
        ));
    }

    #[test]
    fn non_primes_rejected() {
        for n in [0, 1, 4, 9, 561, 1_000_000] {
            assert_eq!(FieldSpec::prime(n), Err(ScalarError::NotPrime(n)));
        }
        for p in [2, 3, 5, 7919, 1_000_000_007, 18_446_744_073_709_551_557] {
            assert!(FieldSpec::prime(p).is_ok(), "{p}");
        }
    }

    #[test]
    fn canonical_serialization() {
        assert_eq!(Q.parse("6/-4").unwrap().to_string(), "-3/2");
        assert_eq!(Q.parse("+3").unwrap().to_string(), "3");
        assert_eq!(Q.parse("-1/2").unwrap().to_json(), Value::String("-1/2".into()));
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.parse("-1").unwrap().to_json(), Value::from(6));
        assert_eq!(f7.parse("1/3").unwrap().to_string(), "5");
        assert!(Q.parse("1/0").is_err());
        assert!(Q.parse("1.5").is_err());
        assert!(Q.parse("").is_err());
        assert!(Q.parse("--1").is_err());
    }

    fn small_rational() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| Q.from_ratio(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn rational_inverse_law(x in small_rational()) {
            prop_assume!(!x.is_zero());
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }

        #[test]
        fn residue_inverse_law(v in 1u64..10_007) {
            let f = FieldSpec::prime(10_007).unwrap();
            let x = f.from_i64(v as i64);
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }

        #[test]
        fn display_parse_roundtrip(x in small_rational()) {
            prop_assert_eq!(Q.parse(&x.to_string()).unwrap(), x);
        }
    }
}
