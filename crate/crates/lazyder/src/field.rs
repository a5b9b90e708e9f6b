//! Coefficient arithmetic, abstracted so towers and series work over exact
//! rationals, IEEE doubles, or (for the nested double-series computation)
//! series themselves.
//!
//! The split matters: `Ring` is everything a nested `Series<Series<Rat>>`
//! coefficient can honestly provide, `Field` adds exact division with a
//! zero test, and `Transcendental` is only implemented by `f64` — the
//! elementary functions dislike rationals, except for the restricted
//! exp0/log1/sqrt1 variants which live in the series module.

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficients: arbitrary precision, always in lowest terms,
/// positive denominator (all maintained by `BigRational` itself).
pub type Rat = BigRational;

/// Commutative-ring operations plus the two hooks the series algebra needs:
/// embedding of integers (for Pascal rows) and division by a positive
/// integer (for formal integration).
pub trait Ring: Clone + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_int(n: i64) -> Self;
    fn from_nat(n: &BigUint) -> Self;
    /// Divide by a positive integer. Total: `n >= 1` by contract.
    fn div_nat(&self, n: u64) -> Self;
}

pub trait Field: Ring {
    /// Exact fields report [`Error::SingularDivision`] on a zero divisor;
    /// `f64` instead propagates infinities and NaNs as values.
    fn div(&self, other: &Self) -> Result<Self>;
    fn recip(&self) -> Result<Self> {
        Self::one().div(self)
    }
    fn is_zero(&self) -> bool;
}

/// Only `f64` implements this.
pub trait Transcendental: Field {
    fn exp(&self) -> Self;
    fn log(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn tan(&self) -> Self;
    fn atan(&self) -> Self;
    fn asin(&self) -> Self;
    fn acos(&self) -> Self;
}

impl Ring for Rat {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_nat(n: &BigUint) -> Self {
        BigRational::from_integer(BigInt::from(n.clone()))
    }
    fn div_nat(&self, n: u64) -> Self {
        self / BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for Rat {
    fn div(&self, other: &Self) -> Result<Self> {
        if Zero::is_zero(other) {
            return Err(Error::SingularDivision);
        }
        Ok(self / other)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn from_nat(n: &BigUint) -> Self {
        n.to_f64().unwrap_or(f64::INFINITY)
    }
    fn div_nat(&self, n: u64) -> Self {
        self / n as f64
    }
}

impl Field for f64 {
    fn div(&self, other: &Self) -> Result<Self> {
        // NaN/inf are values here, not errors.
        Ok(self / other)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Transcendental for f64 {
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn log(&self) -> Self {
        f64::ln(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn tan(&self) -> Self {
        f64::tan(*self)
    }
    fn atan(&self) -> Self {
        f64::atan(*self)
    }
    fn asin(&self) -> Self {
        f64::asin(*self)
    }
    fn acos(&self) -> Self {
        f64::acos(*self)
    }
}

/// Build a rational from a numerator/denominator pair, normalizing the sign.
pub fn rational(p: i64, q: i64) -> Result<Rat> {
    if q == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(BigInt::from(p), BigInt::from(q)))
}

/// "p/q", or just "p" when the denominator is one.
pub fn render_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Shortest round-trip decimal; NaN and infinities spelled out in lowercase.
pub fn render_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x == f64::INFINITY {
        "inf".to_string()
    } else if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{x}")
    }
}

/// Parse "p/q" or "p" into a rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Syntax {
        offset: 0,
        expected: vec!["rational p/q".to_string()],
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

pub fn rat_of(p: i64, q: i64) -> Rat {
    rational(p, q).expect("nonzero denominator")
}

/// Relative-tolerance comparison used throughout the f64 tests.
pub fn close(a: f64, b: f64, rel: f64) -> bool {
    if a == b {
        return true;
    }
    let scale = a.abs().max(b.abs()).max(1.0);
    (a - b).abs() <= rel * scale
}

pub fn sign_of(r: &Rat) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_normalizes() {
        assert_eq!(rational(6, 4).unwrap(), rat_of(3, 2));
        let r = rational(3, -4).unwrap();
        assert_eq!(render_rat(&r), "-3/4");
        assert!(r.denom().is_positive());
        assert_eq!(rational(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn rendering() {
        assert_eq!(render_rat(&rat_of(3, 1)), "3");
        assert_eq!(render_rat(&rat_of(-1, 3)), "-1/3");
        assert_eq!(render_f64(0.1), "0.1");
        assert_eq!(render_f64(f64::NAN), "nan");
        assert_eq!(render_f64(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(parse_rat("3/4").unwrap(), rat_of(3, 4));
        assert_eq!(parse_rat("-7").unwrap(), rat_of(-7, 1));
        assert_eq!(parse_rat("1/0"), Err(Error::ZeroDenominator));
    }

    #[test]
    fn exact_division() {
        assert_eq!(rat_of(1, 1).div(&rat_of(0, 1)), Err(Error::SingularDivision));
        assert_eq!(Field::recip(&rat_of(3, 4)).unwrap(), rat_of(4, 3));
        assert!(1.0f64.div(&0.0).unwrap().is_infinite());
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-50i64..50, 1i64..30).prop_map(|(p, q)| rat_of(p, q))
    }

    proptest! {
        #[test]
        fn rational_ring_laws((a, b, c) in (arb_rat(), arb_rat(), arb_rat())) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&<Rat as Ring>::one()), a.clone());
            prop_assert_eq!(a.add(&<Rat as Ring>::zero()), a.clone());
            prop_assert_eq!(a.add(&Ring::neg(&a)), <Rat as Ring>::zero());
        }

        #[test]
        fn rational_field_law(a in arb_rat()) {
            if !Field::is_zero(&a) {
                prop_assert_eq!(a.mul(&Field::recip(&a).unwrap()), <Rat as Ring>::one());
            }
        }

        #[test]
        fn f64_exact_identities(a in -1e6f64..1e6) {
            prop_assert_eq!(Ring::add(&a, &0.0), a);
            prop_assert_eq!(Ring::mul(&a, &1.0), a);
        }
    }
}
