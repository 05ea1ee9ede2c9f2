use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{rational_to_f64, Rational};
use crate::error::{Error, Result};

/// Exact number `rational + radical * sqrt(radicand)`.
///
/// The radicand is a squarefree integer `>= 2`, or `0` for pure rationals.
/// A zero radical part always forces the radicand to `0`, so structural
/// equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    rational: Rational,
    radical: Rational,
    radicand: BigInt,
}

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Splits `n > 0` into `(s, d)` with `n = s^2 * d` and `d` squarefree.
///
/// Trial division runs up to a fixed limit; any larger cofactor is kept in
/// `d` unless it is itself a perfect square.
fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut outside = BigInt::one();
    let mut inside = BigInt::one();
    let mut p: u64 = 2;
    while p <= TRIAL_DIVISION_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut count = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            count += 1;
        }
        if count > 0 {
            outside *= bp.pow(count / 2);
            if count % 2 == 1 {
                inside *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        let root = rest.sqrt();
        if &root * &root == rest {
            outside *= root;
        } else {
            inside *= rest;
        }
    }
    (outside, inside)
}

impl QuadExt {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(value: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(value)))
    }

    pub fn from_rational(value: Rational) -> Self {
        QuadExt {
            rational: value,
            radical: Rational::zero(),
            radicand: BigInt::zero(),
        }
    }

    /// Builds `a + b*sqrt(d)`, pulling square factors out of `d`.
    pub fn new(rational: Rational, radical: Rational, radicand: BigInt) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::NegativeRadicand(radicand.to_string()));
        }
        if radical.is_zero() || radicand.is_zero() {
            return Ok(Self::from_rational(rational));
        }
        let (outside, inside) = squarefree_split(&radicand);
        let radical = radical * Rational::from_integer(outside);
        if inside.is_one() {
            return Ok(Self::from_rational(rational + radical));
        }
        Ok(QuadExt {
            rational,
            radical,
            radicand: inside,
        })
    }

    /// `sqrt(d)` for a non-negative integer `d`.
    pub fn sqrt_int(d: i64) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), BigInt::from(d))
    }

    /// Exact square root of a non-negative rational, `sqrt(p/q) = sqrt(p*q)/q`.
    pub fn sqrt_rational(value: &Rational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::NegativeRadicand(value.to_string()));
        }
        let q = value.denom().clone();
        let pq = value.numer() * &q;
        Self::new(Rational::zero(), Rational::new(BigInt::one(), q), pq)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn radical_part(&self) -> &Rational {
        &self.radical
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.radical.is_zero() && self.rational.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rational)
    }

    /// Radicand shared by `self` and `other`, or `0` if both are rational.
    pub fn common_radicand(&self, other: &QuadExt) -> Result<BigInt> {
        match (self.radicand.is_zero(), other.radicand.is_zero()) {
            (true, _) => Ok(other.radicand.clone()),
            (_, true) => Ok(self.radicand.clone()),
            _ if self.radicand == other.radicand => Ok(self.radicand.clone()),
            _ => Err(Error::RadicandMismatch(
                self.radicand.to_string(),
                other.radicand.to_string(),
            )),
        }
    }

    fn assemble(rational: Rational, radical: Rational, radicand: BigInt) -> Self {
        if radical.is_zero() {
            Self::from_rational(rational)
        } else {
            QuadExt {
                rational,
                radical,
                radicand,
            }
        }
    }

    fn d(&self) -> Rational {
        Rational::from_integer(self.radicand.clone())
    }

    pub fn try_add(&self, other: &QuadExt) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::assemble(
            &self.rational + &other.rational,
            &self.radical + &other.radical,
            d,
        ))
    }

    pub fn try_sub(&self, other: &QuadExt) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::assemble(
            &self.rational - &other.rational,
            &self.radical - &other.radical,
            d,
        ))
    }

    pub fn try_mul(&self, other: &QuadExt) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let dr = Rational::from_integer(d.clone());
        let rational = &self.rational * &other.rational + &self.radical * &other.radical * dr;
        let radical = &self.rational * &other.radical + &self.radical * &other.rational;
        Ok(Self::assemble(rational, radical, d))
    }

    /// Division, rationalizing the denominator with its conjugate.
    pub fn try_div(&self, other: &QuadExt) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.common_radicand(other)?;
        let norm = other.norm();
        let top = self.try_mul(&other.conjugate())?;
        Ok(Self::assemble(
            top.rational / &norm,
            top.radical / &norm,
            top.radicand,
        ))
    }

    pub fn try_inv(&self) -> Result<Self> {
        Self::one().try_div(self)
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        Self::assemble(
            self.rational.clone(),
            -self.radical.clone(),
            self.radicand.clone(),
        )
    }

    /// Field norm `x * conj(x) = a^2 - b^2 d`.
    pub fn norm(&self) -> Rational {
        &self.rational * &self.rational - &self.radical * &self.radical * self.d()
    }

    pub fn pow(&self, exp: u64) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::assemble(
            &self.rational * factor,
            &self.radical * factor,
            self.radicand.clone(),
        )
    }

    /// Exact sign, decided by comparing `a^2` with `b^2 d` when the parts disagree.
    pub fn signum(&self) -> i8 {
        let sa = rational_sign(&self.rational);
        let sb = rational_sign(&self.radical);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.rational * &self.rational;
        let b2d = &self.radical * &self.radical * self.d();
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact ordering; `None` when the radicands differ.
    pub fn cmp_exact(&self, other: &QuadExt) -> Option<Ordering> {
        let diff = self.try_sub(other).ok()?;
        Some(diff.signum().cmp(&0))
    }

    /// Double-precision value with relative error below `2^-50`.
    ///
    /// When the two parts have opposite signs the value is computed as
    /// `(a^2 - b^2 d) / (a - b sqrt(d))`, whose denominator has no cancellation.
    pub fn to_f64(&self) -> f64 {
        if self.radical.is_zero() {
            return rational_to_f64(&self.rational);
        }
        let root = self.radicand.to_f64().unwrap_or(f64::NAN).sqrt();
        let a = rational_to_f64(&self.rational);
        let b = rational_to_f64(&self.radical);
        let sa = rational_sign(&self.rational);
        let sb = rational_sign(&self.radical);
        if sa == 0 || sa == sb {
            a + b * root
        } else {
            rational_to_f64(&self.norm()) / (a - b * root)
        }
    }

    /// Renders as a factor: bare when atomic, parenthesized otherwise.
    pub fn to_factor_string(&self) -> String {
        let text = self.to_string();
        let atomic = match self.as_rational() {
            Some(r) => r.is_integer() && !r.is_negative(),
            None => self.rational.is_zero() && self.radical.is_one(),
        };
        if atomic {
            text
        } else {
            format!("({text})")
        }
    }
}

fn rational_sign(value: &Rational) -> i8 {
    if value.is_zero() {
        0
    } else if value.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other)
    }
}

impl From<Rational> for QuadExt {
    fn from(value: Rational) -> Self {
        QuadExt::from_rational(value)
    }
}

impl From<i64> for QuadExt {
    fn from(value: i64) -> Self {
        QuadExt::from_int(value)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radical.is_zero() {
            return write!(f, "{}", self.rational);
        }
        let negative = self.radical.is_negative();
        let magnitude = self.radical.abs();
        let radical = if magnitude.is_one() {
            format!("sqrt({})", self.radicand)
        } else {
            format!("{}*sqrt({})", magnitude, self.radicand)
        };
        if self.rational.is_zero() {
            if negative {
                write!(f, "-{radical}")
            } else {
                write!(f, "{radical}")
            }
        } else {
            let op = if negative { '-' } else { '+' };
            write!(f, "{} {} {}", self.rational, op, radical)
        }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::assemble(
            -self.rational.clone(),
            -self.radical.clone(),
            self.radicand.clone(),
        )
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

// Operator forms panic on incompatible radicands; use the `try_*` methods
// where the radicands are not known to agree.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                match self.$checked(rhs) {
                    Ok(value) => value,
                    Err(err) => panic!("{err}"),
                }
            }
        }
        impl $trait<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl std::iter::Sum for QuadExt {
    fn sum<I: Iterator<Item = QuadExt>>(iter: I) -> QuadExt {
        iter.fold(QuadExt::zero(), |acc, x| acc + x)
    }
}
