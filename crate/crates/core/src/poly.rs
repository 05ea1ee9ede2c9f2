//! Dense univariate polynomials over [`QuadExt`] in the transform variable `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{QuadExt, Rational};
use crate::error::{Error, Result};

/// Polynomial with coefficients stored lowest degree first.
///
/// Trailing zeros are always trimmed, so the zero polynomial has an empty
/// coefficient list and `degree() == None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<QuadExt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(QuadExt::one())
    }

    pub fn constant(c: QuadExt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(QuadExt::one(), 1)
    }

    pub fn monomial(c: QuadExt, power: usize) -> Self {
        let mut coeffs = vec![QuadExt::zero(); power + 1];
        coeffs[power] = c;
        Self::from_coeffs(coeffs)
    }

    /// `t - root`.
    pub fn linear(root: &QuadExt) -> Self {
        Self::from_coeffs(vec![-root, QuadExt::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<QuadExt>) -> Self {
        while coeffs.last().is_some_and(QuadExt::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_rationals<I: IntoIterator<Item = Rational>>(coeffs: I) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(QuadExt::from_rational).collect())
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| QuadExt::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> QuadExt {
        self.coeffs
            .get(power)
            .cloned()
            .unwrap_or_else(QuadExt::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&QuadExt> {
        self.coeffs.last()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(QuadExt::is_rational)
    }

    /// The single radicand used by the coefficients (`0` if all rational).
    pub fn radicand(&self) -> Result<BigInt> {
        let mut d = BigInt::zero();
        for c in &self.coeffs {
            let cd = c.radicand();
            if cd.is_zero() || *cd == d {
                continue;
            }
            if !d.is_zero() {
                return Err(Error::RadicandMismatch(d.to_string(), cd.to_string()));
            }
            d = cd.clone();
        }
        Ok(d)
    }

    pub fn eval(&self, at: &QuadExt) -> QuadExt {
        self.coeffs
            .iter()
            .rev()
            .fold(QuadExt::zero(), |acc, c| acc * at + c)
    }

    pub fn try_eval(&self, at: &QuadExt) -> Result<QuadExt> {
        self.coeffs
            .iter()
            .rev()
            .try_fold(QuadExt::zero(), |acc, c| acc.try_mul(at)?.try_add(c))
    }

    pub fn eval_f64(&self, at: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * at + c.to_f64())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rational::from_integer(i.into())))
                .collect(),
        )
    }

    pub fn scale(&self, factor: &QuadExt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![QuadExt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, exp: usize) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Scales so the leading coefficient is one; the zero polynomial is unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) if !lead.is_one() => {
                let inv = QuadExt::one() / lead;
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    pub fn conjugate(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(QuadExt::conjugate).collect())
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].try_inv()?;
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if sd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![QuadExt::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = rem[i + dd].try_mul(&lead_inv)?;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].try_sub(&c.try_mul(dc)?)?;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Exact quotient; fails if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        match self.divmod(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0)` is zero.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero());
        }
        let mut out = vec![QuadExt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].try_add(&a.try_mul(b)?)?;
            }
        }
        Ok(Poly::from_coeffs(out))
    }

    fn zip_with(&self, other: &Poly, f: impl Fn(&QuadExt, &QuadExt) -> QuadExt) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f(&self.coeff(i), &other.coeff(i))).collect())
    }

    /// Renders with the given variable printer (`t` or `e^s` style).
    pub fn render(&self, var: Variable) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.signum() < 0 && c.is_rational();
            let magnitude = if negative { -c } else { c.clone() };
            let body = if power == 0 && magnitude.is_rational() {
                magnitude.to_string()
            } else if power == 0 {
                magnitude.to_factor_string()
            } else if magnitude.is_one() {
                var.power(power)
            } else {
                format!("{}*{}", magnitude.to_factor_string(), var.power(power))
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

/// How the transform variable is displayed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Variable {
    /// The formal variable `t`.
    #[default]
    T,
    /// `e^s`, with powers written `e^(ks)`.
    Exp,
}

impl Variable {
    pub fn power(self, k: usize) -> String {
        match (self, k) {
            (_, 0) => "1".to_string(),
            (Variable::T, 1) => "t".to_string(),
            (Variable::T, k) => format!("t^{k}"),
            (Variable::Exp, 1) => "e^s".to_string(),
            (Variable::Exp, k) => format!("e^({k}s)"),
        }
    }

    pub fn inverse_power(self, k: usize) -> String {
        match (self, k) {
            (Variable::T, k) => format!("t^(-{k})"),
            (Variable::Exp, 1) => "e^(-s)".to_string(),
            (Variable::Exp, k) => format!("e^(-{k}s)"),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Variable::T))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        match self.try_mul(rhs) {
            Ok(p) => p,
            Err(err) => panic!("{err}"),
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
