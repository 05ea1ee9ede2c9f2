//! Initial value problems for linear constant-coefficient recurrences.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{QuadExt, Rational};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Inhomogeneous term shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ForcingKind {
    /// `n^p`; `p = 0` is a constant.
    Power(u32),
    /// `b^n` with rational `b > 0`.
    Geometric(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ForcingTerm {
    pub coefficient: Rational,
    pub kind: ForcingKind,
}

impl ForcingTerm {
    pub fn power(coefficient: Rational, p: u32) -> Self {
        ForcingTerm {
            coefficient,
            kind: ForcingKind::Power(p),
        }
    }

    pub fn geometric(coefficient: Rational, base: Rational) -> Self {
        ForcingTerm {
            coefficient,
            kind: ForcingKind::Geometric(base),
        }
    }

    pub fn at(&self, n: u64) -> Rational {
        let value = match &self.kind {
            ForcingKind::Power(p) => Rational::from_integer(BigInt::from(n).pow(*p)),
            ForcingKind::Geometric(b) => pow_rational(b, n),
        };
        &self.coefficient * value
    }
}

fn pow_rational(base: &Rational, exp: u64) -> Rational {
    let exp = i32::try_from(exp).expect("exponent fits in i32");
    base.pow(exp)
}

/// `a_{n+k} = sum_{j<k} c_j a_{n+j} + forcing(n)` for `n >= 1`, with `a_1..a_k` given.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RecurrenceSpec {
    coefficients: Vec<Rational>,
    forcing: Vec<ForcingTerm>,
    initials: Vec<Rational>,
}

impl RecurrenceSpec {
    pub fn new(
        coefficients: Vec<Rational>,
        forcing: Vec<ForcingTerm>,
        initials: Vec<Rational>,
    ) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidSpec("order must be at least 1".into()));
        }
        if initials.len() != coefficients.len() {
            return Err(Error::InvalidSpec(format!(
                "order {} recurrence needs {} initial values, got {}",
                coefficients.len(),
                coefficients.len(),
                initials.len()
            )));
        }
        for term in &forcing {
            if let ForcingKind::Geometric(b) = &term.kind {
                if !b.is_positive() {
                    return Err(Error::InvalidSpec(format!(
                        "geometric forcing base {b} must be positive"
                    )));
                }
            }
        }
        let forcing = forcing
            .into_iter()
            .filter(|t| !t.coefficient.is_zero())
            .collect();
        Ok(RecurrenceSpec {
            coefficients,
            forcing,
            initials,
        })
    }

    pub fn homogeneous(coefficients: Vec<Rational>, initials: Vec<Rational>) -> Result<Self> {
        Self::new(coefficients, Vec::new(), initials)
    }

    /// `a_{n+2} = a_{n+1} + a_n` with the given `a_1, a_2`.
    pub fn fibonacci_like(a1: Rational, a2: Rational) -> Self {
        Self::homogeneous(vec![Rational::one(), Rational::one()], vec![a1, a2])
            .expect("well-formed order 2 spec")
    }

    pub fn fibonacci() -> Self {
        Self::fibonacci_like(Rational::one(), Rational::one())
    }

    /// `a_{n+1} = lambda a_n + beta`.
    pub fn affine(lambda: Rational, beta: Rational, a1: Rational) -> Self {
        Self::new(vec![lambda], vec![ForcingTerm::power(beta, 0)], vec![a1])
            .expect("well-formed order 1 spec")
    }

    /// `Delta^k f(n) = forcing(n)` with `f(1), Delta f(1), ..., Delta^{k-1} f(1)`.
    ///
    /// Expands `Delta^k f(n) = sum_i (-1)^(k-i) C(k,i) f(n+i)` and converts the
    /// initial differences with `f(j+1) = sum_i C(j,i) Delta^i f(1)`.
    pub fn from_difference_form(
        forcing: Vec<ForcingTerm>,
        initial_differences: Vec<Rational>,
    ) -> Result<Self> {
        let k = initial_differences.len();
        if k == 0 {
            return Err(Error::InvalidSpec("order must be at least 1".into()));
        }
        let coefficients = (0..k)
            .map(|i| {
                let c = Rational::from_integer(binomial(k as u64, i as u64));
                if (k - i) % 2 == 1 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        let initials = (0..k)
            .map(|j| {
                (0..=j)
                    .map(|i| {
                        Rational::from_integer(binomial(j as u64, i as u64))
                            * &initial_differences[i]
                    })
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect();
        Self::new(coefficients, forcing, initials)
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn forcing(&self) -> &[ForcingTerm] {
        &self.forcing
    }

    pub fn initials(&self) -> &[Rational] {
        &self.initials
    }

    pub fn is_homogeneous(&self) -> bool {
        self.forcing.is_empty()
    }

    /// `a_{n+2} = a_{n+1} + a_n` with no forcing.
    pub fn is_fibonacci_form(&self) -> bool {
        self.is_homogeneous()
            && self.coefficients.len() == 2
            && self.coefficients.iter().all(One::is_one)
    }

    pub fn with_initials(&self, initials: Vec<Rational>) -> Result<Self> {
        Self::new(self.coefficients.clone(), self.forcing.clone(), initials)
    }

    pub fn forcing_at(&self, n: u64) -> Rational {
        self.forcing
            .iter()
            .map(|t| t.at(n))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// `t^k - sum_j c_j t^j`.
    pub fn characteristic_poly(&self) -> Poly {
        let k = self.order();
        let mut coeffs: Vec<QuadExt> = self
            .coefficients
            .iter()
            .map(|c| QuadExt::from_rational(-c.clone()))
            .collect();
        coeffs.push(QuadExt::one());
        debug_assert_eq!(coeffs.len(), k + 1);
        Poly::from_coeffs(coeffs)
    }

    /// The first `count` terms by direct iteration.
    pub fn iterate(&self, count: usize) -> Vec<Rational> {
        let k = self.order();
        let mut values: Vec<Rational> = self.initials.iter().take(count).cloned().collect();
        while values.len() < count {
            let n = values.len() + 1 - k;
            let next = self
                .coefficients
                .iter()
                .enumerate()
                .map(|(j, c)| c * &values[n - 1 + j])
                .fold(self.forcing_at(n as u64), |a, b| a + b);
            values.push(next);
        }
        values
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl fmt::Display for RecurrenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.order();
        write!(f, "a[n+{k}] =")?;
        let mut first = true;
        let mut piece = |f: &mut fmt::Formatter<'_>, c: &Rational, body: String| -> fmt::Result {
            let neg = c.is_negative();
            let mag = c.abs();
            let text = match (mag.is_one(), body.is_empty()) {
                (_, true) => mag.to_string(),
                (true, false) => body,
                (false, false) => format!("{mag}*{body}"),
            };
            match (first, neg) {
                (true, false) => write!(f, " {text}")?,
                (true, true) => write!(f, " -{text}")?,
                (false, false) => write!(f, " + {text}")?,
                (false, true) => write!(f, " - {text}")?,
            }
            first = false;
            Ok(())
        };
        for (j, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let body = if j == 0 {
                "a[n]".to_string()
            } else {
                format!("a[n+{j}]")
            };
            piece(f, c, body)?;
        }
        for term in &self.forcing {
            let body = match &term.kind {
                ForcingKind::Power(0) => String::new(),
                ForcingKind::Power(1) => "n".to_string(),
                ForcingKind::Power(p) => format!("n^{p}"),
                ForcingKind::Geometric(b) if b.is_integer() => format!("{b}^n"),
                ForcingKind::Geometric(b) => format!("({b})^n"),
            };
            piece(f, &term.coefficient, body)?;
        }
        if first {
            write!(f, " 0")?;
        }
        for (i, a) in self.initials.iter().enumerate() {
            write!(f, "; a[{}] = {a}", i + 1)?;
        }
        Ok(())
    }
}
