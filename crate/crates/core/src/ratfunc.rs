//! Normalized rational functions in `t = e^s`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::QuadExt;
use crate::error::{Error, Result};
use crate::factor::factor_roots;
use crate::poly::{Poly, Variable};

/// `num / den` with `den` monic and `gcd(num, den) = 1`. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Cancels common factors and makes the denominator monic.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        let lead = den.leading().cloned().ok_or(Error::DivisionByZero)?;
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den)?;
        let (num, _) = num.divmod(&g)?;
        let (den, _) = den.divmod(&g)?;
        let lead_inv = match den.leading() {
            Some(l) => l.try_inv()?,
            None => lead.try_inv()?,
        };
        Ok(RatFunc {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: QuadExt) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// `1 / (t - root)^power`.
    pub fn pole(root: &QuadExt, power: usize) -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::linear(root).pow(power),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_strictly_proper(&self) -> bool {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => true,
            (Some(n), Some(d)) => n < d,
            (Some(_), None) => false,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.num.is_rational() && self.den.is_rational()
    }

    /// Splits into polynomial part and strictly proper remainder.
    pub fn split_proper(&self) -> (Poly, RatFunc) {
        let (q, r) = self
            .num
            .divmod(&self.den)
            .expect("normalized denominator is nonzero");
        let rest = RatFunc {
            num: r,
            den: self.den.clone(),
        };
        (q, rest)
    }

    pub fn try_add(&self, other: &RatFunc) -> Result<RatFunc> {
        let num = &self.num.try_mul(&other.den)? + &other.num.try_mul(&self.den)?;
        RatFunc::new(num, self.den.try_mul(&other.den)?)
    }

    pub fn try_mul(&self, other: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(self.num.try_mul(&other.num)?, self.den.try_mul(&other.den)?)
    }

    pub fn try_div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.num.try_mul(&other.den)?, self.den.try_mul(&other.num)?)
    }

    pub fn scale(&self, c: &QuadExt) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Exact value at `t0`.
    pub fn eval(&self, t0: &QuadExt) -> Result<QuadExt> {
        let den = self.den.try_eval(t0)?;
        if den.is_zero() {
            return Err(Error::PoleEvaluation(t0.to_string()));
        }
        self.num.try_eval(t0)?.try_div(&den)
    }

    pub fn eval_f64(&self, t0: f64) -> Result<f64> {
        let den = self.den.eval_f64(t0);
        if den == 0.0 {
            return Err(Error::PoleEvaluation(t0.to_string()));
        }
        Ok(self.num.eval_f64(t0) / den)
    }

    /// Derivative with respect to `s` of `A(e^s)`, i.e. `t * dA/dt`.
    pub fn d_ds(&self) -> RatFunc {
        if self.is_zero() {
            return RatFunc::zero();
        }
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(top.shift_up(1), &self.den * &self.den).expect("nonzero denominator")
    }

    /// Renders with the denominator factored when all its roots are rational.
    pub fn render(&self, var: Variable) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let num = self.num.render(var);
        if self.den.is_one() {
            return num;
        }
        let num_terms = self.num.coeffs().iter().filter(|c| !c.is_zero()).count();
        let atomic = num_terms == 1
            && self
                .num
                .leading()
                .is_some_and(|c| c.is_rational() && c.signum() > 0);
        let num = if atomic { num } else { format!("({num})") };
        format!("{num}/{}", render_denominator(&self.den, var))
    }
}

fn render_denominator(den: &Poly, var: Variable) -> String {
    let factored = factor_roots(den)
        .ok()
        .filter(|roots| roots.iter().all(|(r, _)| r.is_rational()));
    let Some(mut roots) = factored else {
        return format!("({})", den.render(var));
    };
    roots.sort_by(|a, b| {
        (!a.0.is_zero())
            .cmp(&!b.0.is_zero())
            .then(b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal))
    });
    let parts: Vec<String> = roots
        .iter()
        .map(|(root, mult)| {
            let base = if root.is_zero() {
                var.power(1)
            } else {
                format!("({})", Poly::linear(root).render(var))
            };
            if *mult == 1 {
                base
            } else {
                format!("{base}^{mult}")
            }
        })
        .collect();
    if parts.len() == 1 {
        parts.into_iter().next().unwrap_or_default()
    } else {
        format!("({})", parts.join("*"))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Variable::T))
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
