//! The sigma transform rule engine.
//!
//! A [`TransformExpr`] is a strictly proper rational function of `t = e^s`
//! plus finitely many monomials `c * t^(-j)`, the transform of `c * delta(n, j)`.
//! Every rule below maps transforms of sequences on `n >= 1` to transforms
//! of sequences on `n >= 1`; results with a leftover polynomial part are
//! rejected with [`Error::ImproperResult`].

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{QuadExt, Rational};
use crate::error::{Error, Result};
use crate::poly::{Poly, Variable};
use crate::ratfunc::RatFunc;

/// Default cap on `k` for [`TransformExpr::n_pow`].
pub const DEFAULT_MAX_POWER: u32 = 12;

#[derive(Clone, Debug)]
pub struct TransformExpr {
    rational: RatFunc,
    deltas: BTreeMap<u64, QuadExt>,
}

fn add_delta(deltas: &mut BTreeMap<u64, QuadExt>, j: u64, c: QuadExt) {
    let entry = deltas.entry(j).or_insert_with(QuadExt::zero);
    *entry = &*entry + &c;
    if entry.is_zero() {
        deltas.remove(&j);
    }
}

fn ensure_no_polynomial(poly: &Poly) -> Result<()> {
    if poly.is_zero() {
        Ok(())
    } else {
        Err(Error::ImproperResult(poly.to_string()))
    }
}

impl TransformExpr {
    pub fn new(rational: RatFunc, deltas: BTreeMap<u64, QuadExt>) -> Result<Self> {
        if !rational.is_strictly_proper() {
            return Err(Error::ImproperResult(rational.split_proper().0.to_string()));
        }
        let mut clean = BTreeMap::new();
        for (j, c) in deltas {
            if j == 0 {
                if c.is_zero() {
                    continue;
                }
                return Err(Error::ImproperResult(c.to_string()));
            }
            add_delta(&mut clean, j, c);
        }
        Ok(TransformExpr {
            rational,
            deltas: clean,
        })
    }

    pub fn from_ratfunc(rational: RatFunc) -> Result<Self> {
        Self::new(rational, BTreeMap::new())
    }

    pub fn zero() -> Self {
        TransformExpr {
            rational: RatFunc::zero(),
            deltas: BTreeMap::new(),
        }
    }

    /// Transform of `a^(n-1)`: `1 / (t - a)`. For `a = 0` this is `1/t`, the
    /// transform of `delta(n, 1)` under the convention `0^0 = 1`.
    pub fn geometric(a: &QuadExt) -> Self {
        TransformExpr {
            rational: RatFunc::pole(a, 1),
            deltas: BTreeMap::new(),
        }
    }

    /// Transform of the constant sequence `1`.
    pub fn constant_one() -> Self {
        Self::geometric(&QuadExt::one())
    }

    /// Transform of `delta(n, j)`: `t^(-j)`.
    pub fn kronecker(j: u64) -> Result<Self> {
        Self::new(RatFunc::zero(), BTreeMap::from([(j, QuadExt::one())]))
    }

    /// Transform of `n^k`, built by applying the multiply-by-`n` rule `k`
    /// times to the transform of `1`.
    pub fn n_pow(k: u32) -> Result<Self> {
        Self::n_pow_with_limit(k, DEFAULT_MAX_POWER)
    }

    pub fn n_pow_with_limit(k: u32, max: u32) -> Result<Self> {
        if k > max {
            return Err(Error::DegreeLimitExceeded { requested: k, max });
        }
        Ok((0..k).fold(Self::constant_one(), |acc, _| acc.mul_by_n()))
    }

    pub fn rational(&self) -> &RatFunc {
        &self.rational
    }

    pub fn deltas(&self) -> &BTreeMap<u64, QuadExt> {
        &self.deltas
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.deltas.is_empty()
    }

    fn deltas_as_ratfunc(&self) -> RatFunc {
        let Some(&top) = self.deltas.keys().next_back() else {
            return RatFunc::zero();
        };
        let top = top as usize;
        let mut coeffs = vec![QuadExt::zero(); top + 1];
        for (&j, c) in &self.deltas {
            coeffs[top - j as usize] = c.clone();
        }
        RatFunc::new(Poly::from_coeffs(coeffs), Poly::t().pow(top)).expect("nonzero monomial")
    }

    /// The whole expression as one rational function of `t`.
    pub fn total(&self) -> RatFunc {
        &self.rational + &self.deltas_as_ratfunc()
    }

    /// Shift rule: the transform of `f(n+k)` given `L = transform of f` and
    /// `f(1), ..., f(k)`, namely `t^k L - sum_i f(i) t^(k-i)`.
    pub fn shift(&self, k: usize, initials: &[QuadExt]) -> Result<Self> {
        if initials.len() != k {
            return Err(Error::InvalidSpec(format!(
                "shift by {k} needs {k} initial values, got {}",
                initials.len()
            )));
        }
        let den = self.rational.den();
        let (mut poly, rem) = self.rational.num().shift_up(k).divmod(den)?;
        let rational = RatFunc::new(rem, den.clone())?;
        let mut deltas = BTreeMap::new();
        for (&j, c) in &self.deltas {
            let j_usize = j as usize;
            if j_usize > k {
                add_delta(&mut deltas, j - k as u64, c.clone());
            } else {
                poly = &poly + &Poly::monomial(c.clone(), k - j_usize);
            }
        }
        for (i, f) in initials.iter().enumerate() {
            poly = &poly - &Poly::monomial(f.clone(), k - 1 - i);
        }
        ensure_no_polynomial(&poly)?;
        Ok(TransformExpr { rational, deltas })
    }

    /// Discrete derivative rule: transform of `f(n+1) - f(n)` is `(t - 1) L - f(1)`.
    pub fn delta_rule(&self, f1: &QuadExt) -> Result<Self> {
        let den = self.rational.den();
        let t_minus_one = Poly::linear(&QuadExt::one());
        let (mut poly, rem) = (self.rational.num() * &t_minus_one).divmod(den)?;
        let rational = RatFunc::new(rem, den.clone())?;
        let mut deltas = BTreeMap::new();
        for (&j, c) in &self.deltas {
            if j == 1 {
                poly = &poly + &Poly::constant(c.clone());
            } else {
                add_delta(&mut deltas, j - 1, c.clone());
            }
            add_delta(&mut deltas, j, -c);
        }
        poly = &poly - &Poly::constant(f1.clone());
        ensure_no_polynomial(&poly)?;
        Ok(TransformExpr { rational, deltas })
    }

    /// Multiplication by `n`: transform of `n f(n)` is `-d/ds L`. Delta terms
    /// scale by their index.
    pub fn mul_by_n(&self) -> Self {
        let rational = -&self.rational.d_ds();
        let deltas = self
            .deltas
            .iter()
            .map(|(&j, c)| (j, c.scale(&Rational::from_integer(j.into()))))
            .collect();
        TransformExpr { rational, deltas }
    }

    /// Convolution theorem: transform of `(f * g)(n)` is the product of transforms.
    pub fn convolve(&self, other: &TransformExpr) -> Self {
        let self_d = self.deltas_as_ratfunc();
        let other_d = other.deltas_as_ratfunc();
        let rational = &(&(&self.rational * &other.rational) + &(&self.rational * &other_d))
            + &(&self_d * &other.rational);
        let mut deltas = BTreeMap::new();
        for (&j1, c1) in &self.deltas {
            for (&j2, c2) in &other.deltas {
                add_delta(&mut deltas, j1 + j2, c1 * c2);
            }
        }
        TransformExpr { rational, deltas }
    }

    /// Transform of `n -> sum_{k=1}^{n-1} f(k)`, which is `L / (t - 1)`.
    pub fn partial_sum(&self) -> Self {
        let rational = &self.total() * &RatFunc::pole(&QuadExt::one(), 1);
        TransformExpr {
            rational,
            deltas: BTreeMap::new(),
        }
    }

    pub fn scale(&self, c: &QuadExt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TransformExpr {
            rational: self.rational.scale(c),
            deltas: self.deltas.iter().map(|(&j, d)| (j, d * c)).collect(),
        }
    }

    pub fn add(&self, other: &TransformExpr) -> Self {
        let mut deltas = self.deltas.clone();
        for (&j, c) in &other.deltas {
            add_delta(&mut deltas, j, c.clone());
        }
        TransformExpr {
            rational: &self.rational + &other.rational,
            deltas,
        }
    }

    pub fn sub(&self, other: &TransformExpr) -> Self {
        self.add(&other.scale(&QuadExt::from_int(-1)))
    }

    /// Exact value at `t = t0`.
    pub fn eval(&self, t0: &QuadExt) -> Result<QuadExt> {
        let mut value = self.rational.eval(t0)?;
        if !self.deltas.is_empty() {
            let inv = t0
                .try_inv()
                .map_err(|_| Error::PoleEvaluation(t0.to_string()))?;
            for (&j, c) in &self.deltas {
                value = value.try_add(&c.try_mul(&inv.pow(j))?)?;
            }
        }
        Ok(value)
    }

    /// Value of the transform at real `s`, i.e. at `t = e^s`.
    pub fn eval_at_s(&self, s: f64) -> Result<f64> {
        let t = s.exp();
        let mut value = self.rational.eval_f64(t)?;
        for (&j, c) in &self.deltas {
            value += c.to_f64() * (-(j as f64) * s).exp();
        }
        Ok(value)
    }

    pub fn render(&self, var: Variable) -> String {
        let mut parts = Vec::new();
        if !self.rational.is_zero() || self.deltas.is_empty() {
            parts.push(self.rational.render(var));
        }
        for (&j, c) in &self.deltas {
            let monomial = var.inverse_power(j as usize);
            parts.push(if c.is_one() {
                monomial
            } else {
                format!("{}*{}", c.to_factor_string(), monomial)
            });
        }
        parts.join(" + ")
    }
}

impl PartialEq for TransformExpr {
    fn eq(&self, other: &Self) -> bool {
        (&self.total() - &other.total()).is_zero()
    }
}

impl fmt::Display for TransformExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Variable::T))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn q(n: i64) -> QuadExt {
        QuadExt::from_int(n)
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
    }

    fn tx(num: &[i64], den: &[i64]) -> TransformExpr {
        TransformExpr::from_ratfunc(rf(num, den)).unwrap()
    }

    /// Direct truncated series `sum_{n=1}^{N} f(n) e^{-sn}`.
    fn series(f: impl Fn(u64) -> f64, s: f64) -> f64 {
        (1..=4000u64).map(|n| f(n) * (-(n as f64) * s).exp()).sum()
    }

    #[test]
    fn geometric_and_constant() {
        assert_eq!(TransformExpr::geometric(&q(5)), tx(&[1], &[-5, 1]));
        assert_eq!(TransformExpr::constant_one(), tx(&[1], &[-1, 1]));
        // 0^(n-1) is delta(n, 1)
        assert_eq!(
            TransformExpr::geometric(&QuadExt::zero()),
            TransformExpr::kronecker(1).unwrap()
        );
        let value = TransformExpr::geometric(&q(5)).eval_at_s(2.0).unwrap();
        let ratio = 5.0 * (-2.0f64).exp();
        let direct: f64 = (1..=200).map(|n| ratio.powi(n - 1) * (-2.0f64).exp()).sum();
        assert!((value - direct).abs() < 1e-12);
    }

    #[test]
    fn powers_of_n() {
        assert_eq!(
            TransformExpr::n_pow(0).unwrap(),
            TransformExpr::constant_one()
        );
        assert_eq!(TransformExpr::n_pow(1).unwrap(), tx(&[0, 1], &[1, -2, 1]));
        assert_eq!(
            TransformExpr::n_pow(2).unwrap(),
            tx(&[0, 1, 1], &[-1, 3, -3, 1])
        );
        assert_eq!(
            TransformExpr::n_pow(13),
            Err(Error::DegreeLimitExceeded {
                requested: 13,
                max: 12
            })
        );
        assert!(TransformExpr::n_pow_with_limit(13, 13).is_ok());
        for k in 0..=6u32 {
            let value = TransformExpr::n_pow(k).unwrap().eval_at_s(1.5).unwrap();
            let direct = series(|n| (n as f64).powi(k as i32), 1.5);
            assert!((value - direct).abs() <= 1e-9 * direct.abs(), "k = {k}");
        }
    }

    #[test]
    fn shift_rule() {
        let n = TransformExpr::n_pow(1).unwrap();
        let one = TransformExpr::constant_one();
        // n + 1
        assert_eq!(n.shift(1, &[q(1)]).unwrap(), n.add(&one));
        // n + 2
        assert_eq!(n.shift(2, &[q(1), q(2)]).unwrap(), n.add(&one.scale(&q(2))));
        assert_eq!(n.shift(0, &[]).unwrap(), n);
        // wrong initial values leave a polynomial part
        assert!(matches!(n.shift(1, &[q(2)]), Err(Error::ImproperResult(_))));
        assert!(matches!(n.shift(1, &[]), Err(Error::InvalidSpec(_))));
        // delta(n, 3) shifted by 1 is delta(n, 2); shifted by 3 needs f(3) = 1
        let d3 = TransformExpr::kronecker(3).unwrap();
        assert_eq!(
            d3.shift(1, &[q(0)]).unwrap(),
            TransformExpr::kronecker(2).unwrap()
        );
        assert!(d3.shift(3, &[q(0), q(0), q(1)]).unwrap().is_zero());
    }

    #[test]
    fn delta_rule() {
        let n2 = TransformExpr::n_pow(2).unwrap();
        let expected = TransformExpr::n_pow(1)
            .unwrap()
            .scale(&q(2))
            .add(&TransformExpr::constant_one());
        assert_eq!(n2.delta_rule(&q(1)).unwrap(), expected);
        assert!(matches!(
            n2.delta_rule(&q(0)),
            Err(Error::ImproperResult(_))
        ));
        // Delta of 2^(n-1) is 2^(n-1)
        let g = TransformExpr::geometric(&q(2));
        assert_eq!(g.delta_rule(&q(1)).unwrap(), g);
        // Delta delta(n, 2) = delta(n, 1) - delta(n, 2)
        let d2 = TransformExpr::kronecker(2).unwrap();
        let expected = TransformExpr::kronecker(1).unwrap().sub(&d2);
        assert_eq!(d2.delta_rule(&q(0)).unwrap(), expected);
    }

    #[test]
    fn second_difference_assembly() {
        // Delta^2 L = (t - 1)^2 L - (t - 1) f(1) - Delta f(1), for f = n^3.
        let f = TransformExpr::n_pow(3).unwrap();
        let via_rule = f.delta_rule(&q(1)).unwrap().delta_rule(&q(7)).unwrap();
        let t1 = RatFunc::from_poly(Poly::linear(&q(1)));
        let assembled = &(&(&t1 * &t1) * f.rational())
            - &RatFunc::from_poly(&Poly::linear(&q(1)) + &Poly::constant(q(7)));
        assert_eq!(via_rule.total(), assembled);
        // Delta^2 n^3 = 6n + 6
        let expected = TransformExpr::n_pow(1)
            .unwrap()
            .add(&TransformExpr::constant_one())
            .scale(&q(6));
        assert_eq!(via_rule, expected);
    }

    #[test]
    fn convolution_examples() {
        let one = TransformExpr::constant_one();
        let n = TransformExpr::n_pow(1).unwrap();
        // (1 * 1)(n) = n - 1
        assert_eq!(one.convolve(&one), n.sub(&one));
        // (n * 1)(n) = n(n-1)/2
        let n2 = TransformExpr::n_pow(2).unwrap();
        let half = QuadExt::from_rational(rat(1, 2));
        assert_eq!(n.convolve(&one), n2.sub(&n).scale(&half));
        // (n * n)(n) = (n^3 - n)/6
        let n3 = TransformExpr::n_pow(3).unwrap();
        let sixth = QuadExt::from_rational(rat(1, 6));
        assert_eq!(n.convolve(&n), n3.sub(&n).scale(&sixth));
        // delta(n, 1) is the convolution unit up to a shift: (delta_1 * f)(n) = f(n - 1)
        let d1 = TransformExpr::kronecker(1).unwrap();
        assert_eq!(d1.convolve(&d1), TransformExpr::kronecker(2).unwrap());
    }

    #[test]
    fn partial_sums_and_mul_by_n() {
        let one = TransformExpr::constant_one();
        let n = TransformExpr::n_pow(1).unwrap();
        assert_eq!(one.partial_sum(), n.sub(&one));
        let d2 = TransformExpr::kronecker(2).unwrap();
        // sum_{k<n} delta(k, 2) is 1 for n >= 3
        let expected = one.sub(&TransformExpr::kronecker(1).unwrap()).sub(&d2);
        assert_eq!(d2.partial_sum(), expected);
        assert_eq!(d2.mul_by_n(), d2.scale(&q(2)));
        assert_eq!(one.mul_by_n(), n);
    }

    #[test]
    fn rendering() {
        assert_eq!(TransformExpr::geometric(&q(5)).to_string(), "1/(t - 5)");
        assert_eq!(
            TransformExpr::geometric(&q(5)).render(Variable::Exp),
            "1/(e^s - 5)"
        );
        let mixed = TransformExpr::kronecker(2)
            .unwrap()
            .scale(&q(3))
            .add(&TransformExpr::constant_one());
        assert_eq!(mixed.to_string(), "1/(t - 1) + 3*t^(-2)");
    }

    fn small_transform() -> impl Strategy<Value = TransformExpr> {
        let atom = prop_oneof![
            (0u32..4).prop_map(|k| TransformExpr::n_pow(k).unwrap()),
            prop::sample::select(vec![rat(1, 2), rat(1, 3), rat(-1, 2), rat(2, 1)])
                .prop_map(|a| TransformExpr::geometric(&QuadExt::from_rational(a))),
            (1u64..4).prop_map(|j| TransformExpr::kronecker(j).unwrap()),
        ];
        prop::collection::vec((-3i64..4, atom), 1..4).prop_map(|parts| {
            parts
                .into_iter()
                .fold(TransformExpr::zero(), |acc, (c, t)| {
                    acc.add(&t.scale(&q(c)))
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn convolution_commutes_and_associates(
            a in small_transform(), b in small_transform(), c in small_transform()
        ) {
            prop_assert_eq!(a.convolve(&b), b.convolve(&a));
            prop_assert_eq!(a.convolve(&b).convolve(&c), a.convolve(&b.convolve(&c)));
        }

        #[test]
        fn shifts_compose(a in small_transform(), f in prop::collection::vec(-5i64..6, 3)) {
            // Build the sequence with the given first values by adding deltas.
            let mut seq = a.clone();
            for (i, v) in f.iter().enumerate() {
                let fix = TransformExpr::kronecker(i as u64 + 1).unwrap().scale(&q(*v));
                seq = seq.add(&fix);
            }
            // Values of seq at 1..=3 are the values of `a` plus f; recover them
            // from the series coefficients through repeated shifting.
            let mut vals = Vec::new();
            let mut cur = seq.clone();
            for _ in 0..3 {
                let f1 = first_value(&cur);
                vals.push(f1.clone());
                cur = cur.shift(1, &[f1]).unwrap();
            }
            prop_assert_eq!(seq.shift(3, &vals).unwrap(), cur.clone());
            let two = seq.shift(2, &vals[..2]).unwrap().shift(1, &vals[2..]).unwrap();
            prop_assert_eq!(two, cur);
        }

        #[test]
        fn delta_rule_matches_shift(a in small_transform()) {
            let f1 = first_value(&a);
            let shifted = a.shift(1, std::slice::from_ref(&f1)).unwrap();
            prop_assert_eq!(a.delta_rule(&f1).unwrap(), shifted.sub(&a));
        }

        #[test]
        fn series_agreement(a in small_transform(), s in prop::sample::select(vec![1.0, 1.5, 2.0])) {
            // Compare against the direct series of the sequence recovered by shifting.
            let mut direct = 0.0;
            let mut cur = a.clone();
            for n in 1..=120u64 {
                let v = first_value(&cur);
                direct += v.to_f64() * (-(n as f64) * s).exp();
                cur = cur.shift(1, &[v]).unwrap();
            }
            let value = a.eval_at_s(s).unwrap();
            prop_assert!((value - direct).abs() <= 1e-9 * (1.0 + direct.abs()), "{} vs {}", value, direct);
        }
    }

    /// `f(1) = lim_{t -> inf} t L(t)`, read off exactly from leading coefficients.
    fn first_value(a: &TransformExpr) -> QuadExt {
        let r = a.rational();
        let mut value = QuadExt::zero();
        if !r.is_zero() {
            let dn = r.num().degree().unwrap();
            let dd = r.den().degree().unwrap();
            if dn + 1 == dd {
                value = r.num().leading().unwrap().clone();
            }
        }
        if let Some(c) = a.deltas().get(&1) {
            value = value + c;
        }
        value
    }
}
