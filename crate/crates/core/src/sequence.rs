//! Exact sequences on `n >= 1`: closed forms produced by inverse transforms,
//! directly iterated recurrences, and the difference/convolution operators.

use std::cell::RefCell;
use std::collections::BTreeMap;

use crate::arith::{QuadExt, Rational};
use crate::error::Result;
use crate::partial::partial_fractions;
use crate::recurrence::{binomial, RecurrenceSpec};
use crate::transform::TransformExpr;

/// A sequence indexed from `n = 1`.
pub trait Sequence {
    fn term(&self, n: u64) -> QuadExt;

    fn terms(&self, count: u64) -> Vec<QuadExt> {
        (1..=count).map(|n| self.term(n)).collect()
    }
}

impl<S: Sequence + ?Sized> Sequence for &S {
    fn term(&self, n: u64) -> QuadExt {
        (**self).term(n)
    }
}

impl<S: Sequence + ?Sized> Sequence for Box<S> {
    fn term(&self, n: u64) -> QuadExt {
        (**self).term(n)
    }
}

/// Adapts a closure `n -> value`.
pub struct FnSequence<F>(pub F);

impl<F: Fn(u64) -> QuadExt> Sequence for FnSequence<F> {
    fn term(&self, n: u64) -> QuadExt {
        (self.0)(n)
    }
}

/// `coefficient * C(n-1, multiplicity-1) * root^(n-multiplicity)`, the inverse
/// transform of `coefficient / (t - root)^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedTerm {
    pub coefficient: QuadExt,
    pub root: QuadExt,
    pub multiplicity: usize,
}

impl ClosedTerm {
    pub fn at(&self, n: u64) -> QuadExt {
        let m = self.multiplicity as u64;
        if n < m {
            return QuadExt::zero();
        }
        let choose = Rational::from_integer(binomial(n - 1, m - 1));
        // root^0 = 1 also for root = 0
        (&self.coefficient * self.root.pow(n - m)).scale(&choose)
    }
}

/// Finite sum of [`ClosedTerm`]s plus Kronecker delta terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormSequence {
    terms: Vec<ClosedTerm>,
    deltas: BTreeMap<u64, QuadExt>,
    rational_valued: bool,
}

impl ClosedFormSequence {
    /// Merges terms sharing `(root, multiplicity)`, drops zeros, and orders by
    /// decreasing root then increasing multiplicity.
    pub fn new(terms: Vec<ClosedTerm>, deltas: BTreeMap<u64, QuadExt>) -> Self {
        let mut merged: Vec<ClosedTerm> = Vec::new();
        let mut deltas: BTreeMap<u64, QuadExt> =
            deltas.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        for term in terms {
            if term.root.is_zero() {
                let slot = deltas
                    .entry(term.multiplicity as u64)
                    .or_insert_with(QuadExt::zero);
                *slot = &*slot + &term.coefficient;
                continue;
            }
            match merged
                .iter_mut()
                .find(|t| t.root == term.root && t.multiplicity == term.multiplicity)
            {
                Some(existing) => existing.coefficient = &existing.coefficient + &term.coefficient,
                None => merged.push(term),
            }
        }
        merged.retain(|t| !t.coefficient.is_zero());
        deltas.retain(|_, c| !c.is_zero());
        merged.sort_by(|a, b| {
            b.root
                .partial_cmp(&a.root)
                .unwrap_or_else(|| b.root.to_f64().total_cmp(&a.root.to_f64()))
                .then(a.multiplicity.cmp(&b.multiplicity))
        });
        ClosedFormSequence {
            terms: merged,
            deltas,
            rational_valued: false,
        }
    }

    /// Marks the sequence as rational-valued; [`Sequence::term`] then asserts
    /// that every evaluated radical part cancels.
    pub fn expect_rational(mut self) -> Self {
        self.rational_valued = true;
        self
    }

    pub fn is_rational_valued(&self) -> bool {
        self.rational_valued
    }

    pub fn terms_list(&self) -> &[ClosedTerm] {
        &self.terms
    }

    pub fn deltas(&self) -> &BTreeMap<u64, QuadExt> {
        &self.deltas
    }

    /// Largest `|root|` among the non-delta terms, if any.
    pub fn max_root_modulus(&self) -> Option<f64> {
        self.terms
            .iter()
            .map(|t| t.root.to_f64().abs())
            .fold(None, |acc: Option<f64>, r| {
                Some(acc.map_or(r, |a| a.max(r)))
            })
    }

    /// Forward transform assembled by linearity: `1/(t - r)^m` is the
    /// `m`-fold convolution power of the geometric transform `1/(t - r)`.
    pub fn to_transform(&self) -> TransformExpr {
        let mut total = TransformExpr::zero();
        for term in &self.terms {
            let geometric = TransformExpr::geometric(&term.root);
            let power =
                (1..term.multiplicity).fold(geometric.clone(), |acc, _| acc.convolve(&geometric));
            total = total.add(&power.scale(&term.coefficient));
        }
        for (&j, c) in &self.deltas {
            let delta = TransformExpr::kronecker(j).expect("delta index >= 1");
            total = total.add(&delta.scale(c));
        }
        total
    }

    /// Adds `other` termwise.
    pub fn add(&self, other: &ClosedFormSequence) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        let mut deltas = self.deltas.clone();
        for (&j, c) in &other.deltas {
            let slot = deltas.entry(j).or_insert_with(QuadExt::zero);
            *slot = &*slot + c;
        }
        let mut out = Self::new(terms, deltas);
        out.rational_valued = self.rational_valued && other.rational_valued;
        out
    }

    pub fn scale(&self, c: &QuadExt) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| ClosedTerm {
                coefficient: &t.coefficient * c,
                ..t.clone()
            })
            .collect();
        let deltas = self.deltas.iter().map(|(&j, d)| (j, d * c)).collect();
        let mut out = Self::new(terms, deltas);
        out.rational_valued = self.rational_valued && c.is_rational();
        out
    }
}

impl Sequence for ClosedFormSequence {
    fn term(&self, n: u64) -> QuadExt {
        let mut value: QuadExt = self.terms.iter().map(|t| t.at(n)).sum();
        if let Some(c) = self.deltas.get(&n) {
            value = value + c;
        }
        if self.rational_valued {
            assert!(
                value.is_rational(),
                "rational closed form produced irrational value {value} at n = {n}"
            );
        }
        value
    }
}

/// Inverse transform via partial fractions: each `c / (t - r)^m` maps to
/// `c * C(n-1, m-1) * r^(n-m)`, and `c / t^m` to `c * delta(n, m)`.
pub fn inverse_transform(transform: &TransformExpr) -> Result<ClosedFormSequence> {
    let terms = partial_fractions(transform.rational())?
        .into_iter()
        .map(|pf| ClosedTerm {
            coefficient: pf.coefficient,
            root: pf.root,
            multiplicity: pf.multiplicity,
        })
        .collect();
    let closed = ClosedFormSequence::new(terms, transform.deltas().clone());
    let rational =
        transform.rational().is_rational() && transform.deltas().values().all(QuadExt::is_rational);
    Ok(if rational {
        closed.expect_rational()
    } else {
        closed
    })
}

/// A recurrence evaluated by memoized iteration.
///
/// The memo lives in a `RefCell`: the value can move between threads but is
/// not `Sync`.
#[derive(Debug)]
pub struct RecursiveSequence {
    spec: RecurrenceSpec,
    memo: RefCell<Vec<Rational>>,
}

impl RecursiveSequence {
    pub fn new(spec: RecurrenceSpec) -> Self {
        let memo = RefCell::new(spec.initials().to_vec());
        RecursiveSequence { spec, memo }
    }

    pub fn spec(&self) -> &RecurrenceSpec {
        &self.spec
    }

    pub fn value(&self, n: u64) -> Rational {
        assert!(n >= 1, "sequences are indexed from 1");
        let mut memo = self.memo.borrow_mut();
        let k = self.spec.order();
        while (memo.len() as u64) < n {
            let base = memo.len() - k;
            let next = self
                .spec
                .coefficients()
                .iter()
                .enumerate()
                .map(|(j, c)| c * &memo[base + j])
                .fold(self.spec.forcing_at(base as u64 + 1), |a, b| a + b);
            memo.push(next);
        }
        memo[n as usize - 1].clone()
    }
}

impl Sequence for RecursiveSequence {
    fn term(&self, n: u64) -> QuadExt {
        QuadExt::from_rational(self.value(n))
    }
}

/// `(Delta f)(n) = f(n+1) - f(n)`.
pub struct Delta<S>(pub S);

impl<S: Sequence> Sequence for Delta<S> {
    fn term(&self, n: u64) -> QuadExt {
        self.0.term(n + 1) - self.0.term(n)
    }
}

/// `n -> f(n + k)`.
pub struct Shifted<S>(pub S, pub u64);

impl<S: Sequence> Sequence for Shifted<S> {
    fn term(&self, n: u64) -> QuadExt {
        self.0.term(n + self.1)
    }
}

/// `n -> sum_{k=1}^{n-1} f(k)`.
pub struct PartialSum<S>(pub S);

impl<S: Sequence> Sequence for PartialSum<S> {
    fn term(&self, n: u64) -> QuadExt {
        (1..n).map(|k| self.0.term(k)).sum()
    }
}

/// `n -> (f * g)(n)`.
pub struct Convolution<F, G>(pub F, pub G);

impl<F: Sequence, G: Sequence> Sequence for Convolution<F, G> {
    fn term(&self, n: u64) -> QuadExt {
        convolve_at(&self.0, &self.1, n)
    }
}

/// `(f * g)(n) = sum_{k=1}^{n-1} f(k) g(n-k)`; zero at `n = 1`.
pub fn convolve_at<F: Sequence + ?Sized, G: Sequence + ?Sized>(f: &F, g: &G, n: u64) -> QuadExt {
    (1..n).map(|k| f.term(k) * g.term(n - k)).sum()
}

/// Outcome of an exact prefix comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrefixComparison {
    pub equal: bool,
    pub first_mismatch: Option<u64>,
}

/// Compares `f(n)` and `g(n)` exactly for `1 <= n <= upto`.
pub fn equal_prefix<F: Sequence + ?Sized, G: Sequence + ?Sized>(
    f: &F,
    g: &G,
    upto: u64,
) -> PrefixComparison {
    let first_mismatch = (1..=upto).find(|&n| f.term(n) != g.term(n));
    PrefixComparison {
        equal: first_mismatch.is_none(),
        first_mismatch,
    }
}

/// True when `f(1..=upto)` are all integers.
pub fn is_integer_valued_prefix<S: Sequence + ?Sized>(f: &S, upto: u64) -> bool {
    (1..=upto).all(|n| f.term(n).as_rational().is_some_and(|r| r.is_integer()))
}

/// `n^p` as a sequence.
pub fn power_sequence(p: u32) -> FnSequence<impl Fn(u64) -> QuadExt> {
    FnSequence(move |n: u64| {
        QuadExt::from_rational(Rational::from_integer(num_bigint::BigInt::from(n).pow(p)))
    })
}

/// `a^(n-1)` as a sequence (`0^0 = 1`).
pub fn geometric_sequence(a: QuadExt) -> FnSequence<impl Fn(u64) -> QuadExt> {
    FnSequence(move |n: u64| a.pow(n - 1))
}

/// Constant sequence.
pub fn constant_sequence(c: QuadExt) -> FnSequence<impl Fn(u64) -> QuadExt> {
    FnSequence(move |_| c.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::poly::Poly;
    use crate::ratfunc::RatFunc;
    use proptest::prelude::*;

    fn q(n: i64) -> QuadExt {
        QuadExt::from_int(n)
    }

    /// `m`-fold convolution power of `r^(n-1)` by direct summation.
    fn brute_power(r: &QuadExt, m: usize, upto: u64) -> Vec<QuadExt> {
        let base: Vec<QuadExt> = (1..=upto).map(|n| r.pow(n - 1)).collect();
        let mut acc = base.clone();
        for _ in 1..m {
            let prev = acc.clone();
            let lookup = FnSequence(|n: u64| prev[n as usize - 1].clone());
            let g = FnSequence(|n: u64| base[n as usize - 1].clone());
            acc = (1..=upto).map(|n| convolve_at(&lookup, &g, n)).collect();
        }
        acc
    }

    #[test]
    fn inverse_of_poles_matches_convolution_powers() {
        for r in [q(1), q(2), QuadExt::from_rational(rat(1, 2))] {
            for m in 1..=4 {
                let t = TransformExpr::from_ratfunc(RatFunc::pole(&r, m)).unwrap();
                let closed = inverse_transform(&t).unwrap();
                let expected = brute_power(&r, m, 20);
                assert_eq!(closed.terms(20), expected, "r = {r}, m = {m}");
            }
        }
    }

    #[test]
    fn zero_root_gives_deltas() {
        // 1/t^2 + 3/(t (t - 1))
        let rf = &RatFunc::pole(&QuadExt::zero(), 2)
            + &RatFunc::new(Poly::constant(q(3)), Poly::from_ints(&[0, -1, 1])).unwrap();
        let closed = inverse_transform(&TransformExpr::from_ratfunc(rf).unwrap()).unwrap();
        // 3/(t(t-1)) = 3/(t-1) - 3/t
        let expected: Vec<QuadExt> = (1..=6)
            .map(|n| q(3) - if n == 1 { q(3) } else { q(0) } + if n == 2 { q(1) } else { q(0) })
            .collect();
        assert_eq!(closed.terms(6), expected);
        assert!(closed.terms_list().iter().all(|t| !t.root.is_zero()));
    }

    #[test]
    fn fibonacci_closed_form() {
        let t = TransformExpr::from_ratfunc(
            RatFunc::new(Poly::t(), Poly::from_ints(&[-1, -1, 1])).unwrap(),
        )
        .unwrap();
        let closed = inverse_transform(&t).unwrap();
        assert!(closed.is_rational_valued());
        let rec = RecursiveSequence::new(RecurrenceSpec::fibonacci());
        let cmp = equal_prefix(&closed, &rec, 60);
        assert!(cmp.equal);
        assert_eq!(closed.to_transform(), t);
        assert!(is_integer_valued_prefix(&closed, 60));
    }

    #[test]
    fn prefix_mismatch_reported() {
        let one = constant_sequence(q(1));
        let almost = FnSequence(|n: u64| if n == 7 { q(2) } else { q(1) });
        let cmp = equal_prefix(&one, &almost, 10);
        assert!(!cmp.equal);
        assert_eq!(cmp.first_mismatch, Some(7));
    }

    #[test]
    fn operator_views() {
        let n2 = power_sequence(2);
        let d = Delta(&n2);
        assert_eq!(d.terms(3), vec![q(3), q(5), q(7)]);
        assert_eq!(Shifted(&n2, 2).term(1), q(9));
        assert_eq!(PartialSum(&n2).terms(4), vec![q(0), q(1), q(5), q(14)]);
        let c = Convolution(constant_sequence(q(1)), constant_sequence(q(1)));
        assert_eq!(c.terms(4), vec![q(0), q(1), q(2), q(3)]);
        assert_eq!(
            geometric_sequence(QuadExt::zero()).terms(3),
            vec![q(1), q(0), q(0)]
        );
    }

    #[test]
    fn recursive_memo_extends() {
        let rec = RecursiveSequence::new(RecurrenceSpec::affine(rat(2, 1), rat(1, 1), rat(1, 1)));
        assert_eq!(rec.value(5), rat(31, 1));
        assert_eq!(rec.value(2), rat(3, 1));
        assert_eq!(rec.value(10), rat(1023, 1));
    }

    #[test]
    fn canonical_ordering_merges() {
        let term = |c: i64, r: i64, m: usize| ClosedTerm {
            coefficient: q(c),
            root: q(r),
            multiplicity: m,
        };
        let closed = ClosedFormSequence::new(
            vec![
                term(1, 1, 2),
                term(2, 3, 1),
                term(1, 1, 2),
                term(4, 1, 1),
                term(-4, 1, 1),
            ],
            BTreeMap::new(),
        );
        assert_eq!(closed.terms_list(), &[term(2, 3, 1), term(2, 1, 2)]);
    }

    fn sample_sequence() -> impl Strategy<Value = ClosedFormSequence> {
        let roots = vec![q(1), q(2), q(-1), QuadExt::from_rational(rat(1, 2))];
        prop::collection::vec((-3i64..4, prop::sample::select(roots), 1usize..4), 1..4).prop_map(
            |parts| {
                let terms = parts
                    .into_iter()
                    .map(|(c, root, multiplicity)| ClosedTerm {
                        coefficient: q(c),
                        root,
                        multiplicity,
                    })
                    .collect();
                ClosedFormSequence::new(terms, BTreeMap::new())
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn transform_round_trip(f in sample_sequence()) {
            let back = inverse_transform(&f.to_transform()).unwrap();
            prop_assert!(equal_prefix(&f, &back, 15).equal);
        }

        #[test]
        fn convolution_theorem(f in sample_sequence(), g in sample_sequence()) {
            let product = f.to_transform().convolve(&g.to_transform());
            let closed = inverse_transform(&product).unwrap();
            prop_assert!(equal_prefix(&closed, &Convolution(&f, &g), 12).equal);
        }

        #[test]
        fn shift_and_difference_rules(f in sample_sequence()) {
            let l = f.to_transform();
            let shifted = inverse_transform(&l.shift(2, &[f.term(1), f.term(2)]).unwrap()).unwrap();
            prop_assert!(equal_prefix(&shifted, &Shifted(&f, 2), 12).equal);
            let delta = inverse_transform(&l.delta_rule(&f.term(1)).unwrap()).unwrap();
            prop_assert!(equal_prefix(&delta, &Delta(&f), 12).equal);
            let summed = inverse_transform(&l.partial_sum()).unwrap();
            prop_assert!(equal_prefix(&summed, &PartialSum(&f), 12).equal);
            let times_n = inverse_transform(&l.mul_by_n()).unwrap();
            let direct = FnSequence(|n: u64| f.term(n) * q(n as i64));
            prop_assert!(equal_prefix(&times_n, &direct, 12).equal);
        }
    }
}
