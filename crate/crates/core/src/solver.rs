//! Initial value problem solver: transform both sides, solve the resulting
//! linear equation for the transform of `a_n`, invert, and cross-check the
//! closed form against direct iteration.

use std::collections::BTreeMap;

use num_traits::One;

use crate::arith::{QuadExt, Rational};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::recurrence::{ForcingKind, ForcingTerm, RecurrenceSpec};
use crate::sequence::{
    equal_prefix, inverse_transform, ClosedFormSequence, ClosedTerm, Delta, RecursiveSequence,
    Sequence,
};
use crate::transform::TransformExpr;

/// Number of terms every solution is checked against direct iteration.
pub const DEFAULT_VERIFY_UPTO: u64 = 64;

#[derive(Clone, Debug)]
pub struct SolutionReport {
    pub spec: RecurrenceSpec,
    pub closed_form: ClosedFormSequence,
    pub transform: TransformExpr,
    pub verified_upto: u64,
    /// For homogeneous order 2 specs: `(gamma, beta)` with
    /// `a_n = gamma_n a_1 + beta_n a_2`.
    pub coefficient_decomposition: Option<(ClosedFormSequence, ClosedFormSequence)>,
}

impl SolutionReport {
    /// First `count` exact values of the closed form.
    pub fn values(&self, count: u64) -> Vec<Rational> {
        self.closed_form
            .terms(count)
            .into_iter()
            .map(|v| {
                v.as_rational()
                    .cloned()
                    .expect("solutions of rational specs are rational")
            })
            .collect()
    }
}

/// Transform of a single forcing term: `n^p` via repeated multiplication by
/// `n`, and `b^n = b * b^(n-1)` as `b / (t - b)`.
pub fn forcing_transform(term: &ForcingTerm) -> Result<TransformExpr> {
    let c = QuadExt::from_rational(term.coefficient.clone());
    let base = match &term.kind {
        ForcingKind::Power(p) => TransformExpr::n_pow(*p)?,
        ForcingKind::Geometric(b) => {
            let b = QuadExt::from_rational(b.clone());
            TransformExpr::geometric(&b).scale(&b)
        }
    };
    Ok(base.scale(&c))
}

/// Solves the transformed equation for `L = transform of a_n`:
/// `chi(t) L = P(t) + F(t)` where `chi` is the characteristic polynomial,
/// `P` collects the initial values left over by the shift rule, and `F` is
/// the forcing transform.
pub fn solution_transform(spec: &RecurrenceSpec) -> Result<TransformExpr> {
    let k = spec.order();
    let chi = spec.characteristic_poly();
    let initials: Vec<QuadExt> = spec
        .initials()
        .iter()
        .map(|a| QuadExt::from_rational(a.clone()))
        .collect();

    // t^k L - sum_{i<=k} a_i t^(k-i) = sum_j c_j (t^j L - sum_{i<=j} a_i t^(j-i)) + F
    let mut p = Poly::zero();
    for (i, a) in initials.iter().enumerate() {
        p = &p + &Poly::monomial(a.clone(), k - 1 - i);
    }
    for (j, c) in spec.coefficients().iter().enumerate() {
        let c = QuadExt::from_rational(c.clone());
        for (i, a) in initials.iter().take(j).enumerate() {
            p = &p - &Poly::monomial(&c * a, j - 1 - i);
        }
    }

    let mut forcing = TransformExpr::zero();
    for term in spec.forcing() {
        if let ForcingKind::Geometric(b) = &term.kind {
            if chi.eval(&QuadExt::from_rational(b.clone())).is_zero() {
                return Err(Error::ResonantForcing {
                    base: b.to_string(),
                });
            }
        }
        forcing = forcing.add(&forcing_transform(term)?);
    }

    let inverse_chi = RatFunc::new(Poly::one(), chi)?;
    let rational = &(&RatFunc::from_poly(p) + &forcing.total()) * &inverse_chi;
    TransformExpr::from_ratfunc(rational)
}

/// Solves the IVP and verifies the result for `n <= DEFAULT_VERIFY_UPTO`.
pub fn solve_ivp(spec: &RecurrenceSpec) -> Result<SolutionReport> {
    solve_ivp_upto(spec, DEFAULT_VERIFY_UPTO)
}

pub fn solve_ivp_upto(spec: &RecurrenceSpec, verify_upto: u64) -> Result<SolutionReport> {
    let (transform, closed_form) = solve_core(spec, verify_upto)?;
    let coefficient_decomposition = if spec.is_homogeneous() && spec.order() == 2 {
        let basis = |a1: i64, a2: i64| -> Result<ClosedFormSequence> {
            let basis_spec = spec.with_initials(vec![
                Rational::from_integer(a1.into()),
                Rational::from_integer(a2.into()),
            ])?;
            Ok(solve_core(&basis_spec, verify_upto)?.1)
        };
        Some((basis(1, 0)?, basis(0, 1)?))
    } else {
        None
    };
    Ok(SolutionReport {
        spec: spec.clone(),
        closed_form,
        transform,
        verified_upto: verify_upto,
        coefficient_decomposition,
    })
}

fn solve_core(
    spec: &RecurrenceSpec,
    verify_upto: u64,
) -> Result<(TransformExpr, ClosedFormSequence)> {
    let transform = solution_transform(spec)?;
    let closed_form = inverse_transform(&transform)?.expect_rational();
    let recursion = RecursiveSequence::new(spec.clone());
    if let Some(index) = equal_prefix(&closed_form, &recursion, verify_upto).first_mismatch {
        return Err(Error::VerificationFailed { index });
    }
    Ok((transform, closed_form))
}

/// `a_{n+1} = lambda a_n + beta` through the general solver.
pub fn solve_affine(lambda: Rational, beta: Rational, a1: Rational) -> Result<SolutionReport> {
    solve_ivp(&RecurrenceSpec::affine(lambda, beta, a1))
}

/// The affine solution written out directly:
/// `(a1 + beta/(lambda-1)) lambda^(n-1) + beta/(1-lambda)` for `lambda != 1`
/// and `a1 + beta (n-1)` for `lambda = 1`.
pub fn affine_closed_form(lambda: &Rational, beta: &Rational, a1: &Rational) -> ClosedFormSequence {
    let q = |r: Rational| QuadExt::from_rational(r);
    let one = Rational::one();
    let terms = if lambda.is_one() {
        // a1 + beta (n-1) = a1 * 1^(n-1) + beta * C(n-1, 1) * 1^(n-2)
        vec![
            ClosedTerm {
                coefficient: q(a1.clone()),
                root: QuadExt::one(),
                multiplicity: 1,
            },
            ClosedTerm {
                coefficient: q(beta.clone()),
                root: QuadExt::one(),
                multiplicity: 2,
            },
        ]
    } else {
        vec![
            ClosedTerm {
                coefficient: q(a1 + beta / (lambda - &one)),
                root: q(lambda.clone()),
                multiplicity: 1,
            },
            ClosedTerm {
                coefficient: q(beta / (&one - lambda)),
                root: QuadExt::one(),
                multiplicity: 1,
            },
        ]
    };
    ClosedFormSequence::new(terms, BTreeMap::new()).expect_rational()
}

/// `(gamma_n, beta_n)` with `a_n = gamma_n a_1 + beta_n a_2` for
/// `a_{n+2} = a_{n+1} + a_n`:
///
/// `gamma_n = ((sqrt5 - 1)(1 + sqrt5)^(n-1) + (sqrt5 + 1)(1 - sqrt5)^(n-1)) / (2^n sqrt5)`,
/// `beta_n = ((1 + sqrt5)^(n-1) - (1 - sqrt5)^(n-1)) / (2^(n-1) sqrt5)`.
pub fn fibonacci_coefficients(n: u64) -> (QuadExt, QuadExt) {
    assert!(n >= 1, "sequences are indexed from 1");
    let root5 = QuadExt::sqrt_int(5).expect("5 is not a square");
    let one = QuadExt::one();
    let up = (&one + &root5).pow(n - 1);
    let down = (&one - &root5).pow(n - 1);
    let two_pow = |e: u64| {
        QuadExt::from_rational(Rational::from_integer(
            num_bigint::BigInt::from(2).pow(e as u32),
        ))
    };
    let gamma = ((&root5 - &one) * &up + (&root5 + &one) * &down) / (two_pow(n) * &root5);
    let beta = (up - down) / (two_pow(n - 1) * &root5);
    (gamma, beta)
}

/// Outcome of [`verify_solution`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct VerificationReport {
    pub checked_upto: u64,
    pub initials_ok: bool,
    pub recurrence_ok: bool,
    /// `Delta^2 a + Delta a = a`, checked only for `a_{n+2} = a_{n+1} + a_n`.
    pub delta_identity_ok: Option<bool>,
    pub first_failure: Option<u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.initials_ok && self.recurrence_ok && self.delta_identity_ok != Some(false)
    }
}

/// Checks a candidate solution exactly: the initial values, the recurrence
/// for `1 <= n <= upto`, and for Fibonacci-form specs the difference form
/// `Delta^2 a_n + Delta a_n = a_n`.
pub fn verify_solution<S: Sequence + ?Sized>(
    spec: &RecurrenceSpec,
    seq: &S,
    upto: u64,
) -> VerificationReport {
    let k = spec.order() as u64;
    let mut failures = Vec::new();

    let bad_initial = spec
        .initials()
        .iter()
        .zip(1..)
        .find(|(a, n)| seq.term(*n) != QuadExt::from_rational((*a).clone()))
        .map(|(_, n)| n);
    failures.extend(bad_initial);

    let bad_step = (1..=upto).find(|&n| {
        let rhs = spec
            .coefficients()
            .iter()
            .zip(0..)
            .map(|(c, j)| seq.term(n + j).scale(c))
            .fold(QuadExt::from_rational(spec.forcing_at(n)), |a, b| a + b);
        seq.term(n + k) != rhs
    });
    failures.extend(bad_step);

    let delta_identity_ok = spec.is_fibonacci_form().then(|| {
        let d1 = Delta(seq);
        let d2 = Delta(&d1);
        let bad = (1..=upto).find(|&n| d2.term(n) + d1.term(n) != seq.term(n));
        failures.extend(bad);
        bad.is_none()
    });

    VerificationReport {
        checked_upto: upto,
        initials_ok: bad_initial.is_none(),
        recurrence_ok: bad_step.is_none(),
        delta_identity_ok,
        first_failure: failures.into_iter().min(),
    }
}

/// `f(n) = 1 + sum_{k=1}^{n-1} 1/k^2`, the solution of `Delta f = 1/n^2`
/// with `f(1) = 1`. Its transform is not rational, so it is handled outside
/// the symbolic solver.
pub fn inverse_square_solution(n: u64) -> Rational {
    (1..n)
        .map(|k| Rational::new(1.into(), num_bigint::BigInt::from(k).pow(2)))
        .fold(Rational::one(), |a, b| a + b)
}

/// Checks `Delta f(n) = 1/n^2` for `n <= upto` and `f(2) = 2` exactly.
pub fn verify_inverse_square(upto: u64) -> VerificationReport {
    let values: Vec<Rational> = (1..=upto + 1).map(inverse_square_solution).collect();
    let initials_ok = values[0].is_one() && values[1] == Rational::from_integer(2.into());
    let bad = (1..=upto).find(|&n| {
        let i = n as usize - 1;
        let target = Rational::new(1.into(), num_bigint::BigInt::from(n).pow(2));
        &values[i + 1] - &values[i] != target
    });
    VerificationReport {
        checked_upto: upto,
        initials_ok,
        recurrence_ok: bad.is_none(),
        delta_identity_ok: None,
        first_failure: if initials_ok { bad } else { Some(1) },
    }
}
