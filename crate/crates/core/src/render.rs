//! Text rendering of closed forms.
//!
//! The generic form writes each term as `c*C(n-1,k)*r^(n-m)`. Closed forms
//! over the golden roots `(1 +- sqrt(5))/2` are written instead as
//! `(P*(1+sqrt(5))^n + Q*(1-sqrt(5))^n)/(2^n*sqrt(5))`.

use num_traits::Signed;

use crate::arith::{rat, QuadExt};
use crate::sequence::{ClosedFormSequence, ClosedTerm};

/// Renders `closed`, preferring the golden-ratio form when it applies.
pub fn render_closed_form(closed: &ClosedFormSequence) -> String {
    render_fibonacci_normal(closed).unwrap_or_else(|| render_generic(closed))
}

/// Term-by-term rendering in the binomial-times-power basis.
pub fn render_generic(closed: &ClosedFormSequence) -> String {
    let mut pieces: Vec<(bool, String)> = Vec::new();
    for term in closed.terms_list() {
        pieces.push(signed_product(&term.coefficient, &term_factors(term)));
    }
    for (&j, c) in closed.deltas() {
        pieces.push(signed_product(c, &[format!("[n={j}]")]));
    }
    join_signed(&pieces)
}

fn term_factors(term: &ClosedTerm) -> Vec<String> {
    let m = term.multiplicity;
    let mut factors = Vec::new();
    match m {
        1 => {}
        2 => factors.push("(n-1)".to_string()),
        _ => factors.push(format!("C(n-1,{})", m - 1)),
    }
    if !term.root.is_one() {
        let base = term.root.to_factor_string();
        let base = if base.starts_with('-') {
            format!("({base})")
        } else {
            base
        };
        factors.push(format!("{base}^(n-{m})"));
    }
    factors
}

/// Splits off the sign of a rational coefficient so sums read `a - b`.
fn signed_product(coefficient: &QuadExt, factors: &[String]) -> (bool, String) {
    let (negative, magnitude) = match coefficient.as_rational() {
        Some(r) if r.is_negative() => (true, QuadExt::from_rational(-r.clone())),
        _ => (false, coefficient.clone()),
    };
    let mut parts = Vec::new();
    if !magnitude.is_one() || factors.is_empty() {
        parts.push(if factors.is_empty() {
            magnitude.to_string()
        } else {
            magnitude.to_factor_string()
        });
    }
    parts.extend(factors.iter().cloned());
    (negative, parts.join("*"))
}

fn join_signed(pieces: &[(bool, String)]) -> String {
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (negative, text)) in pieces.iter().enumerate() {
        match (i, negative) {
            (0, false) => out.push_str(text),
            (0, true) => {
                out.push('-');
                out.push_str(text);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(text);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(text);
            }
        }
    }
    out
}

/// `A phi^(n-1) + B psi^(n-1)` rewritten over `(1 +- sqrt(5))^n / (2^n sqrt(5))`;
/// `None` unless the closed form has exactly that shape.
pub fn render_fibonacci_normal(closed: &ClosedFormSequence) -> Option<String> {
    let phi = QuadExt::new(rat(1, 2), rat(1, 2), 5.into()).ok()?;
    let psi = phi.conjugate();
    if !closed.deltas().is_empty() || closed.terms_list().is_empty() {
        return None;
    }
    let mut a = QuadExt::zero();
    let mut b = QuadExt::zero();
    for term in closed.terms_list() {
        if term.multiplicity != 1 {
            return None;
        }
        if term.root == phi {
            a = term.coefficient.clone();
        } else if term.root == psi {
            b = term.coefficient.clone();
        } else {
            return None;
        }
    }
    let root5 = QuadExt::sqrt_int(5).ok()?;
    let p = (&a * &root5).try_div(&phi).ok()?;
    let q = (&b * &root5).try_div(&psi).ok()?;
    let pieces: Vec<(bool, String)> = [(p, "(1+sqrt(5))^n"), (q, "(1-sqrt(5))^n")]
        .into_iter()
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, power)| signed_product(&c, &[power.to_string()]))
        .collect();
    Some(format!("({})/(2^n*sqrt(5))", join_signed(&pieces)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::recurrence::RecurrenceSpec;
    use crate::solver::{affine_closed_form, solve_ivp};
    use std::collections::BTreeMap;

    #[test]
    fn fibonacci_normal_form() {
        let closed = solve_ivp(&RecurrenceSpec::fibonacci()).unwrap().closed_form;
        assert_eq!(
            render_closed_form(&closed),
            "((1+sqrt(5))^n - (1-sqrt(5))^n)/(2^n*sqrt(5))"
        );
        let lucas = solve_ivp(&RecurrenceSpec::fibonacci_like(rat(1, 1), rat(3, 1)))
            .unwrap()
            .closed_form;
        // L_n = phi^n + psi^n
        assert_eq!(
            render_closed_form(&lucas),
            "(sqrt(5)*(1+sqrt(5))^n + sqrt(5)*(1-sqrt(5))^n)/(2^n*sqrt(5))"
        );
    }

    #[test]
    fn generic_forms() {
        let affine = affine_closed_form(&rat(1, 1), &rat(3, 1), &rat(2, 1));
        assert_eq!(render_closed_form(&affine), "2 + 3*(n-1)");
        let affine = affine_closed_form(&rat(3, 1), &rat(1, 1), &rat(1, 1));
        assert_eq!(render_closed_form(&affine), "(3/2)*3^(n-1) - 1/2");
        let alternating = affine_closed_form(&rat(-1, 1), &rat(0, 1), &rat(1, 1));
        assert_eq!(render_closed_form(&alternating), "(-1)^(n-1)");
        let half = affine_closed_form(&rat(1, 2), &rat(1, 1), &rat(0, 1));
        assert_eq!(render_closed_form(&half), "2 - 2*(1/2)^(n-1)");
    }

    #[test]
    fn binomials_and_deltas() {
        let closed = ClosedFormSequence::new(
            vec![ClosedTerm {
                coefficient: QuadExt::from_int(-1),
                root: QuadExt::from_int(2),
                multiplicity: 3,
            }],
            BTreeMap::from([(2, QuadExt::from_int(5))]),
        );
        assert_eq!(render_closed_form(&closed), "-C(n-1,2)*2^(n-3) + 5*[n=2]");
        let empty = ClosedFormSequence::new(Vec::new(), BTreeMap::new());
        assert_eq!(render_closed_form(&empty), "0");
    }
}
