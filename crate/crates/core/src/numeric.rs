//! Floating-point cross-checks of exact transforms against truncated series
//! `sum_{n=1}^{N} f(n) e^{-sn}`, with `N` chosen from a geometric tail bound
//! for sequences satisfying `|f(n)| <= alpha e^{s0 n}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::{ClosedFormSequence, Sequence};
use crate::transform::TransformExpr;

/// Maximum number of series terms any check may use.
pub const DEFAULT_TERM_CAP: u64 = 1_000_000;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Added to `ln(max |root|)` when deriving `s0` for a closed form.
pub const GROWTH_MARGIN: f64 = 0.01;

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCheckConfig {
    pub s_values: Vec<f64>,
    pub tolerance: f64,
    pub growth_alpha: f64,
    pub growth_s0: f64,
    pub term_cap: u64,
}

impl SeriesCheckConfig {
    pub fn new(
        s_values: Vec<f64>,
        tolerance: f64,
        growth_alpha: f64,
        growth_s0: f64,
    ) -> Result<Self> {
        if let Some(&s) = s_values.iter().find(|&&s| s <= growth_s0) {
            return Err(Error::DivergenceGuard { s, s0: growth_s0 });
        }
        Ok(SeriesCheckConfig {
            s_values,
            tolerance,
            growth_alpha,
            growth_s0,
            term_cap: DEFAULT_TERM_CAP,
        })
    }

    /// Configuration whose growth parameters come from [`growth_bound`].
    pub fn for_closed_form(
        closed: &ClosedFormSequence,
        s_values: Vec<f64>,
        tolerance: f64,
    ) -> Result<Self> {
        let (alpha, s0) = growth_bound(closed);
        Self::new(s_values, tolerance, alpha, s0)
    }
}

/// `sum_{n=1}^{terms} f(n) e^{-sn}` in double precision.
pub fn series_eval<S: Sequence + ?Sized>(f: &S, s: f64, terms: u64) -> f64 {
    series_eval_with(|n| f.term(n).to_f64(), s, terms)
}

pub fn series_eval_with(f: impl Fn(u64) -> f64, s: f64, terms: u64) -> f64 {
    (1..=terms).map(|n| f(n) * (-(n as f64) * s).exp()).sum()
}

/// `alpha e^{(s0-s)(N+1)} / (1 - e^{s0-s})`, a bound on `sum_{n>N} |f(n)| e^{-sn}`.
pub fn tail_bound(alpha: f64, s0: f64, s: f64, terms: u64) -> Result<f64> {
    if s <= s0 {
        return Err(Error::DivergenceGuard { s, s0 });
    }
    let ratio = (s0 - s).exp();
    Ok(alpha * ((s0 - s) * (terms as f64 + 1.0)).exp() / (1.0 - ratio))
}

/// Smallest `N >= 1` with `tail_bound(alpha, s0, s, N) < target`.
pub fn terms_for_tolerance(alpha: f64, s0: f64, s: f64, target: f64, cap: u64) -> Result<u64> {
    let full = tail_bound(alpha, s0, s, 0)?;
    let estimate = if full < target {
        1.0
    } else {
        // solve alpha e^{(s0-s)(N+1)} / (1 - r) = target for N
        (target / full).ln() / (s0 - s)
    };
    if !estimate.is_finite() || estimate > cap as f64 {
        return Err(Error::TermCapExceeded { s, cap });
    }
    let mut terms = (estimate.floor() as u64).max(1);
    while terms > 1 && tail_bound(alpha, s0, s, terms - 1)? < target {
        terms -= 1;
    }
    while tail_bound(alpha, s0, s, terms)? >= target {
        terms += 1;
        if terms > cap {
            return Err(Error::TermCapExceeded { s, cap });
        }
    }
    Ok(terms)
}

/// Growth parameters `(alpha, s0)` with `|f(n)| <= alpha e^{s0 n}` for every
/// `n >= 1`.
///
/// `s0 = ln(max |root|) + GROWTH_MARGIN`. With `R = e^{s0}` and
/// `delta = ln(R / max |root|)`, each term satisfies
/// `|c C(n-1, m-1) r^(n-m)| <= |c| R^(-m) K_m / (m-1)! * e^{s0 n}` where
/// `K_m = e^{delta (m-1)} ((m-1) / (e delta))^(m-1)` bounds
/// `(x + m - 1)^(m-1) e^{-delta x}` over `x >= 0`. The result is at least
/// twice the largest observed `|f(n)| e^{-s0 n}` for `n <= 50`.
pub fn growth_bound(closed: &ClosedFormSequence) -> (f64, f64) {
    let max_root = closed.max_root_modulus();
    let s0 = max_root.map_or(0.0, |r| r.ln() + GROWTH_MARGIN);
    let big_r = s0.exp();
    let delta = max_root.map_or(GROWTH_MARGIN, |r| (big_r / r).ln());

    let mut alpha = 0.0;
    for term in closed.terms_list() {
        let m = term.multiplicity as i32;
        let k = if m == 1 {
            1.0
        } else {
            let m1 = f64::from(m - 1);
            (delta * m1).exp() * (m1 / (std::f64::consts::E * delta)).powi(m - 1)
        };
        let factorial: f64 = (1..m).map(f64::from).product();
        alpha += term.coefficient.to_f64().abs() * big_r.powi(-m) * k / factorial;
    }
    for (&j, c) in closed.deltas() {
        alpha += c.to_f64().abs() * (-s0 * j as f64).exp();
    }
    let observed = (1..=50u64)
        .map(|n| closed.term(n).to_f64().abs() * (-s0 * n as f64).exp())
        .fold(0.0, f64::max);
    (alpha.max(2.0 * observed), s0)
}

/// One point of a series check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairCheck {
    pub s: f64,
    pub terms: u64,
    pub series: f64,
    pub transform: f64,
    pub discrepancy: f64,
    pub bound: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub tolerance: f64,
    pub checks: Vec<PairCheck>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Evaluates every grid point and records the outcome without failing.
pub fn pair_report<S: Sequence + ?Sized>(
    f: &S,
    transform: &TransformExpr,
    cfg: &SeriesCheckConfig,
) -> Result<CheckReport> {
    let mut checks = Vec::with_capacity(cfg.s_values.len());
    for &s in &cfg.s_values {
        let terms = terms_for_tolerance(
            cfg.growth_alpha,
            cfg.growth_s0,
            s,
            cfg.tolerance / 2.0,
            cfg.term_cap,
        )?;
        let bound = tail_bound(cfg.growth_alpha, cfg.growth_s0, s, terms)?;
        let series = series_eval(f, s, terms);
        let exact = transform.eval_at_s(s)?;
        let discrepancy = (series - exact).abs();
        checks.push(PairCheck {
            s,
            terms,
            series,
            transform: exact,
            discrepancy,
            bound,
            passed: discrepancy < cfg.tolerance,
        });
    }
    Ok(CheckReport {
        tolerance: cfg.tolerance,
        checks,
    })
}

/// Like [`pair_report`], but the first failing grid point is an error.
pub fn check_pair<S: Sequence + ?Sized>(
    f: &S,
    transform: &TransformExpr,
    cfg: &SeriesCheckConfig,
) -> Result<CheckReport> {
    let report = pair_report(f, transform, cfg)?;
    if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
        return Err(Error::CheckFailed {
            s: bad.s,
            terms: bad.terms,
            discrepancy: bad.discrepancy,
        });
    }
    Ok(report)
}

/// `s - ln(e^s - 1)`, the transform of `1/n`.
pub fn harmonic_transform(s: f64) -> f64 {
    s - s.exp_m1().ln()
}

/// Tail target used by [`harmonic_transform_check`].
pub const HARMONIC_TAIL_TARGET: f64 = 1e-14;

/// `|sum_{n<=N} e^{-sn}/n - (s - ln(e^s - 1))|` with `N` from the tail bound
/// for `alpha = 1, s0 = 0`.
pub fn harmonic_transform_check(s: f64) -> Result<f64> {
    let terms = terms_for_tolerance(1.0, 0.0, s, HARMONIC_TAIL_TARGET, DEFAULT_TERM_CAP)?;
    let series = series_eval_with(|n| 1.0 / n as f64, s, terms);
    Ok((series - harmonic_transform(s)).abs())
}

/// `f(n+1) / f(n)` in floating point, after exact evaluation.
pub fn ratio_limit<S: Sequence + ?Sized>(f: &S, n: u64) -> Result<f64> {
    let denominator = f.term(n);
    if denominator.is_zero() {
        return Err(Error::ZeroDenominator(n));
    }
    Ok(f.term(n + 1).to_f64() / denominator.to_f64())
}
