//! Exact discrete Laplace transform (the sigma transform) and a solver for
//! linear constant-coefficient recurrences built on it.
//!
//! The transform of a sequence `f: N -> R` is `sum_{n>=1} f(n) e^{-sn}`.
//! Writing `t = e^s`, every transform handled here is a rational function of
//! `t`, so the calculus reduces to exact rational-function algebra over
//! Q(sqrt(d)) followed by partial fractions.

pub mod arith;
pub mod dsl;
pub mod error;
pub mod factor;
pub mod numeric;
pub mod partial;
pub mod poly;
pub mod ratfunc;
pub mod recurrence;
pub mod render;
pub mod report;
pub mod sequence;
pub mod solver;
pub mod table;
pub mod transform;

pub use arith::{rat, QuadExt, Rational};
pub use dsl::{parse_dsl, DslError, DslProgram};
pub use error::{Error, Result};
pub use factor::factor_roots;
pub use numeric::{
    check_pair, harmonic_transform_check, ratio_limit, series_eval, tail_bound, CheckReport,
    SeriesCheckConfig,
};
pub use partial::{partial_fractions, recombine, PFTerm};
pub use poly::{Poly, Variable};
pub use ratfunc::RatFunc;
pub use recurrence::{ForcingKind, ForcingTerm, RecurrenceSpec};
pub use sequence::{
    convolve_at, equal_prefix, inverse_transform, ClosedFormSequence, ClosedTerm,
    RecursiveSequence, Sequence,
};
pub use solver::{
    fibonacci_coefficients, solve_affine, solve_ivp, verify_solution, SolutionReport,
    VerificationReport,
};
pub use transform::TransformExpr;
