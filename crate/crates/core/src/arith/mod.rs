//! Exact coefficient arithmetic: arbitrary-precision rationals and the
//! quadratic extensions Q(sqrt(d)) that hold characteristic roots.

mod quad;
mod rational;

pub use quad::QuadExt;
pub use rational::{parse_rational, rat, rational_to_f64, Rational};
