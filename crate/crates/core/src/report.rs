//! JSON encoding of solver results.
//!
//! Rationals are strings (`"3"`, `"-1/2"`); elements of Q(sqrt(d)) are
//! objects `{"rational": "1/2", "radical": "1/2", "radicand": "5"}` meaning
//! `rational + radical * sqrt(radicand)`, with `radical = "0"` and
//! `radicand = "0"` for rational values.

use serde::Serialize;

use crate::arith::{QuadExt, Rational};
use crate::poly::{Poly, Variable};
use crate::render::render_closed_form;
use crate::sequence::ClosedFormSequence;
use crate::solver::SolutionReport;
use crate::transform::TransformExpr;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadJson {
    pub rational: String,
    pub radical: String,
    pub radicand: String,
}

impl From<&QuadExt> for QuadJson {
    fn from(value: &QuadExt) -> Self {
        QuadJson {
            rational: value.rational_part().to_string(),
            radical: value.radical_part().to_string(),
            radicand: value.radicand().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub coefficient: QuadJson,
    pub root: QuadJson,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaJson {
    pub index: u64,
    pub coefficient: QuadJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormJson {
    pub rendered: String,
    pub terms: Vec<TermJson>,
    pub deltas: Vec<DeltaJson>,
}

impl From<&ClosedFormSequence> for ClosedFormJson {
    fn from(closed: &ClosedFormSequence) -> Self {
        ClosedFormJson {
            rendered: render_closed_form(closed),
            terms: closed
                .terms_list()
                .iter()
                .map(|t| TermJson {
                    coefficient: (&t.coefficient).into(),
                    root: (&t.root).into(),
                    multiplicity: t.multiplicity,
                })
                .collect(),
            deltas: closed
                .deltas()
                .iter()
                .map(|(&index, c)| DeltaJson {
                    index,
                    coefficient: c.into(),
                })
                .collect(),
        }
    }
}

/// The transform as one rational function; coefficient arrays are listed
/// from the constant term upwards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransformJson {
    pub rendered: String,
    pub numerator: Vec<QuadJson>,
    pub denominator: Vec<QuadJson>,
}

fn coefficients(p: &Poly) -> Vec<QuadJson> {
    p.coeffs().iter().map(QuadJson::from).collect()
}

impl TransformJson {
    pub fn new(transform: &TransformExpr, var: Variable) -> Self {
        let total = transform.total();
        TransformJson {
            rendered: transform.render(var),
            numerator: coefficients(total.num()),
            denominator: coefficients(total.den()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionJson {
    pub gamma: ClosedFormJson,
    pub beta: ClosedFormJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionJson {
    pub recurrence: String,
    pub closed_form: ClosedFormJson,
    pub transform: TransformJson,
    pub verified_upto: u64,
    pub values: Vec<String>,
    pub coefficient_decomposition: Option<DecompositionJson>,
}

impl SolutionJson {
    pub fn new(report: &SolutionReport, terms: u64, var: Variable) -> Self {
        SolutionJson {
            recurrence: report.spec.to_string(),
            closed_form: (&report.closed_form).into(),
            transform: TransformJson::new(&report.transform, var),
            verified_upto: report.verified_upto,
            values: report
                .values(terms)
                .iter()
                .map(Rational::to_string)
                .collect(),
            coefficient_decomposition: report.coefficient_decomposition.as_ref().map(
                |(gamma, beta)| DecompositionJson {
                    gamma: gamma.into(),
                    beta: beta.into(),
                },
            ),
        }
    }
}
