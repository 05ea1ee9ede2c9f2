//! The table of transform pairs and rules printed by `sumtrans table`.
//!
//! Concrete rows carry an independently computed sequence together with its
//! transform so the pair can be checked numerically.

use crate::arith::{rat, QuadExt};
use crate::poly::{Poly, Variable};
use crate::ratfunc::RatFunc;
use crate::recurrence::RecurrenceSpec;
use crate::sequence::{
    constant_sequence, geometric_sequence, power_sequence, Convolution, PartialSum,
    RecursiveSequence, Sequence,
};
use crate::transform::TransformExpr;

/// A concrete pair to adjudicate numerically at the listed `s` values.
pub struct TableCheck {
    pub sequence: Box<dyn Sequence>,
    pub transform: TransformExpr,
    pub s_values: Vec<f64>,
}

pub struct TableRow {
    pub sequence: String,
    transform_t: String,
    transform_exp: String,
    pub check: Option<TableCheck>,
}

impl TableRow {
    fn rule(sequence: &str, transform_t: &str, transform_exp: &str) -> Self {
        TableRow {
            sequence: sequence.to_string(),
            transform_t: transform_t.to_string(),
            transform_exp: transform_exp.to_string(),
            check: None,
        }
    }

    fn pair(
        sequence: &str,
        values: impl Sequence + 'static,
        transform: TransformExpr,
        s_values: &[f64],
    ) -> Self {
        TableRow {
            sequence: sequence.to_string(),
            transform_t: transform.render(Variable::T),
            transform_exp: transform.render(Variable::Exp),
            check: Some(TableCheck {
                sequence: Box::new(values),
                transform,
                s_values: s_values.to_vec(),
            }),
        }
    }

    pub fn transform(&self, var: Variable) -> &str {
        match var {
            Variable::T => &self.transform_t,
            Variable::Exp => &self.transform_exp,
        }
    }

    pub fn render(&self, var: Variable) -> String {
        format!("{} <-> {}", self.sequence, self.transform(var))
    }
}

const GRID: [f64; 3] = [1.0, 1.5, 2.0];

pub fn transform_table() -> Vec<TableRow> {
    let mut rows = vec![TableRow::pair(
        "1",
        constant_sequence(QuadExt::one()),
        TransformExpr::constant_one(),
        &GRID,
    )];
    for (label, a, grid) in [
        ("(1/2)^(n-1)", QuadExt::from_rational(rat(1, 2)), &GRID[..]),
        ("2^(n-1)", QuadExt::from_int(2), &GRID[..]),
        ("5^(n-1)", QuadExt::from_int(5), &[2.0, 2.5, 3.0][..]),
    ] {
        rows.push(TableRow::pair(
            label,
            geometric_sequence(a.clone()),
            TransformExpr::geometric(&a),
            grid,
        ));
    }
    rows.push(TableRow::rule("a^(n-1)", "1/(t - a)", "1/(e^s - a)"));
    for (k, label) in [(1, "n"), (2, "n^2"), (3, "n^3")] {
        rows.push(TableRow::pair(
            label,
            power_sequence(k),
            TransformExpr::n_pow(k).expect("small power"),
            &GRID,
        ));
    }
    rows.push(TableRow::rule(
        "n^k f(n)",
        "(-t d/dt)^k F",
        "(-1)^k d^k/ds^k F(s)",
    ));
    rows.push(TableRow::rule("[n=j]", "t^(-j)", "e^(-js)"));
    rows.push(TableRow::pair(
        "F(n), F(1) = F(2) = 1, F(n+2) = F(n+1) + F(n)",
        RecursiveSequence::new(RecurrenceSpec::fibonacci()),
        fibonacci_transform(),
        &[1.2],
    ));
    rows.push(TableRow::rule(
        "f(n+k)",
        "t^k F - sum_{i=1}^{k} f(i) t^(k-i)",
        "e^(ks) F(s) - sum_{i=1}^{k} f(i) e^((k-i)s)",
    ));
    rows.push(TableRow::rule(
        "f(n+1) - f(n)",
        "(t - 1) F - f(1)",
        "(e^s - 1) F(s) - f(1)",
    ));
    rows.push(TableRow::rule("(f*g)(n)", "F G", "F(s)G(s)"));
    let one = TransformExpr::constant_one();
    let n = TransformExpr::n_pow(1).expect("small power");
    rows.push(TableRow::pair(
        "(n*1)(n) = (n^2-n)/2",
        Convolution(power_sequence(1), constant_sequence(QuadExt::one())),
        n.convolve(&one),
        &GRID,
    ));
    rows.push(TableRow::pair(
        "(n*n)(n) = (n^3-n)/6",
        Convolution(power_sequence(1), power_sequence(1)),
        n.convolve(&n),
        &GRID,
    ));
    rows.push(TableRow::rule(
        "sum_{k=1}^{n-1} f(k)",
        "F/(t - 1)",
        "F(s)/(e^s - 1)",
    ));
    rows.push(TableRow::pair(
        "sum_{k=1}^{n-1} 2^(k-1) = 2^(n-1) - 1",
        PartialSum(geometric_sequence(QuadExt::from_int(2))),
        TransformExpr::geometric(&QuadExt::from_int(2)).partial_sum(),
        &GRID,
    ));
    rows.push(TableRow::rule("1/n", "ln(t/(t - 1))", "s - ln(e^s - 1)"));
    rows
}

/// `t/(t^2 - t - 1)`
fn fibonacci_transform() -> TransformExpr {
    let rational =
        RatFunc::new(Poly::t(), Poly::from_ints(&[-1, -1, 1])).expect("nonzero denominator");
    TransformExpr::from_ratfunc(rational).expect("strictly proper")
}

/// The whole table, one `sequence <-> transform` pair per line.
pub fn render_table(var: Variable) -> String {
    let header = match var {
        Variable::T => "f(n) <-> F(t), t = e^s, sum over n >= 1 of f(n) t^(-n)",
        Variable::Exp => "f(n) <-> F(s) = sum over n >= 1 of f(n) e^(-sn)",
    };
    let mut out = String::from(header);
    out.push('\n');
    for row in transform_table() {
        out.push_str(&row.render(var));
        out.push('\n');
    }
    out
}
