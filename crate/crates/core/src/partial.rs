//! Partial fraction decomposition over the roots found by [`factor_roots`].

use crate::arith::QuadExt;
use crate::error::{Error, Result};
use crate::factor::factor_roots;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// One term `coefficient / (t - root)^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PFTerm {
    pub root: QuadExt,
    pub multiplicity: usize,
    pub coefficient: QuadExt,
}

impl PFTerm {
    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::pole(&self.root, self.multiplicity).scale(&self.coefficient)
    }
}

/// Decomposes a strictly proper `a` into `sum c / (t - r)^m`.
///
/// The coefficients solve the exact linear system
/// `num = sum_{r,j} c_{r,j} * den / (t - r)^j` over the coefficient field.
pub fn partial_fractions(a: &RatFunc) -> Result<Vec<PFTerm>> {
    if !a.is_strictly_proper() {
        return Err(Error::ImproperRational);
    }
    if a.is_zero() {
        return Ok(Vec::new());
    }
    let den = a.den();
    let size = den.degree().unwrap_or(0);
    let roots = factor_roots(den)?;

    let mut unknowns: Vec<(QuadExt, usize)> = Vec::with_capacity(size);
    let mut columns: Vec<Poly> = Vec::with_capacity(size);
    for (root, mult) in &roots {
        let linear = Poly::linear(root);
        let mut basis = den.clone();
        for j in 1..=*mult {
            basis = basis
                .div_exact(&linear)
                .ok_or_else(|| Error::UnsupportedFactorization("root does not divide".into()))?;
            unknowns.push((root.clone(), j));
            columns.push(basis.clone());
        }
    }

    // Row i holds the t^i coefficients; the last column is the right-hand side.
    let mut matrix: Vec<Vec<QuadExt>> = (0..size)
        .map(|i| {
            let mut row: Vec<QuadExt> = columns.iter().map(|col| col.coeff(i)).collect();
            row.push(a.num().coeff(i));
            row
        })
        .collect();
    let solution = solve_linear(&mut matrix)?;

    Ok(unknowns
        .into_iter()
        .zip(solution)
        .filter(|(_, c)| !c.is_zero())
        .map(|((root, multiplicity), coefficient)| PFTerm {
            root,
            multiplicity,
            coefficient,
        })
        .collect())
}

/// Sums the terms back into a single normalized rational function.
pub fn recombine(terms: &[PFTerm]) -> Result<RatFunc> {
    terms
        .iter()
        .try_fold(RatFunc::zero(), |acc, term| acc.try_add(&term.to_ratfunc()))
}

/// Gauss-Jordan elimination on an augmented square system.
fn solve_linear(matrix: &mut [Vec<QuadExt>]) -> Result<Vec<QuadExt>> {
    let n = matrix.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !matrix[r][col].is_zero())
            .ok_or_else(|| {
                Error::UnsupportedFactorization("singular partial fraction system".into())
            })?;
        matrix.swap(col, pivot);
        let inv = matrix[col][col].try_inv()?;
        for entry in matrix[col].iter_mut().skip(col) {
            *entry = entry.try_mul(&inv)?;
        }
        for row in 0..n {
            if row == col || matrix[row][col].is_zero() {
                continue;
            }
            let factor = matrix[row][col].clone();
            let pivot_row = matrix[col].clone();
            for (entry, p) in matrix[row].iter_mut().zip(&pivot_row).skip(col) {
                *entry = entry.try_sub(&factor.try_mul(p)?)?;
            }
        }
    }
    Ok(matrix.iter().map(|row| row[n].clone()).collect())
}
