//! Exact root finding for transform denominators.
//!
//! Supported: rational roots (rational root theorem) and real quadratic
//! factors whose roots lie in a single Q(sqrt(d)). Anything else is reported
//! as [`Error::UnsupportedFactorization`].

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::arith::{QuadExt, Rational};
use crate::error::{Error, Result};
use crate::poly::Poly;

const DIVISOR_TRIAL_LIMIT: u64 = 1_000_000;
const MAX_CANDIDATE_DIVISORS: usize = 20_000;

/// Roots of `den` with multiplicities; `prod (t - r)^m` equals `monic(den)`.
pub fn factor_roots(den: &Poly) -> Result<Vec<(QuadExt, usize)>> {
    let degree = den.degree().filter(|&d| d >= 1).ok_or_else(|| {
        Error::UnsupportedFactorization("constant polynomial has no roots".into())
    })?;
    let monic = den.monic();
    if monic.is_rational() {
        return factor_rational(&monic);
    }

    // Irrational coefficients: the roots are among those of p * conj(p),
    // which has rational coefficients.
    let radicand = monic.radicand()?;
    let norm = &monic * &monic.conjugate();
    let mut roots = Vec::new();
    let mut rest = monic.clone();
    for (root, _) in factor_rational(&norm)? {
        if !root.radicand().is_zero() && *root.radicand() != radicand {
            continue;
        }
        let linear = Poly::linear(&root);
        let mut mult = 0;
        while let Some(q) = rest.div_exact(&linear) {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((root, mult));
        }
    }
    let found: usize = roots.iter().map(|(_, m)| m).sum();
    if found != degree {
        return Err(Error::UnsupportedFactorization(format!(
            "{monic} does not split over Q(sqrt({radicand}))"
        )));
    }
    Ok(roots)
}

fn factor_rational(p: &Poly) -> Result<Vec<(QuadExt, usize)>> {
    let mut roots = Vec::new();
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut rest = Poly::from_coeffs(p.coeffs()[zeros..].to_vec());
    if zeros > 0 {
        roots.push((QuadExt::zero(), zeros));
    }

    if rest.degree().unwrap_or(0) > 0 {
        for candidate in rational_root_candidates(&rest) {
            let root = QuadExt::from_rational(candidate);
            if !rest.eval(&root).is_zero() {
                continue;
            }
            let linear = Poly::linear(&root);
            let mut mult = 0;
            while let Some(q) = rest.div_exact(&linear) {
                rest = q;
                mult += 1;
            }
            roots.push((root, mult));
            if rest.degree() == Some(0) {
                break;
            }
        }
    }

    if rest.degree().unwrap_or(0) > 0 {
        for (factor, mult) in squarefree_decomposition(&rest)? {
            for root in split_squarefree(&factor)? {
                roots.push((root, mult));
            }
        }
    }
    Ok(roots)
}

/// Integer coefficients of a positive multiple of a rational polynomial, with content removed.
fn primitive_integer(p: &Poly) -> Vec<BigInt> {
    let rationals: Vec<Rational> = p
        .coeffs()
        .iter()
        .map(|c| c.rational_part().clone())
        .collect();
    let lcm = rationals
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rationals
        .iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &content).collect()
}

fn prime_factors(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut rest = n.abs();
    let mut out = Vec::new();
    let mut p: u64 = 2;
    while p <= DIVISOR_TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut count = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            count += 1;
        }
        if count > 0 {
            out.push((bp, count));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        // Either prime or a product of primes beyond the trial limit.
        out.push((rest, 1));
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for (prime, count) in prime_factors(n) {
        let mut next = Vec::with_capacity(out.len() * (count as usize + 1));
        for d in &out {
            let mut power = BigInt::one();
            for _ in 0..=count {
                next.push(d * &power);
                power *= &prime;
            }
        }
        out = next;
        if out.len() > MAX_CANDIDATE_DIVISORS {
            break;
        }
    }
    out
}

fn rational_root_candidates(p: &Poly) -> Vec<Rational> {
    let ints = primitive_integer(p);
    let (Some(constant), Some(lead)) = (ints.first(), ints.last()) else {
        return Vec::new();
    };
    let numerators = divisors(constant);
    let denominators = divisors(lead);
    let mut out: Vec<Rational> = Vec::new();
    for num in &numerators {
        for den in &denominators {
            let r = Rational::new(num.clone(), den.clone());
            out.push(r.clone());
            out.push(-r);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Yun's algorithm: `p = prod f_i^i` with each `f_i` monic and square-free.
fn squarefree_decomposition(p: &Poly) -> Result<Vec<(Poly, usize)>> {
    let p = p.monic();
    let dp = p.derivative();
    let b = p.gcd(&dp)?;
    let (mut c, _) = p.divmod(&b)?;
    let (dpb, _) = dp.divmod(&b)?;
    let mut d = &dpb - &c.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d)?;
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        let (c_next, _) = c.divmod(&a)?;
        let (d_next, _) = d.divmod(&a)?;
        d = &d_next - &c_next.derivative();
        c = c_next;
        i += 1;
    }
    Ok(out)
}

fn quadratic_roots(monic: &Poly) -> Result<[QuadExt; 2]> {
    let b = monic.coeff(1);
    let c = monic.coeff(0);
    let (Some(b), Some(c)) = (b.as_rational(), c.as_rational()) else {
        return Err(Error::UnsupportedFactorization(format!(
            "quadratic {monic} has irrational coefficients"
        )));
    };
    let disc = b * b - Rational::from_integer(4.into()) * c;
    if disc.is_negative() {
        return Err(Error::UnsupportedFactorization(format!(
            "quadratic factor {monic} has complex roots"
        )));
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let root = QuadExt::sqrt_rational(&disc)?.scale(&half);
    let center = QuadExt::from_rational(-b * &half);
    Ok([&center + &root, &center - &root])
}

/// Roots of a square-free rational polynomial with no rational roots.
fn split_squarefree(f: &Poly) -> Result<Vec<QuadExt>> {
    match f.degree() {
        Some(1) => Ok(vec![-f.monic().coeff(0)]),
        Some(2) => Ok(quadratic_roots(&f.monic())?.to_vec()),
        Some(_) => split_into_quadratics(f),
        None => Ok(Vec::new()),
    }
}

/// Searches for rational quadratic factors by pairing numerically located
/// real roots; every candidate factor is confirmed by exact division.
fn split_into_quadratics(f: &Poly) -> Result<Vec<QuadExt>> {
    let unsupported = || {
        Error::UnsupportedFactorization(format!(
            "{f} has an irreducible factor of degree > 2 or complex roots"
        ))
    };
    let degree = f.degree().unwrap_or(0);
    if degree % 2 == 1 {
        return Err(unsupported());
    }
    let ints = primitive_integer(f);
    let lead = ints.last().cloned().unwrap_or_else(BigInt::one).abs();
    let lead_f = lead.to_f64().unwrap_or(f64::INFINITY);
    let approx = complex_roots(&f.monic());
    let mut real: Vec<f64> = Vec::new();
    for z in &approx {
        if z.im.abs() > 1e-7 * (1.0 + z.re.abs()) {
            return Err(Error::UnsupportedFactorization(format!(
                "{f} has complex roots"
            )));
        }
        real.push(z.re);
    }

    let mut rest = f.monic();
    let mut roots = Vec::new();
    while rest.degree().unwrap_or(0) > 2 {
        let mut found = None;
        'search: for i in 0..real.len() {
            for j in (i + 1)..real.len() {
                let sum = real[i] + real[j];
                let prod = real[i] * real[j];
                let b = Rational::new(float_to_int(-sum * lead_f), lead.clone());
                let c = Rational::new(float_to_int(prod * lead_f), lead.clone());
                let quad = Poly::from_rationals([c, b, Rational::one()]);
                if let Some(q) = rest.div_exact(&quad) {
                    found = Some((i, j, quad, q));
                    break 'search;
                }
            }
        }
        let Some((i, j, quad, q)) = found else {
            return Err(unsupported());
        };
        roots.extend(quadratic_roots(&quad)?);
        rest = q;
        real.remove(j);
        real.remove(i);
    }
    if rest.degree() == Some(2) {
        roots.extend(quadratic_roots(&rest)?);
    }
    let radicands: Vec<&BigInt> = roots.iter().map(QuadExt::radicand).collect();
    if radicands.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::UnsupportedFactorization(format!(
            "roots of {f} span more than one quadratic field"
        )));
    }
    Ok(roots)
}

fn float_to_int(x: f64) -> BigInt {
    BigInt::from_f64(x.round()).unwrap_or_default()
}

/// Durand-Kerner iteration followed by a few Newton steps per root.
fn complex_roots(monic: &Poly) -> Vec<Complex64> {
    let coeffs: Vec<f64> = monic.coeffs().iter().map(QuadExt::to_f64).collect();
    let n = coeffs.len() - 1;
    let eval = |z: Complex64| {
        coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    let deriv = |z: Complex64| {
        coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (i, &c)| {
                acc * z + c * i as f64
            })
    };
    let radius = 1.0 + coeffs[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for k in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(z[k]) / denom;
            z[k] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    for root in &mut z {
        for _ in 0..4 {
            let d = deriv(*root);
            if d.norm() == 0.0 {
                break;
            }
            *root -= eval(*root) / d;
        }
    }
    z
}
