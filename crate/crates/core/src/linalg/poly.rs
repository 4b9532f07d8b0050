//! Univariate rational polynomials (ascending coefficients) and rational-root extraction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{integer_row, Field, Rational};

/// Largest `|constant term|` whose divisors we are willing to enumerate by trial division.
const DIVISOR_SEARCH_LIMIT: u128 = 1 << 80;

pub fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Field::is_zero) {
        p.pop();
    }
    p
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// Synthetic division by `(x - r)`; returns the quotient and the remainder.
pub fn divide_linear(p: &[Rational], r: &Rational) -> (Vec<Rational>, Rational) {
    if p.is_empty() {
        return (Vec::new(), Rational::zero());
    }
    let deg = p.len() - 1;
    let mut q = vec![Rational::zero(); deg];
    let mut carry = Rational::zero();
    for i in (0..=deg).rev() {
        let c = p[i].clone() + carry.clone() * r.clone();
        if i == 0 {
            return (q, c);
        }
        q[i - 1] = c.clone();
        carry = c;
    }
    unreachable!()
}

pub fn format_poly(p: &[Rational]) -> String {
    let mut terms = Vec::new();
    for (d, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match d {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{d}"),
        };
        let coef = if d > 0 && c.is_one() {
            String::new()
        } else if d > 0 && *c == -Rational::one() {
            "-".to_string()
        } else {
            c.to_string()
        };
        terms.push(format!("{coef}{mono}"));
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

fn positive_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let value = n
        .to_u128()
        .filter(|&v| v <= DIVISOR_SEARCH_LIMIT)
        .ok_or_else(|| Error::UnsupportedSpectrum {
            factor: format!("constant term {n} too large for rational-root search"),
        })?;
    let mut factors: Vec<(u128, u32)> = Vec::new();
    let mut rest = value;
    let mut d: u128 = 2;
    while d * d <= rest {
        if rest % d == 0 {
            let mut e = 0;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
        if d > 1 << 26 && d * d <= rest {
            return Err(Error::UnsupportedSpectrum {
                factor: format!("constant term {n} could not be factored"),
            });
        }
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    let mut divisors = vec![1u128];
    for (p, e) in factors {
        let mut next = Vec::new();
        for &d in &divisors {
            let mut pk = 1u128;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        divisors = next;
    }
    divisors.sort_unstable();
    Ok(divisors.into_iter().map(BigInt::from).collect())
}

/// Rational roots with multiplicities (sorted ascending) and the cofactor polynomial
/// that has no rational roots.
pub fn rational_roots(p: &[Rational]) -> Result<(Vec<(Rational, usize)>, Vec<Rational>)> {
    let mut rest = trim(p.to_vec());
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    if rest.is_empty() {
        return Ok((roots, rest));
    }
    let zero_mult = rest.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        rest.drain(..zero_mult);
        roots.push((Rational::zero(), zero_mult));
    }
    if rest.len() > 1 {
        let ints = integer_row(&rest);
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let ints: Vec<BigInt> = ints.iter().map(|x| x / &g).collect();
        let numer_divs = positive_divisors(&ints[0])?;
        let denom_divs = positive_divisors(ints.last().expect("nonempty"))?;
        let mut candidates: Vec<Rational> = Vec::new();
        for a in &numer_divs {
            for b in &denom_divs {
                let c = Rational::from_big(a.clone(), b.clone());
                candidates.push(c.clone());
                candidates.push(-c);
            }
        }
        candidates.sort();
        candidates.dedup();
        for c in candidates {
            let mut mult = 0;
            while rest.len() > 1 {
                let (q, r) = divide_linear(&rest, &c);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((c, mult));
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    // keep the cofactor monic
    let lead = rest.last().cloned().unwrap_or_else(Rational::one);
    let rest = rest.into_iter().map(|c| c / lead.clone()).collect();
    Ok((roots, rest))
}
