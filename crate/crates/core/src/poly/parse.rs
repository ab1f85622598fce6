//! ASCII polynomial grammar: `+`/`-` separated terms of `*`-joined factors,
//! each factor a rational literal (optionally parenthesized) or `var^k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::Field;
use crate::scalars::{FieldDescriptor, FieldScalar};

use super::{PolyError, TernaryForm, UniPoly};

fn split_terms(s: &str) -> Vec<String> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    let mut prev: Option<char> = None;
    for ch in s.chars().filter(|c| !c.is_whitespace()) {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let boundary = (ch == '+' || ch == '-') && depth == 0 && !matches!(prev, None | Some('^' | '*' | '('));
        if boundary {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
        prev = Some(ch);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    terms
}

fn parse_rational(tok: &str) -> Result<BigRational, PolyError> {
    let err = || PolyError::Parse(tok.to_string());
    let t = tok.trim_start_matches('(').trim_end_matches(')');
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(BigRational::new(n, d))
    } else {
        Ok(BigRational::from_integer(t.parse().map_err(|_| err())?))
    }
}

/// Parse into `(coefficient, exponent vector)` pairs over the given variables.
pub fn parse_monomials(s: &str, vars: &[&str]) -> Result<Vec<(BigRational, Vec<u32>)>, PolyError> {
    let mut out = Vec::new();
    let terms = split_terms(s);
    if terms.is_empty() {
        return Err(PolyError::Parse(s.to_string()));
    }
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest.to_string()),
            None => (1, term.trim_start_matches('+').to_string()),
        };
        if body.is_empty() {
            return Err(PolyError::Parse(term));
        }
        let mut coeff = BigRational::from_integer(BigInt::from(sign));
        let mut exps = vec![0u32; vars.len()];
        for factor in body.split('*') {
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b, e.parse::<u32>().map_err(|_| PolyError::Parse(factor.to_string()))?),
                None => (factor, 1),
            };
            if let Some(k) = vars.iter().position(|v| *v == base) {
                exps[k] += exp;
            } else {
                let c = parse_rational(base)?;
                for _ in 0..exp {
                    coeff *= &c;
                }
            }
        }
        out.push((coeff, exps));
    }
    Ok(out)
}

fn embed(desc: &FieldDescriptor, q: &BigRational) -> Result<FieldScalar, PolyError> {
    desc.from_rational(q).map_err(|e| PolyError::Parse(e.to_string()))
}

/// Univariate polynomial in the named variable.
pub fn parse_uni(desc: &FieldDescriptor, s: &str, var: &str) -> Result<UniPoly<FieldScalar>, PolyError> {
    let mons = parse_monomials(s, &[var])?;
    let deg = mons.iter().map(|(_, e)| e[0] as usize).max().unwrap_or(0);
    if deg > super::uni::DEGREE_CAP {
        return Err(PolyError::DegreeCap(deg));
    }
    let mut coeffs = vec![desc.zero(); deg + 1];
    for (c, e) in mons {
        let k = e[0] as usize;
        coeffs[k] = desc.add(&coeffs[k], &embed(desc, &c)?);
    }
    Ok(UniPoly::new(desc, coeffs))
}

/// Ternary form in `X0, X1, X2`; the degree is read off the terms.
pub fn parse_ternary(desc: &FieldDescriptor, s: &str) -> Result<TernaryForm<FieldScalar>, PolyError> {
    let mons = parse_monomials(s, &["X0", "X1", "X2"])?;
    let degree = mons.first().map(|(_, e)| e.iter().sum::<u32>()).unwrap_or(0);
    let mut terms = Vec::new();
    for (c, e) in mons {
        terms.push(([e[0], e[1], e[2]], embed(desc, &c)?));
    }
    TernaryForm::new(desc, degree, terms)
}

/// Print in the same grammar, highest degree first.
pub fn format_uni(p: &UniPoly<FieldScalar>, var: &str) -> String {
    let terms = p.coeffs().iter().enumerate().rev().map(|(i, c)| {
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        (c, mono)
    });
    join_terms(terms)
}

pub fn format_ternary(f: &TernaryForm<FieldScalar>) -> String {
    let terms = f.terms().iter().rev().map(|(e, c)| {
        let vars: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &ek)| ek > 0)
            .map(|(k, &ek)| if ek == 1 { format!("X{k}") } else { format!("X{k}^{ek}") })
            .collect();
        (c, vars.join("*"))
    });
    join_terms(terms)
}

fn join_terms<'a>(terms: impl Iterator<Item = (&'a FieldScalar, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = match c {
            FieldScalar::Rational(q) if q.is_negative() => (true, -q.clone()),
            FieldScalar::Rational(q) => (false, q.clone()),
            FieldScalar::Modular { value, .. } => (false, BigRational::from_integer(BigInt::from(*value))),
        };
        let sep = match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        };
        out.push_str(sep);
        let lit = if mag.denom().is_one() { mag.numer().to_string() } else { format!("{}/{}", mag.numer(), mag.denom()) };
        match (mag.is_one(), mono.is_empty()) {
            (_, true) => out.push_str(&lit),
            (true, false) => out.push_str(&mono),
            (false, false) => out.push_str(&format!("{lit}*{mono}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    #[test]
    fn parse_and_print_roundtrip() {
        let p = parse_uni(&Q, "3*x^2 - x + 1/2", "x").unwrap();
        assert_eq!(p.coeffs(), &[Q.rational(1, 2), Q.from_i64(-1), Q.from_i64(3)]);
        assert_eq!(format_uni(&p, "x"), "3*x^2 - x + 1/2");
        assert_eq!(parse_uni(&Q, &format_uni(&p, "x"), "x").unwrap(), p);
        let f = parse_ternary(&Q, "X2*X1^2 - X0^2*X2 - X0^3").unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(parse_ternary(&Q, &format_ternary(&f)).unwrap(), f);
    }

    #[test]
    fn parse_over_prime_field() {
        let f7 = FieldDescriptor::prime_field(7).unwrap();
        let p = parse_uni(&f7, "x^2 + 10", "x").unwrap();
        assert_eq!(p.coeffs()[0], f7.from_i64(3));
    }

    #[test]
    fn parse_errors() {
        assert!(parse_uni(&Q, "3*y", "x").is_err());
        assert!(parse_ternary(&Q, "X0^2 + X1").is_err());
        assert!(parse_uni(&Q, "1/0", "x").is_err());
        assert!(parse_uni(&Q, "", "x").is_err());
    }
}
