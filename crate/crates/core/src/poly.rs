//! Dense polynomials over GF(p), coefficients stored constant-term first.
//!
//! Only what primitivity testing and the reference multiplication path need:
//! multiplication and powering modulo a monic modulus, gcd, and the two
//! textual forms (`"x^6+x^5+2"` and `[2,0,0,0,0,1,1]`).

use std::fmt::Write as _;

use crate::error::{invalid, Result};

pub type Poly = Vec<u64>;

pub fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    crate::arith::pow_mod(a, p - 2, p)
}

/// `a * b mod f` for monic `f` of degree `deg f >= 1`.
pub fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem_monic(prod, f, p)
}

/// Remainder modulo a monic polynomial.
pub fn rem_monic(mut a: Poly, f: &[u64], p: u64) -> Poly {
    let n = f.len() - 1;
    debug_assert_eq!(f[n], 1);
    while a.len() > n {
        let top = a.pop().unwrap();
        if top == 0 {
            continue;
        }
        let shift = a.len() - n;
        for (i, &c) in f[..n].iter().enumerate() {
            a[shift + i] = (a[shift + i] + (p - c) * top % p) % p;
        }
    }
    trim(&mut a);
    a
}

pub fn pow_mod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem_monic(base.to_vec(), f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        exp >>= 1;
        if exp > 0 {
            b = mul_mod(&b, &b, f, p);
        }
    }
    rem_monic(acc, f, p)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

/// Monic gcd; the zero polynomial is returned as an empty vector.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let li = inv_mod_p(lead, p);
        for c in a.iter_mut() {
            *c = *c * li % p;
        }
    }
    a
}

fn rem(a: &[u64], b: &[u64], p: u64) -> Poly {
    let db = b.len() - 1;
    let li = inv_mod_p(b[db], p);
    let mut r = a.to_vec();
    while r.len() > db {
        let top = r.pop().unwrap();
        if top == 0 {
            continue;
        }
        let q = top * li % p;
        let shift = r.len() - db;
        for (i, &c) in b[..db].iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - c) * q % p) % p;
        }
    }
    trim(&mut r);
    r
}

/// Parses either the list form (`[2,0,0,0,0,1,1]` or `2,0,0,0,0,1,1`,
/// constant term first) or the human form (`x^6+x^5+2`, `2x^2 - x + 1`).
/// Coefficients are reduced mod `p`.
pub fn parse(s: &str, p: u64) -> Result<Poly> {
    let t = s.trim();
    if t.is_empty() {
        return invalid("empty polynomial");
    }
    let mut out = if t.contains('x') || t.contains('X') {
        parse_human(t, p)?
    } else {
        let inner = t.trim_start_matches('[').trim_end_matches(']');
        inner
            .split(',')
            .map(|c| {
                let c = c.trim();
                c.parse::<i64>()
                    .map(|v| v.rem_euclid(p as i64) as u64)
                    .or_else(|_| invalid(format!("bad coefficient {c:?}")))
            })
            .collect::<Result<Poly>>()?
    };
    trim(&mut out);
    Ok(out)
}

fn parse_human(s: &str, p: u64) -> Result<Poly> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let compact = compact.replace('X', "x").replace('*', "");
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    let mut coeffs: Poly = Vec::new();
    for term in terms {
        let (neg, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term.strip_prefix('+').unwrap_or(&term)),
        };
        let (coef, exp) = match body.find('x') {
            None => (parse_num(body)?, 0usize),
            Some(ix) => {
                let c = if ix == 0 { 1 } else { parse_num(&body[..ix])? };
                let rest = &body[ix + 1..];
                let e = if rest.is_empty() {
                    1
                } else if let Some(e) = rest.strip_prefix('^') {
                    e.parse::<usize>()
                        .or_else(|_| invalid(format!("bad exponent in {term:?}")))?
                } else {
                    return invalid(format!("bad term {term:?}"));
                };
                (c, e)
            }
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        let c = coef % p;
        let c = if neg { (p - c) % p } else { c };
        coeffs[exp] = (coeffs[exp] + c) % p;
    }
    Ok(coeffs)
}

fn parse_num(s: &str) -> Result<u64> {
    s.parse::<u64>()
        .or_else(|_| invalid(format!("bad coefficient {s:?}")))
}

/// List form, constant term first: `[2,0,0,0,0,1,1]`.
pub fn format_list(a: &[u64]) -> String {
    let inner: Vec<String> = a.iter().map(|c| c.to_string()).collect();
    format!("[{}]", inner.join(","))
}

/// Human form, highest degree first: `x^6+x^5+2`.
pub fn format_human(a: &[u64]) -> String {
    let mut out = String::new();
    for (i, &c) in a.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        match (i, c) {
            (0, c) => write!(out, "{c}").unwrap(),
            (_, 1) => {}
            (_, c) => write!(out, "{c}").unwrap(),
        }
        match i {
            0 => {}
            1 => out.push('x'),
            _ => write!(out, "x^{i}").unwrap(),
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

    #[test]
    fn parses_both_forms() {
        let want = vec![2, 0, 0, 0, 0, 1, 1];
        assert_eq!(parse("x^6+x^5+2", 3).unwrap(), want);
        assert_eq!(parse(" x^6 + x^5 - 1 ", 3).unwrap(), want);
        assert_eq!(parse("[2,0,0,0,0,1,1]", 3).unwrap(), want);
        assert_eq!(parse("2, 0, 0, 0, 0, 1, 1", 3).unwrap(), want);
        assert_eq!(parse("2x^2+x", 5).unwrap(), vec![0, 1, 2]);
        assert!(parse("x^^2", 3).is_err());
        assert!(parse("", 3).is_err());
    }

    #[test]
    fn human_round_trip() {
        assert_eq!(format_human(&[2, 0, 0, 0, 0, 1, 1]), "x^6+x^5+2");
        assert_eq!(format_human(&[0, 2, 1]), "x^2+2x");
        assert_eq!(parse(&format_human(&[4, 3, 0, 1]), 5).unwrap(), vec![4, 3, 0, 1]);
    }

    #[test]
    fn gcd_of_products() {
        // (x+1)(x+2) and (x+1)(x+3) over GF(5)
        let a = vec![2, 3, 1];
        let b = vec![3, 4, 1];
        assert_eq!(gcd(&a, &b, 5), vec![1, 1]);
    }

    #[test]
    fn x_to_the_order_is_one() {
        let f = vec![2, 0, 0, 0, 0, 1, 1];
        assert_eq!(pow_mod(&[0, 1], 728, &f, 3), vec![1]);
        assert_ne!(pow_mod(&[0, 1], 364, &f, 3), vec![1]);
    }
}
