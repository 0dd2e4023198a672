//! m-sequences `s_t = Tr_1^n(alpha^t)`, their decimations `s_(dt)`, and the
//! classification of decimations of Niho type.

use std::fmt;
use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{invalid, Error, Result};
use crate::field::{field_size, Field};
use crate::poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecimationKind {
    /// `d = (p^n - 1)/2 + 1`, i.e. `s = (p^m + 1)/2`.
    Theorem1,
    /// `d = (p^m - 1)^2/2 + 1`, i.e. `s = (p^m - 1)/2`.
    Theorem2,
    /// Any other `d = 1 mod (p^m - 1)`.
    GenericNiho,
    NonNiho,
}

impl DecimationKind {
    pub fn is_niho(self) -> bool {
        !matches!(self, DecimationKind::NonNiho)
    }
}

impl fmt::Display for DecimationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecimationKind::Theorem1 => "theorem1",
            DecimationKind::Theorem2 => "theorem2",
            DecimationKind::GenericNiho => "generic-niho",
            DecimationKind::NonNiho => "non-niho",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecimationParams {
    pub p: u64,
    /// Half-degree; absent when the field degree is odd.
    pub m: Option<u32>,
    pub d: u64,
    /// Niho parameter `(d - 1)/(p^m - 1)`, when `d = 1 mod (p^m - 1)`.
    pub s: Option<u64>,
    /// `gcd(d, p^n - 1)`.
    pub g: u64,
    pub kind: DecimationKind,
}

impl DecimationParams {
    /// `p^m`, when the half-degree exists.
    pub fn pm(&self) -> Option<u64> {
        self.m.map(|m| self.p.pow(m))
    }

    /// Classifies `d` for the given field; odd-degree fields only admit
    /// [`DecimationKind::NonNiho`].
    pub fn for_field(field: &Field, d: u64) -> Result<Self> {
        match field.half_degree() {
            Some(m) => classify_decimation(field.p(), m, d),
            None => {
                let order = field.order();
                check_range(d, order)?;
                Ok(DecimationParams {
                    p: field.p(),
                    m: None,
                    d,
                    s: None,
                    g: gcd(d, order),
                    kind: DecimationKind::NonNiho,
                })
            }
        }
    }
}

fn check_range(d: u64, order: u64) -> Result<()> {
    if d == 0 || d >= order {
        return invalid(format!("decimation {d} outside [1, {}]", order - 1));
    }
    Ok(())
}

/// `(p^(2m) - 1)/2 + 1`.
pub fn theorem1_decimation(p: u64, m: u32) -> Result<u64> {
    let q = field_size(p, 2 * m)?;
    Ok((q - 1) / 2 + 1)
}

/// `(p^m - 1)^2/2 + 1`.
pub fn theorem2_decimation(p: u64, m: u32) -> Result<u64> {
    let pm = field_size(p, m)?;
    Ok((pm - 1) * (pm - 1) / 2 + 1)
}

/// Whether the gcd of the theorem-2 decimation with `p^n - 1` should be 3:
/// exactly when `p = -1 mod 3` and `m` is odd.
pub fn gcd_rule_is_three(p: u64, m: u32) -> bool {
    p % 3 == 2 && m % 2 == 1
}

pub fn classify_decimation(p: u64, m: u32, d: u64) -> Result<DecimationParams> {
    if p < 3 || !crate::arith::is_prime(p) {
        return invalid(format!("{p} is not an odd prime"));
    }
    if m == 0 {
        return invalid("m must be at least 1");
    }
    let pm = field_size(p, m)?;
    let order = field_size(p, 2 * m)? - 1;
    check_range(d, order)?;
    let g = gcd(d, order);
    let s = (d - 1).is_multiple_of(pm - 1).then(|| (d - 1) / (pm - 1));
    let kind = match s {
        None => DecimationKind::NonNiho,
        Some(s) if s == pm.div_ceil(2) => DecimationKind::Theorem1,
        Some(s) if s == (pm - 1) / 2 => DecimationKind::Theorem2,
        Some(_) => DecimationKind::GenericNiho,
    };
    if kind == DecimationKind::Theorem2 {
        let want = if gcd_rule_is_three(p, m) { 3 } else { 1 };
        if g != want {
            return Err(Error::Consistency(format!(
                "gcd({d}, {order}) = {g}, expected {want} for p = {p}, m = {m}"
            )));
        }
    }
    Ok(DecimationParams {
        p,
        m: Some(m),
        d,
        s,
        g,
        kind,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub p: u64,
    pub n: u32,
    pub poly: Vec<u64>,
    pub d: u64,
}

/// A fully materialized period of a p-ary sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    pub p: u64,
    pub values: Vec<u32>,
    pub provenance: Provenance,
}

/// `Tr_1^n(alpha^t)` for `t = 0..p^n-2`.
pub fn m_sequence(field: &Field) -> Sequence {
    let order = field.order() as usize;
    let mut values = Vec::with_capacity(order);
    if field.has_tables() {
        values.extend((0..order as u64).map(|t| field.absolute_trace(field.alpha_pow(t)) as u32));
    } else {
        let alpha = field.alpha();
        let mut cur = field.one();
        for _ in 0..order {
            values.push(field.absolute_trace(cur) as u32);
            cur = field.mul_poly(cur, alpha);
        }
    }
    Sequence {
        p: field.p(),
        values,
        provenance: Provenance {
            p: field.p(),
            n: field.n(),
            poly: field.poly().to_vec(),
            d: 1,
        },
    }
}

impl Sequence {
    pub fn period(&self) -> usize {
        self.values.len()
    }

    /// `values[t] = base[d t mod L]` over the full length `L`.
    pub fn decimate(&self, d: u64) -> Result<Sequence> {
        let len = self.values.len() as u64;
        check_range(d, len)?;
        let values = (0..len)
            .map(|t| self.values[((d as u128 * t as u128) % len as u128) as usize])
            .collect();
        let mut provenance = self.provenance.clone();
        provenance.d = ((provenance.d as u128 * d as u128) % len as u128) as u64;
        Ok(Sequence {
            p: self.p,
            values,
            provenance,
        })
    }

    pub fn histogram(&self) -> Vec<u64> {
        let mut h = vec![0u64; self.p as usize];
        for &v in &self.values {
            h[v as usize] += 1;
        }
        h
    }

    /// Zero appears `p^(n-1) - 1` times, every other symbol `p^(n-1)` times.
    pub fn is_balanced(&self) -> bool {
        let h = self.histogram();
        let full = (self.values.len() as u64 + 1) / self.p;
        h[0] + 1 == full && h[1..].iter().all(|&c| c == full)
    }

    /// Smallest `r` dividing the length with `values[t + r] = values[t]`.
    pub fn least_period(&self) -> usize {
        let len = self.values.len();
        (1..=len)
            .filter(|r| len.is_multiple_of(*r))
            .find(|&r| (0..len).all(|t| self.values[t] == self.values[(t + r) % len]))
            .unwrap_or(len)
    }

    /// One symbol per line after a `#` header carrying `p`, `n`, `poly`, `d`.
    pub fn write_to(&self, mut w: impl Write) -> io::Result<()> {
        let pr = &self.provenance;
        writeln!(
            w,
            "# p={} n={} poly={} d={}",
            pr.p,
            pr.n,
            poly::format_list(&pr.poly),
            pr.d
        )?;
        for v in &self.values {
            writeln!(w, "{v}")?;
        }
        Ok(())
    }

    pub fn read_from(r: impl BufRead) -> Result<Sequence> {
        let mut lines = r.lines();
        let header = match lines.next() {
            Some(Ok(h)) => h,
            _ => return invalid("missing header"),
        };
        let mut p = None;
        let mut n = None;
        let mut polyv = None;
        let mut d = None;
        for field in header.trim_start_matches('#').split_whitespace() {
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("bad header field {field:?}")))?;
            let num = || v.parse::<u64>().map_err(|_| Error::InvalidArgument(format!("bad {k}")));
            match k {
                "p" => p = Some(num()?),
                "n" => n = Some(num()? as u32),
                "d" => d = Some(num()?),
                "poly" => polyv = Some(v.to_string()),
                _ => {}
            }
        }
        let (Some(p), Some(n), Some(polyv), Some(d)) = (p, n, polyv, d) else {
            return invalid("header must carry p, n, poly and d");
        };
        let poly = poly::parse(&polyv, p)?;
        let mut values = Vec::new();
        for line in lines {
            let line = line.map_err(|e| Error::InvalidArgument(e.to_string()))?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let v: u32 = t
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad symbol {t:?}")))?;
            if v as u64 >= p {
                return invalid(format!("symbol {v} not below {p}"));
            }
            values.push(v);
        }
        Ok(Sequence {
            p,
            values,
            provenance: Provenance { p, n, poly, d },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_field() -> Field {
        Field::new(3, 6, vec![2, 0, 0, 0, 0, 1, 1]).unwrap()
    }

    #[test]
    fn example_sequence_is_balanced() {
        let s = m_sequence(&example_field());
        assert_eq!(s.period(), 728);
        assert_eq!(s.histogram(), vec![242, 243, 243]);
        assert!(s.is_balanced());
        assert_eq!(s.least_period(), 728);
    }

    #[test]
    fn gf9_sequence_by_hand() {
        // Oracle: Tr(x) = x + x^3 through the generic power routine.
        let f = Field::new(3, 2, vec![2, 1, 1]).unwrap();
        let s = m_sequence(&f);
        let oracle: Vec<u32> = (0..8)
            .map(|t| {
                let x = f.alpha_pow(t);
                f.add(x, f.pow(x, 3).unwrap()).unwrap().code() as u32
            })
            .collect();
        assert_eq!(s.values, oracle);
        assert_eq!(s.histogram(), vec![2, 3, 3]);
    }

    #[test]
    fn example_decimation() {
        let f = example_field();
        let s = m_sequence(&f);
        let dec = s.decimate(339).unwrap();
        for t in 0..728u64 {
            assert_eq!(dec.values[t as usize] as u64, f.absolute_trace(f.alpha_pow(339 * t)));
        }
        assert_eq!(s.decimate(1).unwrap().values, s.values);
        assert!(dec.is_balanced());
        assert!(s.decimate(0).is_err());
        assert!(s.decimate(728).is_err());
    }

    #[test]
    fn gcd_three_decimation_has_shorter_period() {
        let f = Field::with_default_poly(5, 2).unwrap();
        let s = m_sequence(&f).decimate(9).unwrap();
        assert_eq!(s.least_period(), 8);
    }

    #[test]
    fn decimation_composes() {
        let f = Field::with_default_poly(3, 4).unwrap();
        let s = m_sequence(&f);
        let len = 80u64;
        for (d1, d2) in [(3, 7), (11, 13), (33, 3), (41, 79)] {
            let a = s.decimate(d1).unwrap().decimate(d2).unwrap();
            let b = s.decimate(d1 * d2 % len).unwrap();
            assert_eq!(a.values, b.values);
            if gcd(d1 * d2, len) == 1 {
                assert!(a.is_balanced());
            }
        }
    }

    #[test]
    fn classification_examples() {
        let c = classify_decimation(3, 3, 339).unwrap();
        assert_eq!((c.s, c.g, c.kind), (Some(13), 1, DecimationKind::Theorem2));
        let c = classify_decimation(5, 1, 9).unwrap();
        assert_eq!((c.s, c.g, c.kind), (Some(2), 3, DecimationKind::Theorem2));
        let c = classify_decimation(3, 3, 1).unwrap();
        assert_eq!((c.s, c.g, c.kind), (Some(0), 1, DecimationKind::GenericNiho));
        let c = classify_decimation(3, 3, 365).unwrap();
        assert_eq!((c.s, c.kind), (Some(14), DecimationKind::Theorem1));
        let c = classify_decimation(3, 3, 2).unwrap();
        assert_eq!((c.s, c.kind), (None, DecimationKind::NonNiho));
        assert!(classify_decimation(3, 3, 728).is_err());
        assert!(classify_decimation(2, 3, 5).is_err());
    }

    #[test]
    fn theorem2_parameter_and_gcd_rule() {
        for p in [3u64, 5, 7, 11, 13] {
            for m in 1..=3u32 {
                if p.pow(2 * m) > 1 << 40 {
                    continue;
                }
                let d = theorem2_decimation(p, m).unwrap();
                let c = classify_decimation(p, m, d).unwrap();
                assert_eq!(c.s, Some((p.pow(m) - 1) / 2));
                assert_eq!(c.g == 3, gcd_rule_is_three(p, m));
            }
        }
        assert_eq!(theorem2_decimation(3, 3).unwrap(), 339);
        assert_eq!(theorem1_decimation(3, 1).unwrap(), 5);
    }

    #[test]
    fn export_round_trip() {
        let f = Field::with_default_poly(3, 2).unwrap();
        let s = m_sequence(&f).decimate(5).unwrap();
        let mut buf = Vec::new();
        s.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# p=3 n=2 poly=[2,1,1] d=5\n"));
        assert_eq!(Sequence::read_from(&buf[..]).unwrap(), s);
    }
}
