//! Arithmetic in GF(p^n) defined by a primitive polynomial.
//!
//! Elements are packed as base-p integers (`code = sum c_i p^i`, where `c_i`
//! is the coefficient of `x^i`). When `p^n <= 2^22` the field carries
//! exp/log tables and multiplication is exponent addition; otherwise it
//! falls back to polynomial multiplication with square-and-multiply.
//! Both paths produce identical results.
//!
//! The subfield GF(p^m) for `m | n` is the fixed field of `x -> x^(p^m)`
//! inside GF(p^n); no second basis is ever constructed.

use std::fmt;

use crate::arith;
use crate::error::{invalid, Error, Result};
use crate::poly::{self, Poly};

/// Fields up to this size get exp/log tables.
pub const TABLE_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    code: u64,
    tag: u64,
}

impl FieldElement {
    /// Packed base-p coefficient code.
    pub fn code(self) -> u64 {
        self.code
    }

    pub fn is_zero(self) -> bool {
        self.code == 0
    }
}

#[derive(Clone)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// GF(p^n) together with its defining primitive polynomial.
#[derive(Clone)]
pub struct Field {
    p: u64,
    n: u32,
    poly: Poly,
    size: u64,
    order: u64,
    factorization: Vec<(u64, u32)>,
    tag: u64,
    /// `Tr_1^n(x^i)` for the polynomial basis, `i = 0..n`.
    basis_traces: Vec<u64>,
    tables: Option<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("poly", &self.poly)
            .field("tables", &self.tables.is_some())
            .finish()
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !arith::is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    Ok(())
}

/// `p^n`, rejecting anything whose multiplicative group order does not fit
/// comfortably in 63 bits.
pub fn field_size(p: u64, n: u32) -> Result<u64> {
    match p.checked_pow(n) {
        Some(q) if q < 1 << 63 => Ok(q),
        _ => invalid(format!("{p}^{n} is too large")),
    }
}

fn check_shape(p: u64, n: u32, poly: &[u64]) -> Result<()> {
    if n == 0 {
        return invalid("degree must be at least 1");
    }
    if poly.len() != n as usize + 1 {
        return invalid(format!(
            "polynomial has degree {:?}, expected {n}",
            poly::degree(poly)
        ));
    }
    if poly[n as usize] != 1 {
        return invalid("polynomial is not monic");
    }
    if let Some(c) = poly.iter().find(|&&c| c >= p) {
        return invalid(format!("coefficient {c} not reduced mod {p}"));
    }
    Ok(())
}

/// True iff `poly` is irreducible over GF(p) and `x` has order `p^n - 1`
/// modulo it.
pub fn validate_primitive(p: u64, n: u32, poly: &[u64]) -> Result<bool> {
    check_prime(p)?;
    check_shape(p, n, poly)?;
    let order = field_size(p, n)? - 1;
    let factors = arith::factorize(order)?;
    Ok(is_primitive_with(p, n, poly, order, &factors))
}

fn is_primitive_with(p: u64, n: u32, poly: &[u64], order: u64, factors: &[(u64, u32)]) -> bool {
    if poly[0] == 0 {
        return false;
    }
    is_irreducible(p, n, poly) && has_full_order(p, poly, order, factors)
}

fn has_full_order(p: u64, poly: &[u64], order: u64, factors: &[(u64, u32)]) -> bool {
    let x: Poly = vec![0, 1];
    let one: Poly = vec![1];
    if poly::pow_mod(&x, order, poly, p) != one {
        return false;
    }
    factors
        .iter()
        .all(|&(q, _)| poly::pow_mod(&x, order / q, poly, p) != one)
}

/// Rabin's test: `x^(p^n) = x mod f` and `gcd(x^(p^(n/q)) - x, f) = 1` for
/// every prime `q | n`.
fn is_irreducible(p: u64, n: u32, poly: &[u64]) -> bool {
    let x: Poly = vec![0, 1];
    let frob = |k: u32| {
        let mut acc = x.clone();
        for _ in 0..k {
            acc = poly::pow_mod(&acc, p, poly, p);
        }
        acc
    };
    if poly::rem_monic(frob(n), poly, p) != poly::rem_monic(x.clone(), poly, p) {
        return false;
    }
    let n_factors = arith::factorize(n as u64).expect("small integers always factor");
    n_factors.iter().all(|&(q, _)| {
        let diff = poly::sub(&frob(n / q as u32), &x, p);
        poly::gcd(&diff, poly, p) == vec![1]
    })
}

/// First primitive polynomial of degree `n` over GF(p), enumerating monic
/// polynomials lexicographically on their coefficient vectors with the
/// constant term varying fastest.
pub fn find_primitive_poly(p: u64, n: u32) -> Result<Poly> {
    check_prime(p)?;
    if n == 0 {
        return invalid("degree must be at least 1");
    }
    let size = field_size(p, n)?;
    let order = size - 1;
    let factors = arith::factorize(order)?;
    let mut poly = vec![0u64; n as usize + 1];
    poly[n as usize] = 1;
    for k in 0..size {
        let mut rest = k;
        for c in poly.iter_mut().take(n as usize) {
            *c = rest % p;
            rest /= p;
        }
        if is_primitive_with(p, n, &poly, order, &factors) {
            return Ok(poly);
        }
    }
    Err(Error::Consistency(format!(
        "no primitive polynomial of degree {n} over GF({p})"
    )))
}

fn fingerprint(p: u64, n: u32, poly: &[u64]) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in std::iter::once(p).chain(std::iter::once(n as u64)).chain(poly.iter().copied()) {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

impl Field {
    /// Builds GF(p^n) from an explicit polynomial, validating primitivity.
    pub fn new(p: u64, n: u32, poly: Poly) -> Result<Self> {
        if !validate_primitive(p, n, &poly)? {
            return invalid(format!(
                "{} is not primitive over GF({p})",
                poly::format_human(&poly)
            ));
        }
        Self::build(p, n, poly, TABLE_LIMIT)
    }

    /// GF(p^n) using [`find_primitive_poly`]'s deterministic first hit.
    pub fn with_default_poly(p: u64, n: u32) -> Result<Self> {
        let poly = find_primitive_poly(p, n)?;
        Self::build(p, n, poly, TABLE_LIMIT)
    }

    /// Same field but never building tables, for exercising the fallback.
    pub fn without_tables(&self) -> Self {
        let mut f = self.clone();
        f.tables = None;
        f
    }

    fn build(p: u64, n: u32, poly: Poly, table_limit: u64) -> Result<Self> {
        let size = field_size(p, n)?;
        let order = size - 1;
        let factorization = arith::factorize(order)?;
        let mut field = Field {
            p,
            n,
            tag: fingerprint(p, n, &poly),
            poly,
            size,
            order,
            factorization,
            basis_traces: Vec::new(),
            tables: None,
        };
        if size <= table_limit {
            let mut exp = Vec::with_capacity(order as usize);
            let mut log = vec![u32::MAX; size as usize];
            let mut cur = 1u64;
            for e in 0..order {
                if log[cur as usize] != u32::MAX {
                    return Err(Error::Consistency("alpha is not primitive".into()));
                }
                exp.push(cur as u32);
                log[cur as usize] = e as u32;
                cur = field.mul_by_x(cur);
            }
            if cur != 1 {
                return Err(Error::Consistency("alpha^(p^n-1) != 1".into()));
            }
            field.tables = Some(Tables { exp, log });
        }
        let mut traces = Vec::with_capacity(n as usize);
        let mut basis = field.one();
        let x = field.alpha();
        for _ in 0..n {
            let t = field.trace_by_frobenius(basis, n, 1);
            if t.code >= p {
                return Err(Error::Consistency("trace left GF(p)".into()));
            }
            traces.push(t.code);
            basis = field.mul_poly(basis, x);
        }
        field.basis_traces = traces;
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `m` with `n = 2m`, when `n` is even.
    pub fn half_degree(&self) -> Option<u32> {
        self.n.is_multiple_of(2).then_some(self.n / 2)
    }

    /// `l = n / m` for the half-degree subfield, when it exists.
    pub fn tower_ratio(&self) -> Option<u32> {
        self.half_degree().map(|m| self.n / m)
    }

    /// Defining polynomial, constant term first.
    pub fn poly(&self) -> &[u64] {
        &self.poly
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// `p^n - 1`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn factorization(&self) -> &[(u64, u32)] {
        &self.factorization
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    fn elem(&self, code: u64) -> FieldElement {
        FieldElement { code, tag: self.tag }
    }

    fn check(&self, a: FieldElement) -> Result<()> {
        if a.tag != self.tag {
            return invalid("element belongs to a different field");
        }
        Ok(())
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    /// Residue of `x`, the primitive element.
    pub fn alpha(&self) -> FieldElement {
        if self.n == 1 {
            // x = -poly[0] in GF(p)
            self.elem((self.p - self.poly[0]) % self.p)
        } else {
            self.elem(self.p)
        }
    }

    /// Embeds an integer of GF(p).
    pub fn from_int(&self, v: i64) -> FieldElement {
        self.elem(v.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.n as usize {
            return invalid(format!("more than {} coefficients", self.n));
        }
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return invalid(format!("coefficient {c} not reduced mod {}", self.p));
            }
            code = code * self.p + c;
        }
        Ok(self.elem(code))
    }

    pub fn from_code(&self, code: u64) -> Result<FieldElement> {
        if code >= self.size {
            return invalid(format!("code {code} out of range"));
        }
        Ok(self.elem(code))
    }

    /// Coefficient vector of length `n`, constant term first.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        let mut rest = a.code;
        (0..self.n)
            .map(|_| {
                let c = rest % self.p;
                rest /= self.p;
                c
            })
            .collect()
    }

    /// Exponent of `a` relative to `alpha`; `None` for zero or when the field
    /// has no log table.
    pub fn to_exp(&self, a: FieldElement) -> Option<u64> {
        let t = self.tables.as_ref()?;
        if a.code == 0 {
            return None;
        }
        Some(t.log[a.code as usize] as u64)
    }

    /// `alpha^e` for any `e`, reduced mod `p^n - 1`.
    pub fn alpha_pow(&self, e: u64) -> FieldElement {
        let e = e % self.order;
        match &self.tables {
            Some(t) => self.elem(t.exp[e as usize] as u64),
            None => self.pow_poly(self.alpha(), e),
        }
    }

    /// `alpha^e` for signed `e`.
    pub fn alpha_pow_signed(&self, e: i128) -> FieldElement {
        self.alpha_pow(e.rem_euclid(self.order as i128) as u64)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_raw(a, b))
    }

    pub(crate) fn add_raw(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p;
        let (mut x, mut y) = (a.code, b.code);
        let mut code = 0u64;
        let mut place = 1u64;
        while x > 0 || y > 0 {
            let s = (x % p + y % p) % p;
            code += s * place;
            x /= p;
            y /= p;
            place = place.saturating_mul(p);
        }
        self.elem(code)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let c: Vec<u64> = self
            .coeffs(a)
            .into_iter()
            .map(|c| (self.p - c) % self.p)
            .collect();
        self.from_coeffs(&c).expect("reduced coefficients")
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(b)?;
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(match &self.tables {
            Some(t) => self.mul_table(t, a, b),
            None => self.mul_poly(a, b),
        })
    }

    fn mul_table(&self, t: &Tables, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.code == 0 || b.code == 0 {
            return self.zero();
        }
        let e = (t.log[a.code as usize] as u64 + t.log[b.code as usize] as u64) % self.order;
        self.elem(t.exp[e as usize] as u64)
    }

    /// Multiplication through polynomial reduction, independent of tables.
    pub fn mul_poly(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let prod = poly::mul_mod(&self.coeffs(a), &self.coeffs(b), &self.poly, self.p);
        self.from_coeffs(&prod).expect("reduced product")
    }

    fn mul_by_x(&self, code: u64) -> u64 {
        let p = self.p;
        let n = self.n as usize;
        let top_place = self.size / p;
        let top = code / top_place;
        let shifted = (code % top_place) * p;
        if top == 0 {
            return shifted;
        }
        // x^n = -(poly[0] + ... + poly[n-1] x^(n-1))
        let mut c = self.coeffs(self.elem(shifted));
        for (i, ci) in c.iter_mut().enumerate().take(n) {
            *ci = (*ci + (p - self.poly[i]) * top) % p;
        }
        self.from_coeffs(&c).expect("reduced").code
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement> {
        self.check(a)?;
        Ok(self.pow_raw(a, e))
    }

    pub(crate) fn pow_raw(&self, a: FieldElement, e: u64) -> FieldElement {
        match &self.tables {
            Some(t) => {
                if a.code == 0 {
                    return if e == 0 { self.one() } else { self.zero() };
                }
                let le = t.log[a.code as usize] as u128 * e as u128 % self.order as u128;
                self.elem(t.exp[le as usize] as u64)
            }
            None => self.pow_poly(a, e),
        }
    }

    fn pow_poly(&self, a: FieldElement, e: u64) -> FieldElement {
        let r = poly::pow_mod(&self.coeffs(a), e, &self.poly, self.p);
        self.from_coeffs(&r).expect("reduced power")
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.code == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_raw(a, self.order - 1))
    }

    /// `x^(p^k)`.
    pub fn frobenius(&self, a: FieldElement, k: u32) -> FieldElement {
        let mut r = a;
        for _ in 0..k {
            r = self.pow_raw(r, self.p);
        }
        r
    }

    /// `Tr_to^from(x) = x + x^(p^to) + ... + x^(p^((l-1)to))` with
    /// `l = from/to`, for `x` in the subfield GF(p^from). The result lies in
    /// GF(p^to) as embedded in GF(p^n).
    pub fn trace(&self, x: FieldElement, from: u32, to: u32) -> Result<FieldElement> {
        self.check(x)?;
        if from == 0 || !self.n.is_multiple_of(from) {
            return invalid(format!("{from} does not divide {}", self.n));
        }
        if to == 0 || !from.is_multiple_of(to) {
            return invalid(format!("{to} does not divide {from}"));
        }
        if from != self.n && self.frobenius(x, from) != x {
            return invalid(format!("element is not in GF({}^{from})", self.p));
        }
        Ok(self.trace_by_frobenius(x, from, to))
    }

    fn trace_by_frobenius(&self, x: FieldElement, from: u32, to: u32) -> FieldElement {
        let mut acc = self.zero();
        let mut conj = x;
        for _ in 0..from / to {
            acc = self.add_raw(acc, conj);
            conj = self.frobenius(conj, to);
        }
        acc
    }

    /// `Tr_1^n(x)` as an integer in `[0, p)`, via the traces of the
    /// polynomial basis.
    pub fn absolute_trace(&self, x: FieldElement) -> u64 {
        let p = self.p;
        let mut rest = x.code;
        let mut acc = 0u64;
        for &t in &self.basis_traces {
            acc += (rest % p) * t;
            rest /= p;
        }
        acc % p
    }

    /// Whether `x` lies in the subfield GF(p^m), i.e. `x^(p^m) = x`.
    pub fn in_subfield(&self, x: FieldElement, m: u32) -> Result<bool> {
        self.check(x)?;
        if m == 0 || !self.n.is_multiple_of(m) {
            return invalid(format!("{m} does not divide {}", self.n));
        }
        Ok(self.frobenius(x, m) == x)
    }

    /// The `p^m + 1` elements with `x^(p^m+1) = 1`, as
    /// `alpha^(j(p^m-1))` for `j = 0..=p^m` in increasing `j`.
    pub fn unit_circle(&self) -> Result<Vec<FieldElement>> {
        let m = self
            .half_degree()
            .ok_or_else(|| Error::InvalidArgument(format!("n = {} is odd", self.n)))?;
        let q = self.p.pow(m);
        Ok((0..=q).map(|j| self.alpha_pow(j * (q - 1))).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn gf729() -> Field {
        Field::new(3, 6, vec![2, 0, 0, 0, 0, 1, 1]).unwrap()
    }

    #[test]
    fn example_polynomial_is_primitive() {
        assert!(validate_primitive(3, 6, &[2, 0, 0, 0, 0, 1, 1]).unwrap());
    }

    #[test]
    fn small_primitivity_cases() {
        assert!(validate_primitive(3, 1, &[1, 1]).unwrap());
        assert!(!validate_primitive(3, 2, &[1, 0, 1]).unwrap());
        // x^2+1 over GF(3) is irreducible yet not primitive.
        assert!(is_irreducible(3, 2, &[1, 0, 1]));
        // x^2+2 = (x+1)(x+2) is reducible.
        assert!(!validate_primitive(3, 2, &[2, 0, 1]).unwrap());
        assert!(!validate_primitive(3, 1, &[0, 1]).unwrap());
    }

    #[test]
    fn validate_rejects_bad_shape() {
        assert!(validate_primitive(3, 6, &[2, 0, 0, 0, 0, 1, 2]).is_err());
        assert!(validate_primitive(3, 6, &[2, 0, 0, 0, 1, 1]).is_err());
        assert!(validate_primitive(3, 2, &[1, 5, 1]).is_err());
        assert!(validate_primitive(9, 2, &[2, 1, 1]).is_err());
        // p = 2 is accepted by the field core.
        assert!(validate_primitive(2, 3, &[1, 1, 0, 1]).unwrap());
    }

    fn brute_order(f: &Field, a: FieldElement) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != f.one() {
            x = f.mul_poly(x, a);
            k += 1;
        }
        k
    }

    #[test]
    fn find_poly_gf25_has_full_order_root() {
        let poly = find_primitive_poly(5, 2).unwrap();
        let f = Field::new(5, 2, poly).unwrap();
        assert_eq!(brute_order(&f, f.alpha()), 24);
        // Exhaustive: exactly phi(24) = 8 primitive elements.
        let prim = (1..25)
            .filter(|&c| brute_order(&f, f.from_code(c).unwrap()) == 24)
            .count();
        assert_eq!(prim, 8);
    }

    #[test]
    fn find_poly_is_deterministic_and_valid() {
        for (p, n) in [(3, 1), (3, 2), (3, 6), (5, 3), (7, 2), (11, 1)] {
            let a = find_primitive_poly(p, n).unwrap();
            assert_eq!(a, find_primitive_poly(p, n).unwrap());
            assert!(validate_primitive(p, n, &a).unwrap(), "{p} {n} {a:?}");
        }
        assert_eq!(find_primitive_poly(3, 1).unwrap(), vec![1, 1]);
    }

    #[test]
    fn identity_and_group_order() {
        let f = gf729();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let a = f.from_code(rng.gen_range(0..729)).unwrap();
            assert_eq!(f.mul(a, f.one()).unwrap(), a);
        }
        assert_eq!(f.pow(f.alpha(), 728).unwrap(), f.one());
        assert_eq!(f.alpha_pow(728), f.one());
    }

    #[test]
    fn table_and_polynomial_paths_agree() {
        let f = gf729();
        let g = f.without_tables();
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let a = f.from_code(rng.gen_range(0..729)).unwrap();
            let b = f.from_code(rng.gen_range(0..729)).unwrap();
            assert_eq!(f.mul(a, b).unwrap(), f.mul_poly(a, b));
            assert_eq!(f.mul(a, b).unwrap(), g.mul(a, b).unwrap());
            let e = rng.gen_range(0..5000);
            assert_eq!(f.pow(a, e).unwrap(), g.pow(a, e).unwrap());
        }
        for e in [0, 1, 5, 339, 727, 1000] {
            assert_eq!(f.alpha_pow(e), g.alpha_pow(e));
        }
    }

    #[test]
    fn inverse_and_errors() {
        let f = gf729();
        assert_eq!(f.inv(f.zero()), Err(Error::DivisionByZero));
        for c in 1..729 {
            let a = f.from_code(c).unwrap();
            assert_eq!(f.mul(a, f.inv(a).unwrap()).unwrap(), f.one());
        }
        let other = Field::with_default_poly(3, 2).unwrap();
        assert!(matches!(f.mul(f.one(), other.alpha()), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn exp_round_trip() {
        let f = gf729();
        assert_eq!(f.to_exp(f.zero()), None);
        for e in 0..728 {
            let a = f.alpha_pow(e);
            assert_eq!(f.to_exp(a), Some(e));
            assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
        }
    }

    #[test]
    fn trace_examples() {
        // GF(9) with x^2+x+2: alpha^2 = -alpha - 2 = 2 alpha + 1,
        // alpha^3 = 2 alpha^2 + alpha = 5 alpha + 2 = 2 alpha + 2,
        // Tr(alpha) = alpha + alpha^3 = 3 alpha + 2 = 2.
        let f = Field::new(3, 2, vec![2, 1, 1]).unwrap();
        assert_eq!(f.coeffs(f.alpha_pow(3)), vec![2, 2]);
        assert_eq!(f.trace(f.alpha(), 2, 1).unwrap(), f.from_int(2));
        assert_eq!(f.absolute_trace(f.alpha()), 2);

        let g = gf729();
        assert_eq!(g.trace(g.zero(), 6, 1).unwrap(), g.zero());
        assert!(g.trace(g.alpha(), 6, 4).is_err());
        assert!(g.trace(g.alpha(), 3, 1).is_err());
        for c in (0..729).step_by(17) {
            let x = g.from_code(c).unwrap();
            let want = g.add(x, g.pow(x, 27).unwrap()).unwrap();
            let t = g.trace(x, 6, 3).unwrap();
            assert_eq!(t, want);
            assert!(g.in_subfield(t, 3).unwrap());
        }
    }

    #[test]
    fn trace_properties_exhaustive() {
        for f in [Field::with_default_poly(3, 2).unwrap(), Field::with_default_poly(3, 4).unwrap(), gf729()] {
            let m = f.half_degree().unwrap();
            for c in 0..f.size() {
                let x = f.from_code(c).unwrap();
                let t = f.absolute_trace(x);
                let n = f.n();
                assert_eq!(f.trace(x, n, 1).unwrap().code(), t);
                assert_eq!(f.absolute_trace(f.pow(x, 3).unwrap()), t);
                let rel = f.trace(x, n, m).unwrap();
                assert_eq!(f.trace(rel, m, 1).unwrap().code(), t);
            }
            let mut rng = rand::rngs::StdRng::seed_from_u64(3);
            for _ in 0..200 {
                let x = f.from_code(rng.gen_range(0..f.size())).unwrap();
                let y = f.from_code(rng.gen_range(0..f.size())).unwrap();
                let s = f.absolute_trace(f.add(x, y).unwrap());
                assert_eq!(s, (f.absolute_trace(x) + f.absolute_trace(y)) % 3);
            }
        }
    }

    #[test]
    fn unit_circle_gf9() {
        let f = Field::with_default_poly(3, 2).unwrap();
        let uc = f.unit_circle().unwrap();
        let want: Vec<_> = (0..4).map(|j| f.alpha_pow(2 * j)).collect();
        assert_eq!(uc, want);
        assert!(Field::with_default_poly(3, 3).unwrap().unit_circle().is_err());
    }

    #[test]
    fn unit_circle_gf729_exhaustive() {
        let f = gf729();
        let uc = f.unit_circle().unwrap();
        assert_eq!(uc.len(), 28);
        let members: std::collections::HashSet<_> = uc.iter().copied().collect();
        assert_eq!(members.len(), 28);
        for c in 1..729 {
            let x = f.from_code(c).unwrap();
            let on = f.pow(x, 28).unwrap() == f.one();
            assert_eq!(on, members.contains(&x));
        }
        assert!(members.contains(&f.one()));
        assert!(members.contains(&f.from_int(-1)));
    }

    #[test]
    fn fallback_field_is_total() {
        // 3^14 > 2^22, so no tables.
        let f = Field::with_default_poly(3, 14).unwrap();
        assert!(!f.has_tables());
        assert_eq!(f.pow(f.alpha(), f.order()).unwrap(), f.one());
        assert_ne!(f.pow(f.alpha(), f.order() / 2).unwrap(), f.one());
        assert_eq!(f.to_exp(f.alpha()), None);
        let a = f.alpha_pow(12345);
        assert_eq!(f.mul(a, f.inv(a).unwrap()).unwrap(), f.one());
    }
}
