//! Correlation values through solution counts on the unit circle.
//!
//! For `d = s(p^m - 1) + 1`, `C_d(tau) = -1 + (N(y) - 1) p^m`, where `N(y)`
//! counts the `x` with `x^(p^m+1) = 1` and
//! `x^(2s-1) + y^(p^m) x^s + y x^(s-1) + 1 = 0`. As `tau` runs over all
//! shifts `y` runs over all nonzero elements; shift by shift the matching
//! element is `y = -alpha^tau` (see [`y_exp_for_shift`]).
//!
//! Unit-circle elements are indexed by `j` in `x = alpha^(j(p^m-1))`,
//! `j = 0..=p^m`. `x^((p^m+1)/2)` is `+1` for even `j` and `-1` for odd `j`,
//! which splits the count into `N_1` and `N_-1`.
//!
//! Three counters exist: the generic one for any Niho-type `s`, a linear
//! solver for `s = (p^m+1)/2` and a cubic root counter for `s = (p^m-1)/2`.

use serde::{Deserialize, Serialize};

use crate::correlation::SpectrumReport;
use crate::error::{invalid, Error, Result};
use crate::field::{Field, FieldElement};
use crate::sequences::{DecimationKind, DecimationParams};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NihoCount {
    /// Exponent of `y` relative to alpha.
    pub y_exp: u64,
    pub n1: u32,
    pub n_minus1: u32,
    pub total: u32,
    /// `j` of solutions on the `+1` half (all even).
    pub solutions_plus: Vec<u64>,
    /// `j` of solutions on the `-1` half (all odd).
    pub solutions_minus: Vec<u64>,
}

impl NihoCount {
    fn from_solutions(y_exp: u64, mut plus: Vec<u64>, mut minus: Vec<u64>) -> Self {
        plus.sort_unstable();
        minus.sort_unstable();
        let n1 = plus.len() as u32;
        let n_minus1 = minus.len() as u32;
        NihoCount {
            y_exp,
            n1,
            n_minus1,
            total: n1 + n_minus1,
            solutions_plus: plus,
            solutions_minus: minus,
        }
    }

    /// `-1 + (N - 1) p^m`.
    pub fn predicted_value(&self, pm: u64) -> i64 {
        -1 + (self.total as i64 - 1) * pm as i64
    }
}

/// Exponent of the `y` whose count gives `C_d(tau)`: `y = -alpha^tau`, so
/// `tau + (p^n - 1)/2`.
///
/// Substituting `x = u z` with `u` on the unit circle and `z` in GF(p^m)
/// turns `Tr(alpha^tau x) = Tr(x^d)` into the counted polynomial with
/// `y = -alpha^(tau p^m)`; conjugating by `x -> x^(p^m)` shows `y` and
/// `y^(p^m)` have equal counts.
pub fn y_exp_for_shift(order: u64, tau: u64) -> u64 {
    (tau + order / 2) % order
}

/// Geometry of the order-`(p^m+1)` subgroup inside GF(p^(2m)).
#[derive(Debug, Clone, Copy)]
struct Circle {
    pm: u64,
    order: u64,
}

impl Circle {
    fn of(field: &Field) -> Result<Self> {
        let m = field
            .half_degree()
            .ok_or_else(|| Error::InvalidArgument(format!("n = {} is odd", field.n())))?;
        Ok(Circle {
            pm: field.p().pow(m),
            order: field.order(),
        })
    }

    fn size(&self) -> u64 {
        self.pm + 1
    }

    /// Exponent of `x_j^k` relative to alpha, for signed `k`.
    fn exp(&self, j: u64, k: i128) -> i128 {
        (j as i128 * (self.pm as i128 - 1) * k).rem_euclid(self.order as i128)
    }
}

fn check_y(field: &Field, y_exp: u64) -> Result<()> {
    if y_exp >= field.order() {
        return invalid(format!("y exponent {y_exp} outside [0, {})", field.order()));
    }
    Ok(())
}

fn sum(field: &Field, terms: &[FieldElement]) -> FieldElement {
    terms
        .iter()
        .fold(field.zero(), |acc, &t| field.add_raw(acc, t))
}

/// Counts unit-circle roots of `x^(2s-1) + y^(p^m) x^s + y x^(s-1) + 1`.
pub fn niho_count_generic(field: &Field, y_exp: u64, s: u64) -> Result<NihoCount> {
    let c = Circle::of(field)?;
    check_y(field, y_exp)?;
    let s = s as i128;
    let y = y_exp as i128;
    let ypm = y * c.pm as i128;
    let (mut plus, mut minus) = (Vec::new(), Vec::new());
    for j in 0..c.size() {
        let value = sum(
            field,
            &[
                field.alpha_pow_signed(c.exp(j, 2 * s - 1)),
                field.alpha_pow_signed(ypm + c.exp(j, s)),
                field.alpha_pow_signed(y + c.exp(j, s - 1)),
                field.one(),
            ],
        );
        if value.is_zero() {
            if j % 2 == 0 {
                plus.push(j);
            } else {
                minus.push(j);
            }
        }
    }
    Ok(NihoCount::from_solutions(y_exp, plus, minus))
}

/// Index `j` of a unit-circle element, or `None` if `x` is off the circle.
fn circle_index(field: &Field, c: Circle, x: FieldElement) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    match field.to_exp(x) {
        Some(e) => (e % (c.pm - 1) == 0).then(|| e / (c.pm - 1)),
        None => (0..c.size()).find(|&j| field.alpha_pow(j * (c.pm - 1)) == x),
    }
}

/// Solutions of `a x + b = 0` with `x^((p^m+1)/2) = sign`. A vanishing
/// leading coefficient with `b = 0` admits the whole half-circle.
fn solve_linear_on_half(field: &Field, c: Circle, a: FieldElement, b: FieldElement, even: bool) -> Result<Vec<u64>> {
    if a.is_zero() {
        if b.is_zero() {
            return Ok((0..c.size()).filter(|j| (j % 2 == 0) == even).collect());
        }
        return Ok(Vec::new());
    }
    let x = field.neg(field.mul(b, field.inv(a)?)?);
    Ok(circle_index(field, c, x)
        .filter(|j| (j % 2 == 0) == even)
        .into_iter()
        .collect())
}

/// Closed-form counts for `y = 1` and `y = -1` under `s = (p^m+1)/2`.
fn theorem1_closed_form(c: Circle, y_exp: u64) -> Option<NihoCount> {
    let half = c.pm.div_ceil(2);
    // -1 = alpha^(order/2) = x_j for j = (p^m+1)/2
    let minus_one_j = half;
    let odd: Vec<u64> = (0..c.size()).filter(|j| j % 2 == 1).collect();
    let even: Vec<u64> = (0..c.size()).filter(|j| j % 2 == 0).collect();
    let quarter = (c.pm + 1).is_multiple_of(4);
    if y_exp == 0 {
        // N_-1(1) = (p^m+1)/2; N_1(1) = 1 iff p^m+1 = 0 mod 4 (x = -1).
        let plus = if quarter { vec![minus_one_j] } else { Vec::new() };
        Some(NihoCount::from_solutions(y_exp, plus, odd))
    } else if y_exp == c.order / 2 {
        // N_1(-1) = (p^m+1)/2; N_-1(-1) = 1 iff p^m+1 = 2 mod 4 (x = -1).
        let minus = if quarter { Vec::new() } else { vec![minus_one_j] };
        Some(NihoCount::from_solutions(y_exp, even, minus))
    } else {
        None
    }
}

/// Counts for `d = (p^n-1)/2 + 1` through the linear systems
/// `(y^(p^m)+1) x + (y+1) = 0` on the `+1` half and
/// `(y^(p^m)-1) x + (y-1) = 0` on the `-1` half.
pub fn theorem1_counts(field: &Field, y_exp: u64) -> Result<NihoCount> {
    let c = Circle::of(field)?;
    check_y(field, y_exp)?;
    if let Some(closed) = theorem1_closed_form(c, y_exp) {
        return Ok(closed);
    }
    let y = field.alpha_pow(y_exp);
    let ypm = field.alpha_pow_signed(y_exp as i128 * c.pm as i128);
    let one = field.one();
    let plus = solve_linear_on_half(field, c, field.add_raw(ypm, one), field.add_raw(y, one), true)?;
    let minus = solve_linear_on_half(field, c, field.sub(ypm, one)?, field.sub(y, one)?, false)?;
    let count = NihoCount::from_solutions(y_exp, plus, minus);
    if count.total > 2 {
        return Err(Error::TheoremViolation {
            y_exp,
            detail: format!("N_1 + N_-1 = {} > 2 for y != +-1", count.total),
        });
    }
    Ok(count)
}

/// Counts for `d = (p^m-1)^2/2 + 1` through the cubics
/// `x^3 + y^(p^m) x^2 + y x + 1` on the `+1` half and
/// `x^3 - y^(p^m) x^2 - y x + 1` on the `-1` half, by exhaustion over the
/// circle. Fails with [`Error::TheoremViolation`] if either half has more
/// than three roots or the halves together have six.
pub fn theorem2_counts(field: &Field, y_exp: u64) -> Result<NihoCount> {
    let c = Circle::of(field)?;
    check_y(field, y_exp)?;
    let y = y_exp as i128;
    let ypm = y * c.pm as i128;
    let (mut plus, mut minus) = (Vec::new(), Vec::new());
    for j in 0..c.size() {
        let cube = field.alpha_pow_signed(c.exp(j, 3));
        let quad = field.alpha_pow_signed(ypm + c.exp(j, 2));
        let lin = field.alpha_pow_signed(y + c.exp(j, 1));
        let value = if j % 2 == 0 {
            sum(field, &[cube, quad, lin, field.one()])
        } else {
            sum(field, &[cube, field.neg(quad), field.neg(lin), field.one()])
        };
        if value.is_zero() {
            if j % 2 == 0 {
                plus.push(j);
            } else {
                minus.push(j);
            }
        }
    }
    let count = NihoCount::from_solutions(y_exp, plus, minus);
    let violation = |detail: String| Error::TheoremViolation { y_exp, detail };
    if count.n1 > 3 || count.n_minus1 > 3 {
        return Err(violation(format!(
            "cubic with {} / {} roots on a half-circle",
            count.n1, count.n_minus1
        )));
    }
    if count.total > 5 {
        return Err(violation(format!("N_1 + N_-1 = {}", count.total)));
    }
    for roots in [&count.solutions_plus, &count.solutions_minus] {
        if roots.len() == 3 && !root_product_is_minus_one(c, roots) {
            return Err(Error::Consistency(format!(
                "three cubic roots at y = alpha^{y_exp} do not multiply to -1"
            )));
        }
    }
    Ok(count)
}

/// Three roots of a monic cubic with constant term 1 multiply to -1:
/// `(p^m - 1) sum j = (p^n - 1)/2 mod p^n - 1`.
fn root_product_is_minus_one(c: Circle, js: &[u64]) -> bool {
    let total: u128 = js.iter().map(|&j| j as u128).sum();
    (total * (c.pm as u128 - 1)) % c.order as u128 == c.order as u128 / 2
}

/// Whether `x_j^((p^m+1)/2)` is `+1` exactly for even `j`, checked by direct
/// exponentiation over the whole circle.
pub fn check_branch_parity(field: &Field) -> Result<bool> {
    let c = Circle::of(field)?;
    let minus_one = field.from_int(-1);
    let half = c.pm.div_ceil(2);
    Ok((0..c.size()).all(|j| {
        let x = field.alpha_pow(j * (c.pm - 1));
        let r = field.pow_raw(x, half);
        if j % 2 == 0 {
            r == field.one()
        } else {
            r == minus_one
        }
    }))
}

/// Count for one `y`, dispatched on the decimation kind.
pub fn niho_count(field: &Field, dec: &DecimationParams, y_exp: u64) -> Result<NihoCount> {
    match (dec.kind, dec.s) {
        (DecimationKind::Theorem1, _) => theorem1_counts(field, y_exp),
        (DecimationKind::Theorem2, _) => theorem2_counts(field, y_exp),
        (DecimationKind::GenericNiho, Some(s)) => niho_count_generic(field, y_exp, s),
        _ => invalid(format!("d = {} is not of Niho type", dec.d)),
    }
}

/// Counts for every shift `tau = 0..p^n-2`, in `tau` order; entry `tau`
/// is the count at `y = -alpha^tau`.
///
/// For theorem-1 decimations the closed forms at `y = +-1` are compared
/// against generic enumeration, and the even/odd branch rule is checked
/// against direct exponentiation, before any counting.
pub fn niho_counts(field: &Field, dec: &DecimationParams) -> Result<Vec<NihoCount>> {
    if !dec.kind.is_niho() {
        return invalid(format!("d = {} is not of Niho type", dec.d));
    }
    if DecimationParams::for_field(field, dec.d)? != *dec {
        return invalid("decimation parameters do not belong to this field");
    }
    if !check_branch_parity(field)? {
        return Err(Error::Consistency("half-circle parity rule failed".into()));
    }
    if dec.kind == DecimationKind::Theorem1 {
        let s = dec.s.expect("theorem-1 decimations are Niho type");
        for y_exp in [0, field.order() / 2] {
            let closed = theorem1_counts(field, y_exp)?;
            let generic = niho_count_generic(field, y_exp, s)?;
            if closed != generic {
                return Err(Error::Consistency(format!(
                    "closed form at y = alpha^{y_exp} gives {}+{}, enumeration {}+{}",
                    closed.n1, closed.n_minus1, generic.n1, generic.n_minus1
                )));
            }
        }
    }
    let order = field.order();
    let one = |tau: u64| niho_count(field, dec, y_exp_for_shift(order, tau));
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..field.order()).into_par_iter().map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..field.order()).map(one).collect()
    }
}

/// Spectrum report built from solution counts rather than correlation sums.
pub fn niho_spectrum(field: &Field, dec: DecimationParams) -> Result<SpectrumReport> {
    let counts = niho_counts(field, &dec)?;
    Ok(report_from_counts(field, dec, &counts))
}

pub fn report_from_counts(field: &Field, dec: DecimationParams, counts: &[NihoCount]) -> SpectrumReport {
    let pm = dec.pm().expect("Niho decimations have a half-degree");
    let per_shift = counts.iter().map(|c| Some(c.predicted_value(pm))).collect();
    SpectrumReport::from_values(field, dec, per_shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::classify_decimation;

    #[test]
    fn theorem1_closed_forms_both_residues() {
        // p^m = 3: p^m + 1 = 0 mod 4
        let f = Field::with_default_poly(3, 2).unwrap();
        let c = theorem1_counts(&f, 0).unwrap();
        assert_eq!((c.n1, c.n_minus1, c.total), (1, 2, 3));
        assert_eq!(c.predicted_value(3), 5);
        let c = theorem1_counts(&f, 4).unwrap();
        assert_eq!((c.n1, c.n_minus1), (2, 0));
        // p^m = 5: p^m + 1 = 2 mod 4
        let f = Field::with_default_poly(5, 2).unwrap();
        let c = theorem1_counts(&f, 0).unwrap();
        assert_eq!((c.n1, c.n_minus1, c.total), (0, 3, 3));
        assert_eq!(c.predicted_value(5), 9);
        let c = theorem1_counts(&f, 12).unwrap();
        assert_eq!((c.n1, c.n_minus1), (3, 1));
    }

    #[test]
    fn theorem1_matches_generic_everywhere() {
        for (p, m) in [(3u64, 1u32), (3, 2), (5, 1), (7, 1)] {
            let f = Field::with_default_poly(p, 2 * m).unwrap();
            let s = p.pow(m).div_ceil(2);
            for y in 0..f.order() {
                let a = theorem1_counts(&f, y).unwrap();
                assert_eq!(a, niho_count_generic(&f, y, s).unwrap(), "p={p} m={m} y={y}");
                if y != 0 && y != f.order() / 2 {
                    assert!(a.total <= 2);
                }
            }
        }
    }

    #[test]
    fn theorem2_matches_generic_everywhere() {
        for (p, m) in [(3u64, 1u32), (3, 2), (5, 1), (3, 3)] {
            let f = Field::with_default_poly(p, 2 * m).unwrap();
            let s = (p.pow(m) - 1) / 2;
            for y in 0..f.order() {
                let a = theorem2_counts(&f, y).unwrap();
                assert_eq!(a, niho_count_generic(&f, y, s).unwrap(), "p={p} m={m} y={y}");
            }
        }
    }

    #[test]
    fn branch_parity_holds() {
        for (p, n) in [(3, 2), (3, 6), (5, 4), (7, 2)] {
            assert!(check_branch_parity(&Field::with_default_poly(p, n).unwrap()).unwrap());
        }
    }

    #[test]
    fn example_field_theorem2_counts() {
        let f = Field::new(3, 6, vec![2, 0, 0, 0, 0, 1, 1]).unwrap();
        let dec = classify_decimation(3, 3, 339).unwrap();
        let counts = niho_counts(&f, &dec).unwrap();
        assert_eq!(counts.iter().filter(|c| c.total == 5).count(), 9);
        assert_eq!(counts.iter().filter(|c| c.total == 0).count(), 246);
        assert!(counts.iter().all(|c| c.n1 <= 3 && c.n_minus1 <= 3));
        for c in &counts {
            assert!(c.solutions_plus.iter().all(|j| j % 2 == 0));
            assert!(c.solutions_minus.iter().all(|j| j % 2 == 1));
        }
    }

    #[test]
    fn errors() {
        let f = Field::with_default_poly(3, 2).unwrap();
        assert!(niho_counts(&f, &classify_decimation(3, 1, 2).unwrap()).is_err());
        assert!(niho_count_generic(&f, 8, 1).is_err());
        let odd = Field::with_default_poly(3, 3).unwrap();
        assert!(theorem2_counts(&odd, 0).is_err());
    }

    #[test]
    fn tableless_field_gives_same_counts() {
        let f = Field::with_default_poly(3, 4).unwrap();
        let g = f.without_tables();
        for y in (0..80).step_by(7) {
            assert_eq!(theorem1_counts(&f, y).unwrap(), theorem1_counts(&g, y).unwrap());
            assert_eq!(theorem2_counts(&f, y).unwrap(), theorem2_counts(&g, y).unwrap());
        }
    }
}
