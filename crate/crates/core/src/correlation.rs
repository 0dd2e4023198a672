//! Definitional cross-correlation `C_d(tau) = sum_t w^(s_(t+tau) - s_(dt))`
//! over every shift, and the aggregated spectrum report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycloValue;
use crate::error::{invalid, Error, Result};
use crate::field::Field;
use crate::sequences::{m_sequence, DecimationKind, DecimationParams, Sequence};

/// Histogram of `(base[t + tau] - decimated[t]) mod p` as a cyclotomic value.
pub fn cross_correlation(base: &Sequence, decimated: &Sequence, tau: usize) -> Result<CycloValue> {
    if base.p != decimated.p || base.period() != decimated.period() {
        return invalid("sequences differ in alphabet or period");
    }
    if tau >= base.period() {
        return invalid(format!("shift {tau} outside [0, {})", base.period()));
    }
    let hist = shift_histogram(&base.values, &decimated.values, tau, base.p as usize);
    CycloValue::from_residue_histogram(&hist, base.p as usize)
}

fn shift_histogram(base: &[u32], dec: &[u32], tau: usize, p: usize) -> Vec<u64> {
    let len = base.len();
    // Index a + p - b lands in [1, 2p); fold the upper half afterwards.
    let mut wide = vec![0u64; 2 * p];
    let (head, tail) = dec.split_at(len - tau);
    for (&a, &b) in base[tau..].iter().zip(head) {
        wide[a as usize + p - b as usize] += 1;
    }
    for (&a, &b) in base[..tau].iter().zip(tail) {
        wide[a as usize + p - b as usize] += 1;
    }
    (0..p).map(|r| wide[r] + wide[r + p]).collect()
}

/// `C_d(tau)` for every shift, in shift order.
pub fn direct_values(base: &Sequence, decimated: &Sequence) -> Result<Vec<CycloValue>> {
    if base.p != decimated.p || base.period() != decimated.period() {
        return invalid("sequences differ in alphabet or period");
    }
    let p = base.p as usize;
    let one = |tau: usize| {
        let h = shift_histogram(&base.values, &decimated.values, tau, p);
        CycloValue::from_residue_histogram(&h, p)
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..base.period()).into_par_iter().map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..base.period()).map(one).collect()
    }
}

/// Values the applicable theorem allows, for the two specialized kinds.
pub fn theorem_value_set(kind: DecimationKind, pm: u64) -> Option<Vec<i64>> {
    let q = pm as i64;
    match kind {
        DecimationKind::Theorem1 => Some(vec![
            -1 - q,
            -1,
            -1 + q,
            -1 + (q - 1) / 2 * q,
            -1 + (q + 1) / 2 * q,
        ]),
        DecimationKind::Theorem2 => Some((0..=5).map(|j| -1 + (j - 1) * q).collect()),
        _ => None,
    }
}

/// Membership of `v` in the predicted value set of `kind`. Generic Niho
/// decimations predict `-1 + (N - 1) p^m` with `0 <= N <= p^m + 1`.
/// `None` when nothing is predicted.
pub fn predicted_contains(kind: DecimationKind, pm: Option<u64>, v: i64) -> Option<bool> {
    let pm = pm?;
    match kind {
        DecimationKind::Theorem1 | DecimationKind::Theorem2 => {
            Some(theorem_value_set(kind, pm)?.contains(&v))
        }
        DecimationKind::GenericNiho => {
            let q = pm as i64;
            let k = v + 1;
            Some(k % q == 0 && (-1..=q).contains(&(k / q)))
        }
        DecimationKind::NonNiho => None,
    }
}

/// `(peak + 1)^2 <= 16 p^n`, i.e. `peak <= 4 sqrt(p^n) - 1`. For `n = 2m`
/// this is exactly `peak <= 4 p^m - 1`.
pub fn within_magnitude_bound(peak: u64, p: u64, n: u32) -> bool {
    let lhs = (peak as u128 + 1).pow(2);
    let rhs = 16u128 * (p as u128).pow(n);
    lhs <= rhs
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub p: u64,
    pub n: u32,
    pub poly: Vec<u64>,
    pub dec: DecimationParams,
    /// Integer value at each shift; `None` where extraction failed.
    pub per_shift: Vec<Option<i64>>,
    pub distribution: BTreeMap<i64, u64>,
    pub non_integer_shifts: Vec<u64>,
    pub peak_magnitude: u64,
    pub bound_satisfied: bool,
    /// `None` when the decimation kind predicts nothing.
    pub predicted_set_ok: Option<bool>,
    /// Largest `|eval_complex - integer|` over integer shifts; only the
    /// direct path fills this in.
    pub complex_residual: Option<f64>,
}

impl SpectrumReport {
    pub fn from_values(field: &Field, dec: DecimationParams, per_shift: Vec<Option<i64>>) -> Self {
        let mut distribution = BTreeMap::new();
        let mut non_integer_shifts = Vec::new();
        let mut peak = 0u64;
        let mut predicted: Option<bool> = None;
        for (tau, v) in per_shift.iter().enumerate() {
            match *v {
                Some(v) => {
                    *distribution.entry(v).or_insert(0) += 1;
                    peak = peak.max(v.unsigned_abs());
                    if let Some(ok) = predicted_contains(dec.kind, dec.pm(), v) {
                        predicted = Some(predicted.unwrap_or(true) && ok);
                    }
                }
                None => non_integer_shifts.push(tau as u64),
            }
        }
        if dec.kind.is_niho() && !non_integer_shifts.is_empty() {
            predicted = Some(false);
        }
        SpectrumReport {
            p: field.p(),
            n: field.n(),
            poly: field.poly().to_vec(),
            dec,
            per_shift,
            distribution,
            non_integer_shifts,
            peak_magnitude: peak,
            bound_satisfied: within_magnitude_bound(peak, field.p(), field.n()),
            predicted_set_ok: predicted,
            complex_residual: None,
        }
    }

    pub fn total_count(&self) -> u64 {
        self.distribution.values().sum()
    }

    /// `-1 + (N - 1) p^m = value`, solved for `N`, when it is an integer.
    pub fn solution_count_for(&self, value: i64) -> Option<i64> {
        let q = self.dec.pm()? as i64;
        ((value + 1) % q == 0).then(|| (value + 1) / q + 1)
    }

    /// Sum of `C_d(tau)` over all shifts; equals 1 when `gcd(d, p^n-1) = 1`.
    pub fn first_moment(&self) -> Result<i64> {
        if self.dec.g != 1 {
            return Err(Error::NotApplicable(format!(
                "first moment needs gcd(d, p^n-1) = 1, got {}",
                self.dec.g
            )));
        }
        if !self.non_integer_shifts.is_empty() {
            return Err(Error::NotApplicable("spectrum has non-integer shifts".into()));
        }
        Ok(self.distribution.iter().map(|(&v, &c)| v * c as i64).sum())
    }
}

/// Direct-path spectrum: builds the m-sequence and its decimation and
/// correlates them at every shift.
pub fn spectrum(field: &Field, dec: DecimationParams) -> Result<SpectrumReport> {
    if dec.p != field.p() || DecimationParams::for_field(field, dec.d)? != dec {
        return invalid("decimation parameters do not belong to this field");
    }
    let base = m_sequence(field);
    let decimated = base.decimate(dec.d)?;
    let values = direct_values(&base, &decimated)?;
    let mut residual = 0f64;
    let per_shift: Vec<Option<i64>> = values
        .iter()
        .map(|v| {
            let k = v.as_integer();
            if let Some(k) = k {
                residual = residual.max((v.eval_complex() - num_complex::Complex64::new(k as f64, 0.0)).norm());
            }
            k
        })
        .collect();
    let mut report = SpectrumReport::from_values(field, dec, per_shift);
    report.complex_residual = Some(residual);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::classify_decimation;

    fn brute_correlation(base: &Sequence, dec: &Sequence, tau: usize) -> num_complex::Complex64 {
        let len = base.period();
        let p = base.p as f64;
        (0..len)
            .map(|t| {
                let e = base.values[(t + tau) % len] as f64 - dec.values[t] as f64;
                num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e / p)
            })
            .sum()
    }

    #[test]
    fn autocorrelation_gf9() {
        let f = Field::with_default_poly(3, 2).unwrap();
        let s = m_sequence(&f);
        assert_eq!(cross_correlation(&s, &s, 0).unwrap().as_integer(), Some(8));
        for tau in 1..8 {
            assert_eq!(cross_correlation(&s, &s, tau).unwrap().as_integer(), Some(-1));
            assert!((brute_correlation(&s, &s, tau).re + 1.0).abs() < 1e-9);
        }
        let r = spectrum(&f, classify_decimation(3, 1, 1).unwrap()).unwrap();
        assert_eq!(r.distribution, BTreeMap::from([(-1, 7), (8, 1)]));
        assert_eq!(r.first_moment().unwrap(), 1);
    }

    #[test]
    fn matches_floating_brute_force() {
        let f = Field::with_default_poly(5, 2).unwrap();
        let s = m_sequence(&f);
        for d in [7, 9, 13] {
            let dec = s.decimate(d).unwrap();
            for tau in 0..24 {
                let exact = cross_correlation(&s, &dec, tau).unwrap().eval_complex();
                assert!((exact - brute_correlation(&s, &dec, tau)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn argument_errors() {
        let a = m_sequence(&Field::with_default_poly(3, 2).unwrap());
        let b = m_sequence(&Field::with_default_poly(3, 4).unwrap());
        assert!(cross_correlation(&a, &b, 0).is_err());
        assert!(cross_correlation(&a, &a, 8).is_err());
    }

    #[test]
    fn theorem1_small_case() {
        let f = Field::with_default_poly(3, 2).unwrap();
        let r = spectrum(&f, classify_decimation(3, 1, 5).unwrap()).unwrap();
        assert_eq!(r.total_count(), 8);
        assert!(r.distribution.keys().all(|v| [-4, -1, 2, 5].contains(v)));
        assert_eq!(r.predicted_set_ok, Some(true));
        assert_eq!(r.first_moment().unwrap(), 1);
    }

    #[test]
    fn first_moment_needs_coprime_decimation() {
        let f = Field::with_default_poly(5, 2).unwrap();
        let r = spectrum(&f, classify_decimation(5, 1, 9).unwrap()).unwrap();
        assert!(matches!(r.first_moment(), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn value_sets() {
        assert_eq!(theorem_value_set(DecimationKind::Theorem2, 27).unwrap(), vec![-28, -1, 26, 53, 80, 107]);
        assert_eq!(theorem_value_set(DecimationKind::Theorem1, 3).unwrap(), vec![-4, -1, 2, 2, 5]);
        assert_eq!(predicted_contains(DecimationKind::GenericNiho, Some(3), 8), Some(true));
        assert_eq!(predicted_contains(DecimationKind::GenericNiho, Some(3), 11), Some(false));
        assert_eq!(predicted_contains(DecimationKind::NonNiho, Some(3), 2), None);
        assert!(within_magnitude_bound(107, 3, 6));
        assert!(!within_magnitude_bound(108, 3, 6));
        // odd n: 4 sqrt(27) - 1 = 19.78
        assert!(within_magnitude_bound(19, 3, 3) && !within_magnitude_bound(20, 3, 3));
    }
}
