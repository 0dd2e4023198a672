//! Runs both computation paths for one decimation and checks every claim
//! that applies to it, collecting one pass/fail line per check.

use crate::correlation::{spectrum, SpectrumReport};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::niho::{
    check_branch_parity, niho_count_generic, niho_counts, report_from_counts, theorem1_counts, NihoCount,
};
use crate::sequences::{gcd_rule_is_three, DecimationKind, DecimationParams};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Verification {
    pub direct: SpectrumReport,
    /// Absent when the Niho path stopped on a theorem violation.
    pub niho: Option<SpectrumReport>,
    pub counts: Vec<NihoCount>,
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Tolerance on `|eval_complex - integer|`, scaled by `p^m`.
pub const COMPLEX_TOLERANCE: f64 = 1e-6;

pub fn verify(field: &Field, dec: DecimationParams) -> Result<Verification> {
    let pm = dec
        .pm()
        .ok_or_else(|| Error::InvalidArgument("verification needs an even field degree".into()))?;
    if !dec.kind.is_niho() {
        return Err(Error::InvalidArgument(format!("d = {} is not of Niho type", dec.d)));
    }
    let mut checks = Vec::new();
    let order = field.order();

    if dec.kind == DecimationKind::Theorem2 {
        let m = dec.m.expect("pm implies m");
        let want = if gcd_rule_is_three(dec.p, m) { 3 } else { 1 };
        checks.push(Check::new(
            "gcd rule",
            dec.g == want,
            format!("gcd(d, p^n-1) = {}, expected {want}", dec.g),
        ));
    }

    let parity = check_branch_parity(field)?;
    checks.push(Check::new("half-circle parity", parity, "x_j^((p^m+1)/2) = (-1)^j"));

    let direct = spectrum(field, dec)?;
    let (niho, counts) = match niho_counts(field, &dec) {
        Ok(counts) => (Some(report_from_counts(field, dec, &counts)), counts),
        Err(Error::TheoremViolation { y_exp, detail }) => {
            checks.push(Check::new("count bound", false, format!("y = alpha^{y_exp}: {detail}")));
            (None, Vec::new())
        }
        Err(e) => return Err(e),
    };

    if let Some(niho) = &niho {
        let first_bad = direct
            .per_shift
            .iter()
            .zip(&niho.per_shift)
            .position(|(a, b)| a != b);
        checks.push(Check::new(
            "per-shift equality",
            first_bad.is_none(),
            match first_bad {
                None => format!("{order} shifts agree"),
                Some(t) => format!(
                    "tau = {t}: direct {:?}, niho {:?}",
                    direct.per_shift[t], niho.per_shift[t]
                ),
            },
        ));
        checks.push(Check::new(
            "distribution equality",
            direct.distribution == niho.distribution,
            format!("{} distinct values", direct.distribution.len()),
        ));
    }

    checks.push(Check::new(
        "integer values",
        direct.non_integer_shifts.is_empty(),
        match direct.non_integer_shifts.first() {
            None => "every shift is a rational integer".to_string(),
            Some(t) => format!("tau = {t} is not an integer"),
        },
    ));

    let outside = direct.per_shift.iter().enumerate().find(|(_, v)| {
        v.is_none_or(|v| {
            crate::correlation::predicted_contains(dec.kind, Some(pm), v) == Some(false)
        })
    });
    checks.push(Check::new(
        "value set",
        direct.predicted_set_ok == Some(true),
        match outside {
            None => format!("values {:?}", direct.distribution.keys().collect::<Vec<_>>()),
            Some((t, v)) => format!("tau = {t}: {v:?} outside the predicted set"),
        },
    ));

    if !counts.is_empty() {
        match dec.kind {
            DecimationKind::Theorem2 => {
                let worst = counts.iter().max_by_key(|c| c.total).expect("nonempty");
                let ok = counts.iter().all(|c| c.n1 <= 3 && c.n_minus1 <= 3 && c.total <= 5);
                checks.push(Check::new(
                    "count bound",
                    ok,
                    format!("max N_1 + N_-1 = {} at y = alpha^{}", worst.total, worst.y_exp),
                ));
            }
            DecimationKind::Theorem1 => {
                let (lo, hi) = (0, order / 2);
                let bad = counts
                    .iter()
                    .find(|c| c.y_exp != lo && c.y_exp != hi && c.total > 2);
                checks.push(Check::new(
                    "count bound",
                    bad.is_none(),
                    match bad {
                        None => "N_1 + N_-1 <= 2 for y != +-1".to_string(),
                        Some(c) => format!("y = alpha^{}: total {}", c.y_exp, c.total),
                    },
                ));
                let s = dec.s.expect("Niho type");
                let mut detail = Vec::new();
                let mut ok = true;
                for (label, y) in [("y=1", lo), ("y=-1", hi)] {
                    let closed = theorem1_counts(field, y)?;
                    let brute = niho_count_generic(field, y, s)?;
                    ok &= closed == brute;
                    detail.push(format!("{label}: {}+{}", closed.n1, closed.n_minus1));
                }
                checks.push(Check::new("closed forms at y=+-1", ok, detail.join(", ")));
            }
            _ => {}
        }
        if matches!(dec.kind, DecimationKind::Theorem1 | DecimationKind::Theorem2) {
            let s = dec.s.expect("Niho type");
            let mismatch = counts.iter().find(|c| {
                niho_count_generic(field, c.y_exp, s).map_or(true, |g| g.total != c.total)
            });
            checks.push(Check::new(
                "specialized = generic",
                mismatch.is_none(),
                match mismatch {
                    None => format!("{order} values of y"),
                    Some(c) => format!("y = alpha^{}", c.y_exp),
                },
            ));
        }
    }

    let total = direct.total_count();
    checks.push(Check::new(
        "distribution sum",
        total == order,
        format!("{total} of {order}"),
    ));

    if dec.g == 1 {
        let fm = direct.first_moment();
        checks.push(Check::new(
            "first moment",
            fm == Ok(1),
            match fm {
                Ok(v) => format!("sum C_d(tau) = {v}"),
                Err(e) => e.to_string(),
            },
        ));
    }

    if dec.kind == DecimationKind::Theorem2 {
        checks.push(Check::new(
            "magnitude bound",
            direct.bound_satisfied,
            format!("peak {} vs 4p^m-1 = {}", direct.peak_magnitude, 4 * pm - 1),
        ));
    }

    let residual = direct.complex_residual.unwrap_or(f64::INFINITY);
    checks.push(Check::new(
        "complex cross-check",
        residual < COMPLEX_TOLERANCE * pm as f64,
        format!("max residual {residual:.3e}"),
    ));

    Ok(Verification {
        direct,
        niho,
        counts,
        checks,
    })
}
