//! Machine-readable report shapes shared by the CLI and the web demo.
//!
//! Key order is the field order below and distributions are sorted by value,
//! so parsing and re-serializing a report reproduces it byte for byte.

use serde::{Deserialize, Serialize};

use crate::correlation::SpectrumReport;
use crate::niho::NihoCount;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionRow {
    pub value: i64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub p: u64,
    pub m: Option<u32>,
    pub n: u32,
    pub d: u64,
    pub s: Option<u64>,
    pub gcd: u64,
    pub poly: Vec<u64>,
    pub distribution: Vec<DistributionRow>,
    pub peak: u64,
    /// Whether `peak <= 4 sqrt(p^n) - 1`.
    pub bound_4pm_minus_1: bool,
    pub predicted_set_ok: Option<bool>,
    pub first_moment: Option<i64>,
}

impl From<&SpectrumReport> for SpectrumJson {
    fn from(r: &SpectrumReport) -> Self {
        SpectrumJson {
            p: r.p,
            m: r.dec.m,
            n: r.n,
            d: r.dec.d,
            s: r.dec.s,
            gcd: r.dec.g,
            poly: r.poly.clone(),
            distribution: r
                .distribution
                .iter()
                .map(|(&value, &count)| DistributionRow { value, count })
                .collect(),
            peak: r.peak_magnitude,
            bound_4pm_minus_1: r.bound_satisfied,
            predicted_set_ok: r.predicted_set_ok,
            first_moment: r.first_moment().ok(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchSolutions {
    pub plus_one: Vec<u64>,
    pub minus_one: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NihoCountJson {
    pub tau: u64,
    pub y_exp: u64,
    pub n1: u32,
    pub n_minus1: u32,
    pub total: u32,
    pub predicted_value: i64,
    pub solutions_j: BranchSolutions,
}

impl NihoCountJson {
    pub fn new(tau: u64, count: &NihoCount, pm: u64) -> Self {
        NihoCountJson {
            tau,
            y_exp: count.y_exp,
            n1: count.n1,
            n_minus1: count.n_minus1,
            total: count.total,
            predicted_value: count.predicted_value(pm),
            solutions_j: BranchSolutions {
                plus_one: count.solutions_plus.clone(),
                minus_one: count.solutions_minus.clone(),
            },
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types always serialize")
}
