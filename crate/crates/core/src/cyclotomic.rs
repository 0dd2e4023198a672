//! Sums of p-th roots of unity held exactly as integer coefficient vectors.
//!
//! `counts[k]` is the coefficient of `w^k`, `w = exp(2 pi i / p)`. Because
//! `1 + w + ... + w^(p-1) = 0`, vectors differing by a constant are the same
//! number; the canonical form subtracts the minimum so some entry is zero.

use std::ops::Add;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycloValue {
    counts: Vec<i64>,
}

impl CycloValue {
    pub fn zero(p: usize) -> Self {
        CycloValue { counts: vec![0; p] }
    }

    pub fn from_residue_histogram(hist: &[u64], p: usize) -> Result<Self> {
        if hist.len() != p {
            return invalid(format!("histogram has {} bins, expected {p}", hist.len()));
        }
        Ok(Self::canonical(hist.iter().map(|&c| c as i64).collect()))
    }

    fn canonical(mut counts: Vec<i64>) -> Self {
        let min = counts.iter().copied().min().unwrap_or(0);
        for c in counts.iter_mut() {
            *c -= min;
        }
        CycloValue { counts }
    }

    pub fn p(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    /// The rational integer this value equals, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        let (first, rest) = self.counts.split_first()?;
        let Some(&r) = rest.first() else {
            return Some(*first);
        };
        rest.iter().all(|&c| c == r).then_some(first - r)
    }

    /// Floating-point evaluation, for cross-checks only.
    pub fn eval_complex(&self) -> Complex64 {
        let p = self.counts.len() as f64;
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &c)| Complex64::from_polar(c as f64, 2.0 * std::f64::consts::PI * k as f64 / p))
            .sum()
    }
}

impl Add for &CycloValue {
    type Output = CycloValue;

    fn add(self, rhs: &CycloValue) -> CycloValue {
        assert_eq!(self.p(), rhs.p(), "adding values of different root orders");
        CycloValue::canonical(self.counts.iter().zip(&rhs.counts).map(|(a, b)| a + b).collect())
    }
}
