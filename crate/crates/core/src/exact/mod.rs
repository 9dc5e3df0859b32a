//! Exact laws of the draw count `N_{j,t}` (equivalently of the degree
//! `d_{j,t} = 1 + N_{j,t}`).
//!
//! Four independent routes are provided:
//!
//! * [`pmf_general`] sums over every set of draw times, for any schedule;
//! * [`pmf_constant_delta`] is the same sum specialised to constant `Δ`;
//! * [`pmf_constant_delta_dp`] is a polynomial-time recurrence for constant `Δ`;
//! * [`brute_force_pmf`] enumerates every full draw path of the urn.
//!
//! The enumerating routes are exponential in `t - j + 1` and refuse spans
//! above [`ENUMERATION_CAP`].

mod constant;
mod enumerator;
mod general;
mod oracle;

use std::io::Write;

pub use constant::{
    delta_one_discrepancy, pmf_constant_delta, pmf_constant_delta_dp, pmf_delta_one,
    pmf_delta_one_uncorrected, DeltaOneDiscrepancy,
};
pub use enumerator::IndexTupleEnumerator;
pub use general::pmf_general;
pub use oracle::{brute_force_pmf, for_each_path, ORACLE_CAP};

use crate::error::{Error, Result};
use crate::io::fmt_f64;

/// Largest `t - j + 1` accepted by the enumerating formulas.
pub const ENUMERATION_CAP: usize = 25;

/// Spans above this accumulate summand products in log space.
pub const LOG_SPACE_THRESHOLD: usize = 15;

/// The law of `N_{j,t}` on `{0, …, t - j + 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    color: usize,
    horizon: usize,
    probs: Vec<f64>,
}

impl Pmf {
    /// Wraps raw probabilities, checking only the support length.
    pub fn from_probs(color: usize, horizon: usize, probs: Vec<f64>) -> Result<Self> {
        check_color(color, horizon)?;
        let expected = horizon - color + 2;
        if probs.len() != expected {
            return Err(Error::Invariant(format!(
                "pmf of N_{{{color},{horizon}}} needs {expected} entries, got {}",
                probs.len()
            )));
        }
        Ok(Pmf {
            color,
            horizon,
            probs,
        })
    }

    pub fn color(&self) -> usize {
        self.color
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// `probs()[k] = P(N_{j,t} = k)`.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn into_probs(self) -> Vec<f64> {
        self.probs
    }

    /// `P(N_{j,t} = k)`, zero outside the support.
    pub fn prob(&self, k: usize) -> f64 {
        self.probs.get(k).copied().unwrap_or(0.0)
    }

    /// `P(d_{j,t} = degree)`.
    pub fn degree_prob(&self, degree: usize) -> f64 {
        degree.checked_sub(1).map_or(0.0, |k| self.prob(k))
    }

    pub fn mean(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(k, p)| k as f64 * p)
            .sum()
    }

    /// Largest entrywise difference; the shorter support is zero-padded.
    pub fn max_abs_diff(&self, other: &Pmf) -> f64 {
        let n = self.probs.len().max(other.probs.len());
        (0..n)
            .map(|k| (self.prob(k) - other.prob(k)).abs())
            .fold(0.0, f64::max)
    }

    /// `k,prob` CSV with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "k,prob")?;
        for (k, p) in self.probs.iter().enumerate() {
            writeln!(w, "{k},{}", fmt_f64(*p))?;
        }
        Ok(())
    }
}

/// `|Σ_k P(N_{j,t} = k) − 1|`.
pub fn normalization_check(pmf: &Pmf) -> f64 {
    (pmf.probs.iter().sum::<f64>() - 1.0).abs()
}

pub(crate) fn check_color(j: usize, t: usize) -> Result<()> {
    if t == 0 || j == 0 || j > t {
        return Err(Error::IndexOutOfRange {
            what: "j",
            value: j,
            lo: 1,
            hi: t,
        });
    }
    Ok(())
}

pub(crate) fn check_cap(j: usize, t: usize) -> Result<usize> {
    check_color(j, t)?;
    let span = t - j + 1;
    if span > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            span,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(span)
}

pub(crate) fn check_delta(delta: f64) -> Result<()> {
    if delta.is_finite() && delta >= 0.0 {
        Ok(())
    } else {
        Err(Error::Range {
            value: delta,
            reason: "reinforcement must be finite and >= 0".into(),
        })
    }
}

/// Multiplies factors either directly or as a sum of logarithms.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Product {
    log_space: bool,
    value: f64,
}

impl Product {
    pub(crate) fn new(log_space: bool) -> Self {
        Product {
            log_space,
            value: if log_space { 0.0 } else { 1.0 },
        }
    }

    #[inline]
    pub(crate) fn mul(&mut self, factor: f64) {
        if self.log_space {
            self.value += factor.ln();
        } else {
            self.value *= factor;
        }
    }

    /// `self / denom` as a plain number.
    pub(crate) fn ratio(self, denom: Product) -> f64 {
        if self.log_space {
            (self.value - denom.value).exp()
        } else {
            self.value / denom.value
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_of_hand_built_pmf() {
        let pmf = Pmf::from_probs(3, 3, vec![0.5, 0.4]).unwrap();
        assert!((normalization_check(&pmf) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn support_length_enforced() {
        assert!(Pmf::from_probs(2, 4, vec![0.5, 0.5]).is_err());
        assert!(Pmf::from_probs(5, 4, vec![1.0]).is_err());
    }

    #[test]
    fn csv_has_full_precision() {
        let pmf = Pmf::from_probs(2, 2, vec![2.0 / 3.0, 1.0 / 3.0]).unwrap();
        let mut out = Vec::new();
        pmf.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("k,prob"));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row[1].parse::<f64>().unwrap(), 2.0 / 3.0);
    }

    #[test]
    fn log_space_product_agrees() {
        let mut a = Product::new(false);
        let mut b = Product::new(true);
        let mut da = Product::new(false);
        let mut db = Product::new(true);
        for f in [3.0, 7.5, 11.25, 0.5] {
            a.mul(f);
            b.mul(f);
            da.mul(f + 1.0);
            db.mul(f + 1.0);
        }
        assert!((a.ratio(da) - b.ratio(db)).abs() < 1e-14);
    }
}
