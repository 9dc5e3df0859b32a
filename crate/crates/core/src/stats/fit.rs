use std::collections::BTreeMap;

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

/// Degree window used for log-log slope fits unless one is given.
pub const DEFAULT_FIT_WINDOW: (usize, usize) = (3, 50);

const MIN_FIT_POINTS: usize = 5;

/// Least-squares slope of `ln p(k)` against `ln k` over `k_min..=k_max`,
/// skipping zero-mass degrees.
pub fn tail_slope(distribution: &[(usize, f64)], k_min: usize, k_max: usize) -> Result<f64> {
    let pts: Vec<(f64, f64)> = distribution
        .iter()
        .filter(|&&(k, p)| k >= k_min && k <= k_max && k > 0 && p > 0.0)
        .map(|&(k, p)| ((k as f64).ln(), p.ln()))
        .collect();
    if pts.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientData {
            needed: MIN_FIT_POINTS,
            found: pts.len(),
        });
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &(x, y) in &pts {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    Ok(sxy / sxx)
}

/// `½ Σ_k |p(k) − q(k)|` over the union of both supports.
pub fn total_variation(p: &[(usize, f64)], q: &[(usize, f64)]) -> f64 {
    let mut diff: BTreeMap<usize, f64> = BTreeMap::new();
    for &(k, v) in p {
        *diff.entry(k).or_default() += v;
    }
    for &(k, v) in q {
        *diff.entry(k).or_default() -= v;
    }
    0.5 * diff.values().map(|d| d.abs()).sum::<f64>()
}

/// Outcome of a Pearson goodness-of-fit test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    /// Number of bins left after pooling sparse ones.
    pub bins: usize,
}

impl ChiSquareResult {
    /// True when the fit is not rejected at level `alpha`.
    pub fn passes(&self, alpha: f64) -> bool {
        self.p_value >= alpha
    }
}

/// Pearson chi-square test of observed counts against a probability vector.
///
/// Adjacent cells are pooled left to right until each pooled cell expects
/// at least `min_expected` observations; a short remainder joins the last
/// pooled cell.
pub fn chi_square_gof(observed: &[u64], probs: &[f64], min_expected: f64) -> ChiSquareResult {
    let total: u64 = observed.iter().sum();
    let n = total as f64;
    let len = observed.len().max(probs.len());
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut obs, mut exp) = (0.0, 0.0);
    for k in 0..len {
        obs += observed.get(k).copied().unwrap_or(0) as f64;
        exp += probs.get(k).copied().unwrap_or(0.0) * n;
        if exp >= min_expected {
            cells.push((obs, exp));
            obs = 0.0;
            exp = 0.0;
        }
    }
    if obs > 0.0 || exp > 0.0 {
        match cells.last_mut() {
            Some(last) => {
                last.0 += obs;
                last.1 += exp;
            }
            None => cells.push((obs, exp)),
        }
    }
    let statistic: f64 = cells
        .iter()
        .map(|&(o, e)| if e > 0.0 { (o - e) * (o - e) / e } else { 0.0 })
        .sum();
    let dof = cells.len().saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else {
        ChiSquared::new(dof as f64)
            .map(|d| d.sf(statistic))
            .unwrap_or(0.0)
    };
    ChiSquareResult {
        statistic,
        dof,
        p_value,
        bins: cells.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law_slope() {
        let dist: Vec<(usize, f64)> = (2..=100).map(|k| (k, 7.0 * (k as f64).powi(-3))).collect();
        let s = tail_slope(&dist, 2, 100).unwrap();
        assert!((s + 3.0).abs() < 1e-9, "{s}");
    }

    #[test]
    fn flat_distribution_slope() {
        let dist: Vec<(usize, f64)> = (1..=20).map(|k| (k, 0.05)).collect();
        assert!(tail_slope(&dist, 3, 50).unwrap().abs() < 1e-12);
    }

    #[test]
    fn too_few_points() {
        let dist = vec![(3, 0.1), (4, 0.0), (5, 0.1), (6, 0.1), (60, 0.1)];
        assert!(matches!(
            tail_slope(&dist, 3, 50),
            Err(Error::InsufficientData {
                needed: 5,
                found: 3
            })
        ));
    }

    #[test]
    fn tv_distance() {
        let p = vec![(1, 0.5), (2, 0.5)];
        let q = vec![(1, 0.25), (3, 0.75)];
        assert!((total_variation(&p, &q) - 0.75).abs() < 1e-15);
        assert_eq!(total_variation(&p, &p), 0.0);
    }

    #[test]
    fn chi_square_perfect_fit() {
        let r = chi_square_gof(&[250, 500, 250], &[0.25, 0.5, 0.25], 5.0);
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.dof, 2);
        assert!((r.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chi_square_rejects_wrong_law() {
        let r = chi_square_gof(&[900, 100], &[0.5, 0.5], 5.0);
        assert!(!r.passes(0.001));
    }

    #[test]
    fn sparse_cells_pooled() {
        // Last three cells expect 2, 1, 1: pooled into the previous cell.
        let r = chi_square_gof(&[50, 46, 2, 1, 1], &[0.5, 0.46, 0.02, 0.01, 0.01], 5.0);
        assert_eq!(r.bins, 2);
    }
}
