use super::{
    check_cap, check_color, check_delta, IndexTupleEnumerator, Pmf, Product, LOG_SPACE_THRESHOLD,
};
use crate::error::Result;

/// Exact law of `N_{j,t}` when `Δ_n = Δ` for all `n`, by enumeration.
///
/// Drawn times contribute `1 + (a − 1)Δ`; a non-drawn time `p` contributes
/// `(p − 1)(Δ + 1) − Δ·#{i_l ≤ p − 1}`; the denominator is
/// `Π_{n=j−1}^{t−1} ((Δ + 1)n + 1)`.
pub fn pmf_constant_delta(j: usize, t: usize, delta: f64) -> Result<Pmf> {
    let span = check_cap(j, t)?;
    check_delta(delta)?;
    let log_space = span > LOG_SPACE_THRESHOLD;
    let denom = constant_denominator(j, t, delta, log_space);

    let mut probs = Vec::with_capacity(span + 1);
    let mut none = Product::new(log_space);
    for p in j..=t {
        none.mul((p - 1) as f64 * (delta + 1.0));
    }
    probs.push(none.ratio(denom));

    for k in 1..=span {
        let mut total = 0.0;
        let mut tuples = IndexTupleEnumerator::new(j, k, t);
        while let Some(tuple) = tuples.advance() {
            let mut num = Product::new(log_space);
            let mut before = 0usize;
            for p in j..=t {
                if before < tuple.len() && tuple[before] == p {
                    num.mul(1.0 + before as f64 * delta);
                    before += 1;
                } else {
                    num.mul((p - 1) as f64 * (delta + 1.0) - delta * before as f64);
                }
            }
            total += num.ratio(denom);
        }
        probs.push(total);
    }
    Pmf::from_probs(j, t, probs)
}

fn constant_denominator(j: usize, t: usize, delta: f64, log_space: bool) -> Product {
    let mut denom = Product::new(log_space);
    for n in j - 1..t {
        denom.mul((delta + 1.0) * n as f64 + 1.0);
    }
    denom
}

/// Exact law of `N_{j,t}` for constant `Δ` in `O((t − j + 1)²)`.
///
/// Walks times `n = j..=t` keeping the distribution of draws so far. With
/// `k` earlier draws, color `j` is drawn at time `n` with probability
/// `(1 + kΔ) / (n + (n − 1)Δ)`. No enumeration cap applies.
pub fn pmf_constant_delta_dp(j: usize, t: usize, delta: f64) -> Result<Pmf> {
    check_color(j, t)?;
    check_delta(delta)?;
    let span = t - j + 1;
    let mut dist = vec![0.0; span + 1];
    dist[0] = 1.0;
    for (step, n) in (j..=t).enumerate() {
        let total = n as f64 + (n - 1) as f64 * delta;
        // Only k ≤ step draws are possible before time n; walk downward so
        // dist[k] still holds the previous step when dist[k + 1] is updated.
        for k in (0..=step).rev() {
            let mass = dist[k];
            if mass == 0.0 {
                continue;
            }
            let hit = (1.0 + k as f64 * delta) / total;
            let miss = ((n - 1) as f64 * (1.0 + delta) - k as f64 * delta) / total;
            dist[k + 1] += mass * hit;
            dist[k] = mass * miss;
        }
    }
    Pmf::from_probs(j, t, dist)
}

/// `Γ(n + 1) = n!` as a float.
fn factorial(n: usize) -> f64 {
    (1..=n).map(|m| m as f64).product()
}

/// Exact law of `N_{j,t}` for `Δ = 1`, in gamma-function form.
///
/// The drawn-time product collapses to `Γ(k + 1)`, non-drawn times give
/// `2(p − 1) − #{i_l ≤ p − 1}`, and the zero-draw mass is
/// `2^{t−j+1} Γ(t) / (Γ(j − 1) Π (2n + 1))`, which vanishes for `j = 1`.
/// These agree with [`pmf_constant_delta`] at `Δ = 1`; see
/// [`pmf_delta_one_uncorrected`] for the variant they replace.
pub fn pmf_delta_one(j: usize, t: usize) -> Result<Pmf> {
    let span = check_cap(j, t)?;
    let denom: f64 = (j - 1..t).map(|n| (2 * n + 1) as f64).product();

    let mut probs = Vec::with_capacity(span + 1);
    probs.push(if j == 1 {
        0.0
    } else {
        // Γ(t) / Γ(j − 1) = (j − 1)(j) ⋯ (t − 1)
        let rising: f64 = (j - 1..t).map(|m| m as f64).product();
        2f64.powi(span as i32) * rising / denom
    });
    for k in 1..=span {
        let gamma_k1 = factorial(k);
        let mut total = 0.0;
        let mut tuples = IndexTupleEnumerator::new(j, k, t);
        while let Some(tuple) = tuples.advance() {
            let mut num = gamma_k1;
            let mut before = 0usize;
            for p in j..=t {
                if before < tuple.len() && tuple[before] == p {
                    before += 1;
                } else {
                    num *= (2 * (p - 1) - before) as f64;
                }
            }
            total += num / denom;
        }
        probs.push(total);
    }
    Pmf::from_probs(j, t, probs)
}

/// The `Δ = 1` gamma form with the two defects it is often quoted with:
/// the non-drawn product also runs over the drawn times, and the zero-draw
/// term reads `2Γ(t + 1) / (Γ(j − 1) Π (2n + 1))`.
///
/// The result is generally not a probability vector. It exists only so the
/// difference from [`pmf_delta_one`] can be measured and reported.
pub fn pmf_delta_one_uncorrected(j: usize, t: usize) -> Result<Vec<f64>> {
    let span = check_cap(j, t)?;
    let denom: f64 = (j - 1..t).map(|n| (2 * n + 1) as f64).product();

    let mut probs = Vec::with_capacity(span + 1);
    probs.push(if j == 1 {
        // 1/Γ(0) = 0
        0.0
    } else {
        2.0 * factorial(t) / factorial(j - 2) / denom
    });
    for k in 1..=span {
        let gamma_k1 = factorial(k);
        let mut total = 0.0;
        let mut tuples = IndexTupleEnumerator::new(j, k, t);
        while let Some(tuple) = tuples.advance() {
            let mut num = gamma_k1;
            let mut before = 0usize;
            for p in j..=t {
                num *= 2.0 * (p - 1) as f64 - before as f64;
                if before < tuple.len() && tuple[before] == p {
                    before += 1;
                }
            }
            total += num / denom;
        }
        probs.push(total);
    }
    Ok(probs)
}

/// How far the uncorrected `Δ = 1` form strays from the exact law.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaOneDiscrepancy {
    pub color: usize,
    pub horizon: usize,
    /// Largest entrywise gap between the two forms.
    pub max_abs_diff: f64,
    /// Gap in the zero-draw entry alone.
    pub zero_draw_diff: f64,
    /// Total mass of the uncorrected form.
    pub uncorrected_mass: f64,
}

impl DeltaOneDiscrepancy {
    pub fn is_mismatch(&self, tol: f64) -> bool {
        self.max_abs_diff > tol
    }
}

pub fn delta_one_discrepancy(j: usize, t: usize) -> Result<DeltaOneDiscrepancy> {
    let exact = pmf_delta_one(j, t)?;
    let raw = pmf_delta_one_uncorrected(j, t)?;
    let max_abs_diff = exact
        .probs()
        .iter()
        .zip(&raw)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(DeltaOneDiscrepancy {
        color: j,
        horizon: t,
        max_abs_diff,
        zero_draw_diff: (exact.prob(0) - raw[0]).abs(),
        uncorrected_mass: raw.iter().sum(),
    })
}
