//! The expanding-color Pólya urn.
//!
//! Colors are 1-indexed throughout the public API: color `j` is the ball
//! type introduced at time `j - 1` and corresponds to vertex `j` of the
//! graph.

use std::fmt::Debug;
use std::ops::{Add, Div};

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::schedule::ReinforcementSchedule;

/// Arithmetic needed to run the urn. Implemented for `f64` and for exact
/// rationals such as `num_rational::Ratio<i64>`.
pub trait Weight:
    Clone + Debug + PartialOrd + Zero + One + Add<Output = Self> + Div<Output = Self>
{
}

impl<T> Weight for T where
    T: Clone + Debug + PartialOrd + Zero + One + Add<Output = T> + Div<Output = T>
{
}

/// Ball masses per color after `time` steps.
#[derive(Debug, Clone, PartialEq)]
pub struct UrnState<W = f64> {
    time: usize,
    weights: Vec<W>,
    total_weight: W,
}

/// The urn at `t = 0`: a single ball of color 1.
pub fn new_urn() -> UrnState {
    UrnState::new()
}

impl<W: Weight> Default for UrnState<W> {
    fn default() -> Self {
        Self::new()
    }
}

impl<W: Weight> UrnState<W> {
    pub fn new() -> Self {
        UrnState {
            time: 0,
            weights: vec![W::one()],
            total_weight: W::one(),
        }
    }

    pub fn with_capacity(horizon: usize) -> Self {
        let mut weights = Vec::with_capacity(horizon + 1);
        weights.push(W::one());
        UrnState {
            time: 0,
            weights,
            total_weight: W::one(),
        }
    }

    pub fn time(&self) -> usize {
        self.time
    }

    /// Per-color masses; `weights()[j - 1]` is the mass of color `j`.
    pub fn weights(&self) -> &[W] {
        &self.weights
    }

    pub fn weight(&self, color: usize) -> Option<&W> {
        color.checked_sub(1).and_then(|i| self.weights.get(i))
    }

    pub fn total_weight(&self) -> &W {
        &self.total_weight
    }

    /// Always `time + 1`.
    pub fn num_colors(&self) -> usize {
        self.weights.len()
    }

    /// `U_t`: each color's share of the total mass.
    pub fn composition(&self) -> Vec<W> {
        self.weights
            .iter()
            .map(|w| w.clone() / self.total_weight.clone())
            .collect()
    }

    /// The law of the next draw. Entry `j - 1` is the probability that
    /// color `j` is drawn at time `t + 1`; this is the composition itself.
    pub fn conditional_draw_pmf(&self) -> Vec<W> {
        self.composition()
    }

    /// Advances one step with the drawn color given explicitly.
    ///
    /// The drawn color gains `delta` and a new color with unit mass is
    /// appended. Returns the drawn color.
    pub fn step_forced(&mut self, color: usize, delta: W) -> Result<usize> {
        if color == 0 || color > self.weights.len() {
            return Err(Error::InvalidColor {
                color,
                max: self.weights.len(),
            });
        }
        self.apply(color, delta);
        Ok(color)
    }

    fn apply(&mut self, color: usize, delta: W) {
        let w = &mut self.weights[color - 1];
        *w = w.clone() + delta.clone();
        self.weights.push(W::one());
        self.total_weight = self.total_weight.clone() + delta + W::one();
        self.time += 1;
    }
}

impl UrnState<f64> {
    /// Forced step using `Δ_{t+1}` from `schedule`.
    pub fn step(&mut self, schedule: &ReinforcementSchedule, color: usize) -> Result<usize> {
        let delta = schedule.evaluate(self.time as u64 + 1);
        self.step_forced(color, delta)
    }

    /// Samples the next color by cumulative-weight inversion. Consumes
    /// exactly one uniform variate.
    pub fn sample_color<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let target = rng.random::<f64>() * self.total_weight;
        invert_cumulative(&self.weights, target)
    }

    /// Draws a color with probability [`composition`](Self::composition)
    /// and advances the urn.
    pub fn step_random<R: Rng + ?Sized>(
        &mut self,
        schedule: &ReinforcementSchedule,
        rng: &mut R,
    ) -> usize {
        let color = self.sample_color(rng);
        let delta = schedule.evaluate(self.time as u64 + 1);
        self.apply(color, delta);
        color
    }

    /// Checks the mass invariants against the schedule that produced this
    /// state.
    pub fn check_invariants(&self, schedule: &ReinforcementSchedule) -> Result<()> {
        if self.weights.len() != self.time + 1 {
            return Err(Error::Invariant(format!(
                "{} colors at time {}",
                self.weights.len(),
                self.time
            )));
        }
        if let Some((i, w)) = self.weights.iter().enumerate().find(|(_, &w)| w < 1.0) {
            return Err(Error::Invariant(format!(
                "color {} has mass {w} < 1",
                i + 1
            )));
        }
        if *self.weights.last().unwrap() != 1.0 {
            return Err(Error::Invariant("newest color must hold one ball".into()));
        }
        let expected: f64 = 1.0
            + self.time as f64
            + (1..=self.time as u64)
                .map(|k| schedule.evaluate(k))
                .sum::<f64>();
        let summed: f64 = self.weights.iter().sum();
        for (label, value) in [
            ("running total", self.total_weight),
            ("sum of weights", summed),
        ] {
            if (value - expected).abs() > 1e-12 * expected {
                return Err(Error::Invariant(format!(
                    "{label} {value} differs from 1 + t + sum(delta) = {expected}"
                )));
            }
        }
        Ok(())
    }
}

/// Smallest 1-based index whose inclusive cumulative weight exceeds
/// `target`; the last index absorbs rounding overshoot.
pub(crate) fn invert_cumulative(weights: &[f64], target: f64) -> usize {
    let mut acc = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        acc += w;
        if target < acc {
            return i + 1;
        }
    }
    weights.len()
}

/// `P(Z_{t,t} = 1) = 1 / (t + Σ_{k<t} Δ_k)`: the chance that the color
/// introduced at time `t - 1` is drawn at time `t`. It does not depend on
/// the draw history.
pub fn new_color_draw_prob(t: usize, schedule: &ReinforcementSchedule) -> f64 {
    assert!(t >= 1, "draw times start at 1");
    let prior: f64 = (1..t as u64).map(|k| schedule.evaluate(k)).sum();
    1.0 / (t as f64 + prior)
}

/// Unconditional probability that color `j` is drawn at time `t`.
pub fn marginal_draw_prob(j: usize, t: usize, schedule: &ReinforcementSchedule) -> Result<f64> {
    Ok(*marginal_draw_probs(j, t, schedule)?.last().unwrap())
}

/// `P(Z_{j,n} = 1)` for `n = j..=t`, from the forward recursion
///
/// `P(Z_{j,n}=1) = (1 + Σ_{m=j}^{n-1} Δ_m P(Z_{j,m}=1)) / (n + Σ_{k<n} Δ_k)`.
pub fn marginal_draw_probs(
    j: usize,
    t: usize,
    schedule: &ReinforcementSchedule,
) -> Result<Vec<f64>> {
    if t == 0 {
        return Err(Error::IndexOutOfRange {
            what: "t",
            value: t,
            lo: 1,
            hi: usize::MAX,
        });
    }
    if j == 0 || j > t {
        return Err(Error::InvalidColor { color: j, max: t });
    }
    let table = schedule.table(t);
    let mut probs = Vec::with_capacity(t - j + 1);
    // Expected reinforcement mass accumulated by color j.
    let mut expected_gain = 0.0;
    for n in j..=t {
        let p = (1.0 + expected_gain) / (n as f64 + table.sum_through(n - 1));
        probs.push(p);
        expected_gain += table.delta(n) * p;
    }
    Ok(probs)
}
