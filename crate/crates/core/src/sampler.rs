//! Randomized driving of the urn.

use rand::Rng;

use crate::fenwick::PrefixSumIndex;
use crate::schedule::ReinforcementSchedule;
use crate::urn::{invert_cumulative, UrnState};

/// Horizons at or above this use the prefix-sum index.
pub const INDEXED_THRESHOLD: usize = 10_000;

/// How colors are located from a uniform variate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplerKind {
    /// O(t) scan over the cumulative weights.
    Linear,
    /// O(log t) search in a binary-indexed tree.
    Indexed,
}

impl SamplerKind {
    pub fn for_horizon(horizon: usize) -> Self {
        if horizon >= INDEXED_THRESHOLD {
            SamplerKind::Indexed
        } else {
            SamplerKind::Linear
        }
    }
}

/// An urn plus the schedule driving it and an optional sampling index.
///
/// Every step consumes exactly one `f64` from the generator, so a given
/// seed, schedule and sampler kind always yield the same draws.
#[derive(Debug, Clone)]
pub struct UrnProcess {
    schedule: ReinforcementSchedule,
    urn: UrnState,
    index: Option<PrefixSumIndex>,
}

impl UrnProcess {
    pub fn new(schedule: ReinforcementSchedule, kind: SamplerKind, horizon: usize) -> Self {
        let index = match kind {
            SamplerKind::Linear => None,
            SamplerKind::Indexed => {
                let mut idx = PrefixSumIndex::with_capacity(horizon + 1);
                idx.push(1.0);
                Some(idx)
            }
        };
        UrnProcess {
            schedule,
            urn: UrnState::with_capacity(horizon),
            index,
        }
    }

    pub fn urn(&self) -> &UrnState {
        &self.urn
    }

    pub fn schedule(&self) -> &ReinforcementSchedule {
        &self.schedule
    }

    pub fn into_urn(self) -> UrnState {
        self.urn
    }

    /// Samples one draw, updates the urn and returns the drawn color.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> usize {
        let target = rng.random::<f64>() * *self.urn.total_weight();
        let color = match &self.index {
            None => invert_cumulative(self.urn.weights(), target),
            Some(idx) => idx.search(target) + 1,
        };
        let delta = self.schedule.evaluate(self.urn.time() as u64 + 1);
        self.urn
            .step_forced(color, delta)
            .expect("sampled color is always in range");
        if let Some(idx) = &mut self.index {
            idx.add(color - 1, delta);
            idx.push(1.0);
        }
        color
    }
}
