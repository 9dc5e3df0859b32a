//! Draw sequences `j_1, j_2, …, j_t`, the sufficient statistic of the process.

use crate::error::{Error, Result};
use crate::schedule::ReinforcementSchedule;
use crate::urn::UrnState;

/// The colors drawn at times `1..=t`, together with the schedule they were
/// drawn under.
#[derive(Debug, Clone, PartialEq)]
pub struct DrawHistory {
    schedule: ReinforcementSchedule,
    draws: Vec<usize>,
}

impl DrawHistory {
    pub fn empty(schedule: ReinforcementSchedule) -> Self {
        DrawHistory {
            schedule,
            draws: Vec::new(),
        }
    }

    /// Validates that `draws[n - 1] ∈ 1..=n`, which also forces `j_1 = 1`.
    pub fn new(schedule: ReinforcementSchedule, draws: Vec<usize>) -> Result<Self> {
        for (i, &j) in draws.iter().enumerate() {
            let n = i + 1;
            if j == 0 || j > n {
                return Err(Error::InvalidHistory(format!(
                    "draw at time {n} is color {j}, expected 1..={n}"
                )));
            }
        }
        Ok(DrawHistory { schedule, draws })
    }

    pub(crate) fn from_trusted(schedule: ReinforcementSchedule, draws: Vec<usize>) -> Self {
        DrawHistory { schedule, draws }
    }

    pub fn schedule(&self) -> &ReinforcementSchedule {
        &self.schedule
    }

    pub fn draws(&self) -> &[usize] {
        &self.draws
    }

    /// Number of steps `t`.
    pub fn len(&self) -> usize {
        self.draws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.draws.is_empty()
    }

    pub fn push(&mut self, color: usize) -> Result<()> {
        let n = self.draws.len() + 1;
        if color == 0 || color > n {
            return Err(Error::InvalidColor { color, max: n });
        }
        self.draws.push(color);
        Ok(())
    }

    /// The one-hot draw vector `Z_n` of length `n`.
    pub fn draw_vector(&self, n: usize) -> Result<Vec<u8>> {
        if n == 0 || n > self.draws.len() {
            return Err(Error::IndexOutOfRange {
                what: "n",
                value: n,
                lo: 1,
                hi: self.draws.len(),
            });
        }
        let mut z = vec![0; n];
        z[self.draws[n - 1] - 1] = 1;
        Ok(z)
    }

    /// `N_{j,t}`: how many of the first `t` draws picked color `j`.
    pub fn count_draws(&self, j: usize, t: usize) -> Result<usize> {
        if t > self.draws.len() {
            return Err(Error::IndexOutOfRange {
                what: "t",
                value: t,
                lo: 0,
                hi: self.draws.len(),
            });
        }
        if j == 0 || j > t + 1 {
            return Err(Error::IndexOutOfRange {
                what: "j",
                value: j,
                lo: 1,
                hi: t + 1,
            });
        }
        // Color j cannot be drawn before time j.
        Ok(self.draws[..t]
            .iter()
            .skip(j.saturating_sub(1))
            .filter(|&&c| c == j)
            .count())
    }

    /// Draw counts for every color after all `t` steps; index `j - 1`.
    pub fn all_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.draws.len() + 1];
        for &c in &self.draws {
            counts[c - 1] += 1;
        }
        counts
    }

    /// Rebuilds the urn by forcing every recorded draw.
    pub fn replay(&self) -> UrnState {
        let mut urn = UrnState::with_capacity(self.draws.len());
        for &c in &self.draws {
            urn.step(&self.schedule, c)
                .expect("validated history only holds in-range colors");
        }
        urn
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hist(draws: &[usize]) -> DrawHistory {
        DrawHistory::new(ReinforcementSchedule::Constant(2.0), draws.to_vec()).unwrap()
    }

    #[test]
    fn rejects_impossible_draws() {
        let s = ReinforcementSchedule::Constant(1.0);
        assert!(DrawHistory::new(s.clone(), vec![2]).is_err());
        assert!(DrawHistory::new(s.clone(), vec![1, 3]).is_err());
        assert!(DrawHistory::new(s, vec![1, 0]).is_err());
    }

    #[test]
    fn counts_on_sample_path() {
        let h = hist(&[1, 2, 1]);
        assert_eq!(h.count_draws(2, 3).unwrap(), 1);
        assert_eq!(h.count_draws(1, 3).unwrap(), 2);
        assert_eq!(h.count_draws(4, 3).unwrap(), 0);
        assert_eq!(h.count_draws(1, 1).unwrap(), 1);
        let total: usize = (1..=4).map(|j| h.count_draws(j, 3).unwrap()).sum();
        assert_eq!(total, 3);
    }

    #[test]
    fn count_draws_range_errors() {
        let h = hist(&[1, 2, 1]);
        assert!(h.count_draws(1, 4).is_err());
        assert!(h.count_draws(5, 3).is_err());
        assert!(h.count_draws(0, 3).is_err());
    }

    #[test]
    fn draw_vectors_are_one_hot() {
        let h = hist(&[1, 1, 2, 2]);
        assert_eq!(h.draw_vector(1).unwrap(), vec![1]);
        assert_eq!(h.draw_vector(2).unwrap(), vec![1, 0]);
        assert_eq!(h.draw_vector(3).unwrap(), vec![0, 1, 0]);
        assert_eq!(h.draw_vector(4).unwrap(), vec![0, 1, 0, 0]);
    }

    #[test]
    fn replay_reproduces_masses() {
        let h = hist(&[1, 2, 1]);
        let urn = h.replay();
        assert_eq!(urn.weights(), &[5.0, 3.0, 1.0, 1.0]);
        assert_eq!(*urn.total_weight(), 10.0);
    }
}
