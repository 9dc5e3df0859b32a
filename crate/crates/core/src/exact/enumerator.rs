/// Ascending `k`-tuples of draw times `j ≤ i_1 < … < i_k ≤ t`.
///
/// For `j = 1` the first index is pinned to 1 because the first draw always
/// picks color 1, so the enumerator yields `C(t - 1, k - 1)` tuples; for
/// `j > 1` it yields `C(t - j + 1, k)`.
#[derive(Debug, Clone)]
pub struct IndexTupleEnumerator {
    t: usize,
    // Positions before `fixed` never move.
    fixed: usize,
    state: Vec<usize>,
    started: bool,
    done: bool,
}

impl IndexTupleEnumerator {
    pub fn new(j: usize, k: usize, t: usize) -> Self {
        let (state, fixed, valid) = if j <= 1 {
            if k == 0 {
                (Vec::new(), 0, false)
            } else {
                ((1..=k).collect(), 1, k <= t)
            }
        } else {
            ((j..j + k).collect(), 0, j + k <= t + 1)
        };
        IndexTupleEnumerator {
            t,
            fixed,
            state,
            started: false,
            done: !valid,
        }
    }

    /// The next tuple, borrowed from the enumerator.
    pub fn advance(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.state);
        }
        let k = self.state.len();
        let mut i = k;
        loop {
            if i == self.fixed {
                self.done = true;
                return None;
            }
            i -= 1;
            // Slot i can rise as long as the tail still fits below t.
            if self.state[i] < self.t - (k - 1 - i) {
                break;
            }
        }
        self.state[i] += 1;
        for m in i + 1..k {
            self.state[m] = self.state[m - 1] + 1;
        }
        Some(&self.state)
    }
}

impl Iterator for IndexTupleEnumerator {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.advance().map(<[usize]>::to_vec)
    }
}
