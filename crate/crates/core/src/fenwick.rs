//! Binary-indexed prefix sums over non-negative `f64` weights.

/// A Fenwick tree that supports appending, point increments, and inverse
/// prefix-sum search. Positions are 0-based in the public API.
#[derive(Debug, Clone, Default)]
pub struct PrefixSumIndex {
    // 1-based; tree[0] unused.
    tree: Vec<f64>,
}

#[inline]
fn lsb(i: usize) -> usize {
    i & i.wrapping_neg()
}

impl PrefixSumIndex {
    pub fn new() -> Self {
        PrefixSumIndex { tree: vec![0.0] }
    }

    pub fn with_capacity(capacity: usize) -> Self {
        let mut tree = Vec::with_capacity(capacity + 1);
        tree.push(0.0);
        PrefixSumIndex { tree }
    }

    pub fn from_weights(weights: &[f64]) -> Self {
        let mut tree = Vec::with_capacity(weights.len() + 1);
        tree.push(0.0);
        tree.extend_from_slice(weights);
        for i in 1..tree.len() {
            let parent = i + lsb(i);
            if parent < tree.len() {
                tree[parent] += tree[i];
            }
        }
        PrefixSumIndex { tree }
    }

    pub fn len(&self) -> usize {
        self.tree.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Appends a new position holding `weight`.
    pub fn push(&mut self, weight: f64) {
        let i = self.tree.len();
        // tree[i] covers (i - lsb(i), i]; everything but the new slot is
        // already summed in the existing prefix.
        let covered = self.prefix_through(i - 1) - self.prefix_through(i - lsb(i));
        self.tree.push(weight + covered);
    }

    /// Adds `amount` to position `pos`.
    pub fn add(&mut self, pos: usize, amount: f64) {
        let mut i = pos + 1;
        while i < self.tree.len() {
            self.tree[i] += amount;
            i += lsb(i);
        }
    }

    /// Sum of positions `0..count`.
    pub fn prefix(&self, count: usize) -> f64 {
        self.prefix_through(count)
    }

    fn prefix_through(&self, mut i: usize) -> f64 {
        let mut sum = 0.0;
        while i > 0 {
            sum += self.tree[i];
            i -= lsb(i);
        }
        sum
    }

    /// Smallest position `p` whose inclusive prefix sum exceeds `target`,
    /// clamped to the last position when rounding pushes `target` past the
    /// total.
    pub fn search(&self, target: f64) -> usize {
        let n = self.len();
        debug_assert!(n > 0);
        let mut pos = 0;
        let mut remaining = target;
        let mut step = if n == 0 {
            0
        } else {
            1 << (usize::BITS - 1 - n.leading_zeros())
        };
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= remaining {
                pos = next;
                remaining -= self.tree[next];
            }
            step >>= 1;
        }
        pos.min(n - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_matches_bulk_build() {
        let weights = [2.0, 1.0, 1.0, 3.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0];
        let bulk = PrefixSumIndex::from_weights(&weights);
        let mut pushed = PrefixSumIndex::new();
        for &w in &weights {
            pushed.push(w);
        }
        for c in 0..=weights.len() {
            let expect: f64 = weights[..c].iter().sum();
            assert_eq!(bulk.prefix(c), expect);
            assert_eq!(pushed.prefix(c), expect);
        }
    }

    #[test]
    fn search_inverts_prefix() {
        let mut idx = PrefixSumIndex::from_weights(&[3.0, 1.0, 1.0]);
        assert_eq!(idx.search(0.0), 0);
        assert_eq!(idx.search(2.999), 0);
        assert_eq!(idx.search(3.0), 1);
        assert_eq!(idx.search(4.5), 2);
        assert_eq!(idx.search(99.0), 2);
        idx.add(1, 2.0);
        assert_eq!(idx.search(3.5), 1);
        assert_eq!(idx.search(5.0), 1);
        assert_eq!(idx.search(6.0), 2);
    }

    #[test]
    fn zero_weight_positions_are_skipped() {
        let idx = PrefixSumIndex::from_weights(&[1.0, 0.0, 1.0]);
        assert_eq!(idx.search(1.0), 2);
    }
}
