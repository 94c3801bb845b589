//! Bounded, sorted list of flip candidates.

use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecisionEntry {
    /// Decision reliability; smaller is less reliable.
    pub lambda: f64,
    /// Leaf id in the decoder tree. The bit-level SC decoder stores the
    /// u-domain position here instead.
    pub node_id: usize,
    /// Index of the decision inside its node.
    pub local_d: usize,
    /// Ordinal of the associated information bit, in `[0, k)`.
    pub info_index: usize,
}

impl DecisionEntry {
    /// Ascending lambda, ties by ascending information index.
    pub fn order(&self, other: &Self) -> Ordering {
        self.lambda.total_cmp(&other.lambda).then(self.info_index.cmp(&other.info_index))
    }
}

/// Flip candidate chosen for one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlipTarget(pub DecisionEntry);

/// Keeps the `capacity` smallest entries, sorted by [`DecisionEntry::order`].
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionList {
    entries: Vec<DecisionEntry>,
    capacity: usize,
}

impl DecisionList {
    pub fn new(capacity: usize) -> Self {
        Self { entries: Vec::with_capacity(capacity + 1), capacity }
    }

    /// List sized for `t_max` trials.
    pub fn for_trials(t_max: usize) -> Self {
        Self::new(t_max.saturating_sub(1))
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[DecisionEntry] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Option<&DecisionEntry> {
        self.entries.get(i)
    }

    pub fn clear(&mut self) {
        self.entries.clear();
    }

    /// Insert-sort step; entries beyond capacity are dropped.
    pub fn insert(&mut self, entry: DecisionEntry) {
        if self.capacity == 0 {
            return;
        }
        if self.entries.len() == self.capacity {
            let last = self.entries[self.capacity - 1];
            if entry.order(&last) != Ordering::Less {
                return;
            }
            self.entries.pop();
        }
        let pos = self.entries.partition_point(|e| e.order(&entry) == Ordering::Less);
        self.entries.insert(pos, entry);
    }
}
