//! 0-1 knapsack as a sequence of item insertions.
//!
//! Each action adds one item that still fits. Items are scored by their
//! value-per-weight ratio and a state is a candidate once nothing else fits,
//! so candidates are exactly the maximal packings. Energy is the negated
//! packed value.

mod oracle;

pub use oracle::{brute_force_oracle, dp_oracle, dp_oracle_with_limit, DEFAULT_DP_CELL_LIMIT};

use thiserror::Error;

use crate::search::{AdapterError, Problem, ScoredAction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnapsackError {
    #[error("capacity must be >= 1")]
    ZeroCapacity,
    #[error("item {id}: weight must be >= 1")]
    ZeroWeight { id: usize },
    #[error("item {0} is not part of the instance")]
    UnknownItem(usize),
    #[error("item {0} is already packed")]
    AlreadyPacked(usize),
    #[error("item {id} does not fit: {used} + {weight} > {capacity}")]
    DoesNotFit {
        id: usize,
        used: u64,
        weight: u64,
        capacity: u64,
    },
    #[error("state is not a candidate: item {0} still fits")]
    NotCandidate(usize),
    #[error("dynamic programming table of {cells} cells exceeds the limit of {limit}")]
    CapacityOverflow { cells: u128, limit: u128 },
    #[error("{n} items is too many for subset enumeration (max {max})")]
    TooLarge { n: usize, max: usize },
}

impl From<KnapsackError> for AdapterError {
    fn from(e: KnapsackError) -> Self {
        AdapterError(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Item {
    pub id: usize,
    pub value: u64,
    pub weight: u64,
}

impl Item {
    pub fn ratio(&self) -> f64 {
        self.value as f64 / self.weight as f64
    }
}

/// Immutable problem instance. Item ids are their positions.
#[derive(Debug, Clone, PartialEq)]
pub struct KnapsackInstance {
    items: Vec<Item>,
    capacity: u64,
    // Item ids sorted by descending ratio, ties by id.
    by_ratio: Vec<usize>,
}

impl KnapsackInstance {
    /// Builds an instance from `(value, weight)` pairs.
    pub fn new(items: &[(u64, u64)], capacity: u64) -> Result<Self, KnapsackError> {
        if capacity == 0 {
            return Err(KnapsackError::ZeroCapacity);
        }
        let items: Vec<Item> = items
            .iter()
            .enumerate()
            .map(|(id, &(value, weight))| Item { id, value, weight })
            .collect();
        if let Some(item) = items.iter().find(|i| i.weight == 0) {
            return Err(KnapsackError::ZeroWeight { id: item.id });
        }
        let mut by_ratio: Vec<usize> = (0..items.len()).collect();
        by_ratio.sort_by(|&a, &b| {
            items[b]
                .ratio()
                .total_cmp(&items[a].ratio())
                .then_with(|| a.cmp(&b))
        });
        Ok(Self {
            items,
            capacity,
            by_ratio,
        })
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn total_weight(&self) -> u64 {
        self.items.iter().map(|i| i.weight).sum()
    }

    pub fn empty_state(&self) -> KnapsackState {
        KnapsackState {
            selected: Vec::new(),
            packed: vec![false; self.items.len()],
            used_weight: 0,
            total_value: 0,
        }
    }

    /// Value-per-weight score of adding `item` to `state`, zero if it does not fit.
    pub fn heuristic(&self, item: &Item, state: &KnapsackState) -> f64 {
        if state.used_weight + item.weight <= self.capacity {
            item.ratio()
        } else {
            0.0
        }
    }

    fn fits(&self, item: &Item, state: &KnapsackState) -> bool {
        !state.packed[item.id] && state.used_weight + item.weight <= self.capacity
    }

    /// Unpacked items that fit, best ratio first.
    pub fn scored_actions(&self, state: &KnapsackState) -> Vec<ScoredAction<usize>> {
        self.by_ratio
            .iter()
            .map(|&id| &self.items[id])
            .filter(|item| self.fits(item, state))
            .map(|item| ScoredAction::new(item.id, self.heuristic(item, state)))
            .collect()
    }

    pub fn pack(&self, state: &KnapsackState, id: usize) -> Result<KnapsackState, KnapsackError> {
        let item = self.items.get(id).ok_or(KnapsackError::UnknownItem(id))?;
        if state.packed[id] {
            return Err(KnapsackError::AlreadyPacked(id));
        }
        if state.used_weight + item.weight > self.capacity {
            return Err(KnapsackError::DoesNotFit {
                id,
                used: state.used_weight,
                weight: item.weight,
                capacity: self.capacity,
            });
        }
        let mut next = state.clone();
        next.selected.push(id);
        next.packed[id] = true;
        next.used_weight += item.weight;
        next.total_value += item.value;
        Ok(next)
    }

    pub fn is_maximal(&self, state: &KnapsackState) -> bool {
        self.first_fitting(state).is_none()
    }

    fn first_fitting(&self, state: &KnapsackState) -> Option<usize> {
        self.items
            .iter()
            .find(|i| self.fits(i, state))
            .map(|i| i.id)
    }

    /// Negated packed value of a maximal packing.
    pub fn energy(&self, state: &KnapsackState) -> Result<f64, KnapsackError> {
        match self.first_fitting(state) {
            Some(id) => Err(KnapsackError::NotCandidate(id)),
            None => Ok(-(state.total_value as f64)),
        }
    }

    /// Classic ratio greedy: scan items by descending value per weight and
    /// pack each one that still fits. Returns ids in packing order.
    pub fn greedy_packing(&self) -> Vec<usize> {
        let mut used = 0;
        let mut packed = Vec::new();
        for &id in &self.by_ratio {
            let w = self.items[id].weight;
            if used + w <= self.capacity {
                used += w;
                packed.push(id);
            }
        }
        packed
    }
}

/// A partial packing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KnapsackState {
    selected: Vec<usize>,
    packed: Vec<bool>,
    used_weight: u64,
    total_value: u64,
}

impl KnapsackState {
    /// Packed item ids in insertion order.
    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn used_weight(&self) -> u64 {
        self.used_weight
    }

    pub fn total_value(&self) -> u64 {
        self.total_value
    }

    pub fn contains(&self, id: usize) -> bool {
        self.packed.get(id).copied().unwrap_or(false)
    }
}

impl Problem for KnapsackInstance {
    type State = KnapsackState;
    type Action = usize;

    fn initial_state(&self) -> KnapsackState {
        self.empty_state()
    }

    fn scored_actions(&self, state: &KnapsackState) -> Vec<ScoredAction<usize>> {
        KnapsackInstance::scored_actions(self, state)
    }

    fn apply(&self, state: &KnapsackState, action: usize) -> Result<KnapsackState, AdapterError> {
        Ok(self.pack(state, action)?)
    }

    fn is_candidate(&self, state: &KnapsackState) -> bool {
        self.is_maximal(state)
    }

    fn energy(&self, state: &KnapsackState) -> Result<f64, AdapterError> {
        Ok(KnapsackInstance::energy(self, state)?)
    }
}
