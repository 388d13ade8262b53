use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SearchNode;

/// Name of the generator behind [`RandomQueue`], recorded in trace headers.
pub const RSS_RNG_NAME: &str = "chacha8";

/// Priority data attached to a queued state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection {
    pub score: f64,
    pub gap: f64,
}

/// Container of revisitable states.
pub trait Frontier<A> {
    fn push(&mut self, node: SearchNode<A>, selection: Selection);
    fn pop(&mut self) -> Option<(SearchNode<A>, Selection)>;
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

struct Entry<A> {
    selection: Selection,
    counter: u64,
    node: SearchNode<A>,
}

impl<A> PartialEq for Entry<A> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<A> Eq for Entry<A> {}

impl<A> PartialOrd for Entry<A> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<A> Ord for Entry<A> {
    // BinaryHeap is a max-heap: the "greatest" entry has the smallest score,
    // then the smallest insertion counter.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .selection
            .score
            .total_cmp(&self.selection.score)
            .then_with(|| other.counter.cmp(&self.counter))
    }
}

/// Min-heap keyed by selection score, FIFO among equal scores.
pub struct DilemmaQueue<A> {
    heap: BinaryHeap<Entry<A>>,
    counter: u64,
}

impl<A> Default for DilemmaQueue<A> {
    fn default() -> Self {
        Self {
            heap: BinaryHeap::new(),
            counter: 0,
        }
    }
}

impl<A> DilemmaQueue<A> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Selection of the entry that would be popped next.
    pub fn peek(&self) -> Option<Selection> {
        self.heap.peek().map(|e| e.selection)
    }
}

impl<A> Frontier<A> for DilemmaQueue<A> {
    fn push(&mut self, node: SearchNode<A>, selection: Selection) {
        let counter = self.counter;
        self.counter += 1;
        self.heap.push(Entry {
            selection,
            counter,
            node,
        });
    }

    fn pop(&mut self) -> Option<(SearchNode<A>, Selection)> {
        self.heap.pop().map(|e| (e.node, e.selection))
    }

    fn len(&self) -> usize {
        self.heap.len()
    }
}

/// Queue that ignores scores and pops a uniformly random entry.
pub struct RandomQueue<A> {
    entries: Vec<(SearchNode<A>, Selection)>,
    rng: ChaCha8Rng,
}

impl<A> RandomQueue<A> {
    pub fn new(seed: u64) -> Self {
        Self {
            entries: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl<A> Frontier<A> for RandomQueue<A> {
    fn push(&mut self, node: SearchNode<A>, selection: Selection) {
        self.entries.push((node, selection));
    }

    fn pop(&mut self) -> Option<(SearchNode<A>, Selection)> {
        match self.entries.len() {
            0 => None,
            // A single entry leaves nothing to randomize and does not advance
            // the generator.
            1 => self.entries.pop(),
            n => {
                let idx = self.rng.random_range(0..n);
                Some(self.entries.swap_remove(idx))
            }
        }
    }

    fn len(&self) -> usize {
        self.entries.len()
    }
}
