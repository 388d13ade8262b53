//! Anytime search engines over a generic sequence-of-actions problem.
//!
//! A problem is described by implementing [`Problem`]: it hands out an initial
//! state, a list of scored actions for every state, a transition function, a
//! candidate test and an energy for complete candidates. The engines in this
//! module never look inside states; they only order and revisit decisions.
//!
//! Three engines share one machinery ([`Search`]):
//!
//! * [`greedy`] runs a single greedy rollout from the root.
//! * [`dfs_search`] starts with the greedy rollout and then repeatedly
//!   revisits the most dilemmatic decision, i.e. the explored state whose two
//!   best remaining alternatives are closest in heuristic score.
//! * [`rss_search`] is the ablation baseline: identical except that the state
//!   to revisit is drawn uniformly at random from the queue.
//!
//! Energies are always minimized. Maximization problems negate their objective.

mod diagnostics;
mod engine;
mod queue;
mod score;
mod trace;

pub use diagnostics::{candidate_log_prob, normalize_scores, path_log_prob};
pub use engine::{
    dfs_search, greedy, greedy_rollout, rss_search, Outcome, Rollout, Search, SearchNode, Step,
};
pub use queue::{DilemmaQueue, Frontier, RandomQueue, Selection, RSS_RNG_NAME};
pub use score::{dilemma_estimator, selection_score};
pub use trace::{Algorithm, IterationRecord, Trace, TraceHeader};

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

/// An action together with its heuristic score at some state.
///
/// Higher scores are better. Scores are expected to be finite and nonnegative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoredAction<A> {
    pub action: A,
    pub score: f64,
}

impl<A> ScoredAction<A> {
    pub fn new(action: A, score: f64) -> Self {
        Self { action, score }
    }
}

/// Sorts scored actions descending by score, ties by ascending action.
pub fn sort_scored<A: Ord>(actions: &mut [ScoredAction<A>]) {
    actions.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then_with(|| a.action.cmp(&b.action))
    });
}

/// Error raised by a problem adapter.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct AdapterError(pub String);

impl AdapterError {
    pub fn new(message: impl Into<String>) -> Self {
        Self(message.into())
    }
}

/// A combinatorial problem expressed as a tree of action sequences.
///
/// Contract:
///
/// * `scored_actions` is deterministic and returns actions sorted by
///   descending score, ties broken by ascending action id
///   (see [`sort_scored`]).
/// * `apply` is a pure function of its arguments.
/// * `is_candidate` is true for complete solutions; a non-candidate state
///   must offer at least one action.
/// * `energy` is only asked of candidates. Lower is better.
pub trait Problem {
    type State: Clone;
    type Action: Copy + Eq + Ord + Hash + fmt::Debug;

    fn initial_state(&self) -> Self::State;

    fn scored_actions(&self, state: &Self::State) -> Vec<ScoredAction<Self::Action>>;

    fn apply(&self, state: &Self::State, action: Self::Action)
        -> Result<Self::State, AdapterError>;

    fn is_candidate(&self, state: &Self::State) -> bool;

    fn energy(&self, state: &Self::State) -> Result<f64, AdapterError>;
}

impl<P: Problem + ?Sized> Problem for &P {
    type State = P::State;
    type Action = P::Action;

    fn initial_state(&self) -> Self::State {
        (**self).initial_state()
    }

    fn scored_actions(&self, state: &Self::State) -> Vec<ScoredAction<Self::Action>> {
        (**self).scored_actions(state)
    }

    fn apply(
        &self,
        state: &Self::State,
        action: Self::Action,
    ) -> Result<Self::State, AdapterError> {
        (**self).apply(state, action)
    }

    fn is_candidate(&self, state: &Self::State) -> bool {
        (**self).is_candidate(state)
    }

    fn energy(&self, state: &Self::State) -> Result<f64, AdapterError> {
        (**self).energy(state)
    }
}

/// Knobs shared by every engine.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    /// Preference for revisiting deep states; subtracted per level of depth
    /// from the heuristic gap. Zero ranks purely by the gap.
    pub depth_const: f64,
    /// Guard added to the gap in [`dilemma_estimator`].
    pub epsilon: f64,
    /// Total number of iterations, counting the initial greedy rollout.
    pub max_iterations: usize,
    pub time_budget_ms: Option<u64>,
    /// Tree depth assumed by [`path_log_prob`].
    pub assumed_depth: Option<usize>,
    /// Branching factor assumed by [`path_log_prob`].
    pub assumed_branching: Option<usize>,
    /// Seed for the random queue; ignored by the other engines.
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            depth_const: 0.0,
            epsilon: 1e-12,
            max_iterations: 1000,
            time_budget_ms: None,
            assumed_depth: None,
            assumed_branching: None,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn with_max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn with_depth_const(mut self, depth_const: f64) -> Self {
        self.depth_const = depth_const;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Runs until the queue is empty.
    pub fn exhaustive() -> Self {
        Self::default().with_max_iterations(usize::MAX)
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.max_iterations == 0 {
            return Err(SearchError::BudgetZero);
        }
        if !(self.depth_const.is_finite() && self.depth_const >= 0.0) {
            return Err(SearchError::Config(format!(
                "depth_const must be finite and >= 0, got {}",
                self.depth_const
            )));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(SearchError::Config(format!(
                "epsilon must be finite and > 0, got {}",
                self.epsilon
            )));
        }
        if self.time_budget_ms == Some(0) {
            return Err(SearchError::Config("time budget must be positive".into()));
        }
        if self.assumed_depth == Some(0) {
            return Err(SearchError::Config("assumed depth must be positive".into()));
        }
        if matches!(self.assumed_branching, Some(b) if b < 2) {
            return Err(SearchError::Config("assumed branching must be >= 2".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("iteration budget is zero")]
    BudgetZero,
    #[error("invalid search configuration: {0}")]
    Config(String),
    #[error("adapter returned no actions for a non-candidate state at depth {depth}")]
    NoActions { depth: usize },
    #[error(transparent)]
    Adapter(#[from] AdapterError),
    #[error("domain error: {0}")]
    Domain(String),
}
