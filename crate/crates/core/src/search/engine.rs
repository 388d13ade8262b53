use std::time::Instant;

use super::queue::{DilemmaQueue, Frontier, RandomQueue, Selection, RSS_RNG_NAME};
use super::score::selection_score;
use super::trace::{Algorithm, IterationRecord, Trace, TraceHeader};
use super::{Problem, ScoredAction, SearchConfig, SearchError};

/// An explored, non-candidate state of the search tree.
///
/// The node keeps the path that reaches it and its sorted action list; the
/// state itself is recomputed from the path when the node is revisited.
/// `taken` counts how many actions, from the front of the list, have been
/// explored already.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchNode<A> {
    path: Vec<A>,
    actions: Vec<ScoredAction<A>>,
    taken: usize,
}

impl<A: Copy> SearchNode<A> {
    pub fn new(path: Vec<A>, actions: Vec<ScoredAction<A>>) -> Self {
        Self::from_parts(path, actions, 0)
    }

    pub fn from_parts(path: Vec<A>, actions: Vec<ScoredAction<A>>, taken: usize) -> Self {
        assert!(taken <= actions.len(), "taken count exceeds action count");
        Self {
            path,
            actions,
            taken,
        }
    }

    pub fn path(&self) -> &[A] {
        &self.path
    }

    pub fn depth(&self) -> usize {
        self.path.len()
    }

    pub fn actions(&self) -> &[ScoredAction<A>] {
        &self.actions
    }

    pub fn taken_count(&self) -> usize {
        self.taken
    }

    pub fn is_exhausted(&self) -> bool {
        self.taken == self.actions.len()
    }

    /// Takes the best untaken action.
    fn take(&mut self) -> Option<A> {
        let a = self.actions.get(self.taken)?.action;
        self.taken += 1;
        Some(a)
    }

    /// Heuristic pair that ranks this node in the queue, or `None` once every
    /// action has been taken.
    ///
    /// Right after the greedy choice this is the best and second-best score.
    /// After later revisits it is the next untaken score against the one
    /// following it, with a missing follower counting as zero.
    fn queue_pair(&self) -> Option<(f64, f64)> {
        if self.is_exhausted() || self.taken == 0 {
            return None;
        }
        let f = |i: usize| self.actions.get(i).map_or(0.0, |a| a.score);
        if self.taken == 1 {
            Some((f(0), f(1)))
        } else {
            Some((f(self.taken), f(self.taken + 1)))
        }
    }
}

fn requeue<A: Copy, F: Frontier<A>>(node: SearchNode<A>, frontier: &mut F, config: &SearchConfig) {
    if let Some((best, second)) = node.queue_pair() {
        let selection = Selection {
            score: selection_score(best, second, node.depth(), config),
            gap: best - second,
        };
        frontier.push(node, selection);
    }
}

/// Result of one greedy rollout.
#[derive(Debug, Clone)]
pub struct Rollout<S, A> {
    pub candidate: S,
    pub path: Vec<A>,
    /// Nodes created below `start`.
    pub created: usize,
}

/// Takes the best untaken action at `start`, then keeps taking the best
/// action until a candidate is reached.
///
/// Every node left behind with an untaken alternative goes into `frontier`,
/// `start` included.
pub fn greedy_rollout<P, F>(
    problem: &P,
    mut start: SearchNode<P::Action>,
    start_state: &P::State,
    frontier: &mut F,
    config: &SearchConfig,
) -> Result<Rollout<P::State, P::Action>, SearchError>
where
    P: Problem,
    F: Frontier<P::Action>,
{
    let action = start.take().ok_or(SearchError::NoActions {
        depth: start.depth(),
    })?;
    let mut path = start.path.clone();
    path.push(action);
    let mut state = problem.apply(start_state, action)?;
    requeue(start, frontier, config);

    let mut created = 0;
    loop {
        if problem.is_candidate(&state) {
            return Ok(Rollout {
                candidate: state,
                path,
                created,
            });
        }
        let actions = problem.scored_actions(&state);
        if actions.is_empty() {
            return Err(SearchError::NoActions { depth: path.len() });
        }
        let mut node = SearchNode::new(path.clone(), actions);
        created += 1;
        let next = node.take().expect("nonempty action list");
        requeue(node, frontier, config);
        state = problem.apply(&state, next)?;
        path.push(next);
    }
}

/// What a single iteration produced.
#[derive(Debug, Clone)]
pub struct Step<S, A> {
    pub record: IterationRecord,
    /// Path of the revisited state (empty for the greedy rollout).
    pub selected_path: Vec<A>,
    pub candidate_path: Vec<A>,
    pub candidate: S,
}

/// Final result of a run.
#[derive(Debug, Clone)]
pub struct Outcome<S, A> {
    pub best_state: S,
    pub best_path: Vec<A>,
    pub best_energy: f64,
    pub best_iteration: usize,
    pub trace: Trace,
    /// The queue ran dry: the whole search tree has been enumerated.
    pub exhausted: bool,
}

struct Best<S, A> {
    state: S,
    path: Vec<A>,
    energy: f64,
    iteration: usize,
}

/// An anytime run in progress.
///
/// [`Search::step`] performs one iteration at a time; [`Search::run`] loops
/// until the iteration budget, the time budget or the queue is exhausted.
pub struct Search<'p, P: Problem, F> {
    problem: &'p P,
    config: SearchConfig,
    frontier: F,
    trace: Trace,
    best: Option<Best<P::State, P::Action>>,
    started: Instant,
}

impl<'p, P: Problem> Search<'p, P, DilemmaQueue<P::Action>> {
    /// Dilemma-first search: revisits the state with the smallest selection score.
    pub fn dilemma(problem: &'p P, config: SearchConfig) -> Result<Self, SearchError> {
        let header = TraceHeader {
            algo: Algorithm::Dfs,
            seed: None,
            rng: None,
            depth_const: config.depth_const,
            epsilon: config.epsilon,
        };
        Self::with_frontier(problem, config, DilemmaQueue::new(), header)
    }
}

impl<'p, P: Problem> Search<'p, P, RandomQueue<P::Action>> {
    /// Random state selection, seeded from `config.seed`.
    pub fn random(problem: &'p P, config: SearchConfig) -> Result<Self, SearchError> {
        let header = TraceHeader {
            algo: Algorithm::Rss,
            seed: Some(config.seed),
            rng: Some(RSS_RNG_NAME.to_string()),
            depth_const: config.depth_const,
            epsilon: config.epsilon,
        };
        let frontier = RandomQueue::new(config.seed);
        Self::with_frontier(problem, config, frontier, header)
    }
}

impl<'p, P: Problem, F: Frontier<P::Action>> Search<'p, P, F> {
    pub fn with_frontier(
        problem: &'p P,
        config: SearchConfig,
        frontier: F,
        header: TraceHeader,
    ) -> Result<Self, SearchError> {
        config.validate()?;
        Ok(Self {
            problem,
            config,
            frontier,
            trace: Trace::new(header),
            best: None,
            started: Instant::now(),
        })
    }

    pub fn config(&self) -> &SearchConfig {
        &self.config
    }

    pub fn trace(&self) -> &Trace {
        &self.trace
    }

    pub fn iterations(&self) -> usize {
        self.trace.records.len()
    }

    pub fn queue_len(&self) -> usize {
        self.frontier.len()
    }

    /// True once the greedy rollout has run and no revisitable state remains.
    pub fn is_exhausted(&self) -> bool {
        self.iterations() > 0 && self.frontier.is_empty()
    }

    pub fn best_energy(&self) -> Option<f64> {
        self.best.as_ref().map(|b| b.energy)
    }

    /// Runs one iteration. Returns `None` when the search tree is exhausted.
    pub fn step(&mut self) -> Result<Option<Step<P::State, P::Action>>, SearchError> {
        let iteration = self.iterations();
        let (selected_path, candidate, candidate_path, selection) = if iteration == 0 {
            let root = self.problem.initial_state();
            if self.problem.is_candidate(&root) {
                (Vec::new(), root, Vec::new(), None)
            } else {
                let actions = self.problem.scored_actions(&root);
                if actions.is_empty() {
                    return Err(SearchError::NoActions { depth: 0 });
                }
                let node = SearchNode::new(Vec::new(), actions);
                let r =
                    greedy_rollout(self.problem, node, &root, &mut self.frontier, &self.config)?;
                (Vec::new(), r.candidate, r.path, None)
            }
        } else {
            let Some((node, selection)) = self.frontier.pop() else {
                return Ok(None);
            };
            let selected_path = node.path().to_vec();
            let state = self.replay(&selected_path)?;
            let r = greedy_rollout(self.problem, node, &state, &mut self.frontier, &self.config)?;
            (selected_path, r.candidate, r.path, Some(selection))
        };

        let energy = self.problem.energy(&candidate)?;
        let improved = self.best.as_ref().is_none_or(|b| energy < b.energy);
        if improved {
            self.best = Some(Best {
                state: candidate.clone(),
                path: candidate_path.clone(),
                energy,
                iteration,
            });
        }
        let record = IterationRecord {
            iteration,
            candidate_energy: energy,
            best_energy: self.best.as_ref().map_or(energy, |b| b.energy),
            selected_depth: selected_path.len(),
            selection_score: selection.map(|s| s.score),
            heuristic_gap: selection.map(|s| s.gap),
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        };
        self.trace.records.push(record.clone());
        Ok(Some(Step {
            record,
            selected_path,
            candidate_path,
            candidate,
        }))
    }

    fn replay(&self, path: &[P::Action]) -> Result<P::State, SearchError> {
        let mut state = self.problem.initial_state();
        for &a in path {
            state = self.problem.apply(&state, a)?;
        }
        Ok(state)
    }

    fn out_of_time(&self) -> bool {
        self.config
            .time_budget_ms
            .is_some_and(|ms| self.started.elapsed().as_millis() >= u128::from(ms))
    }

    /// Iterates until a budget runs out or the tree is exhausted.
    pub fn run(mut self) -> Result<Outcome<P::State, P::Action>, SearchError> {
        while self.iterations() < self.config.max_iterations {
            if self.iterations() > 0 && self.out_of_time() {
                break;
            }
            if self.step()?.is_none() {
                break;
            }
        }
        let exhausted = self.is_exhausted();
        let best = self.best.expect("at least one iteration ran");
        Ok(Outcome {
            best_state: best.state,
            best_path: best.path,
            best_energy: best.energy,
            best_iteration: best.iteration,
            trace: self.trace,
            exhausted,
        })
    }
}

/// Single greedy rollout from the root.
pub fn greedy<P: Problem>(
    problem: &P,
    config: &SearchConfig,
) -> Result<Outcome<P::State, P::Action>, SearchError> {
    let config = config.clone().with_max_iterations(1);
    let header = TraceHeader {
        algo: Algorithm::Greedy,
        seed: None,
        rng: None,
        depth_const: config.depth_const,
        epsilon: config.epsilon,
    };
    Search::with_frontier(problem, config, DilemmaQueue::new(), header)?.run()
}

/// Dilemma-first search.
///
/// Iteration 0 is the greedy rollout. Every later iteration pops the queued
/// state with the smallest selection score, switches it to its best untaken
/// action and grows greedily to a new candidate. Returns the lowest-energy
/// candidate seen.
pub fn dfs_search<P: Problem>(
    problem: &P,
    config: &SearchConfig,
) -> Result<Outcome<P::State, P::Action>, SearchError> {
    Search::dilemma(problem, config.clone())?.run()
}

/// Same as [`dfs_search`] but revisits a uniformly random queued state.
pub fn rss_search<P: Problem>(
    problem: &P,
    config: &SearchConfig,
) -> Result<Outcome<P::State, P::Action>, SearchError> {
    Search::random(problem, config.clone())?.run()
}
