//! Probability diagnostics for partially explored search trees.
//!
//! None of this drives the engines. It models the chance that a candidate is
//! optimal when explored decisions carry normalized heuristic probabilities and
//! unexplored levels are assumed uniform over `b` branches.

use super::{Problem, SearchError};

/// Log-probability of a candidate whose first `explored.len()` decisions have
/// the given probabilities and whose remaining `d - explored.len()` decisions
/// are uniform over `b` branches.
pub fn candidate_log_prob(explored: &[f64], d: usize, b: usize) -> Result<f64, SearchError> {
    if let Some(p) = explored.iter().find(|p| !(**p > 0.0 && **p <= 1.0)) {
        return Err(SearchError::Domain(format!(
            "probability {p} outside (0, 1]"
        )));
    }
    if b < 2 {
        return Err(SearchError::Domain(format!("branching factor {b} < 2")));
    }
    if d < explored.len() {
        return Err(SearchError::Domain(format!(
            "depth {d} shorter than {} explored decisions",
            explored.len()
        )));
    }
    let known: f64 = explored.iter().map(|p| p.ln()).sum();
    let unexplored = (d - explored.len()) as f64;
    Ok(known + unexplored * (1.0 / b as f64).ln())
}

/// Turns nonnegative heuristic scores into a probability vector. All-zero
/// scores become the uniform distribution.
pub fn normalize_scores(scores: &[f64]) -> Vec<f64> {
    let sum: f64 = scores.iter().sum();
    if scores.is_empty() {
        return Vec::new();
    }
    if sum <= 0.0 {
        let u = 1.0 / scores.len() as f64;
        return vec![u; scores.len()];
    }
    scores.iter().map(|s| s / sum).collect()
}

/// Replays `path` from the root and evaluates [`candidate_log_prob`] with the
/// normalized probability of each chosen action.
///
/// `d` and `b` are the assumed depth and branching factor of the tree.
pub fn path_log_prob<P: Problem>(
    problem: &P,
    path: &[P::Action],
    d: usize,
    b: usize,
) -> Result<f64, SearchError> {
    let mut state = problem.initial_state();
    let mut probs = Vec::with_capacity(path.len());
    for (depth, &action) in path.iter().enumerate() {
        let actions = problem.scored_actions(&state);
        let scores: Vec<f64> = actions.iter().map(|a| a.score).collect();
        let probs_here = normalize_scores(&scores);
        let idx = actions
            .iter()
            .position(|a| a.action == action)
            .ok_or_else(|| {
                SearchError::Domain(format!("action {action:?} not available at depth {depth}"))
            })?;
        // Zero-probability choices are clamped so the log stays finite.
        probs.push(probs_here[idx].max(f64::MIN_POSITIVE));
        state = problem.apply(&state, action)?;
    }
    candidate_log_prob(&probs, d.max(path.len()), b)
}
