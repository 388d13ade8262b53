use super::SearchConfig;

/// Priority of a revisitable state: the gap between its two best remaining
/// heuristic scores, reduced by `depth * depth_const`. Smaller is popped first.
///
/// With `depth_const == 0` the ordering is the same as ordering by descending
/// [`dilemma_estimator`].
///
/// ```
/// use dilemma_search::search::{selection_score, SearchConfig};
///
/// let cfg = SearchConfig::default().with_depth_const(0.05);
/// let deep = selection_score(0.6, 0.4, 5, &cfg);
/// let shallow = selection_score(0.3, 0.2, 0, &cfg);
/// assert!(deep < shallow);
/// ```
pub fn selection_score(f_best: f64, f_second: f64, depth: usize, config: &SearchConfig) -> f64 {
    (f_best - f_second) - depth as f64 * config.depth_const
}

/// Inverse heuristic gap, `1 / (f_best - f_second + epsilon)`.
///
/// Large values mark hard decisions. An exact tie yields `1 / epsilon`.
pub fn dilemma_estimator(f_best: f64, f_second: f64, epsilon: f64) -> f64 {
    1.0 / (f_best - f_second + epsilon)
}
