use std::fmt::Write as _;

use dilemma_search::io::format_g9;
use dilemma_search::search::{SearchConfig, Trace, RSS_RNG_NAME};

/// Per-iteration mean of best-so-far energies. A trace that stopped early
/// contributes its last value to every later iteration.
///
/// ```
/// use dilemma_bench::mean_best_energies;
/// use dilemma_search::search::{Algorithm, IterationRecord, Trace, TraceHeader};
///
/// let trace = |best: &[f64]| {
///     let mut t = Trace::new(TraceHeader {
///         algo: Algorithm::Rss, seed: Some(0), rng: None, depth_const: 0.0, epsilon: 1e-12,
///     });
///     for (i, &b) in best.iter().enumerate() {
///         t.records.push(IterationRecord {
///             iteration: i, candidate_energy: b, best_energy: b, selected_depth: 0,
///             selection_score: None, heuristic_gap: None, elapsed_ms: 0,
///         });
///     }
///     t
/// };
/// let (a, b) = (trace(&[-1.0, -3.0]), trace(&[-2.0, -2.0, -5.0]));
/// assert_eq!(mean_best_energies(&[&a, &b]), vec![-1.5, -2.5, -4.0]);
/// ```
pub fn mean_best_energies(traces: &[&Trace]) -> Vec<f64> {
    let len = traces.iter().map(|t| t.len()).max().unwrap_or(0);
    let mut sum = vec![0.0; len];
    for t in traces {
        let best = t.best_energies();
        let Some(&last) = best.last() else { continue };
        for (i, s) in sum.iter_mut().enumerate() {
            *s += best.get(i).copied().unwrap_or(last);
        }
    }
    sum.iter().map(|s| s / traces.len() as f64).collect()
}

/// Aggregate trace for a multi-seed run: a comment line, then
/// `iteration,mean_best_energy` rows.
pub fn format_mean_trace(traces: &[&Trace], seeds: &[u64], config: &SearchConfig) -> String {
    let seeds: Vec<String> = seeds.iter().map(u64::to_string).collect();
    let mut out = format!(
        "# algo=rss seeds={} rng={RSS_RNG_NAME} depth_const={} epsilon={}\niteration,mean_best_energy\n",
        seeds.join(","),
        format_g9(config.depth_const),
        format_g9(config.epsilon),
    );
    for (i, e) in mean_best_energies(traces).iter().enumerate() {
        writeln!(out, "{i},{}", format_g9(*e)).unwrap();
    }
    out
}
