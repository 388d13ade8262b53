use std::fmt;

use dilemma_search::knapsack::{brute_force_oracle, dp_oracle, KnapsackError, KnapsackInstance};
use dilemma_search::search::{dfs_search, SearchConfig};
use dilemma_search::tree::{exhaustive_optimum, TreeProblem, DEFAULT_ENUMERATION_LIMIT};

use crate::CliError;

/// Largest knapsack `verify` accepts. The brute-force oracle is exponential
/// and exhaustive DFS grows even faster, so in practice only small
/// instances finish in reasonable time.
pub const VERIFY_MAX_ITEMS: usize = 24;

/// Exhaustive search result next to the oracle value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub dfs: f64,
    pub oracle: f64,
    pub ok: bool,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dfs={} oracle={} {}",
            self.dfs,
            self.oracle,
            if self.ok { "OK" } else { "MISMATCH" }
        )
    }
}

/// Compares exhaustive DFS with the dynamic-programming and brute-force
/// oracles. Values are packed totals, not energies.
pub fn verify_knapsack(instance: &KnapsackInstance) -> Result<Verdict, CliError> {
    verify_knapsack_with(instance, |inst| {
        let out = dfs_search(inst, &SearchConfig::exhaustive())
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok((-out.best_energy) as u64)
    })
}

/// [`verify_knapsack`] with the solver under test passed in.
pub fn verify_knapsack_with<F>(instance: &KnapsackInstance, solve: F) -> Result<Verdict, CliError>
where
    F: FnOnce(&KnapsackInstance) -> Result<u64, CliError>,
{
    if instance.len() > VERIFY_MAX_ITEMS {
        return Err(CliError::Config(
            KnapsackError::TooLarge {
                n: instance.len(),
                max: VERIFY_MAX_ITEMS,
            }
            .to_string(),
        ));
    }
    let brute = brute_force_oracle(instance).map_err(|e| CliError::Config(e.to_string()))?;
    let dp_agrees = match dp_oracle(instance) {
        Ok(v) => v == brute,
        Err(KnapsackError::CapacityOverflow { .. }) => true,
        Err(e) => return Err(CliError::Config(e.to_string())),
    };
    let dfs = solve(instance)?;
    Ok(Verdict {
        dfs: dfs as f64,
        oracle: brute as f64,
        ok: dp_agrees && dfs == brute,
    })
}

/// Compares the validation errors of exhaustive DFS with the minimum over
/// every tree the stopping rule allows.
pub fn verify_tree(problem: &TreeProblem) -> Result<Verdict, CliError> {
    let (oracle, _) = exhaustive_optimum(
        problem.train(),
        problem.validation(),
        problem.config(),
        DEFAULT_ENUMERATION_LIMIT,
    )
    .map_err(|e| CliError::Config(e.to_string()))?;
    let out = dfs_search(problem, &SearchConfig::exhaustive())
        .map_err(|e| CliError::Config(e.to_string()))?;
    Ok(Verdict {
        dfs: out.best_energy,
        oracle: oracle as f64,
        ok: out.best_energy == oracle as f64,
    })
}
