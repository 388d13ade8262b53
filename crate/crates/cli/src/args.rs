use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dilemma_search::io::BinSpec;

#[derive(Debug, Parser)]
#[command(
    name = "dilemma-bench",
    version,
    about = "Greedy, DFS and RSS runs on knapsack instances and decision trees"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search a knapsack instance (`n W` then `n` lines of `value weight`).
    Knapsack {
        #[command(flatten)]
        run: RunArgs,
        input: PathBuf,
    },
    /// Grow a decision tree on a CSV dataset whose last column is the class.
    Tree {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        tree: TreeArgs,
        input: PathBuf,
    },
    /// Run DFS until the queue is empty and compare with exact oracles.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyTarget {
    Knapsack {
        input: PathBuf,
    },
    Tree {
        #[command(flatten)]
        tree: TreeArgs,
        input: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Greedy,
    Dfs,
    Rss,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value = "dfs")]
    pub algo: Algo,
    /// Iterations including the greedy one [default: 100].
    #[arg(long)]
    pub iters: Option<usize>,
    #[arg(long, default_value_t = 0.0)]
    pub depth_const: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub epsilon: f64,
    /// RSS seeds: `a..b` (inclusive), `a,b,c`, or a mix such as `1..3,9`.
    #[arg(long)]
    pub seeds: Option<SeedList>,
    /// Trace destination. Multi-seed runs derive `<stem>.seed<N>.csv` and
    /// `<stem>.mean.csv` from it. Defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Summary destination. Defaults to stderr.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    /// Write every elapsed_ms as 0.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    #[arg(long, default_value_t = 8)]
    pub max_depth: usize,
    #[arg(long, default_value_t = 0.0)]
    pub min_entropy: f64,
    /// Train, validation and test proportions.
    #[arg(long, default_value = "0.5,0.2,0.3")]
    pub split: SplitRatios,
    #[arg(long, default_value_t = 0)]
    pub split_seed: u64,
    /// Quantize a numeric column into equal-width bins, `col:k`.
    #[arg(long = "bin")]
    pub bins: Vec<BinSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitRatios(pub [f64; 3]);

impl FromStr for SplitRatios {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| format!("bad ratio in '{s}': {e}"))?;
        let ratios: [f64; 3] = parts
            .try_into()
            .map_err(|_| format!("expected three ratios, got '{s}'"))?;
        Ok(Self(ratios))
    }
}

/// Sorted, duplicate-free seed list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedList(pub Vec<u64>);

impl FromStr for SeedList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |part: &str| format!("bad seed '{part}' in '{s}'");
        let mut seeds = Vec::new();
        for part in s.split(',').map(str::trim) {
            if let Some((a, b)) = part.split_once("..") {
                let a: u64 = a.trim().parse().map_err(|_| bad(part))?;
                let b: u64 = b.trim().parse().map_err(|_| bad(part))?;
                if a > b {
                    return Err(format!("empty seed range '{part}'"));
                }
                seeds.extend(a..=b);
            } else {
                seeds.push(part.parse().map_err(|_| bad(part))?);
            }
        }
        seeds.sort_unstable();
        seeds.dedup();
        Ok(Self(seeds))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_lists() {
        assert_eq!("1..3".parse::<SeedList>().unwrap().0, vec![1, 2, 3]);
        assert_eq!("7".parse::<SeedList>().unwrap().0, vec![7]);
        assert_eq!("9,1..2,2".parse::<SeedList>().unwrap().0, vec![1, 2, 9]);
        assert!("3..1".parse::<SeedList>().is_err());
        assert!("x".parse::<SeedList>().is_err());
        assert!("1..".parse::<SeedList>().is_err());
    }

    #[test]
    fn split_ratios() {
        assert_eq!(
            "0.5,0.2,0.3".parse::<SplitRatios>().unwrap().0,
            [0.5, 0.2, 0.3]
        );
        assert!("0.5,0.5".parse::<SplitRatios>().is_err());
    }

    #[test]
    fn cli_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
