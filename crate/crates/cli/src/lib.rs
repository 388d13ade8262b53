//! Command-line harness for greedy, dilemma-first and random-selection runs.
//!
//! The binary is a thin wrapper over [`main_with_args`], which tests call
//! directly with in-memory streams.

pub mod args;
mod mean;
mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;
use rayon::prelude::*;
use thiserror::Error;

use dilemma_search::io::{
    fingerprint, format_g9, parse_dataset, parse_knapsack, write_summary, write_trace, RunSummary,
};
use dilemma_search::search::{
    dfs_search, greedy, rss_search, Algorithm, Outcome, Problem, SearchConfig, Trace,
};
use dilemma_search::tree::{split_dataset, Dataset, SplitConfig, TreeProblem, TreeState};

pub use args::{Algo, Cli, Command, RunArgs, SeedList, SplitRatios, TreeArgs, VerifyTarget};
pub use mean::{format_mean_trace, mean_best_energies};
pub use verify::{verify_knapsack, verify_knapsack_with, verify_tree, Verdict, VERIFY_MAX_ITEMS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

const DEFAULT_ITERATIONS: usize = 100;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input.
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => EXIT_PARSE,
            CliError::Config(_) => EXIT_CONFIG,
        }
    }
}

fn config_err(e: impl ToString) -> CliError {
    CliError::Config(e.to_string())
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Traces and verdicts go to `out`, summaries and
/// diagnostics to `err` unless redirected to files.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_CONFIG
                }
            };
        }
    };
    match run(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Knapsack { run, input } => {
            let bytes = read(&input)?;
            let text = utf8(&input, &bytes)?;
            let instance = parse_knapsack(text)
                .map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
            let plan = Plan::new(&run)?;
            let started = Instant::now();
            let runs = plan.execute(&instance)?;
            let mut summary = plan.summarize(&runs, fingerprint(&bytes), started);
            summary.stopping_rule = None;
            plan.emit(&runs, &summary, out, err)?;
            Ok(EXIT_OK)
        }
        Command::Tree { run, tree, input } => {
            let bytes = read(&input)?;
            let (problem, test) = load_tree(&input, &bytes, &tree)?;
            let plan = Plan::new(&run)?;
            let started = Instant::now();
            let runs = plan.execute(&problem)?;
            let mut summary = plan.summarize(&runs, fingerprint(&bytes), started);
            summary.stopping_rule = Some(stopping_rule(problem.config()));
            summary.test_energy = Some(test_energy(&runs, &test)?);
            plan.emit(&runs, &summary, out, err)?;
            Ok(EXIT_OK)
        }
        Command::Verify { target } => {
            let verdict = match target {
                VerifyTarget::Knapsack { input } => {
                    let bytes = read(&input)?;
                    let instance = parse_knapsack(utf8(&input, &bytes)?)
                        .map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
                    verify_knapsack(&instance)?
                }
                VerifyTarget::Tree { tree, input } => {
                    let bytes = read(&input)?;
                    let (problem, _) = load_tree(&input, &bytes, &tree)?;
                    verify_tree(&problem)?
                }
            };
            writeln!(out, "{verdict}")?;
            Ok(if verdict.ok { EXIT_OK } else { EXIT_MISMATCH })
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn utf8<'a>(path: &Path, bytes: &'a [u8]) -> Result<&'a str, CliError> {
    std::str::from_utf8(bytes)
        .map_err(|e| CliError::Input(format!("{}: not UTF-8: {e}", path.display())))
}

/// Loads, bins and splits a dataset. Returns the search problem over the
/// train and validation parts plus the held-out test part.
pub fn load_tree(
    path: &Path,
    bytes: &[u8],
    args: &TreeArgs,
) -> Result<(TreeProblem, Dataset), CliError> {
    let split = SplitConfig {
        max_depth: args.max_depth,
        min_entropy: args.min_entropy,
        ..SplitConfig::default()
    };
    split.validate().map_err(config_err)?;
    let loaded = parse_dataset(utf8(path, bytes)?, &args.bins).map_err(|e| {
        use dilemma_search::io::DatasetError;
        match e {
            DatasetError::UnknownColumn(_) | DatasetError::BadBinSpec(_) => config_err(e),
            _ => CliError::Input(format!("{}: {e}", path.display())),
        }
    })?;
    let (train, validation, test) =
        split_dataset(&loaded.dataset, args.split.0, args.split_seed).map_err(config_err)?;
    let problem = TreeProblem::new(train, validation, split).map_err(config_err)?;
    Ok((problem, test))
}

fn stopping_rule(c: &SplitConfig) -> String {
    format!(
        "max_depth={},min_entropy={},min_rows={}",
        c.max_depth,
        format_g9(c.min_entropy),
        c.min_rows
    )
}

/// Test-set errors of the best tree; the mean over seeds for multi-seed runs.
fn test_energy(runs: &Runs<TreeProblem>, test: &Dataset) -> Result<f64, CliError> {
    let errors = |o: &Outcome<TreeState, usize>| -> Result<f64, CliError> {
        let tree = o.best_state.to_tree().map_err(config_err)?;
        Ok(tree.errors(test) as f64)
    };
    match runs {
        Runs::Single(o) => errors(o),
        Runs::Seeds(all) => {
            let mut sum = 0.0;
            for (_, o) in all {
                sum += errors(o)?;
            }
            Ok(sum / all.len() as f64)
        }
    }
}

/// Validated run settings.
#[derive(Debug)]
struct Plan {
    algo: Algo,
    config: SearchConfig,
    seeds: Vec<u64>,
    out: Option<PathBuf>,
    summary: Option<PathBuf>,
    no_timing: bool,
}

enum Runs<P: Problem> {
    Single(Outcome<P::State, P::Action>),
    /// Multi-seed RSS, sorted by seed.
    Seeds(Vec<(u64, Outcome<P::State, P::Action>)>),
}

impl Plan {
    fn new(run: &RunArgs) -> Result<Self, CliError> {
        if run.algo == Algo::Greedy && run.iters.is_some() {
            return Err(CliError::Config(
                "warning: greedy runs exactly one iteration; drop --iters".into(),
            ));
        }
        let seeds = match (run.algo, &run.seeds) {
            (Algo::Rss, Some(s)) if !s.0.is_empty() => s.0.clone(),
            (Algo::Rss, _) => return Err(CliError::Config("rss needs --seeds".into())),
            (_, Some(_)) => return Err(CliError::Config("--seeds only applies to rss".into())),
            (_, None) => Vec::new(),
        };
        let config = SearchConfig {
            depth_const: run.depth_const,
            epsilon: run.epsilon,
            max_iterations: run.iters.unwrap_or(DEFAULT_ITERATIONS),
            ..SearchConfig::default()
        };
        config.validate().map_err(config_err)?;
        Ok(Self {
            algo: run.algo,
            config,
            seeds,
            out: run.out.clone(),
            summary: run.summary.clone(),
            no_timing: run.no_timing,
        })
    }

    fn execute<P>(&self, problem: &P) -> Result<Runs<P>, CliError>
    where
        P: Problem + Sync,
        P::State: Send,
        P::Action: Send,
    {
        let search_err = |e: dilemma_search::search::SearchError| CliError::Config(e.to_string());
        match self.algo {
            Algo::Greedy => greedy(problem, &self.config)
                .map(Runs::Single)
                .map_err(search_err),
            Algo::Dfs => dfs_search(problem, &self.config)
                .map(Runs::Single)
                .map_err(search_err),
            Algo::Rss if self.seeds.len() == 1 => {
                let config = self.config.clone().with_seed(self.seeds[0]);
                rss_search(problem, &config)
                    .map(Runs::Single)
                    .map_err(search_err)
            }
            Algo::Rss => {
                let mut all = self
                    .seeds
                    .par_iter()
                    .map(|&seed| {
                        let config = self.config.clone().with_seed(seed);
                        rss_search(problem, &config).map(|o| (seed, o))
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(search_err)?;
                all.sort_by_key(|(seed, _)| *seed);
                Ok(Runs::Seeds(all))
            }
        }
    }

    fn summarize<P: Problem>(
        &self,
        runs: &Runs<P>,
        fingerprint: String,
        started: Instant,
    ) -> RunSummary {
        let mut summary = match runs {
            Runs::Single(o) => RunSummary::from_trace(&o.trace, fingerprint),
            Runs::Seeds(all) => {
                let traces: Vec<&Trace> = all.iter().map(|(_, o)| &o.trace).collect();
                let mean = mean_best_energies(&traces);
                let last = *mean.last().expect("every run has iteration 0");
                RunSummary {
                    algo: Algorithm::Rss,
                    seeds: self.seeds.clone(),
                    iterations: mean.len(),
                    best_energy: last,
                    best_iteration: mean.iter().position(|&e| e == last).unwrap_or(0),
                    wall_ms: 0,
                    depth_const: self.config.depth_const,
                    epsilon: self.config.epsilon,
                    stopping_rule: None,
                    test_energy: None,
                    fingerprint,
                }
            }
        };
        summary.wall_ms = if self.no_timing {
            0
        } else {
            started.elapsed().as_millis() as u64
        };
        summary
    }

    fn emit<P: Problem>(
        &self,
        runs: &Runs<P>,
        summary: &RunSummary,
        out: &mut dyn Write,
        err: &mut dyn Write,
    ) -> Result<(), CliError> {
        match runs {
            Runs::Single(o) => match &self.out {
                Some(path) => {
                    write_trace(&o.trace, fs::File::create(path)?, self.no_timing)?;
                }
                None => {
                    write_trace(&o.trace, &mut *out, self.no_timing)?;
                }
            },
            Runs::Seeds(all) => {
                let traces: Vec<&Trace> = all.iter().map(|(_, o)| &o.trace).collect();
                let mean = format_mean_trace(&traces, &self.seeds, &self.config);
                match &self.out {
                    Some(path) => {
                        for (seed, o) in all {
                            let file =
                                fs::File::create(derived_path(path, &format!("seed{seed}")))?;
                            write_trace(&o.trace, file, self.no_timing)?;
                        }
                        fs::write(derived_path(path, "mean"), mean)?;
                    }
                    None => out.write_all(mean.as_bytes())?,
                }
            }
        }
        match &self.summary {
            Some(path) => {
                write_summary(summary, fs::File::create(path)?)?;
            }
            None => {
                write_summary(summary, &mut *err)?;
            }
        }
        Ok(())
    }
}

/// `runs/knap.csv` with tag `seed3` becomes `runs/knap.seed3.csv`.
pub fn derived_path(path: &Path, tag: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}.{tag}.csv"))
}


#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
