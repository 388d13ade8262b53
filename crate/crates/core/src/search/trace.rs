use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Greedy,
    Dfs,
    Rss,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::Dfs => "dfs",
            Algorithm::Rss => "rss",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "greedy" => Ok(Algorithm::Greedy),
            "dfs" => Ok(Algorithm::Dfs),
            "rss" => Ok(Algorithm::Rss),
            other => Err(format!(
                "unknown algorithm '{other}' (expected greedy, dfs or rss)"
            )),
        }
    }
}

/// Run metadata written as the leading comment of a trace file.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceHeader {
    pub algo: Algorithm,
    pub seed: Option<u64>,
    pub rng: Option<String>,
    pub depth_const: f64,
    pub epsilon: f64,
}

/// One iteration of an anytime run.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    pub candidate_energy: f64,
    pub best_energy: f64,
    /// Depth of the state regrown from; 0 for the greedy rollout.
    pub selected_depth: usize,
    /// `None` for the greedy rollout, which has no selected state.
    pub selection_score: Option<f64>,
    pub heuristic_gap: Option<f64>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub header: TraceHeader,
    pub records: Vec<IterationRecord>,
}

impl Trace {
    pub fn new(header: TraceHeader) -> Self {
        Self {
            header,
            records: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn best_energy(&self) -> Option<f64> {
        self.records.last().map(|r| r.best_energy)
    }

    /// First iteration at which the final best energy was reached.
    pub fn best_found_at(&self) -> Option<usize> {
        let best = self.best_energy()?;
        self.records
            .iter()
            .find(|r| r.best_energy == best)
            .map(|r| r.iteration)
    }

    pub fn best_energies(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.best_energy).collect()
    }

    /// True if best-so-far energy never increases.
    pub fn is_monotone(&self) -> bool {
        self.records
            .windows(2)
            .all(|w| w[1].best_energy <= w[0].best_energy)
    }

    /// Copy with every `elapsed_ms` set to zero, for byte-exact comparisons.
    pub fn without_timing(&self) -> Self {
        let mut t = self.clone();
        for r in &mut t.records {
            r.elapsed_ms = 0;
        }
        t
    }
}
