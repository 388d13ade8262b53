use std::fmt::Write as _;
use std::io::{self, Write};

use crate::search::{Algorithm, Trace};

const TRACE_HEADER: &str =
    "iteration,candidate_energy,best_energy,selected_depth,selection_score,heuristic_gap,elapsed_ms";

/// Formats a float with 9 significant digits, like C's `%.9g`.
///
/// ```
/// use dilemma_search::io::format_g9;
/// assert_eq!(format_g9(-13.0), "-13");
/// assert_eq!(format_g9(0.1 + 0.2), "0.3");
/// assert_eq!(format_g9(1e-12), "1e-12");
/// ```
pub fn format_g9(x: f64) -> String {
    const P: i32 = 9;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.into();
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..P).contains(&exp) {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (P - 1 - exp) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt_g9(x: Option<f64>) -> String {
    x.map_or_else(|| "na".to_string(), format_g9)
}

/// Trace as CSV: a `# algo=...` comment line, the column header, then one
/// line per iteration. `zero_timing` writes every `elapsed_ms` as 0.
pub fn format_trace(trace: &Trace, zero_timing: bool) -> String {
    let h = &trace.header;
    let mut out = format!(
        "# algo={} seed={} rng={} depth_const={} epsilon={}\n{TRACE_HEADER}\n",
        h.algo,
        h.seed.map_or_else(|| "na".to_string(), |s| s.to_string()),
        h.rng.as_deref().unwrap_or("na"),
        format_g9(h.depth_const),
        format_g9(h.epsilon),
    );
    for r in &trace.records {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.iteration,
            format_g9(r.candidate_energy),
            format_g9(r.best_energy),
            r.selected_depth,
            opt_g9(r.selection_score),
            opt_g9(r.heuristic_gap),
            if zero_timing { 0 } else { r.elapsed_ms },
        )
        .unwrap();
    }
    out
}

/// Writes [`format_trace`] output and returns the byte count.
pub fn write_trace<W: Write>(trace: &Trace, mut dest: W, zero_timing: bool) -> io::Result<usize> {
    let text = format_trace(trace, zero_timing);
    dest.write_all(text.as_bytes())?;
    Ok(text.len())
}

/// Flat description of a finished run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub algo: Algorithm,
    pub seeds: Vec<u64>,
    pub iterations: usize,
    pub best_energy: f64,
    pub best_iteration: usize,
    pub wall_ms: u64,
    pub depth_const: f64,
    pub epsilon: f64,
    /// Tree stopping rule, `None` for knapsack runs.
    pub stopping_rule: Option<String>,
    /// Test-set errors of the best tree, `None` for knapsack runs.
    pub test_energy: Option<f64>,
    pub fingerprint: String,
}

impl RunSummary {
    /// Summary whose energy fields come from the last record of `trace`.
    pub fn from_trace(trace: &Trace, fingerprint: impl Into<String>) -> Self {
        let last = trace.records.last();
        Self {
            algo: trace.header.algo,
            seeds: trace.header.seed.into_iter().collect(),
            iterations: trace.len(),
            best_energy: last.map_or(f64::NAN, |r| r.best_energy),
            best_iteration: trace.best_found_at().unwrap_or(0),
            wall_ms: last.map_or(0, |r| r.elapsed_ms),
            depth_const: trace.header.depth_const,
            epsilon: trace.header.epsilon,
            stopping_rule: None,
            test_energy: None,
            fingerprint: fingerprint.into(),
        }
    }
}

/// One `key=value` per line, keys always in the same order.
pub fn format_summary(summary: &RunSummary) -> String {
    let seeds = if summary.seeds.is_empty() {
        "na".to_string()
    } else {
        summary
            .seeds
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut out = String::new();
    let mut kv = |k: &str, v: String| writeln!(out, "{k}={v}").unwrap();
    kv("algo", summary.algo.to_string());
    kv("seeds", seeds);
    kv("iterations", summary.iterations.to_string());
    kv("best_energy", format_g9(summary.best_energy));
    kv("best_iteration", summary.best_iteration.to_string());
    kv("wall_ms", summary.wall_ms.to_string());
    kv("depth_const", format_g9(summary.depth_const));
    kv("epsilon", format_g9(summary.epsilon));
    kv(
        "stopping_rule",
        summary.stopping_rule.clone().unwrap_or_else(|| "na".into()),
    );
    kv("test_energy", opt_g9(summary.test_energy));
    kv("fingerprint", summary.fingerprint.clone());
    out
}

pub fn write_summary<W: Write>(summary: &RunSummary, mut dest: W) -> io::Result<usize> {
    let text = format_summary(summary);
    dest.write_all(text.as_bytes())?;
    Ok(text.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{IterationRecord, TraceHeader};

    fn trace(records: usize) -> Trace {
        let mut t = Trace::new(TraceHeader {
            algo: Algorithm::Dfs,
            seed: None,
            rng: None,
            depth_const: 0.0,
            epsilon: 1e-12,
        });
        for i in 0..records {
            t.records.push(IterationRecord {
                iteration: i,
                candidate_energy: -10.0 - 3.0 * i as f64,
                best_energy: -10.0 - 3.0 * i as f64,
                selected_depth: 0,
                selection_score: (i > 0).then_some(0.25),
                heuristic_gap: (i > 0).then_some(0.25),
                elapsed_ms: 5,
            });
        }
        t
    }

    #[test]
    fn g9_matches_printf() {
        // Expected strings produced with printf("%.9g").
        let cases = [
            (1.0 / 3.0, "0.333333333"),
            (2.0 / 3.0 * 1e10, "6.66666667e+09"),
            (123456789.0, "123456789"),
            (1234567890.0, "1.23456789e+09"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (-309.0, "-309"),
            (0.25, "0.25"),
            (1e12, "1e+12"),
            (5.0, "5"),
            (-0.05, "-0.05"),
        ];
        for (x, want) in cases {
            assert_eq!(format_g9(x), want, "formatting {x}");
        }
    }

    #[test]
    fn two_records() {
        let text = format_trace(&trace(2), false);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(
            lines[0],
            "# algo=dfs seed=na rng=na depth_const=0 epsilon=1e-12"
        );
        assert_eq!(lines[1], TRACE_HEADER);
        assert_eq!(lines[2], "0,-10,-10,0,na,na,5");
        assert_eq!(lines[3], "1,-13,-13,0,0.25,0.25,5");
        assert!(format_trace(&trace(2), true).ends_with("0.25,0.25,0\n"));
    }

    #[test]
    fn empty_trace_has_header_only() {
        let text = format_trace(&trace(0), false);
        assert_eq!(text.lines().count(), 2);
    }

    #[test]
    fn writer_reports_bytes() {
        let mut buf = Vec::new();
        let n = write_trace(&trace(3), &mut buf, true).unwrap();
        assert_eq!(n, buf.len());
        let mut again = Vec::new();
        write_trace(&trace(3), &mut again, true).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn summary_keys_in_order() {
        let s = RunSummary::from_trace(&trace(2), "abc");
        let text = format_summary(&s);
        let keys: Vec<&str> = text.lines().map(|l| l.split('=').next().unwrap()).collect();
        assert_eq!(
            keys,
            [
                "algo",
                "seeds",
                "iterations",
                "best_energy",
                "best_iteration",
                "wall_ms",
                "depth_const",
                "epsilon",
                "stopping_rule",
                "test_energy",
                "fingerprint"
            ]
        );
        assert!(text.contains("best_energy=-13\n"));
        assert!(text.contains("best_iteration=1\n"));
        assert!(text.contains("seeds=na\n"));
    }
}
