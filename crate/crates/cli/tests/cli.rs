use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dilemma-bench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn summary_value<'a>(summary: &'a str, key: &str) -> &'a str {
    summary
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in {summary}"))
}

#[test]
fn worked_instance_golden_trace() {
    let worked = data("worked.txt");
    let o = bench(&[
        "knapsack",
        "--algo",
        "dfs",
        "--iters",
        "100",
        "--no-timing",
        worked.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "# algo=dfs seed=na rng=na depth_const=0 epsilon=1e-12\n\
         iteration,candidate_energy,best_energy,selected_depth,selection_score,heuristic_gap,elapsed_ms\n\
         0,-10,-10,0,na,na,0\n\
         1,-13,-13,0,0.25,0.25,0\n\
         2,-13,-13,0,1.5,1.5,0\n"
    );
    let summary = stderr(&o);
    assert_eq!(summary_value(&summary, "best_energy"), "-13");
    assert_eq!(summary_value(&summary, "best_iteration"), "1");
    assert_eq!(summary_value(&summary, "seeds"), "na");
    assert_eq!(summary_value(&summary, "wall_ms"), "0");
    assert_eq!(summary_value(&summary, "fingerprint").len(), 64);
}

#[test]
fn no_timing_runs_are_byte_identical() {
    let p01 = data("p01.txt");
    let args = [
        "knapsack",
        "--algo",
        "dfs",
        "--iters",
        "60",
        "--no-timing",
        p01.to_str().unwrap(),
    ];
    let (a, b) = (bench(&args), bench(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
    assert_eq!(stdout(&a).lines().count(), 62);
}

#[test]
fn multi_seed_rss_writes_per_seed_and_mean_traces() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.csv");
    let summary = dir.path().join("run.txt");
    let p01 = data("p01.txt");
    let o = bench(&[
        "knapsack",
        "--algo",
        "rss",
        "--seeds",
        "1..5",
        "--iters",
        "20",
        "--no-timing",
        "--out",
        out.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
        p01.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for seed in 1..=5 {
        let text = std::fs::read_to_string(dir.path().join(format!("run.seed{seed}.csv"))).unwrap();
        assert!(text.starts_with(&format!("# algo=rss seed={seed} rng=chacha8 ")));
    }
    let mean = std::fs::read_to_string(dir.path().join("run.mean.csv")).unwrap();
    assert!(mean.starts_with("# algo=rss seeds=1,2,3,4,5 rng=chacha8"));
    assert_eq!(mean.lines().nth(1), Some("iteration,mean_best_energy"));

    // Recompute iteration 10 of the mean from the per-seed files.
    let best_at = |seed: u64, i: usize| -> f64 {
        let text = std::fs::read_to_string(dir.path().join(format!("run.seed{seed}.csv"))).unwrap();
        let rows: Vec<&str> = text.lines().skip(2).collect();
        let row = rows[i.min(rows.len() - 1)];
        row.split(',').nth(2).unwrap().parse().unwrap()
    };
    let expected: f64 = (1..=5).map(|s| best_at(s, 10)).sum::<f64>() / 5.0;
    let got: f64 = mean
        .lines()
        .nth(12)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((got - expected).abs() < 1e-6, "{got} vs {expected}");

    let s = std::fs::read_to_string(summary).unwrap();
    assert_eq!(summary_value(&s, "seeds"), "1,2,3,4,5");
    assert_eq!(summary_value(&s, "algo"), "rss");
}

#[test]
fn tree_run_reports_test_energy() {
    let csv = data("planted_decoy.csv");
    let o = bench(&[
        "tree",
        "--algo",
        "dfs",
        "--max-depth",
        "2",
        "--iters",
        "50",
        "--no-timing",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stderr(&o);
    assert_eq!(
        summary_value(&s, "stopping_rule"),
        "max_depth=2,min_entropy=0,min_rows=1"
    );
    assert!(summary_value(&s, "test_energy").parse::<f64>().is_ok());
    assert_eq!(stdout(&o).lines().count(), 52);
}

#[test]
fn verify_subcommands() {
    let o = bench(&["verify", "knapsack", data("worked.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "dfs=13 oracle=13 OK\n");

    let o = bench(&["verify", "knapsack", data("p01.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "dfs=309 oracle=309 OK\n");

    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.txt");
    let mut text = String::from("30 100\n");
    text.push_str(&"5 7\n".repeat(30));
    std::fs::write(&big, text).unwrap();
    let o = bench(&["verify", "knapsack", big.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(
        stderr(&o).contains("too large") || stderr(&o).contains("items"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn verify_tiny_tree() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("tiny.csv");
    let mut text = String::from("a,b,c,class\n");
    for i in 0..40u32 {
        let (a, b, c) = (i % 2, (i / 2) % 2, (i / 4) % 2);
        let class = if (a ^ b) == 1 || i % 7 == 0 { "y" } else { "n" };
        text.push_str(&format!("{a},{b},{c},{class}\n"));
    }
    std::fs::write(&csv, text).unwrap();
    let o = bench(&["verify", "tree", "--max-depth", "2", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).ends_with(" OK\n"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "2 8\n10 5\n").unwrap();
    let o = bench(&["knapsack", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3: expected 2 items, found 1"));

    let worked = data("worked.txt");
    let w = worked.to_str().unwrap();
    assert_eq!(
        bench(&["knapsack", "--algo", "rss", w]).status.code(),
        Some(3)
    );
    assert_eq!(
        bench(&["knapsack", "--algo", "greedy", "--iters", "5", w])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        bench(&["knapsack", "--algo", "sideways", w]).status.code(),
        Some(3)
    );
    assert_eq!(bench(&["knapsack", "/no/such/file"]).status.code(), Some(2));
    assert_eq!(bench(&["--help"]).status.code(), Some(0));

    let o = bench(&["knapsack", "--algo", "greedy", "--no-timing", w]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# algo=greedy seed=na rng=na"));
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn dfs_traces_never_carry_a_seed() {
    let o = bench(&[
        "knapsack",
        "--algo",
        "dfs",
        "--no-timing",
        data("p01.txt").to_str().unwrap(),
    ]);
    assert!(stdout(&o).starts_with("# algo=dfs seed=na "));
}
