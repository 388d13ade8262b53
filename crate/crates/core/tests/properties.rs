use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;

use dilemma_search::knapsack::{brute_force_oracle, dp_oracle, KnapsackInstance};
use dilemma_search::search::{dfs_search, rss_search, Problem, Search, SearchConfig};
use dilemma_search::tree::{
    entropy, enumerate_trees, exhaustive_optimum, id3, info_gain, split_dataset, Attribute,
    Dataset, Row, SplitConfig, TreeProblem, DEFAULT_ENUMERATION_LIMIT,
};

fn knapsack() -> impl Strategy<Value = KnapsackInstance> {
    (prop::collection::vec((0u64..30, 1u64..20), 1..8), 1u64..60)
        .prop_map(|(items, cap)| KnapsackInstance::new(&items, cap).unwrap())
}

fn binary_rows(first_id: usize, n: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Row>> {
    prop::collection::vec((prop::collection::vec(0u32..2, 3), 0u32..2), n).prop_map(move |rows| {
        rows.into_iter()
            .enumerate()
            .map(|(i, (values, class))| Row {
                id: first_id + i,
                values,
                class,
            })
            .collect()
    })
}

fn dataset(rows: Vec<Row>) -> Dataset {
    let attrs = ["a", "b", "c"]
        .iter()
        .map(|n| Attribute {
            name: n.to_string(),
            values: vec!["0".into(), "1".into()],
        })
        .collect();
    Dataset::new(attrs, "class", vec!["n".into(), "y".into()], rows).unwrap()
}

/// Every maximal packing reachable by adding fitting items one at a time,
/// as item sets, plus the number of distinct orderings that produce them.
fn reference_packings(inst: &KnapsackInstance) -> (BTreeSet<Vec<usize>>, usize) {
    fn go(
        inst: &KnapsackInstance,
        taken: &mut Vec<usize>,
        used: u64,
        out: &mut BTreeSet<Vec<usize>>,
    ) -> usize {
        let fitting: Vec<usize> = (0..inst.len())
            .filter(|i| !taken.contains(i) && used + inst.items()[*i].weight <= inst.capacity())
            .collect();
        if fitting.is_empty() {
            let mut set = taken.clone();
            set.sort_unstable();
            out.insert(set);
            return 1;
        }
        let mut leaves = 0;
        for i in fitting {
            taken.push(i);
            leaves += go(inst, taken, used + inst.items()[i].weight, out);
            taken.pop();
        }
        leaves
    }
    let mut out = BTreeSet::new();
    let leaves = go(inst, &mut Vec::new(), 0, &mut out);
    (out, leaves)
}

/// Straightforward dilemma-first engine: a list of open nodes scanned for
/// the largest `1 / (gap + eps)`, earliest insertion first on ties.
fn reference_order<P: Problem>(problem: &P, eps: f64, limit: usize) -> Vec<(Vec<P::Action>, f64)> {
    struct Open<A> {
        path: Vec<A>,
        scores: Vec<(A, f64)>,
        taken: usize,
        key: f64,
    }
    fn key<A>(scores: &[(A, f64)], taken: usize, eps: f64) -> f64 {
        let gap = if taken == 1 {
            scores[0].1 - scores[1].1
        } else {
            scores[taken].1 - scores.get(taken + 1).map_or(0.0, |s| s.1)
        };
        1.0 / (gap + eps)
    }
    fn descend<P: Problem>(
        problem: &P,
        mut state: P::State,
        mut path: Vec<P::Action>,
        mut scores: Vec<(P::Action, f64)>,
        mut taken: usize,
        open: &mut Vec<Open<P::Action>>,
        eps: f64,
    ) -> P::State {
        loop {
            let action = scores[taken].0;
            taken += 1;
            if taken < scores.len() {
                open.push(Open {
                    path: path.clone(),
                    scores: scores.clone(),
                    taken,
                    key: key(&scores, taken, eps),
                });
            }
            state = problem.apply(&state, action).unwrap();
            path.push(action);
            if problem.is_candidate(&state) {
                return state;
            }
            scores = problem
                .scored_actions(&state)
                .into_iter()
                .map(|s| (s.action, s.score))
                .collect();
            taken = 0;
        }
    }
    let root = problem.initial_state();
    if problem.is_candidate(&root) {
        return vec![(Vec::new(), problem.energy(&root).unwrap())];
    }
    let scores = problem
        .scored_actions(&root)
        .into_iter()
        .map(|s| (s.action, s.score))
        .collect();
    let mut open = Vec::new();
    let leaf = descend(problem, root, Vec::new(), scores, 0, &mut open, eps);
    let mut out = vec![(Vec::new(), problem.energy(&leaf).unwrap())];
    while out.len() < limit && !open.is_empty() {
        let mut pick = 0;
        for (i, o) in open.iter().enumerate() {
            if o.key > open[pick].key {
                pick = i;
            }
        }
        let node = open.remove(pick);
        let mut state = problem.initial_state();
        for &a in &node.path {
            state = problem.apply(&state, a).unwrap();
        }
        let leaf = descend(
            problem,
            state,
            node.path.clone(),
            node.scores,
            node.taken,
            &mut open,
            eps,
        );
        out.push((node.path, problem.energy(&leaf).unwrap()));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dp_matches_brute_force(items in prop::collection::vec((0u64..100, 1u64..100), 0..16),
                              cap in 1u64..800) {
        let inst = KnapsackInstance::new(&items, cap).unwrap();
        prop_assert_eq!(dp_oracle(&inst).unwrap(), brute_force_oracle(&inst).unwrap());
    }

    #[test]
    fn greedy_first_candidate(inst in knapsack()) {
        let out = dfs_search(&inst, &SearchConfig::default().with_max_iterations(1)).unwrap();
        let state = &out.best_state;
        prop_assert_eq!(state.selected().to_vec(), inst.greedy_packing());
        prop_assert!(state.used_weight() <= inst.capacity());
        prop_assert!(inst.is_maximal(state));
        prop_assert!(state.total_value() <= dp_oracle(&inst).unwrap());
    }

    #[test]
    fn best_energy_never_increases(inst in knapsack(), seed in 0u64..1000) {
        let cfg = SearchConfig::default().with_max_iterations(40).with_seed(seed);
        prop_assert!(dfs_search(&inst, &cfg).unwrap().trace.is_monotone());
        prop_assert!(rss_search(&inst, &cfg).unwrap().trace.is_monotone());
    }

    #[test]
    fn runs_are_deterministic(inst in knapsack(), seed in 0u64..1000) {
        let cfg = SearchConfig::default().with_max_iterations(30).with_seed(seed);
        let a = rss_search(&inst, &cfg).unwrap().trace.without_timing();
        let b = rss_search(&inst, &cfg).unwrap().trace.without_timing();
        prop_assert_eq!(a, b);
        let a = dfs_search(&inst, &cfg).unwrap().trace.without_timing();
        let b = dfs_search(&inst, &cfg).unwrap().trace.without_timing();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn exhaustion_visits_every_leaf_once(inst in knapsack()) {
        let (packings, leaves) = reference_packings(&inst);
        let mut search = Search::dilemma(&inst, SearchConfig::exhaustive()).unwrap();
        let mut paths = HashSet::new();
        let mut sets = BTreeSet::new();
        while let Some(step) = search.step().unwrap() {
            prop_assert!(paths.insert(step.candidate_path.clone()), "leaf visited twice");
            sets.insert(step.candidate.selected().iter().copied().collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>());
        }
        prop_assert_eq!(paths.len(), leaves);
        prop_assert_eq!(sets, packings);
        prop_assert_eq!(search.best_energy(), Some(-(dp_oracle(&inst).unwrap() as f64)));
    }

    #[test]
    fn rss_exhaustion_also_finds_optimum(inst in knapsack(), seed in 0u64..100) {
        let out = rss_search(&inst, &SearchConfig::exhaustive().with_seed(seed)).unwrap();
        prop_assert!(out.exhausted);
        prop_assert_eq!(out.best_energy, -(brute_force_oracle(&inst).unwrap() as f64));
    }

    #[test]
    fn dilemma_order_matches_reference(inst in knapsack()) {
        let cfg = SearchConfig::default().with_max_iterations(60);
        let expected = reference_order(&inst, cfg.epsilon, 60);
        let mut search = Search::dilemma(&inst, cfg).unwrap();
        let mut got = Vec::new();
        while got.len() < 60 {
            let Some(step) = search.step().unwrap() else { break };
            got.push((step.selected_path, step.record.candidate_energy));
        }
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn gain_is_bounded(rows in binary_rows(0, 1..40), picks in prop::collection::vec(any::<bool>(), 40)) {
        let data = dataset(rows);
        let subset: Vec<usize> = (0..data.len()).filter(|&i| picks[i]).collect();
        prop_assume!(!subset.is_empty());
        let h = entropy(&data.class_counts(&subset)).unwrap();
        prop_assert!(h <= 1.0 + 1e-9);
        for attr in 0..3 {
            let g = info_gain(&data, &subset, attr).unwrap();
            prop_assert!(g >= -1e-9 && g <= h + 1e-9, "gain {} entropy {}", g, h);
        }
    }

    #[test]
    fn first_tree_is_id3(train in binary_rows(0, 1..40), val in binary_rows(1000, 1..20), depth in 1usize..4) {
        let cfg = SplitConfig::default().with_max_depth(depth);
        let (train, val) = (dataset(train), dataset(val));
        let problem = TreeProblem::new(train.clone(), val, cfg).unwrap();
        let out = dfs_search(&problem, &SearchConfig::default().with_max_iterations(1)).unwrap();
        prop_assert_eq!(out.best_state.to_tree().unwrap(), id3(&train, &cfg));
    }

    #[test]
    fn tree_exhaustion_matches_enumeration(train in binary_rows(0, 1..30), val in binary_rows(1000, 1..20)) {
        let cfg = SplitConfig::default().with_max_depth(2);
        let (train, val) = (dataset(train), dataset(val));
        let problem = TreeProblem::new(train.clone(), val.clone(), cfg).unwrap();
        let out = dfs_search(&problem, &SearchConfig::exhaustive()).unwrap();
        let (best, count) = exhaustive_optimum(&train, &val, &cfg, DEFAULT_ENUMERATION_LIMIT).unwrap();
        prop_assert_eq!(out.best_energy, best as f64);
        prop_assert_eq!(out.trace.len(), count);
        prop_assert_eq!(enumerate_trees(&train, &cfg, DEFAULT_ENUMERATION_LIMIT).unwrap().len(), count);
    }

    #[test]
    fn splits_partition_rows(rows in binary_rows(0, 3..200), seed in any::<u64>()) {
        let data = dataset(rows);
        prop_assume!((data.len() as f64 * 0.2).round() >= 1.0);
        let Ok((a, b, c)) = split_dataset(&data, [0.5, 0.2, 0.3], seed) else {
            return Ok(());
        };
        let parts = [a, b, c];
        let ids: Vec<usize> = parts.iter().flat_map(|d| d.rows().iter().map(|r| r.id)).collect();
        let unique: HashSet<usize> = ids.iter().copied().collect();
        prop_assert_eq!(ids.len(), data.len());
        prop_assert_eq!(unique.len(), data.len());
    }
}
