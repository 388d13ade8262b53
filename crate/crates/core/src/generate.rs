//! Seeded generators for benchmark and test instances.

use rand::Rng;

use crate::knapsack::KnapsackInstance;
use crate::tree::{Attribute, Dataset, Row};

/// `n` items with values and weights uniform in `1..=max`, capacity
/// `ceil(capacity_fraction * total weight)`.
pub fn random_knapsack<R: Rng>(
    rng: &mut R,
    n: usize,
    max: u64,
    capacity_fraction: f64,
) -> KnapsackInstance {
    let items: Vec<(u64, u64)> = (0..n)
        .map(|_| (rng.random_range(1..=max), rng.random_range(1..=max)))
        .collect();
    let total: u64 = items.iter().map(|&(_, w)| w).sum();
    let capacity = ((total as f64 * capacity_fraction).ceil() as u64).max(1);
    KnapsackInstance::new(&items, capacity).expect("weights and capacity are positive")
}

fn binary() -> Vec<String> {
    vec!["0".into(), "1".into()]
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Random categorical data. The class is a random function of the first two
/// attributes, flipped to a random class with probability `noise`.
pub fn random_categorical<R: Rng>(
    rng: &mut R,
    rows: usize,
    attributes: usize,
    arity: usize,
    classes: usize,
    noise: f64,
) -> Dataset {
    assert!(attributes >= 1 && arity >= 1 && classes >= 1 && rows >= 1);
    let table: Vec<u32> = (0..arity * arity)
        .map(|_| rng.random_range(0..classes as u32))
        .collect();
    let rows = (0..rows)
        .map(|id| {
            let values: Vec<u32> = (0..attributes)
                .map(|_| rng.random_range(0..arity as u32))
                .collect();
            let key = values[0] as usize * arity + values.get(1).copied().unwrap_or(0) as usize;
            let class = if rng.random_bool(noise) {
                rng.random_range(0..classes as u32)
            } else {
                table[key]
            };
            Row { id, values, class }
        })
        .collect();
    let attrs = (0..attributes)
        .map(|j| Attribute {
            name: format!("a{j}"),
            values: labels("v", arity),
        })
        .collect();
    Dataset::new(attrs, "class", labels("c", classes), rows).expect("generated rows are valid")
}

/// Binary data with a planted greedy trap.
///
/// The label is `x XOR y` with 5% label noise, where `y` is skewed towards
/// 0 so `x` alone carries a little information. `decoy` is a noisy copy of
/// the label whose information gain beats `x` at the root, and
/// `n0..n3` are pure noise. A depth-limited ID3 tree that starts with
/// `decoy` cannot recover the XOR structure.
pub fn planted_decoy<R: Rng>(rng: &mut R, rows: usize) -> Dataset {
    let mut out = Vec::with_capacity(rows);
    for id in 0..rows {
        let x = rng.random_bool(0.5) as u32;
        let y = rng.random_bool(0.3) as u32;
        let mut class = x ^ y;
        if rng.random_bool(0.05) {
            class ^= 1;
        }
        let decoy = if rng.random_bool(0.72) {
            class
        } else {
            class ^ 1
        };
        let mut values = vec![x, y, decoy];
        values.extend((0..4).map(|_| rng.random_bool(0.5) as u32));
        out.push(Row { id, values, class });
    }
    let names = ["x", "y", "decoy", "n0", "n1", "n2", "n3"];
    let attrs = names
        .iter()
        .map(|n| Attribute {
            name: n.to_string(),
            values: binary(),
        })
        .collect();
    Dataset::new(attrs, "class", vec!["neg".into(), "pos".into()], out)
        .expect("generated rows are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn knapsack_capacity_is_half_weight_rounded_up() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let inst = random_knapsack(&mut rng, 11, 100, 0.5);
        assert_eq!(inst.len(), 11);
        assert_eq!(inst.capacity(), inst.total_weight().div_ceil(2));
        assert!(inst
            .items()
            .iter()
            .all(|i| (1..=100).contains(&i.value) && (1..=100).contains(&i.weight)));
    }

    #[test]
    fn generators_are_deterministic() {
        let a = planted_decoy(&mut ChaCha8Rng::seed_from_u64(1), 50);
        let b = planted_decoy(&mut ChaCha8Rng::seed_from_u64(1), 50);
        assert_eq!(a, b);
        let c = random_categorical(&mut ChaCha8Rng::seed_from_u64(1), 30, 4, 3, 2, 0.1);
        let d = random_categorical(&mut ChaCha8Rng::seed_from_u64(1), 30, 4, 3, 2, 0.1);
        assert_eq!(c, d);
    }
}
