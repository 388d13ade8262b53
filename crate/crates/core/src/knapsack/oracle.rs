//! Exact solvers used to check search results.

use super::{KnapsackError, KnapsackInstance};

/// Default bound on `n * W` for [`dp_oracle`].
pub const DEFAULT_DP_CELL_LIMIT: u128 = 200_000_000;

const BRUTE_FORCE_MAX_ITEMS: usize = 24;

/// Optimal packed value via the `O(n * W)` dynamic program.
pub fn dp_oracle(instance: &KnapsackInstance) -> Result<u64, KnapsackError> {
    dp_oracle_with_limit(instance, DEFAULT_DP_CELL_LIMIT)
}

pub fn dp_oracle_with_limit(
    instance: &KnapsackInstance,
    limit: u128,
) -> Result<u64, KnapsackError> {
    let cap = instance.capacity();
    let cells = instance.len() as u128 * (u128::from(cap) + 1);
    if cells > limit {
        return Err(KnapsackError::CapacityOverflow { cells, limit });
    }
    // best[c] = best value using capacity c over the items seen so far.
    let mut best = vec![0u64; cap as usize + 1];
    for item in instance.items() {
        let w = item.weight as usize;
        for c in (w..best.len()).rev() {
            best[c] = best[c].max(best[c - w] + item.value);
        }
    }
    Ok(best[cap as usize])
}

/// Optimal packed value by enumerating all `2^n` subsets.
pub fn brute_force_oracle(instance: &KnapsackInstance) -> Result<u64, KnapsackError> {
    let n = instance.len();
    if n > BRUTE_FORCE_MAX_ITEMS {
        return Err(KnapsackError::TooLarge {
            n,
            max: BRUTE_FORCE_MAX_ITEMS,
        });
    }
    let items = instance.items();
    let mut best = 0;
    for mask in 0u32..(1u32 << n) {
        let (mut w, mut v) = (0u64, 0u64);
        for (i, item) in items.iter().enumerate() {
            if mask & (1 << i) != 0 {
                w += item.weight;
                v += item.value;
            }
        }
        if w <= instance.capacity() {
            best = best.max(v);
        }
    }
    Ok(best)
}
