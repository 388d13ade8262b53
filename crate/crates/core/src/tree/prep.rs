use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Dataset, TreeError};

/// Shuffles rows with a seeded generator and cuts them into
/// train / validation / test parts of the given proportions.
pub fn split_dataset(
    data: &Dataset,
    ratios: [f64; 3],
    seed: u64,
) -> Result<(Dataset, Dataset, Dataset), TreeError> {
    if ratios.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(TreeError::Ratio(format!(
            "ratios must be positive: {ratios:?}"
        )));
    }
    let sum: f64 = ratios.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(TreeError::Ratio(format!("ratios sum to {sum}, not 1")));
    }
    let n = data.len();
    let n_train = (n as f64 * ratios[0]).round() as usize;
    let n_val = (n as f64 * ratios[1]).round() as usize;
    let empty = if n_train == 0 {
        Some("train")
    } else if n_val == 0 {
        Some("validation")
    } else if n_train + n_val >= n {
        Some("test")
    } else {
        None
    };
    if let Some(part) = empty {
        return Err(TreeError::TooFewRows { rows: n, part });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let (train, rest) = order.split_at(n_train);
    let (val, test) = rest.split_at(n_val);
    Ok((data.select(train)?, data.select(val)?, data.select(test)?))
}

/// Result of equal-width binning.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantized {
    pub labels: Vec<String>,
    /// Inner bin boundaries, `k - 1` of them (none for a constant column).
    pub edges: Vec<f64>,
    /// The column had a single distinct value and collapsed to `b0`.
    pub constant: bool,
}

pub fn bin_label(bin: usize) -> String {
    format!("b{bin}")
}

/// Bin index for `x`: bins are closed on the right, so a value equal to an
/// edge falls in the lower bin.
fn bin_of(x: f64, edges: &[f64]) -> usize {
    edges.iter().take_while(|&&e| e < x).count()
}

/// Equal-width binning of a numeric column into `k` bins over `[min, max]`.
pub fn quantize_numeric(column: &[f64], k: usize) -> Result<Quantized, TreeError> {
    if k < 2 {
        return Err(TreeError::TooFewBins(k));
    }
    if column.is_empty() {
        return Err(TreeError::EmptyColumn);
    }
    if let Some(x) = column.iter().find(|x| !x.is_finite()) {
        return Err(TreeError::Invalid(format!("non-finite value {x}")));
    }
    let min = column.iter().copied().fold(f64::INFINITY, f64::min);
    let max = column.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if min == max {
        return Ok(Quantized {
            labels: vec![bin_label(0); column.len()],
            edges: Vec::new(),
            constant: true,
        });
    }
    let width = (max - min) / k as f64;
    let edges: Vec<f64> = (1..k).map(|i| min + width * i as f64).collect();
    Ok(Quantized {
        labels: quantize_with_edges(column, &edges),
        edges,
        constant: false,
    })
}

/// Applies previously computed edges to another column.
pub fn quantize_with_edges(column: &[f64], edges: &[f64]) -> Vec<String> {
    column
        .iter()
        .map(|&x| bin_label(bin_of(x, edges)))
        .collect()
}
