//! Text formats: knapsack instances, categorical CSV datasets, run traces and
//! run summaries.

mod dataset;
mod knapsack;
mod trace;

pub use dataset::{
    format_dataset, parse_dataset, BinSpec, ColumnBinning, DatasetError, LoadedDataset,
};
pub use knapsack::{format_knapsack, parse_knapsack, ParseError};
pub use trace::{format_g9, format_summary, format_trace, write_summary, write_trace, RunSummary};

use sha2::{Digest, Sha256};

/// SHA-256 of `bytes` as lowercase hex.
pub fn fingerprint(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
