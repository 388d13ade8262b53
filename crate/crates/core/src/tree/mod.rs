//! Decision-tree induction as a search problem.
//!
//! An action picks the split attribute for the next open node of a partially
//! built tree. Open nodes are processed breadth-first; nodes that meet the
//! stopping rule are sealed as majority-class leaves without an action. The
//! heuristic is information gain on the node's training subset and the energy
//! of a finished tree is its number of misclassified validation rows.

mod adapter;
mod dataset;
mod id3;
mod model;
mod prep;

pub use adapter::{SplitConfig, TreeProblem, TreeState};
pub use dataset::{entropy, info_gain, Attribute, Dataset, Row};
pub use id3::{enumerate_trees, exhaustive_optimum, id3, DEFAULT_ENUMERATION_LIMIT};
pub use model::{DecisionTree, TreeNode};
pub use prep::{bin_label, quantize_numeric, quantize_with_edges, split_dataset, Quantized};

use thiserror::Error;

use crate::search::AdapterError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TreeError {
    #[error("entropy of an empty subset is undefined")]
    EmptySubset,
    #[error("attribute {0} is not in the schema")]
    UnknownAttribute(usize),
    #[error("attribute {attribute} is not a legal split here: {reason}")]
    IllegalAction { attribute: usize, reason: String },
    #[error("tree still has {0} open nodes")]
    NotCandidate(usize),
    #[error("invalid split ratios: {0}")]
    Ratio(String),
    #[error("split of {rows} rows leaves the {part} part empty")]
    TooFewRows { rows: usize, part: &'static str },
    #[error("row {0} appears in both training and validation data")]
    NotDisjoint(usize),
    #[error("datasets do not share a schema")]
    SchemaMismatch,
    #[error("validation set is empty")]
    EmptyValidation,
    #[error("invalid dataset: {0}")]
    Invalid(String),
    #[error("need at least 2 bins, got {0}")]
    TooFewBins(usize),
    #[error("cannot quantize an empty column")]
    EmptyColumn,
    #[error("more than {limit} trees to enumerate")]
    TooLarge { limit: usize },
}

impl From<TreeError> for AdapterError {
    fn from(e: TreeError) -> Self {
        AdapterError(e.to_string())
    }
}
