//! Anytime dilemma-first search over problems built from action sequences.
//!
//! A run starts with a greedy rollout and then keeps revisiting the states
//! whose top two actions scored closest, growing each one greedily into a
//! new candidate. See [`search`] for the engines and the [`search::Problem`]
//! trait, [`knapsack`] and [`tree`] for the bundled problems, and [`io`] for
//! the file formats.
//!
//! ```
//! use dilemma_search::knapsack::KnapsackInstance;
//! use dilemma_search::search::{dfs_search, SearchConfig};
//!
//! let inst = KnapsackInstance::new(&[(10, 5), (7, 4), (6, 4)], 8).unwrap();
//! let out = dfs_search(&inst, &SearchConfig::default()).unwrap();
//! assert_eq!(out.best_energy, -13.0);
//! ```

pub mod generate;
pub mod io;
pub mod knapsack;
pub mod search;
pub mod tree;

// The guide's snippets run as doc-tests so the book cannot drift from the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/problem.md")]
    mod problem {}
    #[doc = include_str!("../../../book/src/dilemma.md")]
    mod dilemma {}
    #[doc = include_str!("../../../book/src/anytime.md")]
    mod anytime {}
    #[doc = include_str!("../../../book/src/knapsack.md")]
    mod knapsack {}
    #[doc = include_str!("../../../book/src/trees.md")]
    mod trees {}
}
