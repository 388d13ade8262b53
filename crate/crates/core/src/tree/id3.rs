//! Recursive tree builders that do not go through the search engine.

use super::dataset::{info_gain, majority_of};
use super::{Dataset, DecisionTree, SplitConfig, TreeError, TreeNode};

/// Default cap on the number of trees [`enumerate_trees`] may produce.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 1_000_000;

fn partition(data: &Dataset, rows: &[usize], attribute: usize) -> Vec<Vec<usize>> {
    let mut parts = vec![Vec::new(); data.attributes()[attribute].values.len()];
    for &i in rows {
        parts[data.rows()[i].values[attribute] as usize].push(i);
    }
    parts
}

/// Classic ID3: split every node on its highest-gain unused attribute (first
/// in schema order on ties) until the stopping rule applies.
pub fn id3(train: &Dataset, config: &SplitConfig) -> DecisionTree {
    fn grow(
        data: &Dataset,
        config: &SplitConfig,
        rows: &[usize],
        used: &mut Vec<usize>,
        depth: usize,
        parent_majority: u32,
    ) -> TreeNode {
        if rows.is_empty() {
            return TreeNode::Leaf {
                class: parent_majority,
            };
        }
        let majority = majority_of(&data.class_counts(rows));
        if config.seals(data, rows, used, depth) {
            return TreeNode::Leaf { class: majority };
        }
        let mut best: Option<(usize, f64)> = None;
        for j in (0..data.attributes().len()).filter(|j| !used.contains(j)) {
            let g = info_gain(data, rows, j).expect("nonempty rows");
            if best.is_none_or(|(_, bg)| g > bg) {
                best = Some((j, g));
            }
        }
        let (attribute, _) = best.expect("stopping rule covers exhausted attributes");
        used.push(attribute);
        let children = partition(data, rows, attribute)
            .iter()
            .map(|part| grow(data, config, part, used, depth + 1, majority))
            .collect();
        used.pop();
        TreeNode::Split {
            attribute,
            majority,
            children,
        }
    }

    let rows: Vec<usize> = (0..train.len()).collect();
    let root_majority = train.majority(&rows);
    DecisionTree {
        root: grow(train, config, &rows, &mut Vec::new(), 0, root_majority),
    }
}

/// Every tree reachable under the stopping rule, or `TooLarge` past `limit`.
pub fn enumerate_trees(
    train: &Dataset,
    config: &SplitConfig,
    limit: usize,
) -> Result<Vec<DecisionTree>, TreeError> {
    fn all(
        data: &Dataset,
        config: &SplitConfig,
        rows: &[usize],
        used: &mut Vec<usize>,
        depth: usize,
        parent_majority: u32,
        limit: usize,
    ) -> Result<Vec<TreeNode>, TreeError> {
        if rows.is_empty() {
            return Ok(vec![TreeNode::Leaf {
                class: parent_majority,
            }]);
        }
        let majority = majority_of(&data.class_counts(rows));
        if config.seals(data, rows, used, depth) {
            return Ok(vec![TreeNode::Leaf { class: majority }]);
        }
        let mut out = Vec::new();
        for attribute in 0..data.attributes().len() {
            if used.contains(&attribute) {
                continue;
            }
            used.push(attribute);
            let options: Result<Vec<Vec<TreeNode>>, TreeError> = partition(data, rows, attribute)
                .iter()
                .map(|part| all(data, config, part, used, depth + 1, majority, limit))
                .collect();
            used.pop();
            let options = options?;
            let combos = options
                .iter()
                .try_fold(1usize, |acc, o| acc.checked_mul(o.len()))
                .filter(|&c| c.saturating_add(out.len()) <= limit)
                .ok_or(TreeError::TooLarge { limit })?;
            for k in 0..combos {
                let mut rest = k;
                let children = options
                    .iter()
                    .map(|o| {
                        let pick = rest % o.len();
                        rest /= o.len();
                        o[pick].clone()
                    })
                    .collect();
                out.push(TreeNode::Split {
                    attribute,
                    majority,
                    children,
                });
            }
        }
        Ok(out)
    }

    let rows: Vec<usize> = (0..train.len()).collect();
    let root_majority = train.majority(&rows);
    Ok(all(
        train,
        config,
        &rows,
        &mut Vec::new(),
        0,
        root_majority,
        limit,
    )?
    .into_iter()
    .map(|root| DecisionTree { root })
    .collect())
}

/// Minimum validation error over all enumerable trees, and how many trees
/// there are.
pub fn exhaustive_optimum(
    train: &Dataset,
    validation: &Dataset,
    config: &SplitConfig,
    limit: usize,
) -> Result<(usize, usize), TreeError> {
    let trees = enumerate_trees(train, config, limit)?;
    let best = trees
        .iter()
        .map(|t| t.errors(validation))
        .min()
        .expect("at least one tree");
    Ok((best, trees.len()))
}
