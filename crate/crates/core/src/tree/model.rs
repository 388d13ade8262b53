use super::{Dataset, Row};

/// A finished decision tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TreeNode {
    Leaf {
        class: u32,
    },
    Split {
        attribute: usize,
        /// Majority class of the training rows that reached this node.
        majority: u32,
        /// One child per value of `attribute`, in value-set order.
        children: Vec<TreeNode>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecisionTree {
    pub root: TreeNode,
}

impl DecisionTree {
    pub fn classify(&self, values: &[u32]) -> u32 {
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Leaf { class } => return *class,
                TreeNode::Split {
                    attribute,
                    majority,
                    children,
                } => match children.get(values[*attribute] as usize) {
                    Some(child) => node = child,
                    None => return *majority,
                },
            }
        }
    }

    pub fn misclassified<'a>(&self, rows: impl IntoIterator<Item = &'a Row>) -> usize {
        rows.into_iter()
            .filter(|r| self.classify(&r.values) != r.class)
            .count()
    }

    /// Misclassified rows of `data`.
    pub fn errors(&self, data: &Dataset) -> usize {
        self.misclassified(data.rows())
    }

    pub fn node_count(&self) -> usize {
        fn count(n: &TreeNode) -> usize {
            match n {
                TreeNode::Leaf { .. } => 1,
                TreeNode::Split { children, .. } => 1 + children.iter().map(count).sum::<usize>(),
            }
        }
        count(&self.root)
    }

    pub fn depth(&self) -> usize {
        fn depth(n: &TreeNode) -> usize {
            match n {
                TreeNode::Leaf { .. } => 0,
                TreeNode::Split { children, .. } => {
                    1 + children.iter().map(depth).max().unwrap_or(0)
                }
            }
        }
        depth(&self.root)
    }
}
