use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use super::dataset::{entropy, info_gain, majority_of};
use super::{Dataset, DecisionTree, TreeError, TreeNode};
use crate::search::{sort_scored, AdapterError, Problem, ScoredAction};

/// When an open node becomes a leaf instead of being split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitConfig {
    /// Nodes at this depth are always leaves (the root has depth 0).
    pub max_depth: usize,
    /// Nodes whose class entropy is at most this are leaves.
    pub min_entropy: f64,
    /// Nodes with fewer training rows than this are leaves.
    pub min_rows: usize,
}

impl Default for SplitConfig {
    fn default() -> Self {
        Self {
            max_depth: 8,
            min_entropy: 0.0,
            min_rows: 1,
        }
    }
}

impl SplitConfig {
    pub fn with_max_depth(mut self, max_depth: usize) -> Self {
        self.max_depth = max_depth;
        self
    }

    pub fn validate(&self) -> Result<(), TreeError> {
        if self.max_depth == 0 {
            return Err(TreeError::Invalid("max_depth must be >= 1".into()));
        }
        if self.min_entropy.is_nan() || self.min_entropy < 0.0 {
            return Err(TreeError::Invalid("min_entropy must be >= 0".into()));
        }
        if self.min_rows == 0 {
            return Err(TreeError::Invalid("min_rows must be >= 1".into()));
        }
        Ok(())
    }

    /// Stopping rule for a node with the given training rows and path.
    pub(crate) fn seals(
        &self,
        data: &Dataset,
        rows: &[usize],
        used: &[usize],
        depth: usize,
    ) -> bool {
        depth >= self.max_depth
            || rows.len() < self.min_rows
            || used.len() >= data.attributes().len()
            || entropy(&data.class_counts(rows)).map_or(true, |h| h <= self.min_entropy)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Slot {
    Open,
    Leaf(u32),
    Split {
        attribute: usize,
        children: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq)]
struct ArenaNode {
    depth: usize,
    majority: u32,
    slot: Slot,
}

#[derive(Debug, Clone, PartialEq)]
struct OpenNode {
    node: usize,
    rows: Arc<[usize]>,
    used: Vec<usize>,
}

/// A partially built tree with a FIFO frontier of open nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeState {
    nodes: Vec<ArenaNode>,
    frontier: VecDeque<OpenNode>,
    path: Vec<(usize, usize)>,
}

impl TreeState {
    pub fn is_complete(&self) -> bool {
        self.frontier.is_empty()
    }

    pub fn open_nodes(&self) -> usize {
        self.frontier.len()
    }

    /// `(node index, attribute)` for every split made so far.
    pub fn action_path(&self) -> &[(usize, usize)] {
        &self.path
    }

    /// Training-row positions of the front open node.
    pub fn front_rows(&self) -> Option<&[usize]> {
        self.frontier.front().map(|o| &o.rows[..])
    }

    /// Attributes already used on the front node's root path.
    pub fn front_used(&self) -> Option<&[usize]> {
        self.frontier.front().map(|o| &o.used[..])
    }

    /// Finished tree, or `NotCandidate` while nodes are still open.
    pub fn to_tree(&self) -> Result<DecisionTree, TreeError> {
        if !self.is_complete() {
            return Err(TreeError::NotCandidate(self.frontier.len()));
        }
        Ok(DecisionTree {
            root: self.build(0),
        })
    }

    fn build(&self, idx: usize) -> TreeNode {
        let node = &self.nodes[idx];
        match &node.slot {
            Slot::Leaf(class) => TreeNode::Leaf { class: *class },
            Slot::Split {
                attribute,
                children,
            } => TreeNode::Split {
                attribute: *attribute,
                majority: node.majority,
                children: children.iter().map(|&c| self.build(c)).collect(),
            },
            Slot::Open => unreachable!("complete tree has no open nodes"),
        }
    }

    fn classify(&self, values: &[u32]) -> u32 {
        let mut idx = 0;
        loop {
            let node = &self.nodes[idx];
            match &node.slot {
                Slot::Split {
                    attribute,
                    children,
                } => match children.get(values[*attribute] as usize) {
                    Some(&c) => idx = c,
                    None => return node.majority,
                },
                Slot::Leaf(class) => return *class,
                Slot::Open => return node.majority,
            }
        }
    }
}

/// Tree induction on `train`, scored on the disjoint `validation` set.
#[derive(Debug, Clone)]
pub struct TreeProblem {
    train: Dataset,
    validation: Dataset,
    config: SplitConfig,
}

impl TreeProblem {
    pub fn new(
        train: Dataset,
        validation: Dataset,
        config: SplitConfig,
    ) -> Result<Self, TreeError> {
        config.validate()?;
        if !train.same_schema(&validation) {
            return Err(TreeError::SchemaMismatch);
        }
        if validation.is_empty() {
            return Err(TreeError::EmptyValidation);
        }
        let train_ids: HashSet<usize> = train.rows().iter().map(|r| r.id).collect();
        if let Some(r) = validation.rows().iter().find(|r| train_ids.contains(&r.id)) {
            return Err(TreeError::NotDisjoint(r.id));
        }
        Ok(Self {
            train,
            validation,
            config,
        })
    }

    pub fn train(&self) -> &Dataset {
        &self.train
    }

    pub fn validation(&self) -> &Dataset {
        &self.validation
    }

    pub fn config(&self) -> &SplitConfig {
        &self.config
    }

    /// Unsplit root, normalized.
    pub fn root_state(&self) -> TreeState {
        let rows: Arc<[usize]> = (0..self.train.len()).collect();
        let mut state = TreeState {
            nodes: vec![ArenaNode {
                depth: 0,
                majority: self.train.majority(&rows),
                slot: Slot::Open,
            }],
            frontier: VecDeque::from([OpenNode {
                node: 0,
                rows,
                used: Vec::new(),
            }]),
            path: Vec::new(),
        };
        self.normalize(&mut state);
        state
    }

    /// Seals front nodes that meet the stopping rule until a splittable node
    /// is at the front or the frontier is empty.
    pub fn normalize(&self, state: &mut TreeState) {
        while let Some(front) = state.frontier.front() {
            let node = &mut state.nodes[front.node];
            if !self
                .config
                .seals(&self.train, &front.rows, &front.used, node.depth)
            {
                break;
            }
            node.slot = Slot::Leaf(node.majority);
            state.frontier.pop_front();
        }
    }

    /// Unused attributes of the front node, best information gain first,
    /// ties in schema order.
    pub fn scored_splits(&self, state: &TreeState) -> Vec<ScoredAction<usize>> {
        let mut normalized;
        let mut state = state;
        if state.frontier.front().is_some_and(|f| {
            self.config
                .seals(&self.train, &f.rows, &f.used, state.nodes[f.node].depth)
        }) {
            normalized = state.clone();
            self.normalize(&mut normalized);
            state = &normalized;
        }
        let Some(front) = state.frontier.front() else {
            return Vec::new();
        };
        let mut actions: Vec<ScoredAction<usize>> = (0..self.train.attributes().len())
            .filter(|j| !front.used.contains(j))
            .map(|j| {
                let gain = info_gain(&self.train, &front.rows, j).expect("front node has rows");
                ScoredAction::new(j, gain)
            })
            .collect();
        sort_scored(&mut actions);
        actions
    }

    /// Splits the front node on `attribute`.
    pub fn split(&self, state: &TreeState, attribute: usize) -> Result<TreeState, TreeError> {
        let mut next = state.clone();
        self.normalize(&mut next);
        let front = next
            .frontier
            .front()
            .ok_or_else(|| TreeError::IllegalAction {
                attribute,
                reason: "tree is complete".into(),
            })?;
        let values = match self.train.attributes().get(attribute) {
            Some(a) => a.values.len(),
            None => {
                return Err(TreeError::IllegalAction {
                    attribute,
                    reason: "unknown attribute".into(),
                })
            }
        };
        if front.used.contains(&attribute) {
            return Err(TreeError::IllegalAction {
                attribute,
                reason: "already used on this path".into(),
            });
        }
        let front = next.frontier.pop_front().expect("checked above");
        let parent = front.node;
        let depth = next.nodes[parent].depth + 1;
        let parent_majority = next.nodes[parent].majority;
        let mut used = front.used.clone();
        used.push(attribute);

        let mut parts: Vec<Vec<usize>> = vec![Vec::new(); values];
        for &i in front.rows.iter() {
            parts[self.train.rows()[i].values[attribute] as usize].push(i);
        }
        let mut children = Vec::with_capacity(values);
        for rows in parts {
            let idx = next.nodes.len();
            children.push(idx);
            if rows.is_empty() {
                next.nodes.push(ArenaNode {
                    depth,
                    majority: parent_majority,
                    slot: Slot::Leaf(parent_majority),
                });
            } else {
                next.nodes.push(ArenaNode {
                    depth,
                    majority: majority_of(&self.train.class_counts(&rows)),
                    slot: Slot::Open,
                });
                next.frontier.push_back(OpenNode {
                    node: idx,
                    rows: rows.into(),
                    used: used.clone(),
                });
            }
        }
        next.nodes[parent].slot = Slot::Split {
            attribute,
            children,
        };
        next.path.push((parent, attribute));
        self.normalize(&mut next);
        Ok(next)
    }

    /// Misclassified validation rows of a complete tree.
    pub fn validation_errors(&self, state: &TreeState) -> Result<usize, TreeError> {
        if !state.is_complete() {
            return Err(TreeError::NotCandidate(state.frontier.len()));
        }
        Ok(self
            .validation
            .rows()
            .iter()
            .filter(|r| state.classify(&r.values) != r.class)
            .count())
    }
}

impl Problem for TreeProblem {
    type State = TreeState;
    type Action = usize;

    fn initial_state(&self) -> TreeState {
        self.root_state()
    }

    fn scored_actions(&self, state: &TreeState) -> Vec<ScoredAction<usize>> {
        self.scored_splits(state)
    }

    fn apply(&self, state: &TreeState, action: usize) -> Result<TreeState, AdapterError> {
        Ok(self.split(state, action)?)
    }

    fn is_candidate(&self, state: &TreeState) -> bool {
        state.is_complete()
    }

    fn energy(&self, state: &TreeState) -> Result<f64, AdapterError> {
        Ok(self.validation_errors(state)? as f64)
    }
}
