//! Axis-aligned binary trees grown greedily: Gini impurity for class labels,
//! variance reduction for continuous responses. Splits sit at midpoints
//! between consecutive distinct feature values; the best split wins by
//! impurity decrease, ties resolved toward the lowest feature index and then
//! the lowest threshold. A split is legal only if neither child would fall
//! below `min_leaf` members. No pruning.

use crate::matrix::Matrix;

#[derive(Debug, Clone)]
pub enum TreeTarget<'a> {
    Classes { labels: &'a [usize], n_classes: usize },
    Values(&'a [f64]),
}

#[derive(Debug, Clone)]
pub enum Node {
    Split { feature: usize, threshold: f64, left: usize, right: usize },
    Leaf(LeafInfo),
}

#[derive(Debug, Clone)]
pub struct LeafInfo {
    pub depth: usize,
    /// Training instances routed to this leaf.
    pub members: Vec<usize>,
    /// Per-class member counts (classification trees only).
    pub class_counts: Vec<usize>,
    /// Mean member response (regression trees only).
    pub mean: f64,
}

#[derive(Debug, Clone)]
pub struct CartTree {
    nodes: Vec<Node>,
    root: usize,
    max_depth: usize,
    min_leaf: usize,
    /// Leaf node id of each training instance.
    training_leaf: Vec<usize>,
    n_classes: usize,
}

struct Builder<'a> {
    features: &'a Matrix,
    target: &'a TreeTarget<'a>,
    min_leaf: usize,
    nodes: Vec<Node>,
    training_leaf: Vec<usize>,
}

fn gini_from_counts(counts: &[usize], total: usize) -> f64 {
    let t = total as f64;
    1.0 - counts
        .iter()
        .map(|&c| {
            let p = c as f64 / t;
            p * p
        })
        .sum::<f64>()
}

fn class_counts(labels: &[usize], n_classes: usize, members: &[usize]) -> Vec<usize> {
    let mut counts = vec![0usize; n_classes];
    for &i in members {
        counts[labels[i]] += 1;
    }
    counts
}

/// Sum of squared deviations from the mean (variance times count).
fn sum_sq_dev(values: &[f64], members: &[usize]) -> f64 {
    let n = members.len() as f64;
    let sum: f64 = members.iter().map(|&i| values[i]).sum();
    let mean = sum / n;
    members.iter().map(|&i| (values[i] - mean) * (values[i] - mean)).sum()
}

impl<'a> Builder<'a> {
    /// Weighted node impurity: count times Gini, or the sum of squared
    /// deviations. Comparable across a split because it is additive.
    fn node_impurity(&self, members: &[usize]) -> f64 {
        match self.target {
            TreeTarget::Classes { labels, n_classes } => {
                let counts = class_counts(labels, *n_classes, members);
                members.len() as f64 * gini_from_counts(&counts, members.len())
            }
            TreeTarget::Values(values) => sum_sq_dev(values, members),
        }
    }

    fn is_pure(&self, members: &[usize]) -> bool {
        match self.target {
            TreeTarget::Classes { labels, .. } => {
                let first = labels[members[0]];
                members.iter().all(|&i| labels[i] == first)
            }
            TreeTarget::Values(values) => {
                let first = values[members[0]];
                members.iter().all(|&i| values[i] == first)
            }
        }
    }

    /// Best legal split of `members`, if any strictly reduces impurity.
    fn best_split(&self, members: &[usize]) -> Option<(usize, f64)> {
        let parent = self.node_impurity(members);
        let mut best: Option<(f64, usize, f64)> = None; // (gain, feature, threshold)
        for feature in 0..self.features.n_cols() {
            let mut order: Vec<usize> = members.to_vec();
            order.sort_by(|&a, &b| {
                self.features
                    .get(a, feature)
                    .total_cmp(&self.features.get(b, feature))
                    .then_with(|| a.cmp(&b))
            });
            let values: Vec<f64> = order.iter().map(|&i| self.features.get(i, feature)).collect();
            for cut in 1..order.len() {
                if values[cut] == values[cut - 1] {
                    continue;
                }
                if cut < self.min_leaf || order.len() - cut < self.min_leaf {
                    continue;
                }
                let threshold = (values[cut - 1] + values[cut]) / 2.0;
                let gain = parent
                    - self.node_impurity(&order[..cut])
                    - self.node_impurity(&order[cut..]);
                let better = match best {
                    None => gain > 0.0,
                    Some((bg, bf, bt)) => {
                        gain > bg
                            || (gain == bg && (feature < bf || (feature == bf && threshold < bt)))
                    }
                };
                if better && gain > 0.0 {
                    best = Some((gain, feature, threshold));
                }
            }
        }
        best.map(|(_, f, t)| (f, t))
    }

    fn make_leaf(&mut self, members: Vec<usize>, depth: usize) -> usize {
        let (class_counts, mean) = match self.target {
            TreeTarget::Classes { labels, n_classes } => {
                (class_counts(labels, *n_classes, &members), 0.0)
            }
            TreeTarget::Values(values) => {
                let mean =
                    members.iter().map(|&i| values[i]).sum::<f64>() / members.len() as f64;
                (Vec::new(), mean)
            }
        };
        let id = self.nodes.len();
        for &i in &members {
            self.training_leaf[i] = id;
        }
        self.nodes.push(Node::Leaf(LeafInfo { depth, members, class_counts, mean }));
        id
    }

    fn grow(&mut self, members: Vec<usize>, depth: usize) -> usize {
        if members.len() <= self.min_leaf || self.is_pure(&members) {
            return self.make_leaf(members, depth);
        }
        let Some((feature, threshold)) = self.best_split(&members) else {
            return self.make_leaf(members, depth);
        };
        let (left_members, right_members): (Vec<usize>, Vec<usize>) = members
            .iter()
            .partition(|&&i| self.features.get(i, feature) <= threshold);
        let id = self.nodes.len();
        self.nodes.push(Node::Split { feature, threshold, left: 0, right: 0 });
        let left = self.grow(left_members, depth + 1);
        let right = self.grow(right_members, depth + 1);
        if let Node::Split { left: l, right: r, .. } = &mut self.nodes[id] {
            *l = left;
            *r = right;
        }
        id
    }
}

/// Grows a tree on the full training data until leaves are pure, reach
/// `min_leaf` members, or no legal split reduces impurity.
pub fn fit_cart(features: &Matrix, target: &TreeTarget, min_leaf: usize) -> CartTree {
    assert!(features.n_rows() >= 1, "empty training set");
    assert!(min_leaf >= 1, "min_leaf must be at least 1");
    let n = features.n_rows();
    let mut builder = Builder {
        features,
        target,
        min_leaf,
        nodes: Vec::new(),
        training_leaf: vec![0; n],
    };
    let root = builder.grow((0..n).collect(), 0);
    let max_depth = builder
        .nodes
        .iter()
        .filter_map(|node| match node {
            Node::Leaf(info) => Some(info.depth),
            Node::Split { .. } => None,
        })
        .max()
        .unwrap_or(0);
    let n_classes = match target {
        TreeTarget::Classes { n_classes, .. } => *n_classes,
        TreeTarget::Values(_) => 0,
    };
    CartTree {
        nodes: builder.nodes,
        root,
        max_depth,
        min_leaf,
        training_leaf: builder.training_leaf,
        n_classes,
    }
}

impl CartTree {
    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    pub fn min_leaf(&self) -> usize {
        self.min_leaf
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn leaf(&self, id: usize) -> &LeafInfo {
        match &self.nodes[id] {
            Node::Leaf(info) => info,
            Node::Split { .. } => panic!("node {id} is not a leaf"),
        }
    }

    /// Leaf holding training instance `i`.
    pub fn training_leaf(&self, i: usize) -> &LeafInfo {
        self.leaf(self.training_leaf[i])
    }

    /// Routes an arbitrary row to its leaf: values equal to a threshold go
    /// left, matching how splits partition the training data.
    pub fn locate_row(&self, row: &[f64]) -> &LeafInfo {
        let mut id = self.root;
        loop {
            match &self.nodes[id] {
                Node::Leaf(info) => return info,
                Node::Split { feature, threshold, left, right } => {
                    id = if row[*feature] <= *threshold { *left } else { *right };
                }
            }
        }
    }

    /// Per-class frequencies of the leaf that captures `row`.
    pub fn leaf_class_frequencies(&self, row: &[f64]) -> Vec<f64> {
        let info = self.locate_row(row);
        let total: usize = info.class_counts.iter().sum();
        info.class_counts.iter().map(|&c| c as f64 / total as f64).collect()
    }

    pub fn predict_mean(&self, row: &[f64]) -> f64 {
        self.locate_row(row).mean
    }
}
