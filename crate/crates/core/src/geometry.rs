//! Geometric substrate shared by the neighborhood-based measures: pairwise
//! Euclidean distances, k-nearest-neighbor queries, a deterministic minimum
//! spanning tree, nearest-enemy local sets, and epsilon-proximity graphs.
//!
//! Every product here is immutable once built and derived from scaled
//! features only. Ties are always broken toward the lowest index (or the
//! lexicographically smallest pair), so downstream values are deterministic.

use crate::error::{Error, Result};
use crate::matrix::{euclidean, Matrix};

/// Full symmetric matrix of Euclidean distances with a zero diagonal.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    /// Ascending-sorted vector of the n(n-1)/2 off-diagonal distances.
    pub fn sorted_offdiagonal(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                out.push(self.get(i, j));
            }
        }
        out.sort_unstable_by(f64::total_cmp);
        out
    }
}

/// Exact Euclidean distances over the rows of a (scaled) feature matrix.
pub fn pairwise_distances(features: &Matrix) -> DistanceMatrix {
    let n = features.n_rows();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let dist = euclidean(features.row(i), features.row(j));
            d[i * n + j] = dist;
            d[j * n + i] = dist;
        }
    }
    DistanceMatrix { n, d }
}

/// The `k` nearest neighbors of `i`, excluding `i`, ties broken by ascending
/// index.
pub fn knn(dm: &DistanceMatrix, i: usize, k: usize) -> Result<Vec<usize>> {
    let n = dm.n();
    if k == 0 || k >= n {
        return Err(Error::Parameter(format!(
            "k must satisfy 1 <= k <= n-1 (k={k}, n={n})"
        )));
    }
    let mut order: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    order.sort_by(|&a, &b| {
        dm.get(i, a)
            .total_cmp(&dm.get(i, b))
            .then_with(|| a.cmp(&b))
    });
    order.truncate(k);
    Ok(order)
}

/// Minimum spanning tree as an adjacency list plus its edge list.
#[derive(Debug, Clone)]
pub struct MstAdjacency {
    /// Edges as `(i, j, weight)` with `i < j`.
    pub edges: Vec<(usize, usize, f64)>,
    neighbors: Vec<Vec<usize>>,
}

impl MstAdjacency {
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.2).sum()
    }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }
}

/// Kruskal's algorithm with edges ordered by `(weight, i, j)`, so among
/// equal-weight candidates the lexicographically smallest pair wins and the
/// tree is deterministic.
pub fn build_mst(dm: &DistanceMatrix) -> Result<MstAdjacency> {
    let n = dm.n();
    if n < 2 {
        return Err(Error::Parameter("MST needs at least 2 instances".into()));
    }
    let mut all_edges: Vec<(usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            all_edges.push((i, j));
        }
    }
    all_edges.sort_by(|&(ai, aj), &(bi, bj)| {
        dm.get(ai, aj)
            .total_cmp(&dm.get(bi, bj))
            .then_with(|| ai.cmp(&bi))
            .then_with(|| aj.cmp(&bj))
    });
    let mut uf = UnionFind::new(n);
    let mut edges = Vec::with_capacity(n - 1);
    let mut neighbors = vec![Vec::new(); n];
    for (i, j) in all_edges {
        if uf.union(i, j) {
            neighbors[i].push(j);
            neighbors[j].push(i);
            edges.push((i, j, dm.get(i, j)));
            if edges.len() == n - 1 {
                break;
            }
        }
    }
    for list in &mut neighbors {
        list.sort_unstable();
    }
    Ok(MstAdjacency { edges, neighbors })
}

/// Nearest enemy and local set of every instance.
///
/// The local set of `i` contains every other instance strictly closer to `i`
/// than `i`'s nearest enemy; its members therefore all share `i`'s class.
#[derive(Debug, Clone)]
pub struct LocalSetInfo {
    /// Index of the closest instance with a different label (lowest index on
    /// ties).
    pub nearest_enemy: Vec<usize>,
    pub enemy_distance: Vec<f64>,
    /// Ascending member lists.
    pub members: Vec<Vec<usize>>,
    /// For each instance, how many local sets of other instances contain it.
    pub containing_count: Vec<usize>,
}

pub fn local_sets(dm: &DistanceMatrix, labels: &[usize]) -> Result<LocalSetInfo> {
    let n = dm.n();
    if labels.len() != n {
        return Err(Error::Parameter(format!(
            "{} labels for {n} instances",
            labels.len()
        )));
    }
    let classes = labels.iter().copied().max().map_or(0, |c| c + 1);
    let distinct = {
        let mut seen = vec![false; classes];
        labels.iter().for_each(|&c| seen[c] = true);
        seen.iter().filter(|&&s| s).count()
    };
    if distinct < 2 {
        return Err(Error::Validation(
            "local sets need at least 2 classes".into(),
        ));
    }
    let mut nearest_enemy = vec![0usize; n];
    let mut enemy_distance = vec![0.0; n];
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut containing_count = vec![0usize; n];
    for i in 0..n {
        let mut best: Option<(f64, usize)> = None;
        for j in 0..n {
            if labels[j] == labels[i] {
                continue;
            }
            let d = dm.get(i, j);
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, j));
            }
        }
        let (d_ne, ne) = best.expect("at least two classes present");
        nearest_enemy[i] = ne;
        enemy_distance[i] = d_ne;
        for j in 0..n {
            if j != i && dm.get(i, j) < d_ne {
                members[i].push(j);
                containing_count[j] += 1;
            }
        }
    }
    Ok(LocalSetInfo { nearest_enemy, enemy_distance, members, containing_count })
}

/// Undirected graph connecting instance pairs within a distance threshold.
#[derive(Debug, Clone)]
pub struct EpsilonGraph {
    pub epsilon: f64,
    pub same_class_only: bool,
    pub degrees: Vec<usize>,
    /// Edges as `(i, j)` with `i < j`.
    pub edges: Vec<(usize, usize)>,
}

/// Threshold below which a fraction `q` of the sorted distances falls, by
/// linear interpolation of the empirical distribution (0-based position
/// `q * len - 1`). Fractions smaller than `1 / len` extrapolate below the
/// minimum, so a small enough quantile leaves the graph empty.
fn distance_quantile(sorted: &[f64], q: f64) -> f64 {
    let m = sorted.len();
    let h = q * m as f64 - 1.0;
    if m == 1 {
        return if q >= 1.0 { sorted[0] } else { f64::NEG_INFINITY };
    }
    if h <= 0.0 {
        return sorted[0] + h * (sorted[1] - sorted[0]);
    }
    let lo = (h.floor() as usize).min(m - 1);
    let hi = (lo + 1).min(m - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Builds the graph with `epsilon` set to the given quantile of *all*
/// off-diagonal distances; edges satisfy `d(i, j) <= epsilon`. With
/// `same_class_only`, edges additionally require matching labels. The
/// threshold is inclusive so quantile boundary pairs stay connected on
/// tie-heavy grids.
pub fn epsilon_graph(
    dm: &DistanceMatrix,
    quantile: f64,
    same_class_only: bool,
    labels: Option<&[usize]>,
) -> Result<EpsilonGraph> {
    if !(quantile > 0.0 && quantile <= 1.0) {
        return Err(Error::Parameter(format!(
            "quantile must lie in (0, 1] (got {quantile})"
        )));
    }
    if same_class_only && labels.is_none() {
        return Err(Error::Parameter(
            "same-class graph requested without labels".into(),
        ));
    }
    let n = dm.n();
    let sorted = dm.sorted_offdiagonal();
    let epsilon = distance_quantile(&sorted, quantile);
    let mut degrees = vec![0usize; n];
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if dm.get(i, j) > epsilon {
                continue;
            }
            if same_class_only {
                let labels = labels.unwrap();
                if labels[i] != labels[j] {
                    continue;
                }
            }
            degrees[i] += 1;
            degrees[j] += 1;
            edges.push((i, j));
        }
    }
    Ok(EpsilonGraph { epsilon, same_class_only, degrees, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::scale;
    use crate::fixtures;
    use crate::rng::SplitMix64;

    fn cluster_distances() -> (DistanceMatrix, Vec<usize>) {
        let ds = fixtures::six_point_two_cluster();
        let view = scale(&ds);
        (pairwise_distances(&view.features), ds.labels().unwrap().to_vec())
    }

    #[test]
    fn scaled_distance_between_adjacent_points() {
        let (dm, _) = cluster_distances();
        assert!((dm.get(0, 1) - 1.0 / 11.0).abs() < 1e-15);
        assert_eq!(dm.get(0, 0), 0.0);
        assert_eq!(dm.get(0, 3), dm.get(3, 0));
    }

    #[test]
    fn duplicate_rows_have_zero_distance() {
        let m = Matrix::from_rows(vec![vec![1.0, 2.0], vec![1.0, 2.0]]).unwrap();
        let dm = pairwise_distances(&m);
        assert_eq!(dm.get(0, 1), 0.0);
    }

    #[test]
    fn one_feature_distance_is_absolute_difference() {
        let m = Matrix::from_rows(vec![vec![0.0], vec![2.5], vec![-1.0]]).unwrap();
        let dm = pairwise_distances(&m);
        assert_eq!(dm.get(0, 1), 2.5);
        assert_eq!(dm.get(1, 2), 3.5);
    }

    #[test]
    fn knn_of_corner_point() {
        let (dm, _) = cluster_distances();
        assert_eq!(knn(&dm, 0, 2).unwrap(), vec![1, 2]);
        assert_eq!(knn(&dm, 0, 5).unwrap(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn knn_breaks_ties_by_index() {
        // three points equidistant from the origin point
        let m = Matrix::from_rows(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![-1.0, 0.0],
        ])
        .unwrap();
        let dm = pairwise_distances(&m);
        assert_eq!(knn(&dm, 0, 1).unwrap(), vec![1]);
    }

    #[test]
    fn knn_rejects_k_out_of_range() {
        let (dm, _) = cluster_distances();
        assert!(knn(&dm, 0, 6).is_err());
        assert!(knn(&dm, 0, 0).is_err());
    }

    #[test]
    fn mst_of_cluster_fixture_uses_the_low_index_bridge() {
        let (dm, _) = cluster_distances();
        let mst = build_mst(&dm).unwrap();
        let mut pairs: Vec<(usize, usize)> = mst.edges.iter().map(|&(i, j, _)| (i, j)).collect();
        pairs.sort_unstable();
        // bridge between the clusters resolves to pair (1,3), not (2,3)
        assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 3), (3, 4), (3, 5)]);
    }

    #[test]
    fn collinear_points_form_a_chain() {
        let m = Matrix::from_rows(vec![vec![0.0], vec![1.0], vec![2.0]]).unwrap();
        let mst = build_mst(&pairwise_distances(&m)).unwrap();
        let mut pairs: Vec<(usize, usize)> = mst.edges.iter().map(|&(i, j, _)| (i, j)).collect();
        pairs.sort_unstable();
        assert_eq!(pairs, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn mst_weight_is_invariant_under_permutation() {
        let mut rng = SplitMix64::new(9);
        for _ in 0..10 {
            let rows: Vec<Vec<f64>> =
                (0..20).map(|_| vec![rng.next_f64(), rng.next_f64()]).collect();
            let m = Matrix::from_rows(rows.clone()).unwrap();
            let w0 = build_mst(&pairwise_distances(&m)).unwrap().total_weight();
            let mut perm: Vec<usize> = (0..20).collect();
            rng.shuffle(&mut perm);
            let permuted: Vec<Vec<f64>> = perm.iter().map(|&i| rows[i].clone()).collect();
            let w1 = build_mst(&pairwise_distances(&Matrix::from_rows(permuted).unwrap()))
                .unwrap()
                .total_weight();
            assert!((w0 - w1).abs() < 1e-12);
        }
    }

    #[test]
    fn local_sets_of_cluster_fixture() {
        let (dm, labels) = cluster_distances();
        let ls = local_sets(&dm, &labels).unwrap();
        assert_eq!(ls.nearest_enemy[0], 3);
        assert!((ls.enemy_distance[0] - 200f64.sqrt() / 11.0).abs() < 1e-12);
        assert_eq!(ls.members[0], vec![1, 2]);
        // A sits inside the local sets of B and C only
        assert_eq!(ls.containing_count[0], 2);
    }

    #[test]
    fn conflicting_duplicates_have_empty_local_sets() {
        let m = Matrix::from_rows(vec![vec![0.0], vec![0.0], vec![5.0], vec![5.0]]).unwrap();
        let dm = pairwise_distances(&m);
        let ls = local_sets(&dm, &[0, 1, 0, 1]).unwrap();
        assert_eq!(ls.enemy_distance[0], 0.0);
        assert!(ls.members[0].is_empty());
        assert!(ls.members[1].is_empty());
    }

    #[test]
    fn single_class_local_sets_error() {
        let m = Matrix::from_rows(vec![vec![0.0], vec![1.0]]).unwrap();
        let dm = pairwise_distances(&m);
        assert!(local_sets(&dm, &[0, 0]).is_err());
    }

    #[test]
    fn local_set_members_never_include_an_enemy() {
        let mut rng = SplitMix64::new(21);
        for _ in 0..20 {
            let n = 4 + rng.next_below(30) as usize;
            let rows: Vec<Vec<f64>> =
                (0..n).map(|_| vec![rng.next_f64(), rng.next_f64()]).collect();
            let labels: Vec<usize> = (0..n).map(|i| i % 2).collect();
            let dm = pairwise_distances(&Matrix::from_rows(rows).unwrap());
            let ls = local_sets(&dm, &labels).unwrap();
            for i in 0..n {
                for &j in &ls.members[i] {
                    assert_eq!(labels[j], labels[i]);
                }
            }
        }
    }

    #[test]
    fn epsilon_graph_of_cluster_fixture() {
        let (dm, labels) = cluster_distances();
        let g = epsilon_graph(&dm, 0.15, true, Some(&labels)).unwrap();
        assert_eq!(g.degrees[0], 2);
        assert!(g.edges.contains(&(0, 1)));
        assert!(g.edges.contains(&(0, 2)));
        // the threshold sits among the unit distances, below the
        // within-cluster diagonals and far below the cross-cluster gaps
        let unit_pairs = [(0, 1), (0, 2), (3, 4), (3, 5)];
        assert!(g.edges.iter().all(|e| unit_pairs.contains(e)), "{:?}", g.edges);
    }

    #[test]
    fn quantile_one_gives_complete_graph() {
        let (dm, _) = cluster_distances();
        let g = epsilon_graph(&dm, 1.0, false, None).unwrap();
        assert_eq!(g.edges.len(), 15);
        assert!(g.degrees.iter().all(|&d| d == 5));
    }

    #[test]
    fn tiny_quantile_gives_empty_graph() {
        // distinct distances: quantile below the minimum leaves no edges
        let m = Matrix::from_rows(vec![vec![0.0], vec![1.0], vec![3.0], vec![7.0]]).unwrap();
        let dm = pairwise_distances(&m);
        let g = epsilon_graph(&dm, 0.01, false, None).unwrap();
        assert!(g.epsilon < 1.0);
        assert!(g.edges.is_empty());
        assert!(g.degrees.iter().all(|&d| d == 0));
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let mut rng = SplitMix64::new(4);
        for _ in 0..10 {
            let rows: Vec<Vec<f64>> =
                (0..15).map(|_| vec![rng.next_f64(), rng.next_f64()]).collect();
            let dm = pairwise_distances(&Matrix::from_rows(rows).unwrap());
            let g = epsilon_graph(&dm, 0.3, false, None).unwrap();
            let degree_sum: usize = g.degrees.iter().sum();
            assert_eq!(degree_sum, 2 * g.edges.len());
        }
    }

    #[test]
    fn same_class_without_labels_is_rejected() {
        let (dm, _) = cluster_distances();
        assert!(epsilon_graph(&dm, 0.15, true, None).is_err());
    }

    #[test]
    fn knn_matches_brute_force_on_random_data() {
        let mut rng = SplitMix64::new(77);
        for _ in 0..20 {
            let n = 5 + rng.next_below(45) as usize;
            let rows: Vec<Vec<f64>> =
                (0..n).map(|_| vec![rng.next_f64(), rng.next_f64(), rng.next_f64()]).collect();
            let dm = pairwise_distances(&Matrix::from_rows(rows).unwrap());
            let k = 1 + rng.next_below((n - 1) as u64) as usize;
            for i in 0..n {
                let mut expected: Vec<usize> = (0..n).filter(|&j| j != i).collect();
                expected.sort_by(|&a, &b| {
                    dm.get(i, a).partial_cmp(&dm.get(i, b)).unwrap().then(a.cmp(&b))
                });
                expected.truncate(k);
                assert_eq!(knn(&dm, i, k).unwrap(), expected);
            }
        }
    }
}
