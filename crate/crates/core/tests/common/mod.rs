//! Brute-force reference implementations used to cross-check the measure
//! pipeline. Everything here recomputes from raw slices with its own
//! distance code, its own Prim spanning tree, and its own quantile; none of
//! it calls the library's geometry or measure functions.

use hardness_core::dataset::{Dataset, Target};
use hardness_core::matrix::Matrix;
use hardness_core::rng::SplitMix64;

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Neighbor indices of `i` sorted by (distance, index), nearest first.
fn sorted_neighbors(features: &Matrix, i: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..features.n_rows()).filter(|&j| j != i).collect();
    order.sort_by(|&a, &b| {
        dist(features.row(i), features.row(a))
            .total_cmp(&dist(features.row(i), features.row(b)))
            .then(a.cmp(&b))
    });
    order
}

pub fn kdn_oracle(features: &Matrix, labels: &[usize], k: usize) -> Vec<f64> {
    let n = features.n_rows();
    let k_eff = k.min(n - 1).max(1);
    (0..n)
        .map(|i| {
            let neighbors = sorted_neighbors(features, i);
            let bad = neighbors[..k_eff]
                .iter()
                .filter(|&&j| labels[j] != labels[i])
                .count();
            bad as f64 / k_eff as f64
        })
        .collect()
}

/// Prim's algorithm, growing from vertex 0. With distinct pairwise
/// distances the minimum spanning tree is unique, so the adjacency agrees
/// with any correct construction.
pub fn prim_mst_adjacency(features: &Matrix) -> Vec<Vec<usize>> {
    let n = features.n_rows();
    let mut in_tree = vec![false; n];
    let mut best_dist = vec![f64::INFINITY; n];
    let mut best_from = vec![0usize; n];
    let mut adjacency = vec![Vec::new(); n];
    in_tree[0] = true;
    for j in 1..n {
        best_dist[j] = dist(features.row(0), features.row(j));
    }
    for _ in 1..n {
        let mut pick = usize::MAX;
        for j in 0..n {
            if !in_tree[j] && (pick == usize::MAX || best_dist[j] < best_dist[pick]) {
                pick = j;
            }
        }
        in_tree[pick] = true;
        adjacency[pick].push(best_from[pick]);
        adjacency[best_from[pick]].push(pick);
        for j in 0..n {
            if !in_tree[j] {
                let d = dist(features.row(pick), features.row(j));
                if d < best_dist[j] {
                    best_dist[j] = d;
                    best_from[j] = pick;
                }
            }
        }
    }
    adjacency
}

pub fn n1_oracle(features: &Matrix, labels: &[usize]) -> Vec<f64> {
    let adjacency = prim_mst_adjacency(features);
    (0..features.n_rows())
        .map(|i| {
            let bad = adjacency[i].iter().filter(|&&j| labels[j] != labels[i]).count();
            bad as f64 / adjacency[i].len() as f64
        })
        .collect()
}

fn nearest_enemy_distance(features: &Matrix, labels: &[usize], i: usize) -> f64 {
    (0..features.n_rows())
        .filter(|&j| labels[j] != labels[i])
        .map(|j| dist(features.row(i), features.row(j)))
        .fold(f64::INFINITY, f64::min)
}

pub fn n2_oracle(features: &Matrix, labels: &[usize]) -> Vec<f64> {
    let n = features.n_rows();
    (0..n)
        .map(|i| {
            let same: Vec<usize> =
                (0..n).filter(|&j| j != i && labels[j] == labels[i]).collect();
            if same.is_empty() {
                return 1.0;
            }
            let a = same
                .iter()
                .map(|&j| dist(features.row(i), features.row(j)))
                .fold(f64::INFINITY, f64::min);
            let b = nearest_enemy_distance(features, labels, i);
            if a == 0.0 && b == 0.0 {
                0.5
            } else if b == 0.0 {
                1.0
            } else {
                a / (a + b)
            }
        })
        .collect()
}

fn local_set(features: &Matrix, labels: &[usize], i: usize) -> Vec<usize> {
    let b = nearest_enemy_distance(features, labels, i);
    (0..features.n_rows())
        .filter(|&j| j != i && dist(features.row(i), features.row(j)) < b)
        .collect()
}

pub fn lsc_oracle(features: &Matrix, labels: &[usize]) -> Vec<f64> {
    let n = features.n_rows();
    (0..n)
        .map(|i| {
            let class_size = (0..n).filter(|&j| labels[j] == labels[i]).count();
            if class_size < 2 {
                return 1.0;
            }
            1.0 - local_set(features, labels, i).len() as f64 / (class_size - 1) as f64
        })
        .collect()
}

pub fn lsr_oracle(features: &Matrix, labels: &[usize]) -> Vec<f64> {
    let n = features.n_rows();
    (0..n)
        .map(|i| {
            let same: Vec<usize> =
                (0..n).filter(|&j| j != i && labels[j] == labels[i]).collect();
            if same.is_empty() {
                return 1.0;
            }
            let d_ne = nearest_enemy_distance(features, labels, i);
            if d_ne == 0.0 {
                return 1.0;
            }
            let farthest = same
                .iter()
                .map(|&j| dist(features.row(i), features.row(j)))
                .fold(f64::NEG_INFINITY, f64::max);
            if farthest == 0.0 {
                return 0.0;
            }
            1.0 - (d_ne / farthest).min(1.0)
        })
        .collect()
}

pub fn usefulness_oracle(features: &Matrix, labels: &[usize]) -> Vec<f64> {
    let n = features.n_rows();
    (0..n)
        .map(|i| {
            let containing = (0..n)
                .filter(|&j| j != i && local_set(features, labels, j).contains(&i))
                .count();
            1.0 - containing as f64 / (n - 1) as f64
        })
        .collect()
}

/// Threshold at the empirical-CDF position `q * len - 1`, interpolated, and
/// extrapolated below the minimum for tiny fractions.
pub fn epsilon_oracle(features: &Matrix, q: f64) -> f64 {
    let n = features.n_rows();
    let mut sorted = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            sorted.push(dist(features.row(i), features.row(j)));
        }
    }
    sorted.sort_by(f64::total_cmp);
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

pub fn de_oracle(features: &Matrix, labels: Option<&[usize]>, q: f64) -> Vec<f64> {
    let n = features.n_rows();
    let epsilon = epsilon_oracle(features, q);
    (0..n)
        .map(|i| {
            let degree = (0..n)
                .filter(|&j| {
                    j != i
                        && dist(features.row(i), features.row(j)) <= epsilon
                        && labels.is_none_or(|l| l[i] == l[j])
                })
                .count();
            1.0 - degree as f64 / (n - 1) as f64
        })
        .collect()
}

pub fn s1_oracle(features: &Matrix, y: &[f64]) -> Vec<f64> {
    let adjacency = prim_mst_adjacency(features);
    (0..features.n_rows())
        .map(|i| {
            adjacency[i].iter().map(|&j| (y[i] - y[j]).abs()).sum::<f64>()
                / adjacency[i].len() as f64
        })
        .collect()
}

pub fn s2_oracle(features: &Matrix, y: &[f64]) -> Vec<f64> {
    let n = features.n_rows();
    let diameter = (features.n_cols() as f64).sqrt();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| y[a].total_cmp(&y[b]).then(a.cmp(&b)));
    let mut out = vec![0.0; n];
    for (pos, &i) in order.iter().enumerate() {
        let mut total = 0.0;
        let mut count = 0.0;
        if pos > 0 {
            total += dist(features.row(i), features.row(order[pos - 1]));
            count += 1.0;
        }
        if pos + 1 < n {
            total += dist(features.row(i), features.row(order[pos + 1]));
            count += 1.0;
        }
        out[i] = total / (count * diameter);
    }
    out
}

pub fn s3_oracle(features: &Matrix, y: &[f64], k: usize) -> Vec<f64> {
    let n = features.n_rows();
    let k_eff = k.min(n - 1).max(1);
    (0..n)
        .map(|i| {
            let neighbors = sorted_neighbors(features, i);
            let prediction =
                neighbors[..k_eff].iter().map(|&j| y[j]).sum::<f64>() / k_eff as f64;
            (y[i] - prediction) * (y[i] - prediction)
        })
        .collect()
}

pub fn hb_oracle(y: &[f64], bins: usize) -> Vec<f64> {
    let n = y.len();
    let bin_of = |v: f64| ((v * bins as f64).floor() as usize).min(bins - 1);
    y.iter()
        .map(|&v| {
            let share = y.iter().filter(|&&w| bin_of(w) == bin_of(v)).count();
            1.0 - share as f64 / n as f64
        })
        .collect()
}

/// Minimum spanning-tree weight by exhaustive enumeration of all edge
/// subsets of size n-1 that connect the graph. Only feasible for n <= 7.
pub fn mst_weight_by_enumeration(features: &Matrix) -> f64 {
    let n = features.n_rows();
    assert!((2..=7).contains(&n), "enumeration oracle needs 2 <= n <= 7");
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j, dist(features.row(i), features.row(j))));
        }
    }
    let mut best = f64::INFINITY;
    let mut chosen = Vec::with_capacity(n - 1);
    enumerate_subsets(&edges, 0, n, &mut chosen, &mut best);
    best
}

fn connects_everything(chosen: &[(usize, usize, f64)], n: usize) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut merged = 0;
    for &(i, j, _) in chosen {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri == rj {
            return false; // cycle: n-1 edges with a cycle cannot span
        }
        parent[ri] = rj;
        merged += 1;
    }
    merged == n - 1
}

fn enumerate_subsets(
    edges: &[(usize, usize, f64)],
    start: usize,
    n: usize,
    chosen: &mut Vec<(usize, usize, f64)>,
    best: &mut f64,
) {
    if chosen.len() == n - 1 {
        if connects_everything(chosen, n) {
            let weight: f64 = chosen.iter().map(|e| e.2).sum();
            if weight < *best {
                *best = weight;
            }
        }
        return;
    }
    if edges.len() - start < n - 1 - chosen.len() {
        return;
    }
    for e in start..edges.len() {
        chosen.push(edges[e]);
        enumerate_subsets(edges, e + 1, n, chosen, best);
        chosen.pop();
    }
}

// ---------------------------------------------------------------------------
// random dataset construction

pub fn random_features(rng: &mut SplitMix64, n: usize, m: usize) -> Matrix {
    Matrix::from_rows((0..n).map(|_| (0..m).map(|_| rng.next_f64()).collect()).collect())
        .expect("rectangular by construction")
}

pub fn random_classification_dataset(seed: u64, n: usize, m: usize, n_classes: usize) -> Dataset {
    let mut rng = SplitMix64::new(seed);
    let features = random_features(&mut rng, n, m);
    let mut ids: Vec<usize> = (0..n).map(|i| i % n_classes).collect();
    rng.shuffle(&mut ids);
    let names = (0..n_classes).map(|c| format!("c{c}")).collect();
    Dataset::from_parts(
        format!("fuzz_class_{seed}"),
        (0..m).map(|j| format!("f{j}")).collect(),
        features,
        Target::Labels { names, ids },
        "class",
    )
    .expect("valid by construction")
}

pub fn random_regression_dataset(seed: u64, n: usize, m: usize) -> Dataset {
    let mut rng = SplitMix64::new(seed);
    let features = random_features(&mut rng, n, m);
    let responses: Vec<f64> = (0..n)
        .map(|i| features.get(i, 0) + 0.3 * rng.next_gauss())
        .collect();
    Dataset::from_parts(
        format!("fuzz_reg_{seed}"),
        (0..m).map(|j| format!("f{j}")).collect(),
        features,
        Target::Responses(responses),
        "y",
    )
    .expect("valid by construction")
}
