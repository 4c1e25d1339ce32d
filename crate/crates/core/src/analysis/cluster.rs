use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::dtw::DtwMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Linkage {
    #[default]
    Average,
    Complete,
    Single,
}

impl Linkage {
    /// Lance–Williams update of `d(k, i ∪ j)`.
    #[inline]
    fn update(self, dki: f64, dkj: f64, ni: usize, nj: usize) -> f64 {
        match self {
            Linkage::Single => dki.min(dkj),
            Linkage::Complete => dki.max(dkj),
            Linkage::Average => (ni as f64 * dki + nj as f64 * dkj) / (ni + nj) as f64,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Linkage::Average => "average",
            Linkage::Complete => "complete",
            Linkage::Single => "single",
        }
    }
}

impl fmt::Display for Linkage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Linkage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "average" => Ok(Linkage::Average),
            "complete" => Ok(Linkage::Complete),
            "single" => Ok(Linkage::Single),
            other => Err(Error::InvalidArgument(format!("unknown linkage {other:?}"))),
        }
    }
}

/// One dendrogram step. Ids below `n` are series; id `n + s` is the cluster
/// formed at step `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringResult {
    /// Cluster id in `[0, k)` per series, numbered by first appearance in
    /// dendrogram leaf order.
    pub assignments: Vec<usize>,
    /// Display order: by cluster id, then dendrogram leaf order.
    pub permutation: Vec<usize>,
    pub merges: Vec<Merge>,
    pub k: usize,
}

/// Full merge history of `d` under `linkage`. Ties go to the pair with the
/// smallest (row, column) slot indices; a slot is always named after its
/// smallest member.
pub fn dendrogram(d: &DtwMatrix, linkage: Linkage) -> Vec<Merge> {
    let n = d.n();
    let mut dist = d.as_slice().to_vec();
    let mut active = vec![true; n];
    let mut size = vec![1usize; n];
    let mut label: Vec<usize> = (0..n).collect();
    // nearest active partner to the right of each row
    let mut nn = vec![(f64::INFINITY, usize::MAX); n];

    let row_min = |dist: &[f64], active: &[bool], i: usize| {
        let mut best = (f64::INFINITY, usize::MAX);
        for j in i + 1..n {
            if active[j] && dist[i * n + j] < best.0 {
                best = (dist[i * n + j], j);
            }
        }
        best
    };
    for i in 0..n {
        nn[i] = row_min(&dist, &active, i);
    }

    let mut merges = Vec::with_capacity(n.saturating_sub(1));
    let mut last_height = f64::NEG_INFINITY;
    for step in 0..n.saturating_sub(1) {
        let mut i = usize::MAX;
        for r in 0..n {
            if active[r] && nn[r].1 != usize::MAX && (i == usize::MAX || nn[r].0 < nn[i].0) {
                i = r;
            }
        }
        let (height, j) = nn[i];

        for k in 0..n {
            if active[k] && k != i && k != j {
                let v = linkage.update(dist[k * n + i], dist[k * n + j], size[i], size[j]);
                dist[k * n + i] = v;
                dist[i * n + k] = v;
            }
        }
        active[j] = false;
        let (a, b) = (label[i].min(label[j]), label[i].max(label[j]));
        size[i] += size[j];
        label[i] = n + step;
        // averaging can land an ulp below the previous height
        let height = height.max(last_height);
        last_height = height;
        merges.push(Merge {
            left: a,
            right: b,
            height,
            size: size[i],
        });

        for r in 0..n {
            if !active[r] {
                continue;
            }
            if r == i || nn[r].1 == i || nn[r].1 == j {
                nn[r] = row_min(&dist, &active, r);
            } else if r < i {
                let v = dist[r * n + i];
                if v < nn[r].0 || (v == nn[r].0 && i < nn[r].1) {
                    nn[r] = (v, i);
                }
            }
        }
    }
    merges
}

fn leaf_order(n: usize, merges: &[Merge]) -> Vec<usize> {
    if n == 0 {
        return Vec::new();
    }
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![2 * n - 2];
    while let Some(id) = stack.pop() {
        if id < n {
            order.push(id);
        } else {
            let m = &merges[id - n];
            stack.push(m.right);
            stack.push(m.left);
        }
    }
    order
}

/// Agglomerative clustering of the precomputed distances, cut at `k` clusters.
pub fn agglomerative_cluster(
    d: &DtwMatrix,
    k: usize,
    linkage: Linkage,
) -> Result<ClusteringResult> {
    let n = d.n();
    if k < 1 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    let merges = dendrogram(d, linkage);
    let order = leaf_order(n, &merges);

    // union the first n - k merges; cluster of a series = its top surviving id
    let mut parent: Vec<usize> = (0..2 * n - 1).collect();
    for (s, m) in merges.iter().take(n - k).enumerate() {
        parent[m.left] = n + s;
        parent[m.right] = n + s;
    }
    let top = |mut x: usize| {
        while parent[x] != x {
            x = parent[x];
        }
        x
    };
    let mut id_of = std::collections::HashMap::new();
    let mut assignments = vec![0; n];
    for &leaf in &order {
        let next = id_of.len();
        assignments[leaf] = *id_of.entry(top(leaf)).or_insert(next);
    }
    let mut position = vec![0; n];
    for (p, &leaf) in order.iter().enumerate() {
        position[leaf] = p;
    }
    let mut permutation: Vec<usize> = (0..n).collect();
    permutation.sort_by_key(|&i| (assignments[i], position[i]));

    Ok(ClusteringResult {
        assignments,
        permutation,
        merges,
        k,
    })
}

/// Distance matrix with rows and columns reordered for display.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedMatrix {
    pub n: usize,
    pub values: Vec<f64>,
    /// `values[a][b] = original[permutation[a]][permutation[b]]`
    pub permutation: Vec<usize>,
}

impl SortedMatrix {
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.values[a * self.n + b]
    }

    /// Undoes the permutation.
    pub fn unsorted(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for a in 0..n {
            for b in 0..n {
                out[self.permutation[a] * n + self.permutation[b]] = self.values[a * n + b];
            }
        }
        out
    }
}

/// Applies the display permutation of `c` to both axes of `d`.
pub fn sorted_matrix(d: &DtwMatrix, c: &ClusteringResult) -> Result<SortedMatrix> {
    permute_matrix(d, &c.permutation)
}

pub fn permute_matrix(d: &DtwMatrix, permutation: &[usize]) -> Result<SortedMatrix> {
    let n = d.n();
    if permutation.len() != n {
        return Err(Error::SizeMismatch(format!(
            "permutation of {} for a {n}x{n} matrix",
            permutation.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in permutation {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::SizeMismatch("permutation is not a bijection".into()));
        }
    }
    let mut values = Vec::with_capacity(n * n);
    for &pa in permutation {
        for &pb in permutation {
            values.push(d.get(pa, pb));
        }
    }
    Ok(SortedMatrix {
        n,
        values,
        permutation: permutation.to_vec(),
    })
}

/// Mean within- and between-cluster distances over unordered pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusterContrast {
    pub intra_mean: f64,
    pub inter_mean: f64,
    pub intra_pairs: usize,
    pub inter_pairs: usize,
}

impl ClusterContrast {
    /// `inter / intra`; infinite when every within-cluster distance is zero.
    pub fn ratio(&self) -> f64 {
        self.inter_mean / self.intra_mean
    }
}

pub fn cluster_contrast(d: &DtwMatrix, assignments: &[usize]) -> Result<ClusterContrast> {
    let n = d.n();
    if assignments.len() != n {
        return Err(Error::SizeMismatch(format!(
            "{} assignments for {n} series",
            assignments.len()
        )));
    }
    let (mut intra, mut inter) = (0.0, 0.0);
    let (mut ni, mut ne) = (0usize, 0usize);
    for i in 0..n {
        for j in i + 1..n {
            if assignments[i] == assignments[j] {
                intra += d.get(i, j);
                ni += 1;
            } else {
                inter += d.get(i, j);
                ne += 1;
            }
        }
    }
    let mean = |s: f64, c: usize| if c == 0 { f64::NAN } else { s / c as f64 };
    Ok(ClusterContrast {
        intra_mean: mean(intra, ni),
        inter_mean: mean(inter, ne),
        intra_pairs: ni,
        inter_pairs: ne,
    })
}
