//! Activation bank, random DAG construction and signal propagation.
//!
//! Nodes are numbered roots first (`0..root_count`), then non-roots in a
//! topological order: every edge goes from a lower index to a higher one.
//! A non-root node `j` with incoming edges `e_1..e_d` (sources `u_k`,
//! activations `σ_k`) takes, at every timestep `l`,
//!
//! ```text
//! x_j[l] = Σ_k w_k · σ_k(x_{u_k})[l] + b_j
//! ```
//!
//! where `w` and `b_j` are that node's own standard-normal weights.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SampleStream;

/// Number of activation kinds.
pub const ACTIVATION_BANK_SIZE: usize = 6;

/// Variance floor used when standardising parent signals.
pub const VARIANCE_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Activation {
    /// `a·x + b`
    Linear {
        a: f64,
        b: f64,
    },
    Relu,
    Sigmoid,
    Sine,
    /// Euclidean remainder, always in `[0, c)`.
    Modulo {
        c: f64,
    },
    LeakyRelu {
        slope: f64,
    },
}

impl Activation {
    pub const IDENTITY: Activation = Activation::Linear { a: 1.0, b: 0.0 };

    #[inline]
    pub fn apply_scalar(&self, x: f64) -> f64 {
        match *self {
            Activation::Linear { a, b } => a * x + b,
            Activation::Relu => x.max(0.0),
            Activation::Sigmoid => 1.0 / (1.0 + (-x).exp()),
            Activation::Sine => x.sin(),
            Activation::Modulo { c } => {
                let r = x.rem_euclid(c);
                // tiny negative x can round up to exactly c
                if r >= c {
                    0.0
                } else {
                    r
                }
            }
            Activation::LeakyRelu { slope } => {
                if x >= 0.0 {
                    x
                } else {
                    slope * x
                }
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Activation::Linear { .. } => "linear",
            Activation::Relu => "relu",
            Activation::Sigmoid => "sigmoid",
            Activation::Sine => "sine",
            Activation::Modulo { .. } => "modulo",
            Activation::LeakyRelu { .. } => "leaky_relu",
        }
    }

    /// Draws the activation of bank kind `kind` (0..6) with fresh parameters.
    pub fn sample_kind(s: &mut SampleStream, kind: usize) -> Activation {
        match kind {
            0 => Activation::Linear {
                a: s.uniform_in(0.5, 2.0),
                b: s.uniform_in(-1.0, 1.0),
            },
            1 => Activation::Relu,
            2 => Activation::Sigmoid,
            3 => Activation::Sine,
            4 => Activation::Modulo {
                c: s.uniform_in(1.0, 5.0),
            },
            5 => Activation::LeakyRelu {
                slope: s.uniform_in(0.01, 0.3),
            },
            _ => panic!("activation kind {kind} out of range"),
        }
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Activation::Linear { a, b } => write!(f, "linear(a={a}, b={b})"),
            Activation::Modulo { c } => write!(f, "modulo(c={c})"),
            Activation::LeakyRelu { slope } => write!(f, "leaky_relu(slope={slope})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Applies `act` to every element of `x`.
pub fn apply_activation(act: &Activation, x: &[f64]) -> Vec<f64> {
    x.iter().map(|&v| act.apply_scalar(v)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
}

/// Affine aggregation of one non-root node; `weights[k]` multiplies the
/// node's `k`-th incoming edge (in edge-list order).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregation {
    pub weights: Vec<f64>,
    pub bias: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CausalDag {
    node_count: usize,
    root_count: usize,
    edges: Vec<Edge>,
    phi: Vec<Activation>,
    aggregation: Vec<Aggregation>,
    incoming: Vec<Vec<usize>>,
    requested_edges: usize,
}

impl CausalDag {
    /// Assembles a graph from explicit parts, checking every structural
    /// invariant. `aggregation[j - root_count]` belongs to non-root node `j`.
    pub fn new(
        node_count: usize,
        root_count: usize,
        edges: Vec<Edge>,
        phi: Vec<Activation>,
        aggregation: Vec<Aggregation>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if root_count == 0 || root_count >= node_count {
            return bad(format!(
                "need 1 <= roots < nodes, got {root_count} roots of {node_count} nodes"
            ));
        }
        if phi.len() != edges.len() {
            return bad(format!(
                "{} activations for {} edges",
                phi.len(),
                edges.len()
            ));
        }
        if aggregation.len() != node_count - root_count {
            return bad(format!(
                "{} aggregations for {} non-root nodes",
                aggregation.len(),
                node_count - root_count
            ));
        }
        let mut incoming = vec![Vec::new(); node_count];
        let mut seen = std::collections::HashSet::new();
        for (k, e) in edges.iter().enumerate() {
            if e.target >= node_count || e.source >= e.target {
                return bad(format!(
                    "edge {} -> {} is not a forward edge",
                    e.source, e.target
                ));
            }
            if e.target < root_count {
                return bad(format!("edge {} -> {} enters a root", e.source, e.target));
            }
            if !seen.insert(*e) {
                return bad(format!("duplicate edge {} -> {}", e.source, e.target));
            }
            incoming[e.target].push(k);
        }
        for j in root_count..node_count {
            let d = incoming[j].len();
            if d == 0 {
                return bad(format!("non-root node {j} has no parent"));
            }
            if aggregation[j - root_count].weights.len() != d {
                return bad(format!(
                    "node {j} has in-degree {d} but a different weight count"
                ));
            }
        }
        let requested_edges = edges.len();
        Ok(CausalDag {
            node_count,
            root_count,
            edges,
            phi,
            aggregation,
            incoming,
            requested_edges,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn root_count(&self) -> usize {
        self.root_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Activation labelling each edge, indexed like [`edges`](Self::edges).
    pub fn phi(&self) -> &[Activation] {
        &self.phi
    }

    pub fn aggregation(&self, node: usize) -> Option<&Aggregation> {
        node.checked_sub(self.root_count)
            .and_then(|k| self.aggregation.get(k))
    }

    /// Indices into [`edges`](Self::edges) of the edges entering `node`.
    pub fn incoming(&self, node: usize) -> &[usize] {
        &self.incoming[node]
    }

    pub fn in_degree(&self, node: usize) -> usize {
        self.incoming[node].len()
    }

    /// Edge count asked of the sampler; larger than `edges().len()` when the
    /// graph had too few legal node pairs.
    pub fn requested_edges(&self) -> usize {
        self.requested_edges
    }

    /// Plain-text edge list, one `source -> target : activation` per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!(
            "# nodes={} roots={} edges={}\n",
            self.node_count,
            self.root_count,
            self.edges.len()
        );
        for (e, a) in self.edges.iter().zip(&self.phi) {
            let _ = writeln!(out, "{} -> {} : {a}", e.source, e.target);
        }
        out
    }
}

/// Samples a DAG with `m_roots` roots and (up to) `n_edges` edges.
///
/// The non-root count is uniform on `1..=n_edges`; each non-root gets one
/// parent among earlier nodes, and the remaining edges are spread uniformly
/// over the unused forward pairs. Activation kinds are drawn without
/// replacement while the bank allows it.
pub fn build_dag(s: &mut SampleStream, m_roots: usize, n_edges: usize) -> Result<CausalDag> {
    if m_roots == 0 || n_edges == 0 {
        return Err(Error::InvalidArgument(format!(
            "build_dag needs positive roots and edges, got {m_roots} and {n_edges}"
        )));
    }
    let non_roots = s.index_in(1, n_edges);
    let node_count = m_roots + non_roots;

    let mut present = vec![false; node_count * node_count];
    let mut edges = Vec::with_capacity(n_edges);
    for j in m_roots..node_count {
        let parent = s.index_in(0, j - 1);
        present[parent * node_count + j] = true;
        edges.push(Edge {
            source: parent,
            target: j,
        });
    }
    let extra = n_edges - non_roots;
    if extra > 0 {
        let mut candidates = Vec::new();
        for j in m_roots..node_count {
            for i in 0..j {
                if !present[i * node_count + j] {
                    candidates.push(Edge {
                        source: i,
                        target: j,
                    });
                }
            }
        }
        let take = extra.min(candidates.len());
        for k in s.sample_without_replacement(candidates.len(), take)? {
            edges.push(candidates[k]);
        }
    }
    edges.sort_unstable_by_key(|e| (e.target, e.source));

    let kinds: Vec<usize> = if edges.len() <= ACTIVATION_BANK_SIZE {
        s.sample_without_replacement(ACTIVATION_BANK_SIZE, edges.len())?
    } else {
        (0..edges.len())
            .map(|_| s.index_in(0, ACTIVATION_BANK_SIZE - 1))
            .collect()
    };
    let phi: Vec<Activation> = kinds
        .into_iter()
        .map(|k| Activation::sample_kind(s, k))
        .collect();

    let mut in_degree = vec![0usize; node_count];
    for e in &edges {
        in_degree[e.target] += 1;
    }
    let aggregation = (m_roots..node_count)
        .map(|j| {
            let weights = (0..in_degree[j]).map(|_| s.standard_normal()).collect();
            Aggregation {
                weights,
                bias: s.standard_normal(),
            }
        })
        .collect();

    let mut dag = CausalDag::new(node_count, m_roots, edges, phi, aggregation)?;
    dag.requested_edges = n_edges;
    Ok(dag)
}

fn standardize_in_place(x: &mut [f64]) {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let sd = var.max(VARIANCE_FLOOR).sqrt();
    for v in x.iter_mut() {
        *v = (*v - mean) / sd;
    }
}

/// Computes every node's series from the root series, in node order.
///
/// With `standardize` set, each activated parent signal is shifted and scaled
/// to zero mean and unit variance before it is weighted.
pub fn propagate(dag: &CausalDag, roots: &[Vec<f64>], standardize: bool) -> Result<Vec<Vec<f64>>> {
    if roots.len() != dag.root_count {
        return Err(Error::SizeMismatch(format!(
            "{} root series for {} roots",
            roots.len(),
            dag.root_count
        )));
    }
    let len = roots[0].len();
    if roots.iter().any(|r| r.len() != len) {
        return Err(Error::SizeMismatch("root series differ in length".into()));
    }
    let mut nodes: Vec<Vec<f64>> = roots.to_vec();
    nodes.reserve(dag.node_count - dag.root_count);
    for j in dag.root_count..dag.node_count {
        let agg = &dag.aggregation[j - dag.root_count];
        let mut out = vec![0.0; len];
        for (&edge, &w) in dag.incoming[j].iter().zip(&agg.weights) {
            let parent = &nodes[dag.edges[edge].source];
            let mut act = apply_activation(&dag.phi[edge], parent);
            if standardize {
                standardize_in_place(&mut act);
            }
            for (o, a) in out.iter_mut().zip(&act) {
                *o += w * a;
            }
        }
        for o in out.iter_mut() {
            *o += agg.bias;
        }
        if let Some(l) = out.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteOutput(format!("node {j} at timestep {l}")));
        }
        nodes.push(out);
    }
    Ok(nodes)
}
