//! Undirected simple graphs, their Laplacian shift operators, and a few
//! spectral-domain utilities.

mod io;
mod matrix;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use ndarray::Array1;
use serde::{Deserialize, Serialize};

pub use self::io::{load_communities, load_edge_list, parse_communities, parse_edge_list};
pub(crate) use self::matrix::check_dim;
pub use self::matrix::SymMatrix;

use crate::error::{Error, Result};
use crate::spectral::EigenPair;

/// Undirected simple graph on nodes `0..n`.
///
/// Edges are kept as sorted `(i, j)` pairs with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    membership: Option<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges (in either
    /// orientation) and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::build(n, edges, false)
    }

    /// Like [`Graph::new`] but silently drops self-loops and duplicates.
    pub fn new_dedup(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::build(n, edges, true)
    }

    fn build(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        dedupe: bool,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation(
                "graph must have at least one node".into(),
            ));
        }
        let mut out = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) has an endpoint outside [0, {n})"
                )));
            }
            if u == v {
                if dedupe {
                    continue;
                }
                return Err(Error::Validation(format!("self-loop at node {u}")));
            }
            out.push((u.min(v), u.max(v)));
        }
        out.sort_unstable();
        if !dedupe {
            if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Validation(format!("duplicate edge {:?}", w[0])));
            }
        }
        out.dedup();
        Ok(Graph {
            n,
            edges: out,
            membership: None,
        })
    }

    /// Edges must already be canonical, sorted and unique.
    pub(crate) fn from_canonical(
        n: usize,
        edges: Vec<(usize, usize)>,
        membership: Option<Vec<usize>>,
    ) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(i, j)| i < j && j < n));
        Graph {
            n,
            edges,
            membership,
        }
    }

    /// Attaches block labels. Labels must lie in `0..k` where `k` is one
    /// more than the largest label, and every block must be nonempty.
    pub fn with_membership(mut self, membership: Vec<usize>) -> Result<Self> {
        validate_membership(self.n, &membership)?;
        self.membership = Some(membership);
        Ok(self)
    }

    pub fn without_membership(mut self) -> Self {
        self.membership = None;
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn membership(&self) -> Option<&[usize]> {
        self.membership.as_deref()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }
}

pub(crate) fn validate_membership(n: usize, membership: &[usize]) -> Result<usize> {
    check_dim(n, membership.len())?;
    let k = membership.iter().max().map_or(0, |&m| m + 1);
    let mut sizes = vec![0usize; k];
    for &b in membership {
        sizes[b] += 1;
    }
    if let Some(empty) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::Validation(format!("block {empty} has no nodes")));
    }
    Ok(k)
}

/// Which Laplacian is used as the graph shift operator.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum Gso {
    /// `L_U = D - A`
    #[default]
    #[serde(alias = "unnorm")]
    Unnormalized,
    /// `D^{-1/2} L_U D^{-1/2}`
    #[serde(alias = "norm")]
    Normalized,
}

impl Gso {
    pub fn build(self, g: &Graph) -> Result<SymMatrix> {
        match self {
            Gso::Unnormalized => Ok(unnormalized_laplacian(g)),
            Gso::Normalized => normalized_laplacian(g),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Gso::Unnormalized => "unnormalized",
            Gso::Normalized => "normalized",
        }
    }
}

impl fmt::Display for Gso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Gso {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unnormalized" | "unnorm" => Ok(Gso::Unnormalized),
            "normalized" | "norm" => Ok(Gso::Normalized),
            other => Err(Error::Parameter(format!(
                "unknown shift operator `{other}`"
            ))),
        }
    }
}

pub fn adjacency(g: &Graph) -> SymMatrix {
    let mut a = SymMatrix::zeros(g.n);
    for &(i, j) in &g.edges {
        a.set(i, j, 1.0);
    }
    a
}

pub fn unnormalized_laplacian(g: &Graph) -> SymMatrix {
    let mut l = SymMatrix::zeros(g.n);
    for (i, &d) in g.degrees().iter().enumerate() {
        l.set(i, i, d as f64);
    }
    for &(i, j) in &g.edges {
        l.set(i, j, -1.0);
    }
    l
}

/// Fails with [`Error::IsolatedNode`] if any node has degree zero.
pub fn normalized_laplacian(g: &Graph) -> Result<SymMatrix> {
    let deg = g.degrees();
    if let Some(node) = deg.iter().position(|&d| d == 0) {
        return Err(Error::IsolatedNode { node });
    }
    let inv_sqrt: Vec<f64> = deg.iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let mut l = SymMatrix::identity(g.n);
    for &(i, j) in &g.edges {
        l.set(i, j, -(inv_sqrt[i] * inv_sqrt[j]));
    }
    Ok(l)
}

/// Graph total variation `xᵀ S x / 2`.
pub fn total_variation(s: &SymMatrix, x: &[f64]) -> Result<f64> {
    let sx = s.matvec(x)?;
    Ok(sx.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() / 2.0)
}

/// Graph Fourier transform `Vᵀ x`.
pub fn gft(eig: &EigenPair, x: &[f64]) -> Result<Array1<f64>> {
    check_dim(eig.dim(), x.len())?;
    Ok(eig.vectors().t().dot(&ndarray::ArrayView1::from(x)))
}

/// Relabels node `i` as `perm[i]`.
pub fn permute(g: &Graph, perm: &[usize]) -> Result<Graph> {
    check_dim(g.n, perm.len())?;
    let mut hit = vec![false; g.n];
    for &p in perm {
        if p >= g.n || std::mem::replace(&mut hit[p], true) {
            return Err(Error::Validation("permutation is not a bijection".into()));
        }
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges
        .iter()
        .map(|&(i, j)| {
            let (a, b) = (perm[i], perm[j]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    let membership = g.membership.as_ref().map(|m| {
        let mut out = vec![0; g.n];
        for (i, &b) in m.iter().enumerate() {
            out[perm[i]] = b;
        }
        out
    });
    Ok(Graph::from_canonical(g.n, edges, membership))
}
