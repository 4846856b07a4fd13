//! Stochastic block model sampling and the two block-preserving edge
//! rewiring perturbations.

use ndarray::Array2;
use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{validate_membership, Graph};
use crate::rng::{stream, PHASE_ADD, PHASE_DELETE, PHASE_SAMPLE};

/// `SBM(n, k, B, Z)`: `connectivity[[a, b]]` is the edge probability
/// between a node of block `a` and a node of block `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct SbmParams {
    connectivity: Array2<f64>,
    membership: Vec<usize>,
}

impl SbmParams {
    pub fn new(connectivity: Array2<f64>, membership: Vec<usize>) -> Result<Self> {
        let (r, c) = connectivity.dim();
        if r != c || r == 0 {
            return Err(Error::Parameter(format!(
                "connectivity must be a nonempty square matrix, got {r}x{c}"
            )));
        }
        for a in 0..r {
            for b in 0..r {
                let p = connectivity[[a, b]];
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::Parameter(format!(
                        "connectivity[{a}][{b}] = {p} is not a probability"
                    )));
                }
                if p != connectivity[[b, a]] {
                    return Err(Error::Parameter(format!(
                        "connectivity is not symmetric at ({a}, {b})"
                    )));
                }
            }
        }
        let k = validate_membership(membership.len(), &membership)?;
        if k != r {
            return Err(Error::Parameter(format!(
                "membership uses {k} blocks but connectivity has {r}"
            )));
        }
        Ok(SbmParams {
            connectivity,
            membership,
        })
    }

    pub fn n(&self) -> usize {
        self.membership.len()
    }

    pub fn k(&self) -> usize {
        self.connectivity.nrows()
    }

    pub fn membership(&self) -> &[usize] {
        &self.membership
    }

    pub fn connectivity(&self) -> &Array2<f64> {
        &self.connectivity
    }

    #[inline]
    pub fn probability(&self, block_a: usize, block_b: usize) -> f64 {
        self.connectivity[[block_a, block_b]]
    }
}

/// Planted partition model `PPM(n, k, a, b)`: `k` equal contiguous blocks,
/// connectivity `a I + b 11ᵀ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PpmParams {
    pub n: usize,
    pub k: usize,
    pub a: f64,
    pub b: f64,
}

impl PpmParams {
    pub fn new(n: usize, k: usize, a: f64, b: f64) -> Result<Self> {
        let p = PpmParams { n, k, a, b };
        p.validate()?;
        Ok(p)
    }

    /// The sparse regime `PPM(n, k, α log n / n, β log n / n)` (natural log).
    pub fn log_scaled(n: usize, k: usize, alpha: f64, beta: f64) -> Result<Self> {
        let s = (n as f64).ln() / n as f64;
        Self::new(n, k, alpha * s, beta * s)
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 || self.n == 0 || self.n % self.k != 0 {
            return Err(Error::Parameter(format!(
                "block count {} must divide node count {}",
                self.k, self.n
            )));
        }
        if !(self.b >= 0.0 && self.a + self.b <= 1.0 && self.a + self.b >= 0.0) {
            return Err(Error::Parameter(format!(
                "need b >= 0 and 0 <= a + b <= 1, got a = {}, b = {}",
                self.a, self.b
            )));
        }
        Ok(())
    }

    pub fn intra_probability(&self) -> f64 {
        self.a + self.b
    }

    pub fn inter_probability(&self) -> f64 {
        self.b
    }

    pub fn to_sbm(&self) -> Result<SbmParams> {
        self.validate()?;
        let size = self.n / self.k;
        let membership = (0..self.n).map(|i| i / size).collect();
        let connectivity = Array2::from_shape_fn((self.k, self.k), |(i, j)| {
            if i == j {
                self.intra_probability()
            } else {
                self.inter_probability()
            }
        });
        SbmParams::new(connectivity, membership)
    }
}

pub fn sample_sbm(p: &SbmParams, seed: u64) -> Graph {
    let mut rng = stream(seed, PHASE_SAMPLE);
    let z = &p.membership;
    let n = p.n();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let prob = p.probability(z[u], z[v]);
            // one draw per pair keeps the stream layout independent of B
            let x: f64 = rng.random();
            if x < prob {
                edges.push((u, v));
            }
        }
    }
    Graph::from_canonical(n, edges, Some(z.clone()))
}

pub fn sample_ppm(p: &PpmParams, seed: u64) -> Result<Graph> {
    Ok(sample_sbm(&p.to_sbm()?, seed))
}

/// Per-pair probability used by the addition step of [`rewire_sbm`] so
/// that the output keeps marginal edge probability `b`.
pub fn readd_probability(b: f64, p_re: f64) -> f64 {
    if b <= 0.0 || p_re <= 0.0 {
        0.0
    } else {
        p_re / (1.0 / b - (1.0 - p_re))
    }
}

/// Number of edges removed from a block pair holding `m` edges.
pub fn deletion_count(m: usize, p_re: f64) -> usize {
    (p_re * m as f64).round_ties_even() as usize
}

fn check_ratio(p_re: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p_re) {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "rewiring ratio {p_re} is outside [0, 1]"
        )))
    }
}

/// Canonical block-pair index for blocks `a`, `b` out of `k`.
#[inline]
fn pair_slot(a: usize, b: usize, k: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    a * k + b
}

/// Nodes of each block, ascending.
fn blocks(membership: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); k];
    for (u, &b) in membership.iter().enumerate() {
        out[b].push(u);
    }
    out
}

/// All node pairs `(u, v)`, `u < v`, with one endpoint in block `a` and the
/// other in block `b`, in ascending order.
fn block_pairs(nodes: &[Vec<usize>], a: usize, b: usize, mut f: impl FnMut(usize, usize)) {
    if a == b {
        let ns = &nodes[a];
        for (i, &u) in ns.iter().enumerate() {
            for &v in &ns[i + 1..] {
                f(u, v);
            }
        }
    } else {
        let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(nodes[a].len() * nodes[b].len());
        for &u in &nodes[a] {
            for &v in &nodes[b] {
                pairs.push((u.min(v), u.max(v)));
            }
        }
        pairs.sort_unstable();
        for (u, v) in pairs {
            f(u, v);
        }
    }
}

struct DenseAdjacency {
    n: usize,
    bits: Vec<bool>,
}

impl DenseAdjacency {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut bits = vec![false; n * n];
        for &(u, v) in g.edges() {
            bits[u * n + v] = true;
        }
        DenseAdjacency { n, bits }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.n + v]
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize, on: bool) {
        self.bits[u * self.n + v] = on;
    }

    fn into_graph(self, membership: Option<Vec<usize>>) -> Graph {
        let n = self.n;
        let edges = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.get(u, v))
            .collect();
        Graph::from_canonical(n, edges, membership)
    }
}

/// Deletes `round(p_re · m)` uniformly chosen edges from every block pair
/// and returns the per-slot deletion counts.
fn delete_per_block(
    g: &Graph,
    membership: &[usize],
    k: usize,
    p_re: f64,
    adj: &mut DenseAdjacency,
    seed: u64,
) -> Vec<usize> {
    let mut per_slot: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k * k];
    for &(u, v) in g.edges() {
        per_slot[pair_slot(membership[u], membership[v], k)].push((u, v));
    }
    let mut rng = stream(seed, PHASE_DELETE);
    let mut deleted = vec![0; k * k];
    for (slot, edges) in per_slot.iter().enumerate() {
        let d = deletion_count(edges.len(), p_re);
        if d == 0 {
            continue;
        }
        for i in index::sample(&mut rng, edges.len(), d) {
            let (u, v) = edges[i];
            adj.set(u, v, false);
        }
        deleted[slot] = d;
    }
    deleted
}

/// The SBM edge rewiring scheme: for every block pair, delete a uniformly
/// random `round(p_re · m)` of its `m` edges, then add each pair that is a
/// non-edge after deletion independently with probability
/// `p_re / (1/b − (1 − p_re))`. When `g ~ SBM(p)` the output is again
/// distributed as `SBM(p)` pair by pair.
pub fn rewire_sbm(g: &Graph, p: &SbmParams, p_re: f64, seed: u64) -> Result<Graph> {
    check_ratio(p_re)?;
    if g.n() != p.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            found: g.n(),
        });
    }
    let k = p.k();
    let z = p.membership();
    let mut probs = vec![0.0; k * k];
    for a in 0..k {
        for b in a..k {
            let q = readd_probability(p.probability(a, b), p_re);
            if !(q <= 1.0) {
                return Err(Error::Parameter(format!(
                    "re-add probability {q} exceeds 1 for block pair ({a}, {b})"
                )));
            }
            probs[pair_slot(a, b, k)] = q;
        }
    }
    if p_re == 0.0 {
        return Ok(Graph::from_canonical(
            g.n(),
            g.edges().to_vec(),
            Some(z.to_vec()),
        ));
    }
    let mut adj = DenseAdjacency::new(g);
    delete_per_block(g, z, k, p_re, &mut adj, seed);

    let nodes = blocks(z, k);
    let mut rng = stream(seed, PHASE_ADD);
    for a in 0..k {
        for b in a..k {
            let q = probs[pair_slot(a, b, k)];
            if q == 0.0 {
                continue;
            }
            let mut add = Vec::new();
            block_pairs(&nodes, a, b, |u, v| {
                if !adj.get(u, v) {
                    let x: f64 = rng.random();
                    if x < q {
                        add.push((u, v));
                    }
                }
            });
            for (u, v) in add {
                adj.set(u, v, true);
            }
        }
    }
    Ok(adj.into_graph(Some(z.to_vec())))
}

/// A block pair that could not receive all of its re-added edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shortfall {
    pub blocks: (usize, usize),
    pub requested: usize,
    pub added: usize,
}

#[derive(Clone, Debug)]
pub struct Rewired {
    pub graph: Graph,
    pub shortfall: Vec<Shortfall>,
}

/// Count-preserving rewiring: per block pair delete `round(p_re · m)`
/// uniformly chosen edges, then add the same number uniformly among the
/// pair's non-edges after deletion.
pub fn rewire_count_preserving(
    g: &Graph,
    membership: &[usize],
    p_re: f64,
    seed: u64,
) -> Result<Rewired> {
    check_ratio(p_re)?;
    let k = validate_membership(g.n(), membership)?;
    if p_re == 0.0 {
        return Ok(Rewired {
            graph: Graph::from_canonical(g.n(), g.edges().to_vec(), Some(membership.to_vec())),
            shortfall: Vec::new(),
        });
    }
    let mut adj = DenseAdjacency::new(g);
    let deleted = delete_per_block(g, membership, k, p_re, &mut adj, seed);

    let nodes = blocks(membership, k);
    let mut rng = stream(seed, PHASE_ADD);
    let mut shortfall = Vec::new();
    for a in 0..k {
        for b in a..k {
            let want = deleted[pair_slot(a, b, k)];
            if want == 0 {
                continue;
            }
            let mut free = Vec::new();
            block_pairs(&nodes, a, b, |u, v| {
                if !adj.get(u, v) {
                    free.push((u, v));
                }
            });
            let take = want.min(free.len());
            for i in index::sample(&mut rng, free.len(), take) {
                let (u, v) = free[i];
                adj.set(u, v, true);
            }
            if take < want {
                shortfall.push(Shortfall {
                    blocks: (a, b),
                    requested: want,
                    added: take,
                });
            }
        }
    }
    Ok(Rewired {
        graph: adj.into_graph(Some(membership.to_vec())),
        shortfall,
    })
}

/// Edge count of every block pair `(a, b)`, `a <= b`, in row-major order
/// of the upper triangle.
pub fn block_edge_counts(g: &Graph, membership: &[usize]) -> Vec<usize> {
    let k = membership.iter().max().map_or(0, |&m| m + 1);
    let mut counts = vec![0; k * k];
    for &(u, v) in g.edges() {
        counts[pair_slot(membership[u], membership[v], k)] += 1;
    }
    (0..k)
        .flat_map(|a| (a..k).map(move |b| (a, b)))
        .map(|(a, b)| counts[a * k + b])
        .collect()
}
