//! The loop-weight group `H ⊂ ℚ⁺`, the maximal tracial subgraph and its
//! vertex state.
//!
//! Loop weights are multiplicative over the cycle space, so `H` is generated
//! by the fundamental cycles of any spanning tree. Each generator is stored as
//! its prime-exponent vector; the lattice they span is kept in row Hermite
//! normal form, which is canonical.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId, WeightedGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleLattice {
    primes: Vec<u64>,
    basis: Vec<Vec<BigInt>>,
}

impl CycleLattice {
    /// Lattice spanned by the exponent vectors of `generators`.
    pub fn from_generators(generators: &[BigRational]) -> Result<Self> {
        let maps = generators
            .iter()
            .map(arith::factor_rational)
            .collect::<Result<Vec<_>>>()?;
        let primes: Vec<u64> = maps
            .iter()
            .flat_map(|m| m.keys().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let rows = maps
            .iter()
            .map(|m| {
                primes
                    .iter()
                    .map(|p| BigInt::from(*m.get(p).unwrap_or(&0)))
                    .collect()
            })
            .collect();
        Ok(Self::from_rows(primes, rows))
    }

    fn from_rows(primes: Vec<u64>, rows: Vec<Vec<BigInt>>) -> Self {
        Self {
            basis: hermite_normal_form(rows, primes.len()),
            primes,
        }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    /// The basis rows read back as rationals `Π p^{row_p}`.
    pub fn generators(&self) -> Vec<BigRational> {
        self.basis
            .iter()
            .map(|row| arith::rational_from_exponents(&self.primes, row))
            .collect()
    }

    /// Membership by back-substitution against the echelon basis.
    pub fn contains(&self, x: &BigRational) -> bool {
        if !x.is_positive() {
            return false;
        }
        let Some(mut v) = arith::exponents_over(x, &self.primes) else {
            return false;
        };
        for row in &self.basis {
            let col = row
                .iter()
                .position(|c| !c.is_zero())
                .expect("basis rows are nonzero");
            if v[..col].iter().any(|c| !c.is_zero()) {
                return false;
            }
            let (q, r) = v[col].div_rem(&row[col]);
            if !r.is_zero() {
                return false;
            }
            for (vi, ri) in v.iter_mut().zip(row) {
                *vi -= &q * ri;
            }
        }
        v.iter().all(Zero::is_zero)
    }

    /// Equality of the underlying subgroups of `ℚ⁺`, ignoring which primes
    /// label the coordinates.
    pub fn same_group(&self, other: &CycleLattice) -> bool {
        self.generators() == other.generators()
    }
}

/// Row-style Hermite normal form: pivots positive and strictly moving right,
/// entries above each pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>, width: usize) -> Vec<Vec<BigInt>> {
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    let mut rank = 0;
    for col in 0..width {
        loop {
            let pivot = (rank..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(p) = pivot else { break };
            rows.swap(rank, p);
            let mut done = true;
            for j in rank + 1..rows.len() {
                if rows[j][col].is_zero() {
                    continue;
                }
                let q = rows[j][col].div_floor(&rows[rank][col]);
                let (head, tail) = rows.split_at_mut(j);
                for (a, b) in tail[0].iter_mut().zip(&head[rank]) {
                    *a -= &q * b;
                }
                done &= tail[0][col].is_zero();
            }
            if done {
                break;
            }
        }
        if rank == rows.len() || rows[rank][col].is_zero() {
            continue;
        }
        if rows[rank][col].is_negative() {
            for c in rows[rank].iter_mut() {
                *c = -c.clone();
            }
        }
        for i in 0..rank {
            let q = rows[i][col].div_floor(&rows[rank][col]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(rank);
            for (a, b) in head[i].iter_mut().zip(&tail[0]) {
                *a -= &q * b;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// Prime-exponent vectors of every edge weight over the sorted prime set.
struct EdgeExponents {
    primes: Vec<u64>,
    vectors: Vec<Vec<BigInt>>,
}

impl EdgeExponents {
    fn of(graph: &WeightedGraph) -> Result<Self> {
        let maps: Vec<BTreeMap<u64, i64>> = graph
            .edges()
            .iter()
            .map(|e| arith::factor_rational(&e.weight))
            .collect::<Result<_>>()?;
        let primes: Vec<u64> = maps
            .iter()
            .flat_map(|m| m.keys().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let vectors = maps
            .iter()
            .map(|m| {
                primes
                    .iter()
                    .map(|p| BigInt::from(*m.get(p).unwrap_or(&0)))
                    .collect()
            })
            .collect();
        Ok(Self { primes, vectors })
    }
}

/// A spanning tree oriented away from `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub base: VertexId,
    /// Directed tree edges, each pointing away from the base.
    pub edges: Vec<EdgeId>,
}

impl SpanningTree {
    /// Breadth-first tree from `base`, taking out-edges in id order. The
    /// optional `seed` path from `base` is put in the tree first.
    pub fn breadth_first(graph: &WeightedGraph, base: VertexId, seed: &[EdgeId]) -> Result<Self> {
        let n = graph.vertex_count();
        if base >= n {
            return Err(Error::PreconditionViolated(format!(
                "vertex index {base} out of range"
            )));
        }
        let mut seen = vec![false; n];
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        let mut queue = VecDeque::from([base]);
        seen[base] = true;
        let mut at = base;
        for &e in seed {
            if graph.source(e) != at || seen[graph.target(e)] {
                return Err(Error::PreconditionViolated(
                    "tree seed must be a simple path starting at the base".into(),
                ));
            }
            at = graph.target(e);
            seen[at] = true;
            edges.push(e);
            queue.push_back(at);
        }
        while let Some(v) = queue.pop_front() {
            for &e in graph.out_edges(v) {
                let t = graph.target(e);
                if !seen[t] {
                    seen[t] = true;
                    edges.push(e);
                    queue.push_back(t);
                }
            }
        }
        Ok(Self { base, edges })
    }

    /// Orients an undirected spanning tree, given as one edge per pair.
    pub fn from_pairs(graph: &WeightedGraph, base: VertexId, pairs: &[EdgeId]) -> Result<Self> {
        let chosen: BTreeSet<EdgeId> = pairs.iter().flat_map(|&e| [e, graph.op(e)]).collect();
        let n = graph.vertex_count();
        let mut seen = vec![false; n];
        seen[base] = true;
        let mut edges = Vec::new();
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            for &e in graph.out_edges(v) {
                let t = graph.target(e);
                if chosen.contains(&e) && !seen[t] {
                    seen[t] = true;
                    edges.push(e);
                    queue.push_back(t);
                }
            }
        }
        if edges.len() + 1 != n || pairs.len() + 1 != n {
            return Err(Error::PreconditionViolated(
                "edge pairs do not form a spanning tree".into(),
            ));
        }
        Ok(Self { base, edges })
    }

    /// Vertex potential: 1 at the base, multiplied by `μ(e)` along each tree
    /// edge.
    pub fn potential(&self, graph: &WeightedGraph) -> Vec<BigRational> {
        let mut state = vec![BigRational::zero(); graph.vertex_count()];
        state[self.base] = BigRational::one();
        for &e in &self.edges {
            state[graph.target(e)] = &state[graph.source(e)] * graph.weight(e);
        }
        state
    }
}

/// `H(Γ, μ)` from the fundamental cycles of the breadth-first tree at the
/// first vertex.
pub fn cycle_group(graph: &WeightedGraph) -> Result<CycleLattice> {
    let tree = SpanningTree::breadth_first(graph, 0, &[])?;
    cycle_group_from_tree(graph, &tree)
}

pub fn cycle_group_from_tree(graph: &WeightedGraph, tree: &SpanningTree) -> Result<CycleLattice> {
    let exps = EdgeExponents::of(graph)?;
    let width = exps.primes.len();
    let mut potential = vec![vec![BigInt::zero(); width]; graph.vertex_count()];
    for &e in &tree.edges {
        let next: Vec<BigInt> = potential[graph.source(e)]
            .iter()
            .zip(&exps.vectors[e])
            .map(|(a, b)| a + b)
            .collect();
        potential[graph.target(e)] = next;
    }
    let in_tree: BTreeSet<EdgeId> = tree.edges.iter().flat_map(|&e| [e, graph.op(e)]).collect();
    // Fundamental cycle through e: tree path to s(e), then e, then back.
    let rows = graph
        .edge_pairs()
        .into_iter()
        .filter(|e| !in_tree.contains(e))
        .map(|e| {
            let (s, t) = (graph.source(e), graph.target(e));
            (0..width)
                .map(|i| &potential[s][i] + &exps.vectors[e][i] - &potential[t][i])
                .collect()
        })
        .collect();
    Ok(CycleLattice::from_rows(exps.primes, rows))
}

/// Tracial subgraph `Γ_Tr`, its base vertex and the induced vertex state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracialData {
    /// Closed under `op`.
    pub tr_edges: BTreeSet<EdgeId>,
    pub tree: Vec<EdgeId>,
    pub base: VertexId,
    /// `φ(p_v)`, indexed by vertex.
    pub state: Vec<BigRational>,
}

impl TracialData {
    /// Closes a spanning tree into the maximal tracial subgraph containing it.
    pub fn from_tree(graph: &WeightedGraph, tree: &SpanningTree) -> Self {
        let state = tree.potential(graph);
        let tr_edges = (0..graph.edge_count())
            .filter(|&e| graph.weight(e) * &state[graph.source(e)] == state[graph.target(e)])
            .collect();
        Self {
            tr_edges,
            tree: tree.edges.clone(),
            base: tree.base,
            state,
        }
    }

    pub fn total(&self) -> BigRational {
        self.state.iter().sum()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.tr_edges.contains(&e)
    }
}

pub fn tracial_subgraph(graph: &WeightedGraph, base: VertexId) -> TracialData {
    tracial_subgraph_seeded(graph, base, &[]).expect("empty seed is always valid")
}

/// As [`tracial_subgraph`], but forcing the simple path `seed` (starting at
/// `base`) into the spanning tree.
pub fn tracial_subgraph_seeded(
    graph: &WeightedGraph,
    base: VertexId,
    seed: &[EdgeId],
) -> Result<TracialData> {
    let tree = SpanningTree::breadth_first(graph, base, seed)?;
    Ok(TracialData::from_tree(graph, &tree))
}

/// Modular eigenvalue `μ(e)·μ(σ)` of `Y_e`, where `σ` runs inside `Γ_Tr`
/// from `t(e)` back to `s(e)`.
pub fn edge_eigenvalue(graph: &WeightedGraph, td: &TracialData, e: EdgeId) -> BigRational {
    &td.state[graph.source(e)] * graph.weight(e) / &td.state[graph.target(e)]
}
