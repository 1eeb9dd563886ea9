//! Truncated graph Fock space.
//!
//! Level 0 holds the vertex vectors `p_v`; level `k` holds the composable
//! paths of length `k`. `ℓ(e)` prepends `e` (and falls off the top level),
//! `ℓ(e)*` strips a leading `e`. Vacuum expectations of words computed here
//! are an independent check on [`crate::moments`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::lattice::TracialData;
use crate::moments::{self, Word};

pub const DEFAULT_MAX_BASIS: usize = 2_000_000;

/// Basis cap, overridable through `GRAPHVN_MAX_BASIS`.
pub fn max_basis_entries() -> usize {
    std::env::var("GRAPHVN_MAX_BASIS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_BASIS)
}

const NONE: usize = usize::MAX;

#[derive(Clone, Debug)]
struct Entry {
    /// Leading edge, or `NONE` for a vertex vector.
    head: EdgeId,
    /// Index of the path with the head removed (a vertex vector at level 1).
    tail: usize,
    source: VertexId,
    level: usize,
    /// Index of the first path `f ⊗ self`; children are ordered like
    /// `in_edges(source)`.
    first_child: usize,
}

#[derive(Clone, Debug)]
pub struct FockBasis {
    depth: usize,
    entries: Vec<Entry>,
    in_edges: Vec<Vec<EdgeId>>,
    /// Position of `e` in `in_edges[t(e)]`.
    in_rank: Vec<usize>,
}

/// Number of entries of the depth-`depth` basis, saturating.
pub fn basis_size(graph: &WeightedGraph, depth: usize) -> usize {
    let n = graph.vertex_count();
    let mut from = vec![1usize; n];
    let mut total = n;
    for _ in 0..depth {
        from = (0..n)
            .map(|v| {
                graph
                    .out_edges(v)
                    .iter()
                    .fold(0usize, |acc, &e| acc.saturating_add(from[graph.target(e)]))
            })
            .collect();
        total = from.iter().fold(total, |acc, &c| acc.saturating_add(c));
    }
    total
}

pub fn build_basis(graph: &WeightedGraph, depth: usize) -> Result<FockBasis> {
    build_basis_capped(graph, depth, max_basis_entries())
}

pub fn build_basis_capped(graph: &WeightedGraph, depth: usize, cap: usize) -> Result<FockBasis> {
    let size = basis_size(graph, depth);
    if size > cap {
        return Err(Error::BasisTooLarge(size));
    }
    let n = graph.vertex_count();
    let mut in_edges = vec![Vec::new(); n];
    let in_rank: Vec<usize> = (0..graph.edge_count())
        .map(|e| {
            let t = graph.target(e);
            in_edges[t].push(e);
            in_edges[t].len() - 1
        })
        .collect();
    let mut entries: Vec<Entry> = Vec::with_capacity(size);
    for v in 0..n {
        entries.push(Entry {
            head: NONE,
            tail: NONE,
            source: v,
            level: 0,
            first_child: NONE,
        });
    }
    let mut level_start = 0;
    for level in 1..=depth {
        let level_end = entries.len();
        for parent in level_start..level_end {
            let src = entries[parent].source;
            entries[parent].first_child = entries.len();
            for &e in &in_edges[src] {
                entries.push(Entry {
                    head: e,
                    tail: parent,
                    source: graph.source(e),
                    level,
                    first_child: NONE,
                });
            }
        }
        level_start = level_end;
    }
    Ok(FockBasis {
        depth,
        entries,
        in_edges,
        in_rank,
    })
}

impl FockBasis {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Index of the vertex vector `p_v`.
    pub fn vertex_index(&self, v: VertexId) -> usize {
        v
    }

    /// Index of a path given by its edges, if it is in the basis.
    pub fn path_index(&self, graph: &WeightedGraph, edges: &[EdgeId]) -> Option<usize> {
        let last = *edges.last()?;
        let mut idx = graph.target(last);
        for &e in edges.iter().rev() {
            idx = self.create(graph, e, idx)?;
        }
        Some(idx)
    }

    /// The path of entry `idx` as edge ids (empty for vertex vectors).
    pub fn path(&self, mut idx: usize) -> Vec<EdgeId> {
        let mut out = Vec::with_capacity(self.entries[idx].level);
        while self.entries[idx].head != NONE {
            out.push(self.entries[idx].head);
            idx = self.entries[idx].tail;
        }
        out
    }

    pub fn label(&self, graph: &WeightedGraph, idx: usize) -> String {
        let path = self.path(idx);
        if path.is_empty() {
            return format!("p_{}", graph.vertex_name(self.entries[idx].source));
        }
        path.iter()
            .map(|&e| graph.edge(e).id.as_str())
            .collect::<Vec<_>>()
            .join("⊗")
    }

    /// Line-oriented dump, `index<TAB>path` per entry.
    pub fn dump(&self, graph: &WeightedGraph) -> String {
        let mut out = String::new();
        for i in 0..self.entries.len() {
            let _ = writeln!(out, "{i}\t{}", self.label(graph, i));
        }
        out
    }

    /// `ℓ(e)` on a basis vector; `None` for zero or truncated results.
    fn create(&self, graph: &WeightedGraph, e: EdgeId, idx: usize) -> Option<usize> {
        let x = &self.entries[idx];
        (graph.target(e) == x.source && x.first_child != NONE)
            .then(|| x.first_child + self.in_rank[e])
    }

    /// `ℓ(e)*` on a basis vector.
    fn annihilate(&self, e: EdgeId, idx: usize) -> Option<usize> {
        let x = &self.entries[idx];
        (x.head == e).then_some(x.tail)
    }

    /// Edges `f` with `t(f) = v`, in the order their children `f ⊗ x` are
    /// laid out.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v]
    }
}

pub type SparseVector = BTreeMap<usize, f64>;

fn push(out: &mut SparseVector, idx: usize, value: f64) {
    *out.entry(idx).or_insert(0.0) += value;
}

/// `Y_e x = ℓ(e)x + √μ(e)·ℓ(e^op)*x`.
pub fn apply_y(
    graph: &WeightedGraph,
    basis: &FockBasis,
    e: EdgeId,
    x: &SparseVector,
) -> SparseVector {
    let root = crate::arith::to_f64(graph.weight(e)).sqrt();
    let op = graph.op(e);
    let mut out = SparseVector::new();
    for (&idx, &c) in x {
        if let Some(j) = basis.create(graph, e, idx) {
            push(&mut out, j, c);
        }
        if let Some(j) = basis.annihilate(op, idx) {
            push(&mut out, j, root * c);
        }
    }
    out
}

/// `Y_e* x = ℓ(e)*x + √μ(e)·ℓ(e^op)x`.
pub fn apply_y_star(
    graph: &WeightedGraph,
    basis: &FockBasis,
    e: EdgeId,
    x: &SparseVector,
) -> SparseVector {
    let root = crate::arith::to_f64(graph.weight(e)).sqrt();
    let op = graph.op(e);
    let mut out = SparseVector::new();
    for (&idx, &c) in x {
        if let Some(j) = basis.annihilate(e, idx) {
            push(&mut out, j, c);
        }
        if let Some(j) = basis.create(graph, op, idx) {
            push(&mut out, j, root * c);
        }
    }
    out
}

/// Sparse matrix in triplet form, one triplet per nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    pub dimension: usize,
    pub triplets: Vec<(usize, usize, f64)>,
}

impl SparseOperator {
    fn from_columns(
        basis: &FockBasis,
        column: impl Fn(&SparseVector) -> SparseVector + Sync,
    ) -> Self {
        let triplets = (0..basis.len())
            .into_par_iter()
            .flat_map_iter(|col| {
                let image = column(&SparseVector::from([(col, 1.0)]));
                image
                    .into_iter()
                    .filter(|(_, v)| *v != 0.0)
                    .map(move |(row, v)| (row, col, v))
            })
            .collect();
        let mut op = Self {
            dimension: basis.len(),
            triplets,
        };
        op.triplets.sort_by_key(|t| (t.0, t.1));
        op
    }

    pub fn apply(&self, x: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for &(row, col, v) in &self.triplets {
            if let Some(c) = x.get(&col) {
                push(&mut out, row, v * c);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut triplets: Vec<_> = self.triplets.iter().map(|&(r, c, v)| (c, r, v)).collect();
        triplets.sort_by_key(|t| (t.0, t.1));
        Self {
            dimension: self.dimension,
            triplets,
        }
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.triplets
            .binary_search_by(|t| (t.0, t.1).cmp(&(row, col)))
            .map_or(0.0, |i| self.triplets[i].2)
    }
}

pub fn y_operator(graph: &WeightedGraph, basis: &FockBasis, e: EdgeId) -> SparseOperator {
    SparseOperator::from_columns(basis, |x| apply_y(graph, basis, e, x))
}

pub fn y_star_operator(graph: &WeightedGraph, basis: &FockBasis, e: EdgeId) -> SparseOperator {
    SparseOperator::from_columns(basis, |x| apply_y_star(graph, basis, e, x))
}

pub fn creation_operator(graph: &WeightedGraph, basis: &FockBasis, e: EdgeId) -> SparseOperator {
    SparseOperator::from_columns(basis, |x| {
        x.iter()
            .filter_map(|(&i, &c)| basis.create(graph, e, i).map(|j| (j, c)))
            .collect()
    })
}

pub fn annihilation_operator(basis: &FockBasis, e: EdgeId) -> SparseOperator {
    SparseOperator::from_columns(basis, |x| {
        x.iter()
            .filter_map(|(&i, &c)| basis.annihilate(e, i).map(|j| (j, c)))
            .collect()
    })
}

/// `⟨p_v, W p_v⟩`, letters applied right to left.
pub fn vacuum_expectation(
    graph: &WeightedGraph,
    basis: &FockBasis,
    word: &Word,
    v: VertexId,
) -> Result<f64> {
    if word.len() > basis.depth {
        return Err(Error::WordExceedsDepth {
            len: word.len(),
            depth: basis.depth,
        });
    }
    let start = basis.vertex_index(v);
    let mut x = SparseVector::from([(start, 1.0)]);
    for letter in word.letters.iter().rev() {
        x = if letter.star {
            apply_y_star(graph, basis, letter.edge, &x)
        } else {
            apply_y(graph, basis, letter.edge, &x)
        };
        if x.is_empty() {
            break;
        }
    }
    Ok(x.get(&start).copied().unwrap_or(0.0))
}

/// `φ(W) = Σ_v φ(p_v)·⟨p_v, W p_v⟩`, or only the anchor's term.
pub fn state_expectation(
    graph: &WeightedGraph,
    td: &TracialData,
    basis: &FockBasis,
    word: &Word,
) -> Result<f64> {
    let vertices: Vec<VertexId> = match word.anchor {
        Some(v) => vec![v],
        None => (0..graph.vertex_count()).collect(),
    };
    let mut total = 0.0;
    for v in vertices {
        let value = vacuum_expectation(graph, basis, word, v)?;
        total += crate::arith::to_f64(&td.state[v]) * value;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq)]
pub struct WordComparison {
    pub word: Word,
    pub exact: f64,
    pub fock: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossValidation {
    pub tol: f64,
    pub entries: Vec<WordComparison>,
    pub max_deviation: f64,
    pub passed: bool,
}

/// Compares the exact moments against the Fock-space expectations.
pub fn cross_validate(
    graph: &WeightedGraph,
    td: &TracialData,
    words: &[Word],
    depth: usize,
    tol: f64,
) -> Result<CrossValidation> {
    let basis = build_basis(graph, depth)?;
    compare_engines(graph, td, graph, &basis, words, tol)
}

/// As [`cross_validate`], with the Fock side run on `fock_graph` (same
/// vertices and edge ids) over a prebuilt basis.
pub fn compare_engines(
    exact_graph: &WeightedGraph,
    td: &TracialData,
    fock_graph: &WeightedGraph,
    basis: &FockBasis,
    words: &[Word],
    tol: f64,
) -> Result<CrossValidation> {
    if let Some(w) = words.iter().find(|w| w.len() > basis.depth) {
        return Err(Error::WordExceedsDepth {
            len: w.len(),
            depth: basis.depth,
        });
    }
    let entries = words
        .par_iter()
        .map(|w| {
            let exact = moments::phi_moment(exact_graph, td, w)?.to_f64();
            let fock = state_expectation(fock_graph, td, basis, w)?;
            Ok(WordComparison {
                word: w.clone(),
                exact,
                fock,
                deviation: (exact - fock).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_deviation = entries.iter().map(|c| c.deviation).fold(0.0, f64::max);
    let passed = entries.iter().all(|c| c.deviation <= tol);
    Ok(CrossValidation {
        tol,
        entries,
        max_deviation,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};
    use crate::fixtures;
    use crate::lattice;

    #[test]
    fn basis_sizes() {
        let g = fixtures::base_case1(&int(6), &ratio(1, 3));
        let b = build_basis(&g, 1).unwrap();
        assert_eq!(b.len(), 6);
        let mut labels: Vec<String> = (0..b.len()).map(|i| b.label(&g, i)).collect();
        labels.sort();
        assert_eq!(labels, ["e1", "e1^op", "e2", "e2^op", "p_0", "p_1"]);
        assert_eq!(build_basis(&g, 0).unwrap().len(), 2);
        let g = fixtures::single_loop(&int(2));
        assert_eq!(build_basis(&g, 2).unwrap().len(), 7);
        assert_eq!(basis_size(&g, 2), 7);
    }

    #[test]
    fn cap_is_enforced() {
        let g = fixtures::base_case0(&[int(2), int(3)]);
        assert!(matches!(
            build_basis_capped(&g, 4, 100),
            Err(Error::BasisTooLarge(341))
        ));
    }

    #[test]
    fn path_indices_round_trip() {
        let g = fixtures::base_case0(&[int(2), int(3)]);
        let b = build_basis(&g, 3).unwrap();
        for i in 0..b.len() {
            let p = b.path(i);
            if !p.is_empty() {
                assert_eq!(b.path_index(&g, &p), Some(i));
            }
        }
        assert_eq!(b.in_edges(0).len(), 4);
    }

    #[test]
    fn y_on_basis_vectors() {
        let g = fixtures::base_case1(&int(6), &ratio(1, 3));
        let b = build_basis(&g, 2).unwrap();
        let e1 = g.edge_id("e1").unwrap();
        let e1op = g.op(e1);
        let y = y_operator(&g, &b, e1);
        // Y_e p_{t(e)} = e.
        let image = y.apply(&SparseVector::from([(1, 1.0)]));
        assert_eq!(
            image,
            SparseVector::from([(b.path_index(&g, &[e1]).unwrap(), 1.0)])
        );
        // Y_e e^op = √μ(e) p_{s(e)} + e ⊗ e^op.
        let x = b.path_index(&g, &[e1op]).unwrap();
        let image = y.apply(&SparseVector::from([(x, 1.0)]));
        let both = b.path_index(&g, &[e1, e1op]).unwrap();
        assert_eq!(image.len(), 2);
        assert!((image[&0] - 6f64.sqrt()).abs() < 1e-15);
        assert_eq!(image[&both], 1.0);
        // Y_e p_w = 0 for w ≠ t(e).
        assert!(y.apply(&SparseVector::from([(0, 1.0)])).is_empty());
    }

    #[test]
    fn vacuum_examples() {
        let g = fixtures::base_case1(&int(6), &ratio(1, 3));
        let b = build_basis(&g, 4).unwrap();
        let w = Word::parse(&g, "e1,e1^op").unwrap();
        let value = vacuum_expectation(&g, &b, &w, 0).unwrap();
        assert!((value - 2.449489742783178).abs() < 1e-15);
        let odd = Word::parse(&g, "e1,e1^op,e1").unwrap();
        assert!(vacuum_expectation(&g, &b, &odd, 0).unwrap().abs() < 1e-12);
        let non_loop = Word::parse(&g, "e1,e2,e1").unwrap();
        assert_eq!(vacuum_expectation(&g, &b, &non_loop, 0).unwrap(), 0.0);
        let long = Word::parse(&g, "e1,e2,e1,e2,e1").unwrap();
        assert!(matches!(
            vacuum_expectation(&g, &b, &long, 0),
            Err(Error::WordExceedsDepth { len: 5, depth: 4 })
        ));
    }

    #[test]
    fn adjoint_consistency() {
        let g = fixtures::base_case1(&int(6), &ratio(1, 3));
        let b = build_basis(&g, 3).unwrap();
        for e in 0..g.edge_count() {
            let y_star = y_operator(&g, &b, e).transpose();
            let direct = y_star_operator(&g, &b, e);
            let scaled = y_operator(&g, &b, g.op(e));
            let root = crate::arith::to_f64(g.weight(e)).sqrt();
            for r in 0..b.len() {
                for c in 0..b.len() {
                    assert!((y_star.get(r, c) - direct.get(r, c)).abs() <= 1e-12);
                    assert!((y_star.get(r, c) - root * scaled.get(r, c)).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn creation_annihilation_relation() {
        let g = fixtures::base_case0(&[int(2), ratio(1, 3)]);
        let depth = 3;
        let b = build_basis(&g, depth).unwrap();
        for e in 0..g.edge_count() {
            let create = creation_operator(&g, &b, e);
            for f in 0..g.edge_count() {
                let kill = annihilation_operator(&b, f);
                for col in (0..b.len()).filter(|&i| b.path(i).len() < depth) {
                    let image = kill.apply(&create.apply(&SparseVector::from([(col, 1.0)])));
                    let expected = if e == f && b.entries[col].source == g.target(e) {
                        SparseVector::from([(col, 1.0)])
                    } else {
                        SparseVector::new()
                    };
                    assert_eq!(image, expected);
                }
            }
        }
    }

    #[test]
    fn truncation_exactness_and_agreement() {
        let g = fixtures::base_case1(&int(6), &ratio(1, 3));
        let td = lattice::tracial_subgraph(&g, 0);
        let words: Vec<Word> = (0..2).flat_map(|v| moments::loop_words(&g, v, 6)).collect();
        let shallow = build_basis(&g, 6).unwrap();
        let deep = build_basis(&g, 8).unwrap();
        for w in &words {
            let v = w.anchor.unwrap();
            let a = vacuum_expectation(&g, &shallow, w, v).unwrap();
            let b = vacuum_expectation(&g, &deep, w, v).unwrap();
            assert!((a - b).abs() <= 1e-12);
        }
        let report = cross_validate(&g, &td, &words, 6, 1e-9).unwrap();
        assert!(report.passed, "max deviation {}", report.max_deviation);
    }

    #[test]
    fn corrupted_weight_is_detected() {
        let g = fixtures::base_case1(&int(6), &ratio(1, 3));
        let td = lattice::tracial_subgraph(&g, 0);
        let mut doc = g.to_document();
        doc.edges[0].weight = "7".into();
        let bad = WeightedGraph::from_document(&doc).unwrap();
        let basis = build_basis(&bad, 4).unwrap();
        let words = moments::loop_words(&g, 0, 4);
        let report = compare_engines(&g, &td, &bad, &basis, &words, 1e-9).unwrap();
        assert!(!report.passed);
        assert!(report.max_deviation > 1e-9);
    }
}
