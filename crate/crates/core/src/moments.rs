//! Exact moments of words in the edge operators `Y_e`.
//!
//! For a composable loop `e_1⋯e_n` at `v`,
//! `E(Y_{e_1}⋯Y_{e_n}) = α·p_v` where `α` sums `Π √μ(e_i)` over the
//! non-crossing pairings that match every `e_i` with `e_j = e_i^op` (`i < j`).
//! Any other word has zero conditional expectation.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::lattice::{self, TracialData};
use crate::surd::SurdScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub edge: EdgeId,
    pub star: bool,
}

/// A product `Y_{e_1}^{(*)}⋯Y_{e_n}^{(*)}`, optionally sandwiched as
/// `p_v ⋯ p_v`. The anchored empty word is `p_v` itself.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    pub letters: Vec<Letter>,
    pub anchor: Option<VertexId>,
}

impl Word {
    pub fn new(edges: &[EdgeId]) -> Self {
        Self::from_letters(
            edges
                .iter()
                .map(|&edge| Letter { edge, star: false })
                .collect(),
        )
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Self {
            letters,
            anchor: None,
        }
    }

    /// The vertex projection `p_v`.
    pub fn vertex(v: VertexId) -> Self {
        Self {
            letters: Vec::new(),
            anchor: Some(v),
        }
    }

    pub fn anchored(mut self, v: VertexId) -> Self {
        self.anchor = Some(v);
        self
    }

    /// Parses a comma-separated list of edge ids; a trailing `*` marks an
    /// adjoint, e.g. `e1,e2*,e1^op`.
    pub fn parse(graph: &WeightedGraph, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::default());
        }
        let letters = text
            .split(',')
            .map(|token| {
                let token = token.trim();
                let (id, star) = match token.strip_suffix('*') {
                    Some(id) => (id, true),
                    None => (token, false),
                };
                Ok(Letter {
                    edge: graph.edge_id(id)?,
                    star,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_letters(letters))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `(Y_{e_1}⋯Y_{e_n})* = Y_{e_n}*⋯Y_{e_1}*`.
    pub fn adjoint(&self) -> Self {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| Letter {
                edge: l.edge,
                star: !l.star,
            })
            .collect();
        Self {
            letters,
            anchor: self.anchor,
        }
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self {
            letters,
            anchor: self.anchor.or(other.anchor),
        }
    }

    /// Replaces each `Y_e*` by `√μ(e)·Y_{e^op}`, returning the accumulated
    /// prefactor and the star-free edge sequence.
    pub fn normalized(&self, graph: &WeightedGraph) -> Result<(SurdScalar, Vec<EdgeId>)> {
        let mut starred = BigRational::from_integer(1.into());
        let edges = self
            .letters
            .iter()
            .map(|l| {
                if l.star {
                    starred *= graph.weight(l.edge);
                    graph.op(l.edge)
                } else {
                    l.edge
                }
            })
            .collect();
        Ok((SurdScalar::sqrt_of(&starred)?, edges))
    }

    pub fn display<'a>(&'a self, graph: &'a WeightedGraph) -> WordDisplay<'a> {
        WordDisplay { word: self, graph }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    graph: &'a WeightedGraph,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return match self.word.anchor {
                Some(v) => write!(f, "p_{}", self.graph.vertex_name(v)),
                None => f.write_str("1"),
            };
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&self.graph.edge(l.edge).id)?;
            if l.star {
                f.write_str("*")?;
            }
        }
        Ok(())
    }
}

/// Base vertex when `edges` is a composable loop.
fn loop_base(graph: &WeightedGraph, edges: &[EdgeId]) -> Option<VertexId> {
    let (&first, &last) = (edges.first()?, edges.last()?);
    let composable = edges
        .windows(2)
        .all(|w| graph.target(w[0]) == graph.source(w[1]));
    (composable && graph.target(last) == graph.source(first)).then(|| graph.source(first))
}

/// Non-crossing pairing sum for a star-free edge sequence, by interval
/// dynamic programming over the first element's partner.
pub fn pairing_sum(graph: &WeightedGraph, edges: &[EdgeId]) -> Result<SurdScalar> {
    let n = edges.len();
    if n % 2 == 1 {
        return Ok(SurdScalar::zero());
    }
    let mut roots: BTreeMap<EdgeId, SurdScalar> = BTreeMap::new();
    for &e in edges {
        if let std::collections::btree_map::Entry::Vacant(slot) = roots.entry(e) {
            slot.insert(SurdScalar::sqrt_of(graph.weight(e))?);
        }
    }
    // table[i][j] holds the sum over [i, j); only even spans are filled.
    let mut table = vec![vec![SurdScalar::zero(); n + 1]; n + 1];
    for (i, row) in table.iter_mut().enumerate() {
        row[i] = SurdScalar::one();
    }
    for span in (2..=n).step_by(2) {
        for i in 0..=n - span {
            let j = i + span;
            let partner = graph.op(edges[i]);
            let mut acc = SurdScalar::zero();
            for k in (i + 1..j).step_by(2) {
                if edges[k] != partner {
                    continue;
                }
                let inner = &table[i + 1][k];
                let outer = &table[k + 1][j];
                if inner.is_zero() || outer.is_zero() {
                    continue;
                }
                acc += &(&(&roots[&edges[i]] * inner) * outer);
            }
            table[i][j] = acc;
        }
    }
    Ok(std::mem::take(&mut table[0][n]))
}

/// `α` with `E(word) = α·p_{s(e_1)}`; zero unless the word is a composable
/// loop (at the anchor, when one is set).
pub fn expectation_coefficient(graph: &WeightedGraph, word: &Word) -> Result<SurdScalar> {
    let (prefactor, edges) = word.normalized(graph)?;
    if edges.is_empty() {
        return Ok(SurdScalar::one());
    }
    match loop_base(graph, &edges) {
        Some(v) if word.anchor.is_none_or(|a| a == v) => {
            Ok(&prefactor * &pairing_sum(graph, &edges)?)
        }
        _ => Ok(SurdScalar::zero()),
    }
}

/// `φ(E(word))`.
pub fn phi_moment(graph: &WeightedGraph, td: &TracialData, word: &Word) -> Result<SurdScalar> {
    let (_, edges) = word.normalized(graph)?;
    if edges.is_empty() {
        return Ok(SurdScalar::from_rational(match word.anchor {
            Some(v) => td.state[v].clone(),
            None => td.total(),
        }));
    }
    let alpha = expectation_coefficient(graph, word)?;
    if alpha.is_zero() {
        return Ok(alpha);
    }
    Ok(alpha.scale(&td.state[graph.source(edges[0])]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenCheck {
    pub lhs: SurdScalar,
    pub rhs: SurdScalar,
    pub eigenvalue: BigRational,
    pub holds: bool,
}

/// Compares `φ(Y_e Q)` with `λ_e·φ(Q Y_e)`, `λ_e` the modular eigenvalue.
pub fn check_eigen_identity(
    graph: &WeightedGraph,
    td: &TracialData,
    e: EdgeId,
    q: &Word,
) -> Result<EigenCheck> {
    let ye = Word::new(&[e]);
    let lhs = phi_moment(graph, td, &ye.concat(q))?;
    let eigenvalue = lattice::edge_eigenvalue(graph, td, e);
    let rhs = phi_moment(graph, td, &q.concat(&ye))?.scale(&eigenvalue);
    let holds = lhs == rhs;
    Ok(EigenCheck {
        lhs,
        rhs,
        eigenvalue,
        holds,
    })
}

/// `G[i][j] = φ(w_i* w_j)` for loops `w_i` at `v`.
pub fn gram_matrix(
    graph: &WeightedGraph,
    td: &TracialData,
    words: &[Word],
    v: VertexId,
) -> Result<Vec<Vec<SurdScalar>>> {
    let mut anchored = Vec::with_capacity(words.len());
    for (index, w) in words.iter().enumerate() {
        let (_, edges) = w.normalized(graph)?;
        let at_v = if edges.is_empty() {
            w.anchor.is_none_or(|a| a == v)
        } else {
            loop_base(graph, &edges) == Some(v)
        };
        if !at_v || w.anchor.is_some_and(|a| a != v) {
            return Err(Error::VertexMismatch {
                index,
                vertex: graph.vertex_name(v).to_string(),
            });
        }
        anchored.push(w.clone().anchored(v));
    }
    let rows: Vec<usize> = (0..anchored.len()).collect();
    rows.par_iter()
        .map(|&i| {
            let left = anchored[i].adjoint();
            anchored
                .iter()
                .map(|w| phi_moment(graph, td, &left.concat(w)))
                .collect()
        })
        .collect()
}

/// Smallest eigenvalue of the float-cast Gram matrix; `None` when empty.
pub fn min_eigenvalue(gram: &[Vec<SurdScalar>]) -> Option<f64> {
    let n = gram.len();
    if n == 0 {
        return None;
    }
    let m = DMatrix::from_fn(n, n, |i, j| gram[i][j].to_f64());
    let sym = (&m + m.transpose()) * 0.5;
    sym.symmetric_eigenvalues().iter().copied().reduce(f64::min)
}

/// Every composable loop at `v` of length `≤ max_len`, including `p_v`,
/// shortest first and lexicographic within a length.
pub fn loop_words(graph: &WeightedGraph, v: VertexId, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::vertex(v)];
    let mut frontier: Vec<(Vec<EdgeId>, VertexId)> = vec![(Vec::new(), v)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (path, at) in &frontier {
            for &e in graph.out_edges(*at) {
                let mut p = path.clone();
                p.push(e);
                next.push((p, graph.target(e)));
            }
        }
        out.extend(
            next.iter()
                .filter(|(_, at)| *at == v)
                .map(|(p, _)| Word::new(p).anchored(v)),
        );
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};
    use crate::fixtures;
    use crate::graph::{EdgeSpec, GraphDocument};

    fn root(n: i64, d: i64) -> SurdScalar {
        SurdScalar::sqrt_of(&ratio(n, d)).unwrap()
    }

    fn word(g: &WeightedGraph, text: &str) -> Word {
        Word::parse(g, text).unwrap()
    }

    /// Brute-force pairing sum: every perfect matching, crossing ones dropped.
    fn brute_pairing_sum(g: &WeightedGraph, edges: &[EdgeId]) -> SurdScalar {
        fn go(
            g: &WeightedGraph,
            edges: &[EdgeId],
            pairs: &mut Vec<(usize, usize)>,
            out: &mut SurdScalar,
        ) {
            let free: Vec<usize> = (0..edges.len())
                .filter(|i| !pairs.iter().any(|&(a, b)| a == *i || b == *i))
                .collect();
            let Some(&i) = free.first() else {
                let crossing = pairs
                    .iter()
                    .any(|&(a, b)| pairs.iter().any(|&(c, d)| a < c && c < b && b < d));
                if !crossing && pairs.iter().all(|&(a, b)| edges[b] == g.op(edges[a])) {
                    let mut term = SurdScalar::one();
                    for &(a, _) in pairs.iter() {
                        term = &term * &SurdScalar::sqrt_of(g.weight(edges[a])).unwrap();
                    }
                    *out += &term;
                }
                return;
            };
            for &j in &free[1..] {
                pairs.push((i, j));
                go(g, edges, pairs, out);
                pairs.pop();
            }
        }
        let mut out = SurdScalar::zero();
        if edges.len().is_multiple_of(2) {
            go(g, edges, &mut Vec::new(), &mut out);
        }
        out
    }

    #[test]
    fn single_pairing() {
        let g = fixtures::base_case1(&int(6), &ratio(1, 3));
        let c = expectation_coefficient(&g, &word(&g, "e1,e1^op")).unwrap();
        assert_eq!(c, root(6, 1));
        assert_eq!(c.to_string(), "sqrt(6)");
    }

    #[test]
    fn odd_and_non_loop_words_vanish() {
        let g = fixtures::base_case0(&[int(2), int(3)]);
        assert!(expectation_coefficient(&g, &word(&g, "e1,e1^op,e2"))
            .unwrap()
            .is_zero());
        let g = fixtures::base_case1(&int(6), &ratio(1, 3));
        assert!(expectation_coefficient(&g, &word(&g, "e1,e2,e1"))
            .unwrap()
            .is_zero());
        assert!(expectation_coefficient(&g, &word(&g, "e1,e1"))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn only_nested_pairing_survives() {
        let g = fixtures::base_case0(&[int(2), int(3)]);
        let c = expectation_coefficient(&g, &word(&g, "e1,e2,e2^op,e1^op")).unwrap();
        assert_eq!(c, &root(2, 1) * &root(3, 1));
    }

    #[test]
    fn phi_moment_examples() {
        let g = fixtures::base_case1(&int(6), &ratio(1, 3));
        let td = lattice::tracial_subgraph(&g, 0);
        assert_eq!(
            phi_moment(&g, &td, &word(&g, "e1,e1^op")).unwrap(),
            root(6, 1)
        );
        let m = phi_moment(&g, &td, &word(&g, "e2,e2^op")).unwrap();
        assert_eq!(m.to_string(), "2*sqrt(3)");
        assert_eq!(
            phi_moment(&g, &td, &Word::vertex(1)).unwrap(),
            SurdScalar::from_rational(int(6))
        );
    }

    #[test]
    fn star_normalization() {
        let g = fixtures::base_case1(&int(6), &ratio(1, 3));
        let td = lattice::tracial_subgraph(&g, 0);
        // Y_{e1} Y_{e1}* = √6 · Y_{e1} Y_{e1^op}.
        let m = phi_moment(&g, &td, &word(&g, "e1,e1*")).unwrap();
        assert_eq!(m, SurdScalar::from_rational(int(6)));
        let (pre, edges) = word(&g, "e2*,e1*").normalized(&g).unwrap();
        assert_eq!(pre, root(2, 1));
        assert_eq!(
            edges,
            [
                g.op(g.edge_id("e2").unwrap()),
                g.op(g.edge_id("e1").unwrap())
            ]
        );
    }

    #[test]
    fn self_paired_edges_pair_with_themselves() {
        let doc = GraphDocument {
            vertices: vec!["0".into()],
            base: None,
            edges: vec![EdgeSpec::self_paired("s", "0")],
        };
        let g = WeightedGraph::from_document(&doc).unwrap();
        // Semicircular moments: Catalan numbers.
        let catalan = [1, 1, 2, 5, 14];
        for (k, &c) in catalan.iter().enumerate() {
            let w = Word::new(&vec![0; 2 * k]);
            assert_eq!(
                expectation_coefficient(&g, &w).unwrap(),
                SurdScalar::from_rational(int(c))
            );
        }
    }

    #[test]
    fn dynamic_programme_matches_brute_force() {
        let g = fixtures::base_case0(&[int(2), ratio(1, 3)]);
        let n = g.edge_count();
        for len in 0..=6usize {
            let mut idx = vec![0usize; len];
            loop {
                assert_eq!(
                    pairing_sum(&g, &idx).unwrap(),
                    brute_pairing_sum(&g, &idx),
                    "{idx:?}"
                );
                let mut k = 0;
                while k < len && idx[k] == n - 1 {
                    idx[k] = 0;
                    k += 1;
                }
                if k == len {
                    break;
                }
                idx[k] += 1;
            }
        }
    }

    #[test]
    fn eigen_identity_example() {
        let g = fixtures::base_case1(&int(6), &ratio(1, 3));
        let td = lattice::tracial_subgraph(&g, 0);
        let e2 = g.edge_id("e2").unwrap();
        let check = check_eigen_identity(&g, &td, e2, &word(&g, "e2^op")).unwrap();
        assert_eq!(check.lhs.to_string(), "2*sqrt(3)");
        assert_eq!(check.eigenvalue, int(2));
        assert!(check.holds);
        let e1 = g.edge_id("e1").unwrap();
        let check = check_eigen_identity(&g, &td, e1, &word(&g, "e1")).unwrap();
        assert!(check.lhs.is_zero() && check.holds);
    }

    #[test]
    fn gram_examples() {
        let g = fixtures::base_case1(&int(6), &ratio(1, 3));
        let td = lattice::tracial_subgraph(&g, 0);
        assert!(gram_matrix(&g, &td, &[], 0).unwrap().is_empty());
        let w = word(&g, "e1,e1^op");
        let gram = gram_matrix(&g, &td, std::slice::from_ref(&w), 0).unwrap();
        let direct = phi_moment(&g, &td, &w.adjoint().concat(&w)).unwrap();
        assert_eq!(gram, vec![vec![direct.clone()]]);
        // (Y_{e1^op})*(Y_{e1})* Y_{e1} Y_{e1^op} = √(1/6)√6 · Y_e1 Y_e1^op Y_e1 Y_e1^op.
        assert_eq!(direct, SurdScalar::from_rational(int(6) + int(1)));
        assert!(matches!(
            gram_matrix(&g, &td, &[w], 1),
            Err(Error::VertexMismatch { index: 0, .. })
        ));
    }

    #[test]
    fn gram_positivity_on_corpus() {
        for (name, g) in fixtures::corpus() {
            let td = lattice::tracial_subgraph(&g, 0);
            for v in 0..g.vertex_count() {
                let words = loop_words(&g, v, 3);
                let gram = gram_matrix(&g, &td, &words, v).unwrap();
                for (i, row) in gram.iter().enumerate() {
                    for (j, entry) in row.iter().enumerate() {
                        assert_eq!(*entry, gram[j][i], "{name}");
                    }
                }
                assert!(min_eigenvalue(&gram).unwrap() >= -1e-8, "{name} at {v}");
            }
        }
    }

    #[test]
    fn loop_word_enumeration() {
        let g = fixtures::single_loop(&int(2));
        let words = loop_words(&g, 0, 3);
        assert_eq!(words.len(), 1 + 2 + 4 + 8);
        assert_eq!(words[1].display(&g).to_string(), "e");
        assert_eq!(words[0].display(&g).to_string(), "p_0");
    }
}
