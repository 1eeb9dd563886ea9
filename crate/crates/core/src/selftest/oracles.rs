//! Closed-form expectations for the standard graph shapes and brute-force references,
//! written independently of the library code paths they check.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::graph::{EdgeId, VertexId, WeightedGraph};

fn one() -> BigRational {
    BigRational::one()
}

/// Closed-form description of one standard-shape instance.
#[derive(Clone, Debug)]
pub struct ShapeExpectation {
    /// Generators of `H` in closed form.
    pub generators: Vec<BigRational>,
    /// `φ(p_v)` for the reference tracial tree.
    pub state: Vec<BigRational>,
    /// Edge names of that tree, rooted at vertex `0`.
    pub tree: Vec<String>,
    /// `(vertex, mass)` for every atom.
    pub atoms: Vec<(VertexId, BigRational)>,
}

/// Two vertices, `e1: 0→1`, `e2: 1→0`, with `μ1 > 1`.
pub fn base_case1(mu1: &BigRational, mu2: &BigRational) -> ShapeExpectation {
    let mass = mu1 * (one() - mu1.recip() - mu2);
    ShapeExpectation {
        generators: vec![mu1 * mu2],
        state: vec![one(), mu1.clone()],
        tree: vec!["e1".into()],
        atoms: if mass > BigRational::zero() {
            vec![(1, mass)]
        } else {
            vec![]
        },
    }
}

/// The n-cycle with all prefix products `μ1⋯μk ≥ 1` and `μ1⋯μn > 1`.
pub fn base_case3(mu: &[BigRational]) -> ShapeExpectation {
    let n = mu.len();
    let prefix: Vec<BigRational> = (0..n)
        .map(|i| mu[..i].iter().fold(one(), |acc, m| acc * m))
        .collect();
    let atoms = (1..n)
        .filter_map(|i| {
            // vertex i sits between e_i (in) and e_{i+1} (out)
            let mass = &prefix[i] * (one() - &mu[i] - mu[i - 1].recip());
            (mass > BigRational::zero()).then_some((i, mass))
        })
        .collect();
    ShapeExpectation {
        generators: vec![mu.iter().fold(one(), |acc, m| acc * m)],
        state: prefix,
        tree: (1..n).map(|i| format!("e{i}")).collect(),
        atoms,
    }
}

/// Parallel edges `e_i: 0→1` with `μ(e1) > 1`.
pub fn switcheroo(mu: &[BigRational]) -> ShapeExpectation {
    let reciprocal_sum: BigRational = mu.iter().map(|m| m.recip()).sum();
    let mass = &mu[0] * (one() - reciprocal_sum);
    ShapeExpectation {
        generators: mu[1..].iter().map(|m| &mu[0] / m).collect(),
        state: vec![one(), mu[0].clone()],
        tree: vec!["e1".into()],
        atoms: if mass > BigRational::zero() {
            vec![(1, mass)]
        } else {
            vec![]
        },
    }
}

/// One vertex carrying self-loop pairs.
pub fn base_case0(mu: &[BigRational]) -> ShapeExpectation {
    ShapeExpectation {
        generators: mu.to_vec(),
        state: vec![one()],
        tree: vec![],
        atoms: vec![],
    }
}

/// Every start index whose cyclic prefix products are all `≥ 1`.
pub fn valid_rotations(weights: &[BigRational]) -> Vec<usize> {
    let n = weights.len();
    (0..n)
        .filter(|&start| {
            let mut product = one();
            (0..n).all(|k| {
                product *= &weights[(start + k) % n];
                product >= one()
            })
        })
        .collect()
}

/// Vertex potential recomputed by depth-first search over the tree edges,
/// taken in either direction.
pub fn tree_potential(graph: &WeightedGraph, base: VertexId, tree: &[EdgeId]) -> Vec<BigRational> {
    let mut state: Vec<Option<BigRational>> = vec![None; graph.vertex_count()];
    state[base] = Some(one());
    let mut stack = vec![base];
    while let Some(v) = stack.pop() {
        let here = state[v].clone().expect("visited");
        for &e in tree {
            let (s, t, w) = (graph.source(e), graph.target(e), graph.weight(e));
            let step = if s == v {
                Some((t, &here * w))
            } else if t == v {
                Some((s, &here / w))
            } else {
                None
            };
            if let Some((u, value)) = step {
                if state[u].is_none() {
                    state[u] = Some(value);
                    stack.push(u);
                }
            }
        }
    }
    state.into_iter().map(|s| s.expect("tree spans")).collect()
}

/// `Σ_v φ(p_v)·max(0, 1 − Σ_{s(e)=v} μ(e))`, summed by scanning all edges.
pub fn atom_masses(graph: &WeightedGraph, state: &[BigRational]) -> Vec<BigRational> {
    let mut out_sum = vec![BigRational::zero(); graph.vertex_count()];
    for e in 0..graph.edge_count() {
        out_sum[graph.source(e)] += graph.weight(e);
    }
    out_sum
        .into_iter()
        .zip(state)
        .map(|(s, phi)| {
            let d = one() - s;
            if d > BigRational::zero() {
                phi * d
            } else {
                BigRational::zero()
            }
        })
        .collect()
}

/// Nested-interval free dimension for the three-block decomposition, written out from
/// its closed form `1 + b²/(a+b)² − (b−a)²/(a+b)²`.
pub fn three_block_amplified(a: &BigRational, b: &BigRational) -> BigRational {
    let s = (a + b) * (a + b);
    one() + b * b / &s - (b - a) * (b - a) / &s
}
