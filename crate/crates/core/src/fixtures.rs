//! Fixture graphs: bouquets, two-vertex cycles, n-cycles and parallel
//! edges, the tracial triangle, the balanced pair, and a seeded
//! random-graph generator.

use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::arith::{int, ratio};
use crate::graph::{EdgeSpec, GraphDocument, WeightedGraph};

fn build(vertices: Vec<String>, edges: Vec<EdgeSpec>) -> WeightedGraph {
    let doc = GraphDocument {
        vertices,
        base: None,
        edges,
    };
    WeightedGraph::from_document(&doc)
        .and_then(WeightedGraph::validated)
        .expect("fixture graphs are valid")
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Single vertex `0` with self-loop pairs `e1..en` of the given weights.
pub fn base_case0(weights: &[BigRational]) -> WeightedGraph {
    let edges = weights
        .iter()
        .enumerate()
        .map(|(i, w)| EdgeSpec::new(&format!("e{}", i + 1), "0", "0", w))
        .collect();
    build(names(1), edges)
}

/// Single self-loop pair `e` at vertex `0`.
pub fn single_loop(weight: &BigRational) -> WeightedGraph {
    build(names(1), vec![EdgeSpec::new("e", "0", "0", weight)])
}

/// Two vertices with `e1: 0→1` and `e2: 1→0`.
pub fn base_case1(mu1: &BigRational, mu2: &BigRational) -> WeightedGraph {
    build(
        names(2),
        vec![
            EdgeSpec::new("e1", "0", "1", mu1),
            EdgeSpec::new("e2", "1", "0", mu2),
        ],
    )
}

/// Two vertices with parallel edges `e_i: 0→1`.
pub fn switcheroo(weights: &[BigRational]) -> WeightedGraph {
    let edges = weights
        .iter()
        .enumerate()
        .map(|(i, w)| EdgeSpec::new(&format!("e{}", i + 1), "0", "1", w))
        .collect();
    build(names(2), edges)
}

/// The n-cycle `e_i = (i-1, i)`, vertices taken modulo n.
pub fn base_case3(weights: &[BigRational]) -> WeightedGraph {
    let n = weights.len();
    let edges = weights
        .iter()
        .enumerate()
        .map(|(i, w)| {
            EdgeSpec::new(
                &format!("e{}", i + 1),
                &i.to_string(),
                &((i + 1) % n).to_string(),
                w,
            )
        })
        .collect();
    build(names(n), edges)
}

/// Path `0 - 1 - ... - n` with edges `e_i: (i-1) → i`.
pub fn path_graph(weights: &[BigRational]) -> WeightedGraph {
    let edges = weights
        .iter()
        .enumerate()
        .map(|(i, w)| {
            EdgeSpec::new(
                &format!("e{}", i + 1),
                &i.to_string(),
                &(i + 1).to_string(),
                w,
            )
        })
        .collect();
    build(names(weights.len() + 1), edges)
}

/// Triangle with weights 2, 3, 1/6: every loop has weight 1.
pub fn tracial_triangle() -> WeightedGraph {
    base_case3(&[int(2), int(3), ratio(1, 6)])
}

/// One vertex, one self-loop pair of weight 2: balanced with δ = 5/2.
pub fn balanced_single() -> WeightedGraph {
    single_loop(&int(2))
}

/// Two vertices joined by edges of weights 2 and 1/2: balanced with δ = 5/2.
pub fn balanced_pair() -> WeightedGraph {
    build(
        names(2),
        vec![
            EdgeSpec::new("a", "0", "1", &int(2)),
            EdgeSpec::new("b", "0", "1", &ratio(1, 2)),
        ],
    )
}

/// The named fixture corpus shipped with the crate.
pub fn corpus() -> Vec<(&'static str, WeightedGraph)> {
    vec![
        ("base_case0", base_case0(&[int(2), ratio(3, 2)])),
        ("base_case1", base_case1(&int(6), &ratio(1, 3))),
        ("base_case1_no_atom", base_case1(&int(2), &int(3))),
        (
            "base_case3",
            base_case3(&[int(3), ratio(1, 2), int(2), ratio(1, 2)]),
        ),
        ("switcheroo", switcheroo(&[int(4), int(6), int(8)])),
        ("tracial_triangle", tracial_triangle()),
        ("balanced_single", balanced_single()),
        ("balanced_pair", balanced_pair()),
    ]
}

/// Weight pool for random graphs.
pub fn weight_pool() -> Vec<BigRational> {
    [
        (1, 1),
        (2, 1),
        (1, 2),
        (3, 1),
        (1, 3),
        (3, 2),
        (2, 3),
        (4, 1),
        (1, 4),
        (6, 1),
        (5, 4),
        (9, 8),
        (1, 6),
        (5, 2),
    ]
    .into_iter()
    .map(|(n, d)| ratio(n, d))
    .collect()
}

#[derive(Clone, Debug)]
pub struct RandomGraphConfig {
    pub max_vertices: usize,
    pub max_pairs: usize,
    /// Probability that an extra pair is a self-loop.
    pub self_loop_rate: f64,
}

impl Default for RandomGraphConfig {
    fn default() -> Self {
        Self {
            max_vertices: 8,
            max_pairs: 12,
            self_loop_rate: 0.2,
        }
    }
}

/// Random connected graph: a random spanning tree plus extra edge pairs,
/// weights drawn from [`weight_pool`].
pub fn random_graph<R: Rng>(rng: &mut R, config: &RandomGraphConfig) -> WeightedGraph {
    let pool = weight_pool();
    let n = rng.gen_range(1..=config.max_vertices);
    let tree_pairs = n - 1;
    let max_pairs = config.max_pairs.max(tree_pairs.max(1));
    let total = rng.gen_range(tree_pairs.max(1)..=max_pairs);
    let mut edges = Vec::with_capacity(total);
    let mut order: Vec<usize> = (0..n).collect();
    order[1..].shuffle(rng);
    let mut next_id = 0;
    let mut fresh_id = || {
        next_id += 1;
        format!("e{:02}", next_id)
    };
    for i in 1..n {
        let (a, b) = (order[i], order[rng.gen_range(0..i)]);
        let (s, t) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        let w = pool.choose(rng).unwrap();
        edges.push(EdgeSpec::new(
            &fresh_id(),
            &s.to_string(),
            &t.to_string(),
            w,
        ));
    }
    while edges.len() < total {
        let id = fresh_id();
        if rng.gen_bool(config.self_loop_rate) {
            let v = rng.gen_range(0..n).to_string();
            if rng.gen_bool(0.25) {
                edges.push(EdgeSpec::self_paired(&id, &v));
            } else {
                edges.push(EdgeSpec::new(&id, &v, &v, pool.choose(rng).unwrap()));
            }
        } else if n > 1 {
            let s = rng.gen_range(0..n);
            let mut t = rng.gen_range(0..n - 1);
            if t >= s {
                t += 1;
            }
            let w = pool.choose(rng).unwrap();
            edges.push(EdgeSpec::new(&id, &s.to_string(), &t.to_string(), w));
        } else {
            edges.push(EdgeSpec::new(&id, "0", "0", pool.choose(rng).unwrap()));
        }
    }
    build(names(n), edges)
}

/// A random weight from the pool other than one.
pub fn random_nontrivial_weight<R: Rng>(rng: &mut R) -> BigRational {
    let pool: Vec<BigRational> = weight_pool().into_iter().filter(|w| !w.is_one()).collect();
    pool.choose(rng).unwrap().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn corpus_is_valid() {
        for (name, g) in corpus() {
            assert!(validate(&g).is_empty(), "{name}");
        }
    }

    #[test]
    fn random_graphs_are_valid_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cfg = RandomGraphConfig::default();
        for _ in 0..200 {
            let g = random_graph(&mut rng, &cfg);
            assert!(validate(&g).is_empty());
            assert!(g.vertex_count() <= 8);
            assert!(g.edge_pairs().len() <= 12);
        }
    }
}
