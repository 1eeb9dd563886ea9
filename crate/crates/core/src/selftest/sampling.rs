//! Seeded random inputs: rationals, words, spanning trees, relabelings.

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::arith::ratio;
use crate::graph::{EdgeId, EdgeSpec, GraphDocument, VertexId, WeightedGraph};
use crate::lattice::SpanningTree;
use crate::moments::{Letter, Word};

/// `p/q` with `1 ≤ p, q ≤ max`.
pub fn rational<R: Rng>(rng: &mut R, max: i64) -> BigRational {
    ratio(rng.gen_range(1..=max), rng.gen_range(1..=max))
}

/// A random rational strictly above one.
pub fn rational_above_one<R: Rng>(rng: &mut R, max: i64) -> BigRational {
    loop {
        let r = rational(rng, max);
        if r > ratio(1, 1) {
            return r;
        }
    }
}

/// Random loop at `v` of length `2·pairs` built from a random Dyck path:
/// each up-step takes a random out-edge, the matching down-step its `op`.
/// Such words always have a nonzero moment.
pub fn dyck_loop<R: Rng>(
    rng: &mut R,
    graph: &WeightedGraph,
    v: VertexId,
    pairs: usize,
) -> Vec<EdgeId> {
    let mut out = Vec::with_capacity(2 * pairs);
    let mut open: Vec<EdgeId> = Vec::new();
    let mut at = v;
    let mut remaining = pairs;
    while remaining > 0 || !open.is_empty() {
        let can_open = remaining > 0 && !graph.out_edges(at).is_empty();
        if can_open && (open.is_empty() || rng.gen_bool(0.5)) {
            let e = *graph.out_edges(at).choose(rng).expect("nonempty");
            open.push(e);
            out.push(e);
            at = graph.target(e);
            remaining -= 1;
        } else if let Some(e) = open.pop() {
            let back = graph.op(e);
            out.push(back);
            at = graph.target(back);
        } else {
            break;
        }
    }
    out
}

/// Random walk of `len` edges from `v`; stops early at a sink.
pub fn walk<R: Rng>(rng: &mut R, graph: &WeightedGraph, v: VertexId, len: usize) -> Vec<EdgeId> {
    let mut out = Vec::with_capacity(len);
    let mut at = v;
    for _ in 0..len {
        let Some(&e) = graph.out_edges(at).choose(rng) else {
            break;
        };
        out.push(e);
        at = graph.target(e);
    }
    out
}

/// Any edge sequence, composable or not.
pub fn scramble<R: Rng>(rng: &mut R, graph: &WeightedGraph, len: usize) -> Vec<EdgeId> {
    (0..len)
        .map(|_| rng.gen_range(0..graph.edge_count()))
        .collect()
}

/// Rewrites some letters `Y_e` as `Y_{e^op}*`, which is the same operator up
/// to the scalar `√μ(e^op)`.
pub fn sprinkle_stars<R: Rng>(
    rng: &mut R,
    graph: &WeightedGraph,
    edges: &[EdgeId],
    rate: f64,
) -> Word {
    Word::from_letters(
        edges
            .iter()
            .map(|&e| {
                if rng.gen_bool(rate) {
                    Letter {
                        edge: graph.op(e),
                        star: true,
                    }
                } else {
                    Letter {
                        edge: e,
                        star: false,
                    }
                }
            })
            .collect(),
    )
}

/// Random word of length `≤ max_len`: half Dyck loops, a quarter walks, a
/// quarter arbitrary sequences; a fifth of the letters starred.
pub fn random_word<R: Rng>(rng: &mut R, graph: &WeightedGraph, max_len: usize) -> Word {
    let v = rng.gen_range(0..graph.vertex_count());
    let edges = match rng.gen_range(0..4) {
        0 | 1 => {
            let pairs = rng.gen_range(0..=max_len / 2);
            dyck_loop(rng, graph, v, pairs)
        }
        2 => {
            let len = rng.gen_range(0..=max_len);
            walk(rng, graph, v, len)
        }
        _ => {
            let len = rng.gen_range(0..=max_len);
            scramble(rng, graph, len)
        }
    };
    sprinkle_stars(rng, graph, &edges, 0.2)
}

/// Uniformly shuffled Kruskal tree over the edge pairs, rooted at `base`.
pub fn random_spanning_tree<R: Rng>(
    rng: &mut R,
    graph: &WeightedGraph,
    base: VertexId,
) -> SpanningTree {
    let mut pairs = graph.edge_pairs();
    pairs.shuffle(rng);
    let mut parent: Vec<usize> = (0..graph.vertex_count()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut chosen = Vec::new();
    for e in pairs {
        let (a, b) = (
            find(&mut parent, graph.source(e)),
            find(&mut parent, graph.target(e)),
        );
        if a != b {
            parent[a] = b;
            chosen.push(e);
        }
    }
    SpanningTree::from_pairs(graph, base, &chosen).expect("connected graph")
}

/// The same graph under fresh random vertex names and edge ids.
pub fn relabel<R: Rng>(rng: &mut R, graph: &WeightedGraph) -> WeightedGraph {
    let doc = graph.to_document();
    let mut vertex_names: Vec<usize> = (0..doc.vertices.len()).collect();
    vertex_names.shuffle(rng);
    let rename_vertex = |name: &str| {
        let i = doc
            .vertices
            .iter()
            .position(|v| v == name)
            .expect("listed vertex");
        format!("w{}", vertex_names[i])
    };
    let mut edge_names: Vec<usize> = (0..doc.edges.len()).collect();
    edge_names.shuffle(rng);
    let rename_edge = |id: &str| {
        let i = doc
            .edges
            .iter()
            .position(|e| e.id == id)
            .expect("listed edge");
        format!("f{}", edge_names[i])
    };
    let edges = doc
        .edges
        .iter()
        .map(|e| EdgeSpec {
            id: rename_edge(&e.id),
            source: rename_vertex(&e.source),
            target: rename_vertex(&e.target),
            weight: e.weight.clone(),
            self_paired: e.self_paired,
            op: e.op.as_deref().map(rename_edge),
        })
        .collect();
    let doc = GraphDocument {
        vertices: doc.vertices.iter().map(|v| rename_vertex(v)).collect(),
        base: doc.base.as_deref().map(rename_vertex),
        edges,
    };
    WeightedGraph::from_document(&doc).expect("relabeling preserves structure")
}

/// Lists `op(e)` in place of every listed edge `e`.
pub fn reverse_orientation(graph: &WeightedGraph) -> WeightedGraph {
    let listed: Vec<EdgeId> = graph.edge_pairs();
    let edges = listed
        .iter()
        .map(|&e| {
            let op = graph.op(e);
            if op == e {
                let mut spec =
                    EdgeSpec::self_paired(&graph.edge(e).id, graph.vertex_name(graph.source(e)));
                spec.weight = crate::arith::format_rational(graph.weight(e));
                spec
            } else {
                EdgeSpec::new(
                    &format!("rev_{}", graph.edge(e).id),
                    graph.vertex_name(graph.source(op)),
                    graph.vertex_name(graph.target(op)),
                    graph.weight(op),
                )
            }
        })
        .collect();
    let doc = GraphDocument {
        vertices: graph.vertex_names().to_vec(),
        base: None,
        edges,
    };
    WeightedGraph::from_document(&doc).expect("reversal preserves structure")
}
