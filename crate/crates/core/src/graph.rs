//! Weighted directed graphs with an edge involution, plus path and loop
//! combinatorics.
//!
//! A graph document lists one edge per `{e, e^op}` pair; the partner edge is
//! synthesized with id `<id>^op` unless the edge is self-paired or names its
//! partner explicitly through `"op"`. Vertices and edges are stored sorted by
//! id, so every traversal in the crate is deterministic.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: String,
    pub source: String,
    pub target: String,
    pub weight: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub self_paired: bool,
    /// Explicit partner edge; when absent the partner is synthesized.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op: Option<String>,
}

impl EdgeSpec {
    pub fn new(id: &str, source: &str, target: &str, weight: &BigRational) -> Self {
        Self {
            id: id.into(),
            source: source.into(),
            target: target.into(),
            weight: arith::format_rational(weight),
            self_paired: false,
            op: None,
        }
    }

    pub fn self_paired(id: &str, vertex: &str) -> Self {
        Self {
            self_paired: true,
            ..Self::new(id, vertex, vertex, &BigRational::one())
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub id: String,
    pub source: VertexId,
    pub target: VertexId,
    pub weight: BigRational,
    pub op: EdgeId,
    pub self_paired: bool,
    /// True when the edge was created as the partner of a listed edge.
    pub synthesized: bool,
}

#[derive(Clone, Debug)]
pub struct WeightedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    base: Option<VertexId>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    out: Vec<Vec<EdgeId>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    EmptyGraph,
    Disconnected,
    OpNotInvolution,
    OpEndpoints,
    OpWeight,
    SelfOpWithoutFlag,
    SelfPairedNotLoop,
    SelfPairedWeight,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub subject: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.subject, self.message)
    }
}

impl WeightedGraph {
    /// Parses and validates a JSON graph document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_document(&doc)?.validated()
    }

    /// Builds the graph structure without checking the weighting axioms; see
    /// [`validate`].
    pub fn from_document(doc: &GraphDocument) -> Result<Self> {
        let mut vertices = doc.vertices.clone();
        vertices.sort();
        if let Some(dup) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Parse(format!("duplicate vertex `{}`", dup[0])));
        }
        let vertex_index: HashMap<String, VertexId> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let vertex = |name: &str| {
            vertex_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };

        let listed: HashMap<&str, &EdgeSpec> =
            doc.edges.iter().map(|e| (e.id.as_str(), e)).collect();
        if listed.len() != doc.edges.len() {
            return Err(Error::Parse("duplicate edge id".into()));
        }
        // Edges named as somebody's explicit partner never get a synthesized one.
        let mut referenced_by: HashMap<&str, &str> = HashMap::new();
        for spec in &doc.edges {
            if let Some(op) = &spec.op {
                if !listed.contains_key(op.as_str()) {
                    return Err(Error::UnknownEdge(op.clone()));
                }
                referenced_by.entry(op.as_str()).or_insert(spec.id.as_str());
            }
        }

        // (id, source, target, weight, op id, self_paired, synthesized)
        let mut raw = Vec::new();
        for spec in &doc.edges {
            let (s, t) = (vertex(&spec.source)?, vertex(&spec.target)?);
            let w = arith::parse_positive_rational(&spec.weight)?;
            let op_id = if spec.self_paired {
                spec.id.clone()
            } else if let Some(op) = &spec.op {
                op.clone()
            } else if let Some(&by) = referenced_by.get(spec.id.as_str()) {
                by.to_string()
            } else {
                let synth = format!("{}^op", spec.id);
                if listed.contains_key(synth.as_str()) {
                    return Err(Error::Parse(format!(
                        "edge `{synth}` collides with the synthesized partner of `{}`",
                        spec.id
                    )));
                }
                raw.push((synth.clone(), t, s, w.recip(), spec.id.clone(), false, true));
                synth
            };
            raw.push((spec.id.clone(), s, t, w, op_id, spec.self_paired, false));
        }
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let edge_index: HashMap<String, EdgeId> = raw
            .iter()
            .enumerate()
            .map(|(i, r)| (r.0.clone(), i))
            .collect();
        let edges: Vec<Edge> = raw
            .into_iter()
            .map(
                |(id, source, target, weight, op, self_paired, synthesized)| Edge {
                    op: edge_index[&op],
                    id,
                    source,
                    target,
                    weight,
                    self_paired,
                    synthesized,
                },
            )
            .collect();

        let mut out = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.source].push(i);
        }
        let base = doc.base.as_deref().map(vertex).transpose()?;
        Ok(Self {
            vertices,
            edges,
            base,
            vertex_index,
            edge_index,
            out,
        })
    }

    pub fn validated(self) -> Result<Self> {
        let violations = validate(&self);
        if violations.is_empty() {
            Ok(self)
        } else {
            Err(Error::Invalid(violations))
        }
    }

    /// Document listing one edge per pair (the non-synthesized member).
    pub fn to_document(&self) -> GraphDocument {
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.synthesized)
            .map(|e| {
                let mut spec = EdgeSpec::new(
                    &e.id,
                    &self.vertices[e.source],
                    &self.vertices[e.target],
                    &e.weight,
                );
                spec.self_paired = e.self_paired;
                let op = &self.edges[e.op];
                if !e.self_paired && !op.synthesized {
                    spec.op = Some(op.id.clone());
                }
                spec
            })
            .collect();
        GraphDocument {
            vertices: self.vertices.clone(),
            base: self.base.map(|b| self.vertices[b].clone()),
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_id(&self, name: &str) -> Result<EdgeId> {
        self.edge_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    /// Base vertex named in the document, if any.
    pub fn document_base(&self) -> Option<VertexId> {
        self.base
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e].source
    }

    pub fn target(&self, e: EdgeId) -> VertexId {
        self.edges[e].target
    }

    pub fn weight(&self, e: EdgeId) -> &BigRational {
        &self.edges[e].weight
    }

    pub fn op(&self, e: EdgeId) -> EdgeId {
        self.edges[e].op
    }

    /// Edges with source `v`, in id order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v]
    }

    /// One representative per `{e, e^op}` pair (the smaller index).
    pub fn edge_pairs(&self) -> Vec<EdgeId> {
        (0..self.edges.len()).filter(|&e| e <= self.op(e)).collect()
    }

    /// `Σ_{s(e)=v} μ(e)`, over every edge sourced at `v`.
    pub fn out_weight(&self, v: VertexId) -> BigRational {
        self.out[v].iter().map(|&e| self.weight(e).clone()).sum()
    }
}

/// Checks every weighting axiom; an empty list means the graph is valid.
pub fn validate(graph: &WeightedGraph) -> Vec<Violation> {
    let mut found = BTreeSet::new();
    let mut flag = |kind, subject: &str, message: String| {
        found.insert(Violation {
            kind,
            subject: subject.to_string(),
            message,
        });
    };
    if graph.vertices.is_empty() {
        flag(
            ViolationKind::EmptyGraph,
            "graph",
            "graph has no vertices".into(),
        );
    }
    for e in &graph.edges {
        let op = &graph.edges[e.op];
        if graph.edges[op.op].id != e.id {
            flag(
                ViolationKind::OpNotInvolution,
                &e.id,
                format!("op(op({})) = {} ≠ {}", e.id, graph.edges[op.op].id, e.id),
            );
        }
        if op.id == e.id && !e.self_paired {
            flag(
                ViolationKind::SelfOpWithoutFlag,
                &e.id,
                "op(e) = e but the edge is not marked self_paired".into(),
            );
        }
        if op.source != e.target || op.target != e.source {
            flag(
                ViolationKind::OpEndpoints,
                &e.id,
                format!("op `{}` does not reverse the endpoints", op.id),
            );
        }
        if op.weight != e.weight.recip() {
            flag(
                ViolationKind::OpWeight,
                &e.id,
                format!(
                    "weight(op) ≠ weight^{{-1}}: {} vs {}",
                    arith::format_rational(&op.weight),
                    arith::format_rational(&e.weight)
                ),
            );
        }
        if e.self_paired {
            if !e.weight.is_one() {
                flag(
                    ViolationKind::SelfPairedWeight,
                    &e.id,
                    format!(
                        "self-paired weight must be 1, got {}",
                        arith::format_rational(&e.weight)
                    ),
                );
            }
            if e.source != e.target {
                flag(
                    ViolationKind::SelfPairedNotLoop,
                    &e.id,
                    "self-paired edge must be a self-loop".into(),
                );
            }
        }
    }
    if !graph.vertices.is_empty() {
        let mut seen = vec![false; graph.vertices.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for e in &graph.edges {
                let next = if e.source == v {
                    e.target
                } else if e.target == v {
                    e.source
                } else {
                    continue;
                };
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        let unreached: Vec<&str> = seen
            .iter()
            .zip(&graph.vertices)
            .filter(|(s, _)| !**s)
            .map(|(_, v)| v.as_str())
            .collect();
        if !unreached.is_empty() {
            flag(
                ViolationKind::Disconnected,
                "graph",
                format!(
                    "vertices not connected to `{}`: {}",
                    graph.vertices[0],
                    unreached.join(", ")
                ),
            );
        }
    }
    found.into_iter().collect()
}

/// A nonempty composable edge sequence with its endpoints and weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    edges: Vec<EdgeId>,
    source: VertexId,
    target: VertexId,
    weight: BigRational,
}

impl Path {
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn weight(&self) -> &BigRational {
        &self.weight
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }

    /// `op` of each edge, in reverse order.
    pub fn reversed(&self, graph: &WeightedGraph) -> Path {
        let edges: Vec<EdgeId> = self.edges.iter().rev().map(|&e| graph.op(e)).collect();
        compose_ids(graph, &edges).expect("reverse of a path is a path")
    }

    /// The loop read starting from position `start`.
    pub fn rotated(&self, graph: &WeightedGraph, start: usize) -> Path {
        debug_assert!(self.is_loop());
        let n = self.edges.len();
        let edges: Vec<EdgeId> = (0..n).map(|i| self.edges[(start + i) % n]).collect();
        compose_ids(graph, &edges).expect("rotation of a loop is a loop")
    }

    pub fn ids(&self, graph: &WeightedGraph) -> Vec<String> {
        self.edges
            .iter()
            .map(|&e| graph.edge(e).id.clone())
            .collect()
    }
}

pub fn compose(graph: &WeightedGraph, ids: &[&str]) -> Result<Path> {
    let edges = ids
        .iter()
        .map(|id| graph.edge_id(id))
        .collect::<Result<Vec<_>>>()?;
    compose_ids(graph, &edges)
}

pub fn compose_ids(graph: &WeightedGraph, edges: &[EdgeId]) -> Result<Path> {
    let (&first, &last) = match (edges.first(), edges.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => {
            return Err(Error::PreconditionViolated(
                "a path needs at least one edge".into(),
            ))
        }
    };
    let mut weight = graph.weight(first).clone();
    for (i, pair) in edges.windows(2).enumerate() {
        if graph.target(pair[0]) != graph.source(pair[1]) {
            return Err(Error::NonComposable(i));
        }
        weight *= graph.weight(pair[1]);
    }
    Ok(Path {
        edges: edges.to_vec(),
        source: graph.source(first),
        target: graph.target(last),
        weight,
    })
}

/// Loops of length exactly `len` that revisit no vertex except the base, for
/// every base vertex, in lexicographic order of edge ids.
pub fn simple_loops_of_length(graph: &WeightedGraph, len: usize) -> Vec<Path> {
    let mut found = Vec::new();
    let mut stack = Vec::with_capacity(len);
    let mut on_path = vec![false; graph.vertex_count()];
    for base in 0..graph.vertex_count() {
        on_path[base] = true;
        extend_simple(graph, base, base, len, &mut stack, &mut on_path, &mut found);
        on_path[base] = false;
    }
    found.sort();
    found
        .into_iter()
        .map(|edges| compose_ids(graph, &edges).expect("enumerated loops compose"))
        .collect()
}

fn extend_simple(
    graph: &WeightedGraph,
    base: VertexId,
    at: VertexId,
    len: usize,
    stack: &mut Vec<EdgeId>,
    on_path: &mut [bool],
    found: &mut Vec<Vec<EdgeId>>,
) {
    for &e in graph.out_edges(at) {
        let next = graph.target(e);
        stack.push(e);
        if stack.len() == len {
            if next == base {
                found.push(stack.clone());
            }
        } else if !on_path[next] {
            on_path[next] = true;
            extend_simple(graph, base, next, len, stack, on_path, found);
            on_path[next] = false;
        }
        stack.pop();
    }
}

/// All simple loops of length `1..=max_len`, in lexicographic order of edge
/// ids. Backtracks `e·e^op` are included.
pub fn simple_loops(graph: &WeightedGraph, max_len: usize) -> Vec<Path> {
    let mut loops: Vec<Path> = (1..=max_len.min(graph.vertex_count()))
        .flat_map(|len| simple_loops_of_length(graph, len))
        .collect();
    loops.sort_by(|a, b| a.edges.cmp(&b.edges));
    loops
}
