//! JSON renderings of reports. Rationals are written as `"p/q"` strings.

use serde::Serialize;

use crate::arith::format_rational;
use crate::classify::{Diffuse, IsoClassReport};
use crate::fock::CrossValidation;
use crate::graph::{Violation, WeightedGraph};
use crate::lattice::{CycleLattice, TracialData};
use crate::moments::EigenCheck;
use crate::surd::SurdScalar;
use crate::tl::{Calibration, InclusionReport, TracialityRow};

pub const SCHEMA: &str = "graphvn-report/1";

#[derive(Serialize)]
pub struct GroupJson {
    pub rank: usize,
    pub generators: Vec<String>,
    pub primes: Vec<u64>,
    pub basis: Vec<Vec<String>>,
}

impl GroupJson {
    pub fn new(group: &CycleLattice) -> Self {
        Self {
            rank: group.rank(),
            generators: group.generators().iter().map(format_rational).collect(),
            primes: group.primes().to_vec(),
            basis: group
                .basis()
                .iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct VertexValue {
    pub vertex: String,
    pub value: String,
}

#[derive(Serialize)]
pub struct StateJson {
    pub schema: &'static str,
    pub base: String,
    pub tree: Vec<String>,
    pub tracial_edges: Vec<String>,
    pub state: Vec<VertexValue>,
    pub total: String,
    pub eigenvalues: Vec<EdgeValue>,
}

#[derive(Serialize)]
pub struct EdgeValue {
    pub edge: String,
    pub value: String,
}

fn edge_names(graph: &WeightedGraph, edges: impl IntoIterator<Item = usize>) -> Vec<String> {
    edges
        .into_iter()
        .map(|e| graph.edge(e).id.clone())
        .collect()
}

impl StateJson {
    pub fn new(graph: &WeightedGraph, td: &TracialData) -> Self {
        Self {
            schema: SCHEMA,
            base: graph.vertex_name(td.base).to_string(),
            tree: edge_names(graph, td.tree.iter().copied()),
            tracial_edges: edge_names(graph, td.tr_edges.iter().copied()),
            state: td
                .state
                .iter()
                .enumerate()
                .map(|(v, s)| VertexValue {
                    vertex: graph.vertex_name(v).to_string(),
                    value: format_rational(s),
                })
                .collect(),
            total: format_rational(&td.total()),
            eigenvalues: (0..graph.edge_count())
                .map(|e| EdgeValue {
                    edge: graph.edge(e).id.clone(),
                    value: format_rational(&crate::lattice::edge_eigenvalue(graph, td, e)),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiffuseJson {
    FreeArakiWoods {
        generators: Vec<String>,
        weight: String,
    },
    Tracial {
        is_factor: bool,
        reason: String,
        weight: String,
        parameter: &'static str,
    },
    Absent,
}

#[derive(Serialize)]
pub struct AtomJson {
    pub vertex: String,
    pub mass: String,
    pub deficiency: String,
}

#[derive(Serialize)]
pub struct LoopJson {
    pub edges: Vec<String>,
    pub weight: String,
}

#[derive(Serialize)]
pub struct ClassifyJson {
    pub schema: &'static str,
    pub normalized: bool,
    pub group: GroupJson,
    pub base: String,
    pub tracial_tree: Vec<String>,
    pub state_total: String,
    pub diffuse: DiffuseJson,
    pub atoms: Vec<AtomJson>,
    pub base_loop: Option<LoopJson>,
}

impl ClassifyJson {
    pub fn new(graph: &WeightedGraph, report: &IsoClassReport) -> Self {
        let diffuse = match &report.diffuse {
            Diffuse::FreeArakiWoods { generators, weight } => DiffuseJson::FreeArakiWoods {
                generators: generators.iter().map(format_rational).collect(),
                weight: format_rational(weight),
            },
            Diffuse::Tracial {
                is_factor,
                reason,
                weight,
            } => DiffuseJson::Tracial {
                is_factor: *is_factor,
                reason: reason.clone(),
                weight: format_rational(weight),
                parameter: "unspecified",
            },
            Diffuse::Absent => DiffuseJson::Absent,
        };
        Self {
            schema: SCHEMA,
            normalized: report.normalized,
            group: GroupJson::new(&report.group),
            base: graph.vertex_name(report.tracial.base).to_string(),
            tracial_tree: edge_names(graph, report.tracial.tree.iter().copied()),
            state_total: format_rational(&report.state_total),
            diffuse,
            atoms: report
                .atoms
                .iter()
                .map(|a| AtomJson {
                    vertex: graph.vertex_name(a.vertex).to_string(),
                    mass: format_rational(&a.mass),
                    deficiency: format_rational(&a.deficiency),
                })
                .collect(),
            base_loop: report.base_loop.as_ref().map(|p| LoopJson {
                edges: p.ids(graph),
                weight: format_rational(p.weight()),
            }),
        }
    }
}

#[derive(Serialize)]
pub struct ValidateJson {
    pub schema: &'static str,
    pub valid: bool,
    pub vertices: usize,
    pub edges: usize,
    pub violations: Vec<Violation>,
}

impl ValidateJson {
    pub fn new(graph: &WeightedGraph, violations: &[Violation]) -> Self {
        Self {
            schema: SCHEMA,
            valid: violations.is_empty(),
            vertices: graph.vertex_count(),
            edges: graph.edge_count(),
            violations: violations.to_vec(),
        }
    }
}

/// A float as a 15-significant-digit string and as a full-precision number.
#[derive(Serialize)]
pub struct FloatJson {
    pub float: String,
    pub value: f64,
}

impl FloatJson {
    pub fn new(x: f64) -> Self {
        Self {
            float: crate::arith::format_sig15(x),
            value: x,
        }
    }
}

/// Exact value with its float renderings.
#[derive(Serialize)]
pub struct SurdJson {
    pub exact: String,
    #[serde(flatten)]
    pub approx: FloatJson,
}

impl SurdJson {
    pub fn new(x: &SurdScalar) -> Self {
        Self {
            exact: x.to_string(),
            approx: FloatJson::new(x.to_f64()),
        }
    }
}

#[derive(Serialize)]
pub struct MomentJson {
    pub schema: &'static str,
    pub word: String,
    pub coefficient: SurdJson,
    pub moment: SurdJson,
    pub fock: FloatJson,
    pub depth: usize,
    pub deviation: f64,
    pub tol: f64,
    pub agrees: bool,
}

#[derive(Serialize)]
pub struct EigenJson {
    pub schema: &'static str,
    pub edge: String,
    pub word: String,
    pub eigenvalue: String,
    pub lhs: SurdJson,
    pub rhs: SurdJson,
    pub holds: bool,
}

impl EigenJson {
    pub fn new(edge: &str, word: String, check: &EigenCheck) -> Self {
        Self {
            schema: SCHEMA,
            edge: edge.to_string(),
            word,
            eigenvalue: format_rational(&check.eigenvalue),
            lhs: SurdJson::new(&check.lhs),
            rhs: SurdJson::new(&check.rhs),
            holds: check.holds,
        }
    }
}

#[derive(Serialize)]
pub struct CrossJson {
    pub words: usize,
    pub max_deviation: f64,
    pub tol: f64,
    pub passed: bool,
}

impl CrossJson {
    pub fn new(report: &CrossValidation) -> Self {
        Self {
            words: report.entries.len(),
            max_deviation: report.max_deviation,
            tol: report.tol,
            passed: report.passed,
        }
    }
}

#[derive(Serialize)]
pub struct CandidateJson {
    pub exponent: String,
    pub normalization: &'static str,
    pub reproduces_trace: bool,
}

#[derive(Serialize)]
pub struct DiagramJson {
    pub diagram: String,
    pub n: usize,
    pub first: String,
    pub second: String,
    pub trace: String,
    pub graph_independent: bool,
    pub matches_trace: bool,
}

#[derive(Serialize)]
pub struct InclusionJson {
    pub exponent: String,
    pub normalization: &'static str,
    pub passed: bool,
    pub diagrams: Vec<DiagramJson>,
}

impl InclusionJson {
    pub fn new(report: &InclusionReport) -> Self {
        Self {
            exponent: report.exponent.to_string(),
            normalization: report.normalization.name(),
            passed: report.passed,
            diagrams: report
                .rows
                .iter()
                .map(|r| DiagramJson {
                    diagram: r.diagram.to_string(),
                    n: r.diagram.n(),
                    first: r.first.to_string(),
                    second: r.second.to_string(),
                    trace: format_rational(&r.trace),
                    graph_independent: r.graph_independent,
                    matches_trace: r.matches_trace,
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct TracialityJson {
    pub pairs: usize,
    pub holds: bool,
    pub failures: Vec<String>,
}

impl TracialityJson {
    pub fn new(rows: &[TracialityRow]) -> Self {
        let failures: Vec<String> = rows
            .iter()
            .filter(|r| r.forward != r.backward)
            .map(|r| format!("{} {}", r.left, r.right))
            .collect();
        Self {
            pairs: rows.len(),
            holds: failures.is_empty(),
            failures,
        }
    }
}

#[derive(Serialize)]
pub struct TlCheckJson {
    pub schema: &'static str,
    pub delta: String,
    pub calibration: Vec<CandidateJson>,
    pub calibrated: InclusionJson,
    pub control: InclusionJson,
    pub traciality: TracialityJson,
}

impl TlCheckJson {
    pub fn new(
        calibration: &Calibration,
        calibrated: &InclusionReport,
        control: &InclusionReport,
        traciality: &[TracialityRow],
    ) -> Self {
        Self {
            schema: SCHEMA,
            delta: format_rational(&calibrated.delta),
            calibration: calibration
                .candidates
                .iter()
                .map(|(a, norm, ok)| CandidateJson {
                    exponent: a.to_string(),
                    normalization: norm.name(),
                    reproduces_trace: *ok,
                })
                .collect(),
            calibrated: InclusionJson::new(calibrated),
            control: InclusionJson::new(control),
            traciality: TracialityJson::new(traciality),
        }
    }
}
