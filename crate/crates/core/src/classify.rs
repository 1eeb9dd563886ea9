//! Isomorphism-class reports.
//!
//! With `H` nontrivial the algebra is a free Araki–Woods factor `T_H` plus one
//! atom `r_v ≤ p_v` for every vertex whose out-weight sum is below one, of
//! mass `φ(p_v)·(1 - Σ_{s(e)=v} μ(e))`. With `H` trivial the state is a trace
//! and only factoriality and the same atoms are reported.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{self, Path, VertexId, WeightedGraph};
use crate::lattice::{self, CycleLattice, TracialData};

#[derive(Clone, Debug, PartialEq)]
pub enum Diffuse {
    FreeArakiWoods {
        generators: Vec<BigRational>,
        weight: BigRational,
    },
    Tracial {
        is_factor: bool,
        reason: String,
        weight: BigRational,
    },
    Absent,
}

impl Diffuse {
    pub fn weight(&self) -> BigRational {
        match self {
            Diffuse::FreeArakiWoods { weight, .. } | Diffuse::Tracial { weight, .. } => {
                weight.clone()
            }
            Diffuse::Absent => BigRational::zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub vertex: VertexId,
    pub mass: BigRational,
    pub deficiency: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsoClassReport {
    pub group: CycleLattice,
    pub tracial: TracialData,
    /// `Σ_v φ(p_v)` for the unnormalized state.
    pub state_total: BigRational,
    pub diffuse: Diffuse,
    pub atoms: Vec<Atom>,
    pub base_loop: Option<Path>,
    /// When set, `diffuse` and `atoms` carry masses divided by `state_total`.
    pub normalized: bool,
}

impl IsoClassReport {
    pub fn atom_total(&self) -> BigRational {
        self.atoms.iter().map(|a| &a.mass).sum()
    }

    pub fn atom_at(&self, v: VertexId) -> Option<&Atom> {
        self.atoms.iter().find(|a| a.vertex == v)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ClassifyOptions {
    pub normalize: bool,
    /// Base vertex for the state; overrides the base-loop rule.
    pub base: Option<VertexId>,
}

/// `1 - Σ_{s(e)=v} μ(e)`, summed over every edge leaving `v`.
pub fn deficiency(graph: &WeightedGraph, v: VertexId) -> BigRational {
    BigRational::one() - graph.out_weight(v)
}

/// `φ(p_v)·max(0, 1 - Σ_{s(e)=v} μ(e))`.
pub fn atom_mass(graph: &WeightedGraph, td: &TracialData, v: VertexId) -> BigRational {
    let d = deficiency(graph, v);
    if d.is_positive() {
        &td.state[v] * d
    } else {
        BigRational::zero()
    }
}

/// Rotation index `i` such that every prefix product of
/// `weights[i], weights[i+1], …` (cyclically) is at least one.
///
/// Finds the cyclic segment of minimal product and starts right after it.
pub fn rotate_loop(weights: &[BigRational]) -> Result<usize> {
    let n = weights.len();
    if n == 0 {
        return Err(Error::PreconditionViolated("empty weight list".into()));
    }
    let total: BigRational = weights.iter().product();
    if total < BigRational::one() {
        return Err(Error::PreconditionViolated(
            "weights multiply to less than one".into(),
        ));
    }
    let mut best: Option<(BigRational, usize)> = None;
    for start in 0..n {
        let mut product = BigRational::one();
        for len in 1..=n {
            product *= &weights[(start + len - 1) % n];
            if best.as_ref().is_none_or(|(b, _)| product < *b) {
                best = Some((product.clone(), (start + len) % n));
            }
        }
    }
    let (minimum, after) = best.expect("nonempty");
    Ok(if minimum >= BigRational::one() {
        0
    } else {
        after
    })
}

/// Minimal-length simple loop of weight ≠ 1, oriented to weight > 1 and
/// rotated so all prefix products are ≥ 1. `None` iff `H` is trivial.
pub fn select_base_loop(graph: &WeightedGraph) -> Option<Path> {
    (1..=graph.vertex_count()).find_map(|len| {
        let candidate = graph::simple_loops_of_length(graph, len)
            .into_iter()
            .find(|p| !p.weight().is_one())?;
        let oriented = if *candidate.weight() < BigRational::one() {
            candidate.reversed(graph)
        } else {
            candidate
        };
        let weights: Vec<BigRational> = oriented
            .edges()
            .iter()
            .map(|&e| graph.weight(e).clone())
            .collect();
        let start = rotate_loop(&weights).expect("oriented loop has weight > 1");
        Some(oriented.rotated(graph, start))
    })
}

pub fn classify(graph: &WeightedGraph) -> Result<IsoClassReport> {
    classify_with(graph, &ClassifyOptions::default())
}

pub fn classify_with(graph: &WeightedGraph, options: &ClassifyOptions) -> Result<IsoClassReport> {
    let group = lattice::cycle_group(graph)?;
    let base_loop = if group.is_trivial() {
        None
    } else {
        select_base_loop(graph)
    };
    let td = match (options.base, &base_loop) {
        (Some(base), _) => lattice::tracial_subgraph(graph, base),
        // Γ_Tr must contain all but the last edge of the base loop.
        (None, Some(sigma)) => {
            let edges = sigma.edges();
            lattice::tracial_subgraph_seeded(graph, sigma.source(), &edges[..edges.len() - 1])?
        }
        (None, None) => lattice::tracial_subgraph(graph, 0),
    };
    let report = classify_with_state(graph, group, td, base_loop);
    Ok(if options.normalize {
        normalized(report)
    } else {
        report
    })
}

/// Assembles the report for a given group and tracial data.
pub fn classify_with_state(
    graph: &WeightedGraph,
    group: CycleLattice,
    td: TracialData,
    base_loop: Option<Path>,
) -> IsoClassReport {
    let state_total = td.total();
    let atoms: Vec<Atom> = (0..graph.vertex_count())
        .filter_map(|v| {
            let d = deficiency(graph, v);
            d.is_positive().then(|| Atom {
                vertex: v,
                mass: &td.state[v] * &d,
                deficiency: d,
            })
        })
        .collect();
    let weight = &state_total - atoms.iter().map(|a| &a.mass).sum::<BigRational>();
    let diffuse = if weight.is_zero() {
        Diffuse::Absent
    } else if group.is_trivial() {
        let (is_factor, reason) = tracial_factoriality(graph);
        Diffuse::Tracial {
            is_factor,
            reason,
            weight,
        }
    } else {
        Diffuse::FreeArakiWoods {
            generators: group.generators(),
            weight,
        }
    };
    IsoClassReport {
        group,
        tracial: td,
        state_total,
        diffuse,
        atoms,
        base_loop,
        normalized: false,
    }
}

/// Factor iff there are at least two edge pairs and every out-weight sum is
/// at least one.
fn tracial_factoriality(graph: &WeightedGraph) -> (bool, String) {
    let pairs = graph.edge_pairs().len();
    if pairs < 2 {
        return (
            false,
            format!("only {pairs} edge pair(s); a factor needs at least two"),
        );
    }
    if let Some(v) = (0..graph.vertex_count()).find(|&v| graph.out_weight(v) < BigRational::one()) {
        return (
            false,
            format!(
                "out-weight sum at vertex `{}` is below 1",
                graph.vertex_name(v)
            ),
        );
    }
    (
        true,
        "at least two edge pairs and every out-weight sum is at least 1".into(),
    )
}

/// Divides every mass by the total state.
pub fn normalized(mut report: IsoClassReport) -> IsoClassReport {
    if report.normalized {
        return report;
    }
    let total = report.state_total.clone();
    for atom in &mut report.atoms {
        atom.mass = &atom.mass / &total;
    }
    match &mut report.diffuse {
        Diffuse::FreeArakiWoods { weight, .. } | Diffuse::Tracial { weight, .. } => {
            *weight = &*weight / &total;
        }
        Diffuse::Absent => {}
    }
    report.normalized = true;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};
    use crate::fixtures;

    #[test]
    fn base_case1_report() {
        let g = fixtures::base_case1(&int(6), &ratio(1, 3));
        let r = classify(&g).unwrap();
        assert_eq!(r.group.generators(), [int(2)]);
        assert_eq!(r.atoms.len(), 1);
        assert_eq!(r.atoms[0].vertex, 1);
        assert_eq!(r.atoms[0].deficiency, ratio(1, 2));
        assert_eq!(r.atoms[0].mass, int(3));
        assert_eq!(
            r.diffuse,
            Diffuse::FreeArakiWoods {
                generators: vec![int(2)],
                weight: int(4)
            }
        );
        assert_eq!(r.state_total, int(7));
        assert_eq!(r.base_loop.as_ref().unwrap().ids(&g), ["e1", "e2"]);
        let n = normalized(r);
        assert_eq!(n.atoms[0].mass, ratio(3, 7));
        assert_eq!(n.diffuse.weight(), ratio(4, 7));
    }

    #[test]
    fn atom_masses_base_case1() {
        let g = fixtures::base_case1(&int(6), &ratio(1, 3));
        let td = lattice::tracial_subgraph(&g, 0);
        assert_eq!(atom_mass(&g, &td, 1), int(3));
        assert_eq!(deficiency(&g, 0), int(-8));
        assert_eq!(atom_mass(&g, &td, 0), int(0));
    }

    #[test]
    fn no_atoms_when_out_weights_reach_one() {
        let g = fixtures::base_case0(&[int(2), ratio(3, 2)]);
        let r = classify(&g).unwrap();
        assert!(r.atoms.is_empty());
        assert!(matches!(r.diffuse, Diffuse::FreeArakiWoods { .. }));
        assert_eq!(r.diffuse.weight(), r.state_total);
    }

    #[test]
    fn tracial_triangle_report() {
        let g = fixtures::tracial_triangle();
        let r = classify(&g).unwrap();
        assert!(r.group.is_trivial());
        assert!(r.base_loop.is_none());
        // Out-weights: vertex 0: 2 + 6, vertex 1: 3 + 1/2, vertex 2: 1/6 + 1/3.
        let atoms: Vec<_> = r.atoms.iter().map(|a| (a.vertex, a.mass.clone())).collect();
        assert_eq!(atoms, [(2, int(6) * ratio(1, 2))]);
        match &r.diffuse {
            Diffuse::Tracial {
                is_factor, weight, ..
            } => {
                assert!(!is_factor);
                assert_eq!(*weight, int(9) - int(3));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tracial_factor_and_degenerate_cases() {
        let g = fixtures::base_case0(&[int(1), int(1)]);
        match classify(&g).unwrap().diffuse {
            Diffuse::Tracial { is_factor, .. } => assert!(is_factor),
            other => panic!("{other:?}"),
        }
        let g = fixtures::path_graph(&[int(2)]);
        let r = classify(&g).unwrap();
        match &r.diffuse {
            Diffuse::Tracial {
                is_factor, reason, ..
            } => {
                assert!(!is_factor);
                assert!(reason.contains("edge pair"));
            }
            other => panic!("{other:?}"),
        }
        let lonely = fixtures::base_case0(&[]);
        let r = classify(&lonely).unwrap();
        assert_eq!(r.diffuse, Diffuse::Absent);
        assert_eq!(r.atoms[0].mass, int(1));
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(rotate_loop(&[ratio(1, 2), int(3), int(1)]).unwrap(), 1);
        assert_eq!(rotate_loop(&[int(2), int(2)]).unwrap(), 0);
        assert_eq!(rotate_loop(&[ratio(1, 4), int(4)]).unwrap(), 1);
        assert!(matches!(
            rotate_loop(&[ratio(1, 2), int(1)]),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn base_loop_selection() {
        let g = fixtures::tracial_triangle();
        assert!(select_base_loop(&g).is_none());
        let g = fixtures::single_loop(&ratio(1, 2));
        let sigma = select_base_loop(&g).unwrap();
        assert_eq!(sigma.ids(&g), ["e^op"]);
        assert_eq!(*sigma.weight(), int(2));
    }

    #[test]
    fn base_case3_atoms_follow_the_cycle_formula() {
        let mu = [int(3), ratio(1, 2), int(2), ratio(1, 2)];
        let g = fixtures::base_case3(&mu);
        let sigma = select_base_loop(&g).unwrap();
        let mut prefix = int(1);
        for &e in sigma.edges() {
            prefix *= g.weight(e);
            assert!(prefix >= int(1));
        }
        let seed: Vec<_> = ["e1", "e2", "e3"]
            .iter()
            .map(|n| g.edge_id(n).unwrap())
            .collect();
        let td = lattice::tracial_subgraph_seeded(&g, 0, &seed).unwrap();
        let group = lattice::cycle_group(&g).unwrap();
        assert!(group.same_group(&CycleLattice::from_generators(&[ratio(3, 2)]).unwrap()));
        let r = classify_with_state(&g, group, td, Some(sigma));
        let mut phi = int(1);
        for i in 1..mu.len() {
            phi *= &mu[i - 1];
            let d = int(1) - &mu[i] - mu[i - 1].recip();
            let expected = if d > int(0) { Some(&phi * &d) } else { None };
            assert_eq!(r.atom_at(i).map(|a| a.mass.clone()), expected, "vertex {i}");
        }
        assert!(r.atom_at(0).is_none());
    }
}
