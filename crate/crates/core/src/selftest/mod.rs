//! The acceptance suite: nine seeded end-to-end checks over the closed-form
//! shapes, random graphs and the fixture corpus.
//!
//! Each check returns an [`Outcome`]; the CLI `selftest` command and the
//! `acceptance` test target both run [`run_all`].

pub mod oracles;
pub mod sampling;

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{format_rational, ratio};
use crate::classify::{self, Diffuse};
use crate::fdim::{self, ComplementShape};
use crate::fixtures::{self, RandomGraphConfig};
use crate::fock;
use crate::graph::{EdgeId, WeightedGraph};
use crate::lattice::{self, CycleLattice, SpanningTree, TracialData};
use crate::moments::{self, Word};
use crate::tl::{self, Pointed};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {}: {} ({:.2?}) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed,
            self.detail
        )
    }
}

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn lift<T, E: fmt::Display>(
    r: std::result::Result<T, E>,
    what: &str,
) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

pub type Criterion = fn(u64) -> Check;

pub const CRITERIA: [(&str, Criterion); 9] = [
    (
        "closed-form shapes reproduce H and atom masses",
        shape_fixtures,
    ),
    (
        "atoms vanish when out-weights are >= 1; mass is conserved",
        mass_conservation,
    ),
    (
        "H is independent of tree, labels and orientation",
        group_canonicality,
    ),
    ("edge operators are modular eigenoperators", eigen_identity),
    ("exact moments agree with the Fock simulator", dual_oracle),
    (
        "loop Gram matrices are positive semidefinite",
        gram_positivity,
    ),
    ("loop rotation starts at a valid index", rotation),
    ("free-dimension identities hold exactly", free_dimension),
    ("Temperley-Lieb inclusion is trace preserving", tl_bridge),
];

pub fn run(id: usize, seed: u64) -> Outcome {
    let (title, check) = CRITERIA[id - 1];
    let start = Instant::now();
    let result = check(seed.wrapping_add(id as u64));
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome {
        id,
        title,
        passed,
        detail,
        elapsed,
    }
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    (1..=CRITERIA.len()).map(|id| run(id, seed)).collect()
}

fn edge_ids(graph: &WeightedGraph, names: &[String]) -> Vec<EdgeId> {
    names
        .iter()
        .map(|n| graph.edge_id(n).expect("tree edge"))
        .collect()
}

fn rationals<R: Rng>(rng: &mut R, n: usize, max: i64) -> Vec<BigRational> {
    (0..n).map(|_| sampling::rational(rng, max)).collect()
}

/// Checks one instance against its closed form, both under the reference
/// tracial tree and under the default classifier run.
fn check_shape(name: &str, graph: &WeightedGraph, expected: &oracles::ShapeExpectation) -> Check {
    let start = Instant::now();
    let report = lift(classify::classify(graph), name)?;
    let elapsed = start.elapsed();
    ensure!(
        elapsed < Duration::from_secs(1),
        "{name}: classify took {elapsed:?}"
    );

    let stated = lift(CycleLattice::from_generators(&expected.generators), name)?;
    ensure!(
        report.group.same_group(&stated),
        "{name}: H generated by {:?}, expected {:?}",
        report
            .group
            .generators()
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>(),
        expected
            .generators
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
    );

    let tree = lift(
        SpanningTree::from_pairs(graph, 0, &edge_ids(graph, &expected.tree)),
        name,
    )?;
    let td = TracialData::from_tree(graph, &tree);
    ensure!(
        td.state == expected.state,
        "{name}: state {:?} differs from the closed form",
        td.state
    );
    let reference = classify::classify_with_state(graph, report.group.clone(), td, None);
    let atoms: Vec<_> = reference
        .atoms
        .iter()
        .map(|a| (a.vertex, a.mass.clone()))
        .collect();
    ensure!(
        atoms == expected.atoms,
        "{name}: atoms {atoms:?}, expected {:?}",
        expected.atoms
    );
    ensure!(
        matches!(reference.diffuse, Diffuse::FreeArakiWoods { .. }),
        "{name}: diffuse part is not free Araki-Woods"
    );

    let present: Vec<_> = report.atoms.iter().map(|a| a.vertex).collect();
    let expected_present: Vec<_> = expected.atoms.iter().map(|a| a.0).collect();
    ensure!(
        present == expected_present,
        "{name}: default classifier places atoms at {present:?}, expected {expected_present:?}"
    );
    Ok(String::new())
}

fn shape_fixtures(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per_shape = 100;
    let mut atoms_seen = 0;
    let mut count = |e: &oracles::ShapeExpectation| atoms_seen += e.atoms.len();

    for _ in 0..per_shape {
        let mu1 = sampling::rational_above_one(&mut rng, 12);
        let mu2 = loop {
            let m = sampling::rational(&mut rng, 12);
            if &mu1 * &m > BigRational::one() {
                break m;
            }
        };
        let expected = oracles::base_case1(&mu1, &mu2);
        count(&expected);
        check_shape("base_case1", &fixtures::base_case1(&mu1, &mu2), &expected)?;
    }

    for i in 0..per_shape {
        let n = 3 + i % 4;
        let mu = loop {
            let mut mu = rationals(&mut rng, n, 6);
            let product: BigRational = mu.iter().product();
            if product.is_one() {
                continue;
            }
            if product < BigRational::one() {
                mu.iter_mut().for_each(|m| *m = m.recip());
            }
            let valid = oracles::valid_rotations(&mu);
            let start = valid[rng.gen_range(0..valid.len())];
            mu.rotate_left(start);
            break mu;
        };
        let expected = oracles::base_case3(&mu);
        count(&expected);
        check_shape("base_case3", &fixtures::base_case3(&mu), &expected)?;
    }

    for i in 0..per_shape {
        let n = 2 + i % 4;
        let mu = loop {
            let mut mu = rationals(&mut rng, n, 8);
            mu[0] = sampling::rational_above_one(&mut rng, 8);
            if mu.iter().any(|m| *m != mu[0]) {
                break mu;
            }
        };
        let expected = oracles::switcheroo(&mu);
        count(&expected);
        check_shape("switcheroo", &fixtures::switcheroo(&mu), &expected)?;
    }

    for i in 0..per_shape {
        let n = 1 + i % 4;
        let mu = loop {
            let mu = rationals(&mut rng, n, 9);
            if mu.iter().any(|m| !m.is_one()) {
                break mu;
            }
        };
        let graph = fixtures::base_case0(&mu);
        let expected = oracles::base_case0(&mu);
        check_shape("base_case0", &graph, &expected)?;
        let report = lift(classify::classify(&graph), "base_case0")?;
        ensure!(
            report.atoms.is_empty() && report.diffuse.weight() == report.state_total,
            "base_case0: not purely free Araki-Woods"
        );
    }
    Ok(format!(
        "{} instances, {atoms_seen} atoms matched",
        4 * per_shape
    ))
}

/// Classifies `graph` and checks the atoms and conservation law against the
/// oracle. Returns whether every out-weight sum is at least one.
fn check_masses(name: &str, graph: &WeightedGraph) -> std::result::Result<bool, String> {
    let report = lift(classify::classify(graph), name)?;
    let td = &report.tracial;
    let state = oracles::tree_potential(graph, td.base, &td.tree);
    ensure!(
        state == td.state,
        "{name}: state differs from the tree potential"
    );
    let masses = oracles::atom_masses(graph, &state);
    for (v, m) in masses.iter().enumerate() {
        let got = report
            .atom_at(v)
            .map_or_else(BigRational::zero, |a| a.mass.clone());
        ensure!(
            got == *m,
            "{name}: atom at vertex {v} is {got}, expected {m}"
        );
    }
    let total: BigRational = state.iter().sum();
    ensure!(
        report.diffuse.weight() + report.atom_total() == total,
        "{name}: diffuse + atoms != total state"
    );
    let saturated = (0..graph.vertex_count()).all(|v| graph.out_weight(v) >= BigRational::one());
    if saturated {
        ensure!(
            report.atoms.is_empty(),
            "{name}: atoms despite out-weights >= 1"
        );
    }
    Ok(saturated)
}

fn mass_conservation(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut saturated = 0;
    for (name, graph) in fixtures::corpus() {
        saturated += usize::from(check_masses(name, &graph)?);
    }
    let config = RandomGraphConfig::default();
    let samples = 500;
    for i in 0..samples {
        let graph = fixtures::random_graph(&mut rng, &config);
        saturated += usize::from(check_masses(&format!("random graph {i}"), &graph)?);
    }
    Ok(format!(
        "{} graphs, {saturated} with all out-weights >= 1",
        samples + fixtures::corpus().len()
    ))
}

fn same_hnf(a: &CycleLattice, b: &CycleLattice) -> bool {
    a.primes() == b.primes() && a.basis() == b.basis()
}

fn group_canonicality(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let config = RandomGraphConfig::default();
    let samples = 200;
    let budget = Duration::from_secs(30);
    let start = Instant::now();
    let mut comparisons = 0;
    for i in 0..samples {
        let graph = fixtures::random_graph(&mut rng, &config);
        let reference = lift(lattice::cycle_group(&graph), "cycle group")?;
        let mut variants = Vec::new();
        for _ in 0..5 {
            let base = rng.gen_range(0..graph.vertex_count());
            let tree = sampling::random_spanning_tree(&mut rng, &graph, base);
            variants.push(("random tree", lattice::cycle_group_from_tree(&graph, &tree)));
        }
        for v in 0..graph.vertex_count() {
            let tree = lift(SpanningTree::breadth_first(&graph, v, &[]), "tree")?;
            variants.push((
                "breadth-first tree",
                lattice::cycle_group_from_tree(&graph, &tree),
            ));
        }
        let relabeled = sampling::relabel(&mut rng, &graph);
        variants.push(("relabeling", lattice::cycle_group(&relabeled)));
        let reversed = sampling::reverse_orientation(&graph);
        variants.push(("reversal", lattice::cycle_group(&reversed)));
        variants.push((
            "relabeled reversal",
            lattice::cycle_group(&sampling::reverse_orientation(&relabeled)),
        ));
        for (what, group) in variants {
            let group = lift(group, what)?;
            ensure!(
                same_hnf(&reference, &group),
                "graph {i}: {what} changes the HNF basis"
            );
            comparisons += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < budget, "took {elapsed:?}, budget {budget:?}");
    Ok(format!("{samples} graphs, {comparisons} comparisons"))
}

fn eigen_identity(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let config = RandomGraphConfig {
        max_vertices: 6,
        max_pairs: 9,
        self_loop_rate: 0.2,
    };
    let samples = 1000;
    let mut nonzero = 0;
    let mut tracial_edges = 0;
    for i in 0..samples {
        let graph = fixtures::random_graph(&mut rng, &config);
        let base = rng.gen_range(0..graph.vertex_count());
        let td = TracialData::from_tree(
            &graph,
            &sampling::random_spanning_tree(&mut rng, &graph, base),
        );
        for e in 0..graph.edge_count() {
            let is_one = lattice::edge_eigenvalue(&graph, &td, e).is_one();
            ensure!(
                is_one == td.contains(e),
                "graph {i}: eigenvalue 1 iff edge {e} in tracial subgraph"
            );
            tracial_edges += usize::from(is_one);
        }
        let e = rng.gen_range(0..graph.edge_count());
        let q_edges = match rng.gen_range(0..3) {
            0 => {
                let inner_pairs = rng.gen_range(0..=3);
                let tail_pairs = rng.gen_range(0..=3 - inner_pairs);
                let mut q = sampling::dyck_loop(&mut rng, &graph, graph.target(e), inner_pairs);
                q.push(graph.op(e));
                q.extend(sampling::dyck_loop(
                    &mut rng,
                    &graph,
                    graph.source(e),
                    tail_pairs,
                ));
                q
            }
            1 => {
                let len = rng.gen_range(0..=8);
                sampling::walk(&mut rng, &graph, graph.target(e), len)
            }
            _ => {
                let len = rng.gen_range(0..=8);
                sampling::scramble(&mut rng, &graph, len)
            }
        };
        let q = sampling::sprinkle_stars(&mut rng, &graph, &q_edges, 0.2);
        let check = lift(
            moments::check_eigen_identity(&graph, &td, e, &q),
            "eigen check",
        )?;
        ensure!(
            check.holds,
            "graph {i}, edge {}: lhs {} != rhs {}",
            graph.edge(e).id,
            check.lhs,
            check.rhs
        );
        nonzero += usize::from(!check.lhs.is_zero());
    }
    Ok(format!(
        "{samples} samples ({nonzero} with nonzero moment), {tracial_edges} tracial edges with eigenvalue 1"
    ))
}

fn dual_oracle(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = 1e-9;
    let budget = Duration::from_secs(120);
    let start = Instant::now();
    let mut max_deviation: f64 = 0.0;
    let mut corpus_words = 0;
    for (name, graph) in fixtures::corpus() {
        let td = lift(classify::classify(&graph), name)?.tracial;
        let words: Vec<Word> = (0..graph.vertex_count())
            .flat_map(|v| moments::loop_words(&graph, v, 6))
            .collect();
        let report = lift(fock::cross_validate(&graph, &td, &words, 6, tol), name)?;
        ensure!(
            report.passed,
            "{name}: deviation {:e}",
            report.max_deviation
        );
        max_deviation = max_deviation.max(report.max_deviation);
        corpus_words += words.len();
    }

    let config = RandomGraphConfig {
        max_vertices: 8,
        max_pairs: 11,
        self_loop_rate: 0.2,
    };
    let cap = fock::max_basis_entries();
    let (graphs, per_graph) = (10, 50);
    let mut nonzero = 0;
    for i in 0..graphs {
        let graph = loop {
            let g = fixtures::random_graph(&mut rng, &config);
            if g.vertex_count() == 8 && fock::basis_size(&g, 8) <= cap {
                break g;
            }
        };
        let base = rng.gen_range(0..graph.vertex_count());
        let td = lattice::tracial_subgraph(&graph, base);
        let words: Vec<Word> = (0..per_graph)
            .map(|_| sampling::random_word(&mut rng, &graph, 8))
            .collect();
        let report = lift(
            fock::cross_validate(&graph, &td, &words, 8, tol),
            "random graph",
        )?;
        ensure!(
            report.passed,
            "random graph {i}: deviation {:e}",
            report.max_deviation
        );
        max_deviation = max_deviation.max(report.max_deviation);
        nonzero += report.entries.iter().filter(|c| c.exact != 0.0).count();
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < budget, "took {elapsed:?}, budget {budget:?}");
    Ok(format!(
        "{corpus_words} corpus loops, {} random words ({nonzero} nonzero), max deviation {max_deviation:e}",
        graphs * per_graph
    ))
}

fn gram_positivity(_seed: u64) -> Check {
    let mut smallest = f64::INFINITY;
    let mut matrices = 0;
    for (name, graph) in fixtures::corpus() {
        let td = lift(classify::classify(&graph), name)?.tracial;
        for v in 0..graph.vertex_count() {
            let words = moments::loop_words(&graph, v, 3);
            let gram = lift(moments::gram_matrix(&graph, &td, &words, v), name)?;
            let min = moments::min_eigenvalue(&gram).unwrap_or(0.0);
            let positive = min >= -1e-8;
            ensure!(positive, "{name}, vertex {v}: min eigenvalue {min:e}");
            smallest = smallest.min(min);
            matrices += 1;
        }
    }
    Ok(format!(
        "{matrices} matrices, smallest eigenvalue {smallest:e}"
    ))
}

fn rotation(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let examples = [
        (vec![ratio(1, 2), ratio(3, 1), ratio(1, 1)], 1),
        (vec![ratio(2, 1), ratio(2, 1)], 0),
        (vec![ratio(1, 4), ratio(4, 1)], 1),
    ];
    for (weights, index) in examples {
        let got = lift(classify::rotate_loop(&weights), "rotate_loop")?;
        ensure!(
            got == index,
            "rotate_loop({weights:?}) = {got}, expected {index}"
        );
    }
    let samples = 1000;
    let mut ambiguous = 0;
    for _ in 0..samples {
        let n = rng.gen_range(1..=10);
        let mut weights = rationals(&mut rng, n, 8);
        if weights.iter().product::<BigRational>() < BigRational::one() {
            weights.iter_mut().for_each(|w| *w = w.recip());
        }
        let valid = oracles::valid_rotations(&weights);
        let got = lift(classify::rotate_loop(&weights), "rotate_loop")?;
        ensure!(
            valid.contains(&got),
            "rotate_loop({:?}) = {got}, valid starts {valid:?}",
            weights.iter().map(format_rational).collect::<Vec<_>>()
        );
        ambiguous += usize::from(valid.len() > 1);
    }
    Ok(format!(
        "{samples} lists, {ambiguous} with several valid starts"
    ))
}

fn free_dimension(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = BigRational::one();
    let samples = 100;
    let third = ratio(1, 3);
    let t = fdim::amplify(
        &fdim::minimal_corner_free_dimension(&third, &third),
        &ratio(2, 1),
    );
    ensure!(t == ratio(5, 4), "a = b = 1/3 gives t = {t}");
    for _ in 0..samples {
        let q = if rng.gen_bool(0.2) {
            one.clone()
        } else {
            sampling::rational_above_one(&mut rng, 12)
        };
        let mu = if rng.gen_bool(0.2) {
            one.clone()
        } else {
            sampling::rational_above_one(&mut rng, 12)
        };
        let p = &q * &mu;
        let a = (&one + &p).recip();
        let b = &q / (&one + &p);
        let c = &q * (&mu - &one) / (&one + &p);
        ensure!(&a + &b + &c == one, "a + b + c != 1");
        let corner = fdim::minimal_corner_free_dimension(&a, &b);
        let t = fdim::amplify(&corner, &((&a + &b) / &b));
        ensure!(
            t == oracles::three_block_amplified(&a, &b),
            "amplified t mismatch at a={a}, b={b}"
        );
        let tb = fdim::complement_free_dimension(ComplementShape::ThreeBlock, &t, &a, &b);
        ensure!(tb == one, "three-block t_B = {tb} at a={a}, b={b}");

        let m = sampling::rational(&mut rng, 12);
        let a = (&one + &m).recip();
        let b = &m / (&one + &m);
        let two_ab = ratio(2, 1) * &a * &b;
        let first =
            fdim::complement_free_dimension(ComplementShape::TwoBlock, &(&one + &two_ab), &a, &b);
        let expected = (&a * &a + &b * &b) / (&b * &b);
        ensure!(
            first == expected && first > one,
            "two-block t_B = {first} at m={m}"
        );
        let second = fdim::complement_free_dimension(
            ComplementShape::TwoBlock,
            &(&one + &two_ab - &a * &a),
            &a,
            &b,
        );
        ensure!(
            second == one,
            "two-block t_B = {second} at m={m}, expected 1"
        );
    }
    Ok(format!("{samples} parameter pairs per decomposition"))
}

fn tl_bridge(_seed: u64) -> Check {
    let single = fixtures::balanced_single();
    let pair = fixtures::balanced_pair();
    let first = Pointed {
        graph: &single,
        vertex: 0,
    };
    let second = Pointed {
        graph: &pair,
        vertex: 0,
    };
    let calibration = lift(tl::calibrate(first, second), "calibration")?;
    let report = lift(
        tl::verify_inclusion(
            first,
            second,
            3,
            calibration.exponent,
            calibration.normalization,
        ),
        "inclusion",
    )?;
    for row in &report.rows {
        ensure!(
            row.graph_independent && row.matches_trace,
            "diagram {}: {} vs {} vs trace {}",
            row.diagram,
            row.first,
            row.second,
            format_rational(&row.trace)
        );
    }
    for v in 0..pair.vertex_count() {
        let other = Pointed {
            graph: &pair,
            vertex: v,
        };
        let r = lift(
            tl::verify_inclusion(
                first,
                other,
                3,
                calibration.exponent,
                calibration.normalization,
            ),
            "inclusion",
        )?;
        ensure!(
            r.passed,
            "inclusion fails at vertex {v} of the two-vertex fixture"
        );
    }
    let mut pairs = 0;
    let pointed: Vec<Pointed<'_>> = std::iter::once(first)
        .chain((0..pair.vertex_count()).map(|v| Pointed {
            graph: &pair,
            vertex: v,
        }))
        .collect();
    for p in pointed {
        let rows = lift(tl::traciality(p, 3, calibration.exponent), "traciality")?;
        for r in &rows {
            ensure!(
                r.forward == r.backward,
                "traciality fails on {} and {}",
                r.left,
                r.right
            );
        }
        pairs += rows.len();
    }
    let control = lift(
        tl::verify_inclusion(
            first,
            second,
            1,
            calibration.exponent.other(),
            calibration.normalization,
        ),
        "control",
    )?;
    ensure!(
        !control.passed,
        "exponent {} also passes at n <= 1",
        calibration.exponent.other()
    );
    let distinct: BTreeSet<_> = report.rows.iter().map(|r| r.diagram.n()).collect();
    Ok(format!(
        "calibrated a = {}, {}; {} diagrams over n in {distinct:?}; {pairs} traciality pairs; exponent {} rejected",
        calibration.exponent,
        calibration.normalization.name(),
        report.rows.len(),
        calibration.exponent.other()
    ))
}
