//! Temperley–Lieb diagrams, the loop algebra of a balanced graph, and the
//! map between them.
//!
//! A diagram in `TL_n` is a non-crossing perfect matching of `2n` points.
//! On a graph whose out-weights all sum to `δ`, a diagram maps to the sum of
//! its edge labelings (paired points carry `e` and `e^op`) weighted by
//! `Π μ(e_i)^a` over the left ends of pairs.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::moments::{self, Word};
use crate::surd::SurdScalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLDiagram {
    n: usize,
    partner: Vec<usize>,
}

impl TLDiagram {
    /// The empty diagram in `TL_0`.
    pub fn empty() -> Self {
        Self {
            n: 0,
            partner: Vec::new(),
        }
    }

    /// Builds a diagram from pairs of points numbered `1..=2n`.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        let size = 2 * pairs.len();
        let mut partner = vec![usize::MAX; size];
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > size || b > size || a == b {
                return Err(Error::InvalidPairing(format!(
                    "({a},{b}) is not a pair of points in 1..={size}"
                )));
            }
            let (a, b) = (a - 1, b - 1);
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(Error::InvalidPairing("a point is used twice".into()));
            }
            partner[a] = b;
            partner[b] = a;
        }
        let d = Self {
            n: pairs.len(),
            partner,
        };
        if d.is_crossing() {
            return Err(Error::InvalidPairing(format!("{d} has crossing pairs")));
        }
        Ok(d)
    }

    fn is_crossing(&self) -> bool {
        let pairs = self.pairs();
        pairs
            .iter()
            .any(|&(a, b)| pairs.iter().any(|&(c, d)| a < c && c < b && b < d))
    }

    /// Every diagram of `TL_n`, ordered by the partner of the first point
    /// and then recursively.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut partner = vec![0; 2 * n];
        fill(&mut partner, 0, 2 * n, &mut |p| {
            out.push(Self {
                n,
                partner: p.to_vec(),
            })
        });
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partner(&self, point: usize) -> usize {
        self.partner[point]
    }

    /// Pairs `(i, j)` with `i < j`, zero-based, ordered by `i`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter(|&i| i < self.partner[i])
            .map(|i| (i, self.partner[i]))
            .collect()
    }
}

/// Calls `emit` once per non-crossing perfect matching of `[lo, hi)`,
/// written into `partner`.
fn fill(partner: &mut Vec<usize>, lo: usize, hi: usize, emit: &mut dyn FnMut(&[usize])) {
    fn go(
        partner: &mut Vec<usize>,
        stack: &mut Vec<(usize, usize)>,
        emit: &mut dyn FnMut(&[usize]),
    ) {
        let Some((lo, hi)) = stack.pop() else {
            emit(partner);
            return;
        };
        if lo == hi {
            go(partner, stack, emit);
        } else {
            for k in (lo + 1..hi).step_by(2) {
                partner[lo] = k;
                partner[k] = lo;
                stack.push((k + 1, hi));
                stack.push((lo + 1, k));
                go(partner, stack, emit);
                stack.pop();
                stack.pop();
            }
        }
        stack.push((lo, hi));
    }
    go(partner, &mut vec![(lo, hi)], emit);
}

impl fmt::Display for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 0 {
            return f.write_str("()");
        }
        for (a, b) in self.pairs() {
            write!(f, "({},{})", a + 1, b + 1)?;
        }
        Ok(())
    }
}

/// Number of circles formed by drawing `x` above and `sigma` below the same
/// `2n` points.
pub fn loop_count(x: &TLDiagram, sigma: &TLDiagram) -> Result<usize> {
    if x.n != sigma.n {
        return Err(Error::SizeMismatch(2 * x.n, 2 * sigma.n));
    }
    let mut seen = vec![false; 2 * x.n];
    let mut loops = 0;
    for start in 0..seen.len() {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut p = start;
        loop {
            seen[p] = true;
            let q = x.partner[p];
            seen[q] = true;
            p = sigma.partner[q];
            if p == start {
                break;
            }
        }
    }
    Ok(loops)
}

/// How loops are weighted in the diagrammatic trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// `δ^{loops - n}`.
    PerBox,
    /// `δ^{loops}`.
    Unnormalized,
}

impl Normalization {
    pub const ALL: [Normalization; 2] = [Normalization::PerBox, Normalization::Unnormalized];

    pub fn name(self) -> &'static str {
        match self {
            Normalization::PerBox => "delta^(loops-n)",
            Normalization::Unnormalized => "delta^loops",
        }
    }
}

/// `loops ↦ #{σ ∈ NC₂([2n]) : loop_count(x, σ) = loops}`.
pub fn loop_distribution(x: &TLDiagram) -> BTreeMap<usize, u64> {
    let mut counts = BTreeMap::new();
    for sigma in TLDiagram::all(x.n) {
        let loops = loop_count(x, &sigma).expect("same size");
        *counts.entry(loops).or_insert(0) += 1;
    }
    counts
}

pub fn voiculescu_trace(
    x: &TLDiagram,
    delta: &BigRational,
    normalization: Normalization,
) -> BigRational {
    let shift = match normalization {
        Normalization::PerBox => x.n as i64,
        Normalization::Unnormalized => 0,
    };
    loop_distribution(x)
        .into_iter()
        .map(|(loops, count)| {
            arith::pow(delta, loops as i64 - shift) * BigRational::from_integer(BigInt::from(count))
        })
        .sum()
}

/// The common out-weight sum `δ ≥ 2`, if there is one.
pub fn is_balanced(graph: &WeightedGraph) -> Result<BigRational> {
    let sums: Vec<BigRational> = (0..graph.vertex_count())
        .map(|v| graph.out_weight(v))
        .collect();
    let two = BigRational::from_integer(2.into());
    match sums.first() {
        Some(delta) if sums.iter().all(|s| s == delta) && *delta >= two => Ok(delta.clone()),
        _ => Err(Error::NotBalanced(
            sums.iter()
                .enumerate()
                .map(|(v, s)| format!("{}: {}", graph.vertex_name(v), arith::format_rational(s)))
                .collect::<Vec<_>>()
                .join(", "),
        )),
    }
}

/// Exponent `a` in the labeling weight `Π μ(e_i)^a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InclusionExponent {
    Half,
    One,
}

impl InclusionExponent {
    pub const ALL: [InclusionExponent; 2] = [InclusionExponent::Half, InclusionExponent::One];

    pub fn other(self) -> Self {
        match self {
            InclusionExponent::Half => InclusionExponent::One,
            InclusionExponent::One => InclusionExponent::Half,
        }
    }

    fn weight(self, mu: &BigRational) -> Result<SurdScalar> {
        match self {
            InclusionExponent::Half => SurdScalar::sqrt_of(mu),
            InclusionExponent::One => Ok(SurdScalar::from_rational(mu.clone())),
        }
    }
}

impl fmt::Display for InclusionExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InclusionExponent::Half => "1/2",
            InclusionExponent::One => "1",
        })
    }
}

/// Formal combination of loops at `vertex`; the empty loop is the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopAlgebraElement {
    pub vertex: VertexId,
    pub terms: BTreeMap<Vec<EdgeId>, SurdScalar>,
}

impl LoopAlgebraElement {
    pub fn zero(vertex: VertexId) -> Self {
        Self {
            vertex,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(vertex: VertexId) -> Self {
        let mut x = Self::zero(vertex);
        x.add_term(Vec::new(), SurdScalar::one());
        x
    }

    /// Adds `coeff·path`; `path` must be a loop at `self.vertex`.
    pub fn add_term(&mut self, path: Vec<EdgeId>, coeff: SurdScalar) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(path).or_insert_with(SurdScalar::zero);
        *slot += &coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    /// Product by concatenation of loops.
    pub fn concat(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vertex, other.vertex);
        let mut out = Self::zero(self.vertex);
        for (p, c) in &self.terms {
            for (q, d) in &other.terms {
                let mut path = p.clone();
                path.extend_from_slice(q);
                out.add_term(path, c * d);
            }
        }
        out
    }

    /// `(e_1⋯e_n)* = √(μ(e_1)⋯μ(e_n))·e_n^op⋯e_1^op`, extended linearly
    /// (all coefficients are real).
    pub fn star(&self, graph: &WeightedGraph) -> Result<Self> {
        let mut out = Self::zero(self.vertex);
        for (p, c) in &self.terms {
            let weight: BigRational = p.iter().map(|&e| graph.weight(e)).product();
            let reversed = p.iter().rev().map(|&e| graph.op(e)).collect();
            out.add_term(reversed, c * &SurdScalar::sqrt_of(&weight)?);
        }
        Ok(out)
    }
}

/// Image of `x` in the loop algebra at `v`.
pub fn inclusion_map(
    graph: &WeightedGraph,
    v: VertexId,
    x: &TLDiagram,
    a: InclusionExponent,
) -> Result<LoopAlgebraElement> {
    is_balanced(graph)?;
    let mut weights = Vec::with_capacity(graph.edge_count());
    for e in 0..graph.edge_count() {
        weights.push(a.weight(graph.weight(e))?);
    }
    let mut out = LoopAlgebraElement::zero(v);
    let mut labels = Vec::with_capacity(2 * x.n);
    label(
        graph,
        x,
        v,
        v,
        &weights,
        &mut labels,
        SurdScalar::one(),
        &mut out,
    );
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn label(
    graph: &WeightedGraph,
    x: &TLDiagram,
    base: VertexId,
    at: VertexId,
    weights: &[SurdScalar],
    labels: &mut Vec<EdgeId>,
    coeff: SurdScalar,
    out: &mut LoopAlgebraElement,
) {
    let k = labels.len();
    if k == 2 * x.n {
        if at == base {
            out.add_term(labels.clone(), coeff);
        }
        return;
    }
    let j = x.partner[k];
    if j < k {
        let e = graph.op(labels[j]);
        if graph.source(e) == at {
            labels.push(e);
            label(graph, x, base, graph.target(e), weights, labels, coeff, out);
            labels.pop();
        }
        return;
    }
    for &e in graph.out_edges(at) {
        labels.push(e);
        let c = &coeff * &weights[e];
        label(graph, x, base, graph.target(e), weights, labels, c, out);
        labels.pop();
    }
}

/// Loop-algebra state of a single loop, summing over explicitly enumerated
/// non-crossing pairings.
pub fn loop_state(graph: &WeightedGraph, path: &[EdgeId]) -> Result<SurdScalar> {
    if path.len() % 2 == 1 {
        return Ok(SurdScalar::zero());
    }
    let mut total = SurdScalar::zero();
    for pi in TLDiagram::all(path.len() / 2) {
        let pairs = pi.pairs();
        if pairs.iter().all(|&(i, j)| path[j] == graph.op(path[i])) {
            let weight: BigRational = pairs.iter().map(|&(i, _)| graph.weight(path[i])).product();
            total += &SurdScalar::sqrt_of(&weight)?;
        }
    }
    Ok(total)
}

/// `φ(x)` for the loop-algebra state, term by term via [`loop_state`].
pub fn element_state(graph: &WeightedGraph, x: &LoopAlgebraElement) -> Result<SurdScalar> {
    let mut total = SurdScalar::zero();
    for (path, c) in &x.terms {
        total += &(c * &loop_state(graph, path)?);
    }
    Ok(total)
}

/// `φ(p_v · Y-word · p_v)/φ(p_v)` summed over the terms of `x`, computed by
/// the moment engine.
pub fn compressed_moment(graph: &WeightedGraph, x: &LoopAlgebraElement) -> Result<SurdScalar> {
    let mut total = SurdScalar::zero();
    for (path, c) in &x.terms {
        let word = Word::new(path).anchored(x.vertex);
        total += &(c * &moments::expectation_coefficient(graph, &word)?);
    }
    Ok(total)
}

/// One balanced graph with a chosen base vertex.
#[derive(Clone, Copy, Debug)]
pub struct Pointed<'a> {
    pub graph: &'a WeightedGraph,
    pub vertex: VertexId,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagramRow {
    pub diagram: TLDiagram,
    pub first: SurdScalar,
    pub second: SurdScalar,
    pub trace: BigRational,
    pub graph_independent: bool,
    pub matches_trace: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InclusionReport {
    pub delta: BigRational,
    pub exponent: InclusionExponent,
    pub normalization: Normalization,
    pub rows: Vec<DiagramRow>,
    pub passed: bool,
}

fn common_delta(first: Pointed<'_>, second: Pointed<'_>) -> Result<BigRational> {
    let d1 = is_balanced(first.graph)?;
    let d2 = is_balanced(second.graph)?;
    if d1 != d2 {
        return Err(Error::DeltaMismatch(
            arith::format_rational(&d1),
            arith::format_rational(&d2),
        ));
    }
    Ok(d1)
}

/// Compares `φ(i_a(x))` on both graphs with each other and with the trace,
/// for every diagram with `n ≤ max_n`.
pub fn verify_inclusion(
    first: Pointed<'_>,
    second: Pointed<'_>,
    max_n: usize,
    exponent: InclusionExponent,
    normalization: Normalization,
) -> Result<InclusionReport> {
    if max_n > 4 {
        return Err(Error::PreconditionViolated(format!(
            "max_n = {max_n} exceeds 4"
        )));
    }
    let delta = common_delta(first, second)?;
    let mut rows = Vec::new();
    for n in 0..=max_n {
        for diagram in TLDiagram::all(n) {
            let value = |p: Pointed<'_>| {
                compressed_moment(
                    p.graph,
                    &inclusion_map(p.graph, p.vertex, &diagram, exponent)?,
                )
            };
            let first_value = value(first)?;
            let second_value = value(second)?;
            let trace = voiculescu_trace(&diagram, &delta, normalization);
            let graph_independent = first_value == second_value;
            let matches_trace = first_value.as_rational().as_ref() == Some(&trace)
                && second_value.as_rational().as_ref() == Some(&trace);
            rows.push(DiagramRow {
                diagram,
                first: first_value,
                second: second_value,
                trace,
                graph_independent,
                matches_trace,
            });
        }
    }
    let passed = rows.iter().all(|r| r.graph_independent && r.matches_trace);
    Ok(InclusionReport {
        delta,
        exponent,
        normalization,
        rows,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Calibration {
    /// Every convention tried, with whether it reproduced the trace at
    /// `n ≤ 1` on both graphs.
    pub candidates: Vec<(InclusionExponent, Normalization, bool)>,
    pub exponent: InclusionExponent,
    pub normalization: Normalization,
}

/// Pins the exponent and trace normalization using the diagrams with
/// `n ≤ 1`.
pub fn calibrate(first: Pointed<'_>, second: Pointed<'_>) -> Result<Calibration> {
    let mut candidates = Vec::new();
    for exponent in InclusionExponent::ALL {
        for normalization in Normalization::ALL {
            let report = verify_inclusion(first, second, 1, exponent, normalization)?;
            candidates.push((exponent, normalization, report.passed));
        }
    }
    let &(exponent, normalization, _) = candidates.iter().find(|c| c.2).ok_or_else(|| {
        Error::PreconditionViolated("no convention reproduces the trace at n ≤ 1".into())
    })?;
    Ok(Calibration {
        candidates,
        exponent,
        normalization,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TracialityRow {
    pub left: TLDiagram,
    pub right: TLDiagram,
    pub forward: SurdScalar,
    pub backward: SurdScalar,
}

/// `φ(i(x)·i(y))` against `φ(i(y)·i(x))` for all diagram pairs with
/// `n_x + n_y ≤ max_total`.
pub fn traciality(
    pointed: Pointed<'_>,
    max_total: usize,
    exponent: InclusionExponent,
) -> Result<Vec<TracialityRow>> {
    let mut images = Vec::new();
    for n in 0..=max_total {
        for d in TLDiagram::all(n) {
            let image = inclusion_map(pointed.graph, pointed.vertex, &d, exponent)?;
            images.push((d, image));
        }
    }
    let mut rows = Vec::new();
    for (x, ix) in &images {
        for (y, iy) in &images {
            if x.n + y.n > max_total || x > y {
                continue;
            }
            rows.push(TracialityRow {
                left: x.clone(),
                right: y.clone(),
                forward: compressed_moment(pointed.graph, &ix.concat(iy))?,
                backward: compressed_moment(pointed.graph, &iy.concat(ix))?,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};
    use crate::fixtures;

    fn d(pairs: &[(usize, usize)]) -> TLDiagram {
        TLDiagram::from_pairs(pairs).unwrap()
    }

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| TLDiagram::all(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 14, 42, 132]);
        for n in 0..=4 {
            for x in TLDiagram::all(n) {
                assert!(!x.is_crossing());
                assert_eq!(loop_count(&x, &x).unwrap(), n);
            }
        }
    }

    #[test]
    fn pairing_validation() {
        assert!(matches!(
            TLDiagram::from_pairs(&[(1, 3), (2, 4)]),
            Err(Error::InvalidPairing(_))
        ));
        assert!(matches!(
            TLDiagram::from_pairs(&[(1, 2), (2, 3)]),
            Err(Error::InvalidPairing(_))
        ));
        assert_eq!(d(&[(1, 4), (2, 3)]).to_string(), "(1,4)(2,3)");
    }

    #[test]
    fn loop_count_examples() {
        let nested = d(&[(1, 4), (2, 3)]);
        let adjacent = d(&[(1, 2), (3, 4)]);
        assert_eq!(loop_count(&nested, &nested).unwrap(), 2);
        assert_eq!(loop_count(&nested, &adjacent).unwrap(), 1);
        let cup = d(&[(1, 2)]);
        assert_eq!(loop_count(&cup, &cup).unwrap(), 1);
        assert!(matches!(
            loop_count(&cup, &nested),
            Err(Error::SizeMismatch(2, 4))
        ));
    }

    #[test]
    fn trace_examples() {
        let delta = ratio(5, 2);
        assert_eq!(
            voiculescu_trace(&TLDiagram::empty(), &delta, Normalization::PerBox),
            int(1)
        );
        let cup = d(&[(1, 2)]);
        assert_eq!(
            voiculescu_trace(&cup, &delta, Normalization::PerBox),
            int(1)
        );
        let nested = d(&[(1, 4), (2, 3)]);
        assert_eq!(
            voiculescu_trace(&nested, &delta, Normalization::PerBox),
            int(1) + delta.recip()
        );
        assert_eq!(
            voiculescu_trace(&nested, &delta, Normalization::Unnormalized),
            &delta * &delta + &delta
        );
    }

    #[test]
    fn balance() {
        assert_eq!(
            is_balanced(&fixtures::balanced_single()).unwrap(),
            ratio(5, 2)
        );
        assert_eq!(
            is_balanced(&fixtures::balanced_pair()).unwrap(),
            ratio(5, 2)
        );
        let err = is_balanced(&fixtures::base_case1(&int(6), &ratio(1, 3))).unwrap_err();
        match err {
            Error::NotBalanced(msg) => assert_eq!(msg, "0: 9/1, 1: 1/2"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cup_image() {
        let g = fixtures::balanced_single();
        let image = inclusion_map(&g, 0, &d(&[(1, 2)]), InclusionExponent::Half).unwrap();
        let e = g.edge_id("e").unwrap();
        let eop = g.op(e);
        let expected: BTreeMap<Vec<EdgeId>, SurdScalar> = [
            (vec![e, eop], SurdScalar::sqrt_of(&int(2)).unwrap()),
            (vec![eop, e], SurdScalar::sqrt_of(&ratio(1, 2)).unwrap()),
        ]
        .into();
        assert_eq!(image.terms, expected);
        let image = inclusion_map(&g, 0, &d(&[(1, 2)]), InclusionExponent::One).unwrap();
        assert_eq!(
            image.terms[&vec![e, eop]],
            SurdScalar::from_rational(int(2))
        );
        let unit = inclusion_map(&g, 0, &TLDiagram::empty(), InclusionExponent::One).unwrap();
        assert_eq!(unit, LoopAlgebraElement::unit(0));
    }

    #[test]
    fn loop_state_matches_moment_engine() {
        for (_, g) in fixtures::corpus() {
            for v in 0..g.vertex_count() {
                for w in moments::loop_words(&g, v, 6) {
                    let edges: Vec<EdgeId> = w.letters.iter().map(|l| l.edge).collect();
                    assert_eq!(
                        loop_state(&g, &edges).unwrap(),
                        moments::expectation_coefficient(&g, &w).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn calibration_and_bridge() {
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
        let cal = calibrate(first, second).unwrap();
        assert_eq!(cal.exponent, InclusionExponent::Half);
        assert_eq!(cal.normalization, Normalization::Unnormalized);
        assert_eq!(cal.candidates.iter().filter(|c| c.2).count(), 1);
        let report = verify_inclusion(first, second, 3, cal.exponent, cal.normalization).unwrap();
        assert!(report.passed, "{:?}", report.rows);
        let control =
            verify_inclusion(first, second, 1, cal.exponent.other(), cal.normalization).unwrap();
        assert!(!control.passed);
    }

    #[test]
    fn inclusion_is_tracial() {
        let g = fixtures::balanced_pair();
        for v in 0..2 {
            for row in traciality(
                Pointed {
                    graph: &g,
                    vertex: v,
                },
                3,
                InclusionExponent::Half,
            )
            .unwrap()
            {
                assert_eq!(row.forward, row.backward, "{} {}", row.left, row.right);
            }
        }
    }

    #[test]
    fn star_reverses_loops() {
        let g = fixtures::balanced_single();
        let x = inclusion_map(&g, 0, &d(&[(1, 2)]), InclusionExponent::Half).unwrap();
        let s = x.star(&g).unwrap();
        assert_eq!(
            compressed_moment(&g, &s).unwrap(),
            compressed_moment(&g, &x).unwrap()
        );
    }

    #[test]
    fn delta_mismatch() {
        let a = fixtures::balanced_single();
        let b = fixtures::single_loop(&int(3));
        let err = verify_inclusion(
            Pointed {
                graph: &a,
                vertex: 0,
            },
            Pointed {
                graph: &b,
                vertex: 0,
            },
            1,
            InclusionExponent::Half,
            Normalization::Unnormalized,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DeltaMismatch(_, _)));
    }
}
