//! Edge-labeled graphs and cycles, splines on them, and the pointwise ring
//! operations.
//!
//! Vertices and edges are numbered from 1 in every public surface. On a cycle
//! with labels `[l_1, ..., l_n]`, edge `e_i` joins `v_i` and `v_{i+1}` for
//! `i < n` and `e_n` joins `v_n` back to `v_1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, SplineError};
use crate::numtheory::residue;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    /// 1-based edge number.
    pub index: usize,
    /// 1-based endpoints.
    pub u: usize,
    pub v: usize,
    pub label: BigInt,
}

/// Anything that carries positive integer edge labels on numbered vertices.
pub trait LabeledGraph {
    fn vertex_count(&self) -> usize;
    fn edges(&self) -> &[Edge];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabeledGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl EdgeLabeledGraph {
    /// `edges` are `(u, v, label)` triples with 1-based endpoints.
    pub fn new<T: Into<BigInt>>(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(SplineError::IndexOutOfRange {
                index: 0,
                min: 1,
                max: usize::MAX,
            });
        }
        let mut out = Vec::new();
        for (i, (u, v, label)) in edges.into_iter().enumerate() {
            let index = i + 1;
            let label = label.into();
            if u == 0 || v == 0 || u > vertex_count || v > vertex_count || u == v {
                return Err(SplineError::InvalidEdge {
                    edge: index,
                    u,
                    v,
                    vertices: vertex_count,
                });
            }
            if !label.is_positive() {
                return Err(SplineError::NonPositiveLabel { edge: index, label });
            }
            out.push(Edge { index, u, v, label });
        }
        Ok(Self {
            vertex_count,
            edges: out,
        })
    }
}

impl LabeledGraph for EdgeLabeledGraph {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    fn edges(&self) -> &[Edge] {
        &self.edges
    }
}

/// An `n`-cycle, `n >= 3`, with positive labels `l_1..l_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabeledCycle {
    labels: Vec<BigInt>,
    graph: EdgeLabeledGraph,
}

impl EdgeLabeledCycle {
    pub fn new<T: Into<BigInt>>(labels: impl IntoIterator<Item = T>) -> Result<Self> {
        let labels: Vec<BigInt> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        if n < 3 {
            return Err(SplineError::CycleTooShort(n));
        }
        let graph = EdgeLabeledGraph::new(
            n,
            labels
                .iter()
                .enumerate()
                .map(|(i, l)| (i + 1, (i + 1) % n + 1, l.clone())),
        )?;
        Ok(Self { labels, graph })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `labels()[i - 1]` is `l_i`.
    pub fn labels(&self) -> &[BigInt] {
        &self.labels
    }

    /// The label `l_i` of edge `e_i`, 1-based.
    pub fn label(&self, i: usize) -> &BigInt {
        &self.labels[i - 1]
    }

    pub fn as_graph(&self) -> &EdgeLabeledGraph {
        &self.graph
    }

    /// Product of all edge labels.
    pub fn label_product(&self) -> BigInt {
        self.labels.iter().product()
    }
}

impl LabeledGraph for EdgeLabeledCycle {
    fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    fn edges(&self) -> &[Edge] {
        self.graph.edges()
    }
}

impl fmt::Display for EdgeLabeledCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", join(&self.labels))
    }
}

/// Vertex labels `(g_1, ..., g_n)` in tuple order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spline(Vec<BigInt>);

impl Spline {
    pub fn new(entries: Vec<BigInt>) -> Self {
        Self(entries)
    }

    pub fn from_ints<T: Into<BigInt>>(entries: impl IntoIterator<Item = T>) -> Self {
        Self(entries.into_iter().map(Into::into).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![BigInt::zero(); n])
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `g_i`, 1-based.
    pub fn entry(&self, i: usize) -> &BigInt {
        &self.0[i - 1]
    }

    pub fn leading_zeros(&self) -> usize {
        self.0.iter().take_while(|g| g.is_zero()).count()
    }

    /// First nonzero entry, if any.
    pub fn leading_entry(&self) -> Option<&BigInt> {
        self.0.iter().find(|g| !g.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for Spline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

impl From<Vec<BigInt>> for Spline {
    fn from(entries: Vec<BigInt>) -> Self {
        Self(entries)
    }
}

fn join(values: &[BigInt]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// An edge whose endpoint labels are not congruent modulo its label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub edge: usize,
    pub u: usize,
    pub v: usize,
    pub label: BigInt,
    /// `g_u mod label`
    pub residue_u: BigInt,
    /// `g_v mod label`
    pub residue_v: BigInt,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "edge e_{} (v_{}, v_{}) label {}: {} != {} (mod {})",
            self.edge, self.u, self.v, self.label, self.residue_u, self.residue_v, self.label
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Verification {
    pub violations: Vec<Violation>,
}

impl Verification {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check every edge congruence `g_u = g_v (mod label)`.
pub fn is_spline<G: LabeledGraph + ?Sized>(graph: &G, labels: &[BigInt]) -> Result<Verification> {
    if labels.len() != graph.vertex_count() {
        return Err(SplineError::Dimension {
            expected: graph.vertex_count(),
            found: labels.len(),
        });
    }
    let violations = graph
        .edges()
        .iter()
        .filter_map(|e| {
            let gu = &labels[e.u - 1];
            let gv = &labels[e.v - 1];
            if e.label.is_one() || residue(&(gu - gv), &e.label).is_zero() {
                return None;
            }
            Some(Violation {
                edge: e.index,
                u: e.u,
                v: e.v,
                label: e.label.clone(),
                residue_u: residue(gu, &e.label),
                residue_v: residue(gv, &e.label),
            })
        })
        .collect();
    Ok(Verification { violations })
}

/// Shorthand for `is_spline(..)?.is_ok()` on a [`Spline`].
pub fn satisfies<G: LabeledGraph + ?Sized>(graph: &G, spline: &Spline) -> Result<bool> {
    Ok(is_spline(graph, spline.entries())?.is_ok())
}

/// The all-ones spline of length `n`.
pub fn trivial_spline(n: usize) -> Result<Spline> {
    if n < 3 {
        return Err(SplineError::CycleTooShort(n));
    }
    Ok(Spline(vec![BigInt::one(); n]))
}

fn same_len(a: &Spline, b: &Spline) -> Result<()> {
    if a.len() != b.len() {
        return Err(SplineError::Dimension {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(())
}

pub fn add(a: &Spline, b: &Spline) -> Result<Spline> {
    same_len(a, b)?;
    Ok(Spline(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()))
}

pub fn sub(a: &Spline, b: &Spline) -> Result<Spline> {
    same_len(a, b)?;
    Ok(Spline(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect()))
}

pub fn scalar_mul(c: &BigInt, a: &Spline) -> Spline {
    Spline(a.0.iter().map(|x| c * x).collect())
}

pub fn pointwise_mul(a: &Spline, b: &Spline) -> Result<Spline> {
    same_len(a, b)?;
    Ok(Spline(a.0.iter().zip(&b.0).map(|(x, y)| x * y).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(labels: &[i64]) -> EdgeLabeledCycle {
        EdgeLabeledCycle::new(labels.iter().copied()).unwrap()
    }

    fn s(entries: &[i64]) -> Spline {
        Spline::from_ints(entries.iter().copied())
    }

    #[test]
    fn three_cycle_figure_splines() {
        let c = cycle(&[2, 5, 3]);
        for v in [s(&[1, 1, 1]), s(&[0, 2, 12]), s(&[0, 0, 15])] {
            assert!(satisfies(&c, &v).unwrap(), "{v}");
        }
    }

    #[test]
    fn parity_failure_reports_first_edge() {
        let c = cycle(&[2, 5, 3]);
        let report = is_spline(&c, s(&[0, 1, 0]).entries()).unwrap();
        assert!(!report.is_ok());
        let first = &report.violations[0];
        assert_eq!((first.edge, first.u, first.v), (1, 1, 2));
        assert_eq!(first.residue_u, BigInt::from(0));
        assert_eq!(first.residue_v, BigInt::from(1));
        // e_2 (mod 5) and e_3 (mod 3) also fail since 1 differs from 0
        let edges: Vec<_> = report.violations.iter().map(|v| v.edge).collect();
        assert_eq!(edges, vec![1, 2]);
    }

    #[test]
    fn length_mismatch_is_a_dimension_error() {
        let c = cycle(&[2, 5, 3]);
        assert_eq!(
            is_spline(&c, s(&[1, 1]).entries()),
            Err(SplineError::Dimension {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn cycle_edge_convention() {
        let c = cycle(&[2, 5, 3, 7]);
        let ends: Vec<_> = c.edges().iter().map(|e| (e.u, e.v)).collect();
        assert_eq!(ends, vec![(1, 2), (2, 3), (3, 4), (4, 1)]);
        assert_eq!(c.label(4), &BigInt::from(7));
    }

    #[test]
    fn rejects_bad_cycles_and_graphs() {
        assert_eq!(
            EdgeLabeledCycle::new([2, 5]),
            Err(SplineError::CycleTooShort(2))
        );
        assert!(matches!(
            EdgeLabeledCycle::new([2, 0, 3]),
            Err(SplineError::NonPositiveLabel { edge: 2, .. })
        ));
        assert!(matches!(
            EdgeLabeledGraph::new(2, [(1, 1, 2)]),
            Err(SplineError::InvalidEdge { .. })
        ));
        assert!(matches!(
            EdgeLabeledGraph::new(2, [(1, 3, 2)]),
            Err(SplineError::InvalidEdge { .. })
        ));
    }

    #[test]
    fn negative_labels_and_unit_edges() {
        let c = cycle(&[2, 1, 3]);
        assert!(satisfies(&c, &s(&[-4, -2, 5])).unwrap());
        assert!(!satisfies(&c, &s(&[-4, -3, 5])).unwrap());
    }

    #[test]
    fn trivial_splines() {
        assert_eq!(trivial_spline(3).unwrap(), s(&[1, 1, 1]));
        assert_eq!(trivial_spline(4).unwrap(), s(&[1, 1, 1, 1]));
        assert_eq!(trivial_spline(5).unwrap(), s(&[1, 1, 1, 1, 1]));
        assert_eq!(trivial_spline(2), Err(SplineError::CycleTooShort(2)));
    }

    #[test]
    fn ring_operations() {
        let c = cycle(&[2, 5, 3]);
        let sum = add(&s(&[0, 2, 12]), &s(&[0, 0, 15])).unwrap();
        assert_eq!(sum, s(&[0, 2, 27]));
        assert!(satisfies(&c, &sum).unwrap());
        assert_eq!(scalar_mul(&BigInt::from(3), &s(&[1, 1, 1])), s(&[3, 3, 3]));
        assert_eq!(
            pointwise_mul(&s(&[0, 3, 3, 3, 15]), &s(&[0, 0, 0, 8, 40])).unwrap(),
            s(&[0, 0, 0, 24, 600])
        );
        assert!(add(&s(&[1, 1, 1]), &s(&[1, 1])).is_err());
    }

    #[test]
    fn leading_zero_counts() {
        assert_eq!(s(&[0, 2, 12]).leading_zeros(), 1);
        assert_eq!(s(&[1, 1, 1]).leading_zeros(), 0);
        assert_eq!(s(&[0, 0, 0, 0, 10]).leading_zeros(), 4);
        assert_eq!(s(&[0, 0, 0]).leading_entry(), None);
    }

    proptest! {
        #[test]
        fn trivial_multiples_preserve_spline_status(
            labels in proptest::collection::vec(1i64..=30, 3..=8),
            entries in proptest::collection::vec(-100i64..100, 8),
            c in -50i64..50,
        ) {
            let cy = cycle(&labels);
            let g = s(&entries[..labels.len()]);
            let shifted = add(&g, &scalar_mul(&BigInt::from(c), &trivial_spline(labels.len()).unwrap())).unwrap();
            prop_assert_eq!(satisfies(&cy, &g).unwrap(), satisfies(&cy, &shifted).unwrap());
        }

        #[test]
        fn leading_zeros_of_sum_at_least_min(
            a in proptest::collection::vec(-3i64..3, 6),
            b in proptest::collection::vec(-3i64..3, 6),
        ) {
            let (a, b) = (s(&a), s(&b));
            let sum = add(&a, &b).unwrap();
            prop_assert!(sum.leading_zeros() >= a.leading_zeros().min(b.leading_zeros()));
        }
    }
}
