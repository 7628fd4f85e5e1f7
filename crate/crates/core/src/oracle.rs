//! Desk-scale brute force used to certify the closed-form constructions.
//!
//! Nothing here uses the gcd/lcm formulas for leading entries: every answer
//! comes from searching vertex values directly against the edge congruences.
//! Values are searched vertex by vertex; a free vertex ranges over the residue
//! class forced by an already-assigned neighbour, intersected with its domain.
//!
//! Two reductions keep the searches finite without changing their answers:
//!
//! * A free entry may be shifted by any multiple of the product of its
//!   incident labels without breaking a congruence, so feasibility searches
//!   only visit `[0, P_v)` (or `(0, P_v]` when the entry must be positive),
//!   capped by the budget's entry bound.
//! * Failed partial assignments are memoized on the values of assigned
//!   vertices that still have unassigned neighbours, reduced modulo the labels
//!   of those pending edges.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::bases::check_shape;
use crate::error::{Result, SplineError};
use crate::numtheory::gcd_all;
use crate::spline::{is_spline, EdgeLabeledCycle, EdgeLabeledGraph, LabeledGraph, Spline};

pub const DEFAULT_MAX_STATES: u64 = 50_000_000;

/// Limits for a search: entries are taken from `[0, entry_bound]` and the
/// search aborts after `max_states` candidate values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub entry_bound: BigInt,
    pub max_states: u64,
}

impl EnumerationBudget {
    pub fn new(entry_bound: BigInt, max_states: u64) -> Self {
        Self {
            entry_bound,
            max_states,
        }
    }

    /// Entry bound equal to the product of the labels, which is enough to
    /// certify smallest classes.
    pub fn for_cycle(cycle: &EdgeLabeledCycle) -> Self {
        Self::for_graph(cycle)
    }

    pub fn for_graph<G: LabeledGraph + ?Sized>(graph: &G) -> Self {
        Self::new(
            graph.edges().iter().map(|e| &e.label).product(),
            DEFAULT_MAX_STATES,
        )
    }

    fn bound(&self) -> Result<i64> {
        i64::try_from(&self.entry_bound)
            .ok()
            .filter(|b| *b >= 0)
            .ok_or_else(|| {
                SplineError::Budget(format!("entry bound {} is not desk scale", self.entry_bound))
            })
    }
}

#[derive(Debug, Clone, Copy)]
enum Domain {
    Fixed(i64),
    /// Inclusive range.
    Range(i64, i64),
}

/// Small-integer copy of a graph with 0-based adjacency.
struct DeskGraph {
    n: usize,
    adj: Vec<Vec<(usize, i64)>>,
}

impl DeskGraph {
    fn new<G: LabeledGraph + ?Sized>(graph: &G) -> Result<Self> {
        let n = graph.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for e in graph.edges() {
            let label = i64::try_from(&e.label).map_err(|_| {
                SplineError::Budget(format!("label {} is not desk scale", e.label))
            })?;
            adj[e.u - 1].push((e.v - 1, label));
            adj[e.v - 1].push((e.u - 1, label));
        }
        Ok(Self { n, adj })
    }

    /// Product of the labels at `v`; shifting `g_v` by it preserves every
    /// incident congruence.
    fn period(&self, v: usize) -> i64 {
        self.adj[v]
            .iter()
            .fold(1i64, |acc, &(_, l)| acc.saturating_mul(l))
    }
}

struct Meter {
    used: u64,
    max: u64,
}

impl Meter {
    fn new(max: u64) -> Self {
        Self { used: 0, max }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.max {
            return Err(SplineError::Budget(format!(
                "more than {} search states",
                self.max
            )));
        }
        Ok(())
    }
}

struct Search<'a> {
    graph: &'a DeskGraph,
    domains: Vec<Domain>,
    order: Vec<usize>,
    position: Vec<usize>,
    values: Vec<i64>,
    meter: &'a mut Meter,
    /// Per depth, the assigned vertices with pending edges and their moduli.
    frontier: Vec<Vec<(usize, i64)>>,
    failed: HashSet<(usize, Vec<i64>)>,
}

impl<'a> Search<'a> {
    fn new(graph: &'a DeskGraph, domains: Vec<Domain>, meter: &'a mut Meter) -> Self {
        let n = graph.n;
        // fixed vertices first so their neighbours are pruned early
        let mut order: Vec<usize> = (0..n)
            .filter(|&v| matches!(domains[v], Domain::Fixed(_)))
            .collect();
        order.extend((0..n).filter(|&v| matches!(domains[v], Domain::Range(..))));
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let frontier = (0..=n)
            .map(|depth| {
                order[..depth]
                    .iter()
                    .filter_map(|&u| {
                        let modulus = graph.adj[u]
                            .iter()
                            .filter(|&&(w, _)| position[w] >= depth)
                            .fold(1i64, |acc, &(_, l)| acc.saturating_mul(l));
                        (modulus > 1).then_some((u, modulus))
                    })
                    .collect()
            })
            .collect();
        Self {
            graph,
            domains,
            order,
            position,
            values: vec![0; n],
            meter,
            frontier,
            failed: HashSet::new(),
        }
    }

    fn key(&self, depth: usize) -> (usize, Vec<i64>) {
        let residues = self.frontier[depth]
            .iter()
            .map(|&(u, m)| self.values[u].rem_euclid(m))
            .collect();
        (depth, residues)
    }

    fn consistent(&self, v: usize, x: i64, depth: usize) -> bool {
        self.graph.adj[v].iter().all(|&(u, l)| {
            self.position[u] >= depth || (self.values[u] - x).rem_euclid(l) == 0
        })
    }

    fn candidates(&self, v: usize, depth: usize) -> (i64, i64, i64) {
        match self.domains[v] {
            Domain::Fixed(x) => (x, x, 1),
            Domain::Range(lo, hi) => {
                let anchor = self.graph.adj[v]
                    .iter()
                    .filter(|&&(u, _)| self.position[u] < depth)
                    .max_by_key(|&&(_, l)| l);
                match anchor {
                    Some(&(u, l)) => (lo + (self.values[u] - lo).rem_euclid(l), hi, l),
                    None => (lo, hi, 1),
                }
            }
        }
    }

    /// Depth-first search; `visit` sees every complete assignment and returns
    /// `true` to stop. Returns whether the search was stopped.
    fn run(&mut self, depth: usize, memo: bool, visit: &mut dyn FnMut(&[i64]) -> bool) -> Result<bool> {
        if depth == self.graph.n {
            return Ok(visit(&self.values));
        }
        let key = memo.then(|| self.key(depth));
        if let Some(k) = &key {
            if self.failed.contains(k) {
                return Ok(false);
            }
        }
        let v = self.order[depth];
        let (start, hi, step) = self.candidates(v, depth);
        let mut x = start;
        while x <= hi {
            self.meter.tick()?;
            if self.consistent(v, x, depth) {
                self.values[v] = x;
                if self.run(depth + 1, memo, visit)? {
                    return Ok(true);
                }
            }
            x += step;
        }
        if let Some(k) = key {
            self.failed.insert(k);
        }
        Ok(false)
    }
}

fn feasible(graph: &DeskGraph, domains: Vec<Domain>, meter: &mut Meter) -> Result<bool> {
    Search::new(graph, domains, meter).run(0, true, &mut |_| true)
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k >= n {
        return Err(SplineError::IndexOutOfRange {
            index: k,
            min: 0,
            max: n - 1,
        });
    }
    Ok(())
}

/// Every spline with at least `k` leading zeros and all entries in
/// `[0, entry_bound]`.
pub fn enumerate_flow_up_splines(
    cycle: &EdgeLabeledCycle,
    k: usize,
    budget: &EnumerationBudget,
) -> Result<Vec<Spline>> {
    check_k(cycle.len(), k)?;
    let bound = budget.bound()?;
    let graph = DeskGraph::new(cycle)?;
    let domains = (0..cycle.len())
        .map(|v| if v < k { Domain::Fixed(0) } else { Domain::Range(0, bound) })
        .collect();
    let mut meter = Meter::new(budget.max_states);
    let mut found = Vec::new();
    Search::new(&graph, domains, &mut meter).run(0, false, &mut |values| {
        found.push(Spline::from_ints(values.iter().copied()));
        false
    })?;
    Ok(found)
}

/// The smallest flow-up class with exactly `k` leading zeros and positive
/// remaining entries: the leading entry is minimized first, then each later
/// entry is minimized given the ones before it.
///
/// A single positive class minimizing every entry at once need not exist
/// (on labels `2, 5, 3` the entry `g_3` alone can reach 3, but not together
/// with `g_2 = 2`), so the minimum is taken in this lexicographic order. The
/// result is re-checked as a spline before it is returned.
pub fn brute_force_smallest(
    cycle: &EdgeLabeledCycle,
    k: usize,
    budget: &EnumerationBudget,
) -> Result<Spline> {
    let n = cycle.len();
    check_k(n, k)?;
    let bound = budget.bound()?;
    let graph = DeskGraph::new(cycle)?;
    let mut meter = Meter::new(budget.max_states);
    let tail_domain = |v: usize| Domain::Range(1, bound.min(graph.period(v)));

    let mut minimum = vec![0i64; n];
    for p in k..n {
        let mut best = None;
        for x in 1..=bound {
            let domains = (0..n)
                .map(|v| match v {
                    v if v < k => Domain::Fixed(0),
                    v if v < p => Domain::Fixed(minimum[v]),
                    v if v == p => Domain::Fixed(x),
                    v => tail_domain(v),
                })
                .collect();
            if feasible(&graph, domains, &mut meter)? {
                best = Some(x);
                break;
            }
        }
        minimum[p] = best.ok_or_else(|| {
            SplineError::Budget(format!(
                "no positive value of g_{} up to {bound}",
                p + 1
            ))
        })?;
    }

    let spline = Spline::from_ints(minimum.iter().copied());
    let report = is_spline(cycle, spline.entries())?;
    if !report.is_ok() {
        return Err(SplineError::InvariantViolation(format!(
            "smallest class {spline} is not a spline: {}",
            report.violations[0]
        )));
    }
    Ok(spline)
}

/// The cycle plus chords `v_1 - v_i` labeled `gcd(l_i, .., l_n)` for
/// `3 <= i <= n - 1`.
pub fn triangulated_extension(cycle: &EdgeLabeledCycle) -> EdgeLabeledGraph {
    let n = cycle.len();
    let labels = cycle.labels();
    let mut edges: Vec<(usize, usize, BigInt)> = cycle
        .edges()
        .iter()
        .map(|e| (e.u, e.v, e.label.clone()))
        .collect();
    for i in 3..n {
        edges.push((1, i, gcd_all(&labels[i - 1..])));
    }
    EdgeLabeledGraph::new(n, edges).expect("chord labels are positive and endpoints distinct")
}

/// Whether `h` has exactly `k` leading zeros and satisfies every congruence
/// of the triangulated extension of `cycle`.
pub fn verify_triangulated_extension(cycle: &EdgeLabeledCycle, k: usize, h: &Spline) -> bool {
    if h.len() != cycle.len() || h.leading_zeros() != k {
        return false;
    }
    is_spline(&triangulated_extension(cycle), h.entries())
        .map(|r| r.is_ok())
        .unwrap_or(false)
}

/// Decide the basis condition on an arbitrary graph by search: for every `i`,
/// each leading entry of a spline with `i` leading zeros must be a multiple of
/// the leading entry `c_i` of candidate `i`.
///
/// The achievable leading entries form a subgroup `dZ` containing `c_i`, so it
/// suffices to rule out every value in `[1, |c_i|)`.
pub fn check_basis_by_definition<G: LabeledGraph + ?Sized>(
    graph: &G,
    candidates: &[Spline],
    budget: &EnumerationBudget,
) -> Result<bool> {
    let n = graph.vertex_count();
    check_shape(n, candidates)?;
    for (i, c) in candidates.iter().enumerate() {
        let report = is_spline(graph, c.entries())?;
        if !report.is_ok() {
            return Err(SplineError::MalformedBasis {
                index: i,
                reason: format!("not a spline: {}", report.violations[0]),
            });
        }
    }
    let bound = budget.bound()?;
    let desk = DeskGraph::new(graph)?;
    let mut meter = Meter::new(budget.max_states);
    for (i, c) in candidates.iter().enumerate() {
        let lead = i64::try_from(c.entries()[i].magnitude())
            .map_err(|_| SplineError::Budget(format!("leading entry {} is not desk scale", c.entries()[i])))?;
        for x in 1..lead.min(bound.saturating_add(1)) {
            let domains = (0..n)
                .map(|v| match v {
                    v if v < i => Domain::Fixed(0),
                    v if v == i => Domain::Fixed(x),
                    v => Domain::Range(0, bound.min(desk.period(v) - 1)),
                })
                .collect();
            if feasible(&desk, domains, &mut meter)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
