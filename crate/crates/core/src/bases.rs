//! Flow-up bases for the spline module of an edge-labeled cycle.
//!
//! Three constructions are provided:
//!
//! * triangulation splines `H_k`, defined on every cycle, whose entries are
//!   chained through [`solve_congruence_pair`] along the suffix gcds;
//! * King splines `K_i`, defined when the last two labels are coprime, with
//!   entries `(0, .., 0, l_i, .., l_i, k_i)`;
//! * smallest flow-up classes, found by the desk-scale search in
//!   [`crate::oracle`].
//!
//! On a cycle a set of flow-up classes is a basis exactly when the leading
//! entry of the class with `k` leading zeros is `+-m_k`, where
//! `m_k = lcm(l_k, gcd(l_{k+1}, .., l_n))` and `m_0 = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, SplineError};
use crate::numtheory::{gcd, lcm, mod_inverse, solve_congruence_pair};
use crate::oracle::{self, EnumerationBudget};
use crate::spline::{is_spline, trivial_spline, EdgeLabeledCycle, Spline};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    Triangulation,
    King,
    Smallest,
    Custom,
}

impl BasisKind {
    /// Symbol used when printing linear combinations.
    pub fn symbol(self) -> &'static str {
        match self {
            BasisKind::Triangulation => "H",
            BasisKind::King => "K",
            BasisKind::Smallest | BasisKind::Custom => "G",
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisKind::Triangulation => "triangulation",
            BasisKind::King => "king",
            BasisKind::Smallest => "smallest",
            BasisKind::Custom => "custom",
        })
    }
}

/// `G_0, .., G_{n-1}` where `G_k` has exactly `k` leading zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowUpBasis {
    kind: BasisKind,
    cycle: EdgeLabeledCycle,
    elements: Vec<Spline>,
}

impl FlowUpBasis {
    /// Wrap an arbitrary candidate set after checking it is a flow-up basis.
    pub fn custom(cycle: &EdgeLabeledCycle, elements: Vec<Spline>) -> Result<Self> {
        let report = check_flow_up_basis(cycle, &elements)?;
        if let Some(m) = report.mismatches.first() {
            return Err(SplineError::MalformedBasis {
                index: m.index,
                reason: format!("leading entry {} but the minimum is {}", m.found, m.expected),
            });
        }
        Ok(Self {
            kind: BasisKind::Custom,
            cycle: cycle.clone(),
            elements,
        })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn cycle(&self) -> &EdgeLabeledCycle {
        &self.cycle
    }

    pub fn elements(&self) -> &[Spline] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &Spline {
        &self.elements[k]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Leading entry `g^{(k)}_{k+1}` of `G_k`.
    pub fn leading(&self, k: usize) -> &BigInt {
        &self.elements[k].entries()[k]
    }
}

/// `gcd(l_i, .., l_n)` for every `i`, computed in one backward pass.
#[derive(Debug, Clone)]
pub struct SuffixGcds(Vec<BigInt>);

impl SuffixGcds {
    pub fn new(cycle: &EdgeLabeledCycle) -> Self {
        let labels = cycle.labels();
        let mut out = vec![BigInt::zero(); labels.len() + 1];
        for i in (0..labels.len()).rev() {
            out[i] = gcd(&labels[i], &out[i + 1]);
        }
        out.pop();
        Self(out)
    }

    /// `gcd(l_i, .., l_n)`, 1-based `i`.
    pub fn from(&self, i: usize) -> &BigInt {
        &self.0[i - 1]
    }
}

fn check_k(cycle: &EdgeLabeledCycle, k: usize, min: usize) -> Result<()> {
    let max = cycle.len() - 1;
    if k < min || k > max {
        return Err(SplineError::IndexOutOfRange { index: k, min, max });
    }
    Ok(())
}

/// `m_k = lcm(l_k, gcd(l_{k+1}, .., l_n))` for `1 <= k <= n - 1`.
pub fn smallest_leading_entry(cycle: &EdgeLabeledCycle, k: usize) -> Result<BigInt> {
    check_k(cycle, k, 1)?;
    Ok(leading_with(cycle, &SuffixGcds::new(cycle), k))
}

fn leading_with(cycle: &EdgeLabeledCycle, suffix: &SuffixGcds, k: usize) -> BigInt {
    lcm(cycle.label(k), suffix.from(k + 1))
}

/// The triangulation spline `H_k`; `H_0` is the trivial spline.
pub fn triangulation_spline(cycle: &EdgeLabeledCycle, k: usize) -> Result<Spline> {
    check_k(cycle, k, 0)?;
    triangulation_with(cycle, &SuffixGcds::new(cycle), k)
}

fn triangulation_with(cycle: &EdgeLabeledCycle, suffix: &SuffixGcds, k: usize) -> Result<Spline> {
    let n = cycle.len();
    if k == 0 {
        return trivial_spline(n);
    }
    let mut entries = vec![BigInt::zero(); n];
    entries[k] = leading_with(cycle, suffix, k);
    // 1-based position i = p + 1 solves h_i = h_{i-1} (mod l_{i-1}), h_i = 0 (mod gcd(l_i, .., l_n))
    for p in k + 1..n {
        entries[p] = solve_congruence_pair(&entries[p - 1], cycle.label(p), suffix.from(p + 1))?;
    }
    Ok(Spline::new(entries))
}

pub fn triangulation_basis(cycle: &EdgeLabeledCycle) -> Result<FlowUpBasis> {
    let suffix = SuffixGcds::new(cycle);
    let elements = (0..cycle.len())
        .map(|k| triangulation_with(cycle, &suffix, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(FlowUpBasis {
        kind: BasisKind::Triangulation,
        cycle: cycle.clone(),
        elements,
    })
}

/// Fails unless `gcd(l_{n-1}, l_n) = 1`.
pub fn king_precondition(cycle: &EdgeLabeledCycle) -> Result<()> {
    let n = cycle.len();
    let (left, right) = (cycle.label(n - 1), cycle.label(n));
    let g = gcd(left, right);
    if !g.is_one() {
        return Err(SplineError::KingPrecondition {
            left: left.clone(),
            right: right.clone(),
            gcd: g,
        });
    }
    Ok(())
}

/// The King basis. With `l_{n-1} = 1` the inverse modulo 1 is taken as 0, so
/// every `k_i` with `i <= n - 2` is 0.
pub fn king_basis(cycle: &EdgeLabeledCycle) -> Result<FlowUpBasis> {
    king_precondition(cycle)?;
    let n = cycle.len();
    let last = cycle.label(n);
    let before_last = cycle.label(n - 1);
    let correction = last * mod_inverse(last, before_last)?;

    let mut elements = Vec::with_capacity(n);
    elements.push(trivial_spline(n)?);
    for i in 1..=n - 2 {
        let ell = cycle.label(i);
        let mut entries = vec![BigInt::zero(); n];
        for e in &mut entries[i..n - 1] {
            *e = ell.clone();
        }
        entries[n - 1] = ell * &correction;
        elements.push(Spline::new(entries));
    }
    let mut top = vec![BigInt::zero(); n];
    top[n - 1] = before_last * last;
    elements.push(Spline::new(top));

    Ok(FlowUpBasis {
        kind: BasisKind::King,
        cycle: cycle.clone(),
        elements,
    })
}

/// A leading entry that differs from the minimal one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadingMismatch {
    pub index: usize,
    pub found: BigInt,
    pub expected: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BasisCheck {
    pub mismatches: Vec<LeadingMismatch>,
}

impl BasisCheck {
    pub fn is_basis(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Shape checks shared with the definition-based checker: `n` candidates of
/// length `n`, candidate `k` having exactly `k` leading zeros.
pub(crate) fn check_shape(n: usize, candidates: &[Spline]) -> Result<()> {
    if candidates.len() != n {
        return Err(SplineError::MalformedBasis {
            index: candidates.len().min(n),
            reason: format!("expected {n} candidates, got {}", candidates.len()),
        });
    }
    for (k, c) in candidates.iter().enumerate() {
        if c.len() != n {
            return Err(SplineError::MalformedBasis {
                index: k,
                reason: format!("has {} entries, expected {n}", c.len()),
            });
        }
        if c.leading_zeros() != k {
            return Err(SplineError::MalformedBasis {
                index: k,
                reason: format!("has {} leading zeros, expected {k}", c.leading_zeros()),
            });
        }
    }
    Ok(())
}

/// Decide whether `candidates` form a flow-up basis of the splines on `cycle`.
///
/// Shape problems and non-splines are errors; a well-formed set that is not a
/// basis yields a report listing each leading entry that is not `+-m_k`.
pub fn check_flow_up_basis(cycle: &EdgeLabeledCycle, candidates: &[Spline]) -> Result<BasisCheck> {
    check_shape(cycle.len(), candidates)?;
    for (k, c) in candidates.iter().enumerate() {
        let report = is_spline(cycle, c.entries())?;
        if !report.is_ok() {
            return Err(SplineError::MalformedBasis {
                index: k,
                reason: format!("not a spline: {}", report.violations[0]),
            });
        }
    }
    let suffix = SuffixGcds::new(cycle);
    let mismatches = candidates
        .iter()
        .enumerate()
        .filter_map(|(k, c)| {
            let expected = if k == 0 {
                BigInt::one()
            } else {
                leading_with(cycle, &suffix, k)
            };
            let found = c.entries()[k].clone();
            (found.abs() != expected).then_some(LeadingMismatch {
                index: k,
                found,
                expected,
            })
        })
        .collect();
    Ok(BasisCheck { mismatches })
}

/// The smallest flow-up class with `k` leading zeros, found by search. Fails
/// with a budget error when the label product exceeds `search_bound`.
pub fn smallest_flow_up_class(
    cycle: &EdgeLabeledCycle,
    k: usize,
    search_bound: &BigInt,
) -> Result<Spline> {
    check_k(cycle, k, 0)?;
    let product = cycle.label_product();
    if &product > search_bound {
        return Err(SplineError::Budget(format!(
            "label product {product} exceeds search bound {search_bound}"
        )));
    }
    oracle::brute_force_smallest(cycle, k, &EnumerationBudget::for_cycle(cycle))
}

pub fn smallest_basis(cycle: &EdgeLabeledCycle, budget: &EnumerationBudget) -> Result<FlowUpBasis> {
    let elements = (0..cycle.len())
        .map(|k| oracle::brute_force_smallest(cycle, k, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(FlowUpBasis {
        kind: BasisKind::Smallest,
        cycle: cycle.clone(),
        elements,
    })
}
