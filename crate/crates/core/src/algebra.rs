//! Coordinates in a flow-up basis and products of basis elements.
//!
//! Splines multiply entrywise. On the King basis every product of two basis
//! elements has a two-term closed form; on 3-cycles the triangulation basis
//! has one as well. Any other product goes through [`product_in_basis`],
//! which multiplies pointwise and decomposes the result. No closed form is
//! known for triangulation bases on longer cycles.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::bases::{king_basis, triangulation_basis, BasisKind, FlowUpBasis};
use crate::error::{Result, SplineError};
use crate::spline::{is_spline, pointwise_mul, scalar_mul, sub, EdgeLabeledCycle, Spline};

/// `c_0, .., c_{n-1}` with `s = sum c_k G_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coefficients(Vec<BigInt>);

impl Coefficients {
    pub fn new(values: Vec<BigInt>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_values(self) -> Vec<BigInt> {
        self.0
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Coordinates of `s` in `basis`, found by peeling leading entries from the
/// left: `c_k` is the current entry `k + 1` divided by the leading entry of
/// `G_k`, after which `c_k G_k` is subtracted.
pub fn decompose(s: &Spline, basis: &FlowUpBasis) -> Result<Coefficients> {
    let n = basis.len();
    if s.len() != n {
        return Err(SplineError::Dimension {
            expected: n,
            found: s.len(),
        });
    }
    let report = is_spline(basis.cycle(), s.entries())?;
    if !report.is_ok() {
        return Err(SplineError::NotASpline(report.violations));
    }
    let mut rest = s.clone();
    let mut coefficients = Vec::with_capacity(n);
    for k in 0..n {
        let lead = basis.leading(k);
        let value = &rest.entries()[k];
        let (c, r) = value.div_rem(lead);
        if !r.is_zero() {
            return Err(SplineError::NotInSpan {
                index: k,
                position: k + 1,
                value: value.clone(),
                leading: lead.clone(),
            });
        }
        if !c.is_zero() {
            rest = sub(&rest, &scalar_mul(&c, basis.element(k)))?;
        }
        coefficients.push(c);
    }
    debug_assert!(rest.is_zero());
    Ok(Coefficients(coefficients))
}

/// `sum c_k G_k`.
pub fn reconstruct(coefficients: &[BigInt], basis: &FlowUpBasis) -> Result<Spline> {
    if coefficients.len() != basis.len() {
        return Err(SplineError::Dimension {
            expected: basis.len(),
            found: coefficients.len(),
        });
    }
    let n = basis.len();
    let mut out = vec![BigInt::zero(); n];
    for (c, g) in coefficients.iter().zip(basis.elements()) {
        for (o, e) in out.iter_mut().zip(g.entries()) {
            *o += c * e;
        }
    }
    Ok(Spline::new(out))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub index: usize,
    pub coefficient: BigInt,
}

/// `G_i G_j` as a sparse integer combination of basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductDecomposition {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<Term>,
}

impl ProductDecomposition {
    fn new(i: usize, j: usize, terms: impl IntoIterator<Item = (usize, BigInt)>) -> Self {
        let terms = terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(index, coefficient)| Term { index, coefficient })
            .collect();
        Self { i, j, terms }
    }

    /// Dense coefficient vector of length `n`.
    pub fn dense(&self, n: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n];
        for t in &self.terms {
            out[t.index] += &t.coefficient;
        }
        out
    }

    pub fn coefficient(&self, index: usize) -> BigInt {
        self.terms
            .iter()
            .filter(|t| t.index == index)
            .map(|t| t.coefficient.clone())
            .sum()
    }

    pub fn evaluate(&self, basis: &FlowUpBasis) -> Result<Spline> {
        reconstruct(&self.dense(basis.len()), basis)
    }

    /// Renders like `3*K3 + 48*K4`.
    pub fn render(&self, symbol: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, t) in self.terms.iter().enumerate() {
            let magnitude = t.coefficient.abs();
            match (n, t.coefficient.is_negative()) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            out.push_str(&format!("{magnitude}*{symbol}{}", t.index));
        }
        out
    }
}

/// Check a product against the pointwise product and against the
/// coordinates obtained by decomposing it.
pub fn verify_product(basis: &FlowUpBasis, product: &ProductDecomposition) -> Result<()> {
    let direct = pointwise_mul(basis.element(product.i), basis.element(product.j))?;
    let combined = product.evaluate(basis)?;
    if combined != direct {
        return Err(SplineError::InvariantViolation(format!(
            "{} gives {combined}, but G_{} G_{} = {direct}",
            product.render(basis.kind().symbol()),
            product.i,
            product.j
        )));
    }
    let coordinates = decompose(&direct, basis)?;
    if coordinates.values() != product.dense(basis.len()).as_slice() {
        return Err(SplineError::InvariantViolation(format!(
            "decomposition {coordinates} disagrees with {}",
            product.render(basis.kind().symbol())
        )));
    }
    Ok(())
}

/// Any product of basis elements, by pointwise multiplication followed by
/// [`decompose`].
pub fn product_in_basis(basis: &FlowUpBasis, i: usize, j: usize) -> Result<ProductDecomposition> {
    check_index(basis.len(), i)?;
    check_index(basis.len(), j)?;
    let direct = pointwise_mul(basis.element(i), basis.element(j))?;
    let coordinates = decompose(&direct, basis)?;
    Ok(ProductDecomposition::new(
        i,
        j,
        coordinates.into_values().into_iter().enumerate(),
    ))
}

fn check_index(n: usize, index: usize) -> Result<()> {
    if index >= n {
        return Err(SplineError::IndexOutOfRange {
            index,
            min: 0,
            max: n - 1,
        });
    }
    Ok(())
}

fn exact_quotient(what: &'static str, numerator: BigInt, denominator: &BigInt) -> Result<BigInt> {
    let (q, r) = numerator.div_rem(denominator);
    if !r.is_zero() {
        return Err(SplineError::NonIntegral {
            what,
            numerator,
            denominator: denominator.clone(),
        });
    }
    Ok(q)
}

/// King product on an already built King basis.
///
/// For `0 < i <= j`: `K_i K_j = l_i K_j + (k_j (k_i - l_i) / k_{n-1}) K_{n-1}`,
/// which collapses to `k_i K_{n-1}` when `j = n - 1`.
pub fn king_product_in(basis: &FlowUpBasis, i: usize, j: usize) -> Result<ProductDecomposition> {
    let n = basis.len();
    check_index(n, i)?;
    check_index(n, j)?;
    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
    let last = |k: usize| &basis.element(k).entries()[n - 1];

    let terms: Vec<(usize, BigInt)> = if lo == 0 {
        vec![(hi, BigInt::one())]
    } else if hi == n - 1 {
        vec![(n - 1, last(lo).clone())]
    } else {
        let ell = basis.cycle().label(lo);
        let numerator = last(hi) * (last(lo) - ell);
        let top = exact_quotient("k_j (k_i - l_i) / k_{n-1}", numerator, last(n - 1))?;
        vec![(hi, ell.clone()), (n - 1, top)]
    };
    Ok(ProductDecomposition::new(i, j, terms))
}

/// `K_i K_j` on the King basis of `cycle`.
pub fn king_product(cycle: &EdgeLabeledCycle, i: usize, j: usize) -> Result<ProductDecomposition> {
    king_product_in(&king_basis(cycle)?, i, j)
}

/// Full `n x n` table of products; `cells[i][j]` is `G_i G_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationTable {
    pub basis: FlowUpBasis,
    pub cells: Vec<Vec<ProductDecomposition>>,
    /// `h_3^{(1)} (h_3^{(1)} - h_2^{(1)}) / h_3^{(2)}` for the 3-cycle
    /// triangulation table.
    pub phi: Option<BigInt>,
}

impl MultiplicationTable {
    pub fn cell(&self, i: usize, j: usize) -> &ProductDecomposition {
        &self.cells[i][j]
    }

    pub fn symbol(&self) -> &'static str {
        self.basis.kind().symbol()
    }
}

fn verified_table(
    basis: FlowUpBasis,
    phi: Option<BigInt>,
    mut product: impl FnMut(&FlowUpBasis, usize, usize) -> Result<ProductDecomposition>,
) -> Result<MultiplicationTable> {
    let n = basis.len();
    let mut cells = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let cell = product(&basis, i, j)?;
            verify_product(&basis, &cell)?;
            row.push(cell);
        }
        cells.push(row);
    }
    Ok(MultiplicationTable { basis, cells, phi })
}

/// King-basis multiplication table, every cell checked against the pointwise
/// product and its decomposition.
pub fn king_multiplication_table(cycle: &EdgeLabeledCycle) -> Result<MultiplicationTable> {
    verified_table(king_basis(cycle)?, None, king_product_in)
}

/// Triangulation-basis table of a 3-cycle:
///
/// ```text
///  H_1 H_1 = h_2^(1) H_1 + phi H_2
///  H_1 H_2 = h_3^(1) H_2
///  H_2 H_2 = h_3^(2) H_2
/// ```
///
/// with `phi = h_3^(1) (h_3^(1) - h_2^(1)) / h_3^(2)`.
pub fn triangulation_table_3cycle(cycle: &EdgeLabeledCycle) -> Result<MultiplicationTable> {
    if cycle.len() != 3 {
        return Err(SplineError::CycleLength {
            expected: 3,
            found: cycle.len(),
        });
    }
    let basis = triangulation_basis(cycle)?;
    let h1 = basis.element(1).entries().to_vec();
    let h2 = basis.element(2).entries().to_vec();
    let phi = exact_quotient("phi", &h1[2] * (&h1[2] - &h1[1]), &h2[2])?;

    let product = |_: &FlowUpBasis, i: usize, j: usize| -> Result<ProductDecomposition> {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        let terms = match (lo, hi) {
            (0, k) => vec![(k, BigInt::one())],
            (1, 1) => vec![(1, h1[1].clone()), (2, phi.clone())],
            (1, 2) => vec![(2, h1[2].clone())],
            _ => vec![(2, h2[2].clone())],
        };
        Ok(ProductDecomposition::new(i, j, terms))
    };
    let phi_value = phi.clone();
    verified_table(basis, Some(phi_value), product)
}

/// Table computed entirely through [`product_in_basis`]; works for any basis.
pub fn generic_multiplication_table(basis: FlowUpBasis) -> Result<MultiplicationTable> {
    verified_table(basis, None, product_in_basis)
}

/// Closed-form product when one exists for `basis`, otherwise the generic
/// pointwise-and-decompose route.
pub fn multiply(basis: &FlowUpBasis, i: usize, j: usize) -> Result<ProductDecomposition> {
    let product = match basis.kind() {
        BasisKind::King => king_product_in(basis, i, j)?,
        BasisKind::Triangulation if basis.len() == 3 => {
            let table = triangulation_table_3cycle(basis.cycle())?;
            check_index(3, i)?;
            check_index(3, j)?;
            table.cells[i][j].clone()
        }
        _ => product_in_basis(basis, i, j)?,
    };
    verify_product(basis, &product)?;
    Ok(product)
}
