//! Exact integer primitives: gcd, lcm, modular inverse and the two-congruence
//! solver used to chain triangulation entries.
//!
//! Residues are always reported as the least non-negative representative.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, SplineError};

/// Extended gcd: `(g, s, t)` with `g = gcd(a, b) >= 0` and `a*s + b*t = g`.
pub fn egcd(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    if a.is_zero() && b.is_zero() {
        return Err(SplineError::UndefinedGcd);
    }
    let ext = a.extended_gcd(b);
    if ext.gcd.is_negative() {
        Ok((-ext.gcd, -ext.x, -ext.y))
    } else {
        Ok((ext.gcd, ext.x, ext.y))
    }
}

/// Non-negative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

/// gcd of a slice; the empty slice gives 0.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Least non-negative residue of `a` modulo `m > 0`.
pub fn residue(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// The unique `x` in `[0, m)` with `a*x = 1 (mod m)`. Modulo 1 the answer is 0.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    if !m.is_positive() {
        return Err(SplineError::NotInvertible {
            a: a.clone(),
            m: m.clone(),
        });
    }
    if m.is_one() {
        return Ok(BigInt::zero());
    }
    let (g, s, _) = egcd(&residue(a, m), m)?;
    if !g.is_one() {
        return Err(SplineError::NotInvertible {
            a: a.clone(),
            m: m.clone(),
        });
    }
    Ok(residue(&s, m))
}

/// Solve `x = y (mod a)`, `x = 0 (mod b)` and return this fixed representative:
///
/// * `x = b` when `a / gcd(a, b) = 1`,
/// * `x = y * (b/g) * [(b/g)^-1 mod (a/g)]` otherwise, with `g = gcd(a, b)`.
///
/// Triangulation entries are built from this exact value, so the choice of
/// representative matters and must not be "normalized" afterwards.
pub fn solve_congruence_pair(y: &BigInt, a: &BigInt, b: &BigInt) -> Result<BigInt> {
    for m in [a, b] {
        if !m.is_positive() {
            return Err(SplineError::NoSolution {
                y: y.clone(),
                a: a.clone(),
                b: b.clone(),
            });
        }
    }
    let g = gcd(a, b);
    if !y.is_multiple_of(&g) {
        return Err(SplineError::NoSolution {
            y: y.clone(),
            a: a.clone(),
            b: b.clone(),
        });
    }
    let a_red = a / &g;
    if a_red.is_one() {
        return Ok(b.clone());
    }
    let b_red = b / &g;
    let inv = mod_inverse(&b_red, &a_red)?;
    Ok(y * b_red * inv)
}
