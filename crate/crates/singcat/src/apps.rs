//! Parameter derivations for the application families and their headline
//! counts.
//!
//! Three families of finite-dimensional algebras lead to the same
//! two-parameter situation handled by the rest of the crate: principal
//! blocks of finite groups with a cyclic Sylow subgroup (through the
//! inertial index of the block), Brauer tree algebras of a straight-line
//! tree with multiplicity, and Hecke algebras of symmetric groups at a
//! root of unity. Each derivation lands on a [`ParamSet`] satisfying
//! `ah − bℓ = 1`; [`summarize`] then reports the indecomposable counts on
//! both sides of the role reversal `(a, b, h, ℓ) ↦ (−b, −a, ℓ, h)` and
//! cross-checks them against honest quiver builds.

use serde::Serialize;

use crate::arquiver::build_stable_quiver;
use crate::params::ParamSet;
use crate::{Error, Result};

/// Headline counts attached to a parameter set: the number of
/// indecomposable objects and shift orbits on the singular side, the same
/// for the role-reversed side, and the cylinder shape of the quiver.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SummaryReport {
    pub params: ParamSet,
    /// Indecomposables on the singular side: `|b|(h−1)`.
    pub sing_count: i64,
    /// Shift orbits on the singular side: `⌊h/2⌋`.
    pub sing_orbits: i64,
    /// Indecomposables on the role-reversed side: `|a|(ℓ−1)`.
    pub cosing_count: i64,
    /// Shift orbits on the role-reversed side: `⌊ℓ/2⌋`.
    pub cosing_orbits: i64,
    /// Cylinder shape of the translation quiver: `(height, circumference)`.
    pub ar_shape: (i64, i64),
}

fn is_odd_prime(p: i64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Parameters of the principal block of a group with a cyclic Sylow
/// `p`-subgroup of order `pⁿ` and inertial index `q`:
/// `(a, b, h, ℓ) = (q, q−1, pⁿ − (pⁿ−1)/q, pⁿ)`.
pub fn params_from_group(p_prime: i64, n: i64, q: i64) -> Result<ParamSet> {
    if !is_odd_prime(p_prime) {
        return Err(Error::InvalidParams(format!(
            "{p_prime} is not an odd prime"
        )));
    }
    if n < 1 {
        return Err(Error::InvalidParams(format!(
            "Sylow exponent must be at least 1, got {n}"
        )));
    }
    if q <= 1 {
        return Err(Error::InvalidParams(format!(
            "inertial index must exceed 1, got {q}"
        )));
    }
    if (p_prime - 1) % q != 0 {
        return Err(Error::InvalidParams(format!(
            "inertial index {q} does not divide {p_prime} - 1"
        )));
    }
    let pn = p_prime
        .checked_pow(u32::try_from(n).map_err(|_| {
            Error::InvalidParams(format!("Sylow exponent {n} is out of range"))
        })?)
        .ok_or_else(|| Error::InvalidParams(format!("{p_prime}^{n} overflows")))?;
    // q | p−1 already forces q | pⁿ−1; check directly anyway so that a
    // wrong branch above cannot produce a fractional height.
    if (pn - 1) % q != 0 {
        return Err(Error::InvalidParams(format!(
            "{q} does not divide {pn} - 1"
        )));
    }
    ParamSet::new(q, q - 1, pn - (pn - 1) / q, pn)
}

/// Parameters of the Brauer tree algebra of a straight-line tree with `e`
/// edges and multiplicity `mult`:
/// `(a, b, h, ℓ) = (e, e−1, mult·(e−1)+1, mult·e+1)`.
pub fn params_from_brauer_tree(e: i64, mult: i64) -> Result<ParamSet> {
    if e <= 1 {
        // A single edge gives a truncated polynomial algebra, which has no
        // interesting singular side in this parametrization.
        return Err(Error::InvalidParams(format!(
            "the tree needs at least two edges, got {e}"
        )));
    }
    if mult < 1 {
        return Err(Error::InvalidParams(format!(
            "multiplicity must be at least 1, got {mult}"
        )));
    }
    ParamSet::new(e, e - 1, mult * (e - 1) + 1, mult * e + 1)
}

/// Parameters of the Hecke algebra of a symmetric group at a primitive
/// `n`-th root of unity: `(a, b, h, ℓ) = (n−1, n−2, n−1, n)`.
pub fn params_from_hecke(n: i64) -> Result<ParamSet> {
    if n <= 2 {
        return Err(Error::InvalidParams(format!(
            "the root-of-unity order must exceed 2, got {n}"
        )));
    }
    ParamSet::new(n - 1, n - 2, n - 1, n)
}

/// Computes the headline counts for a parameter set and cross-checks each
/// against the vertex and orbit counts of an actual quiver build, on both
/// the given parameters and their role reversal.
pub fn summarize(p: &ParamSet) -> Result<SummaryReport> {
    let report = SummaryReport {
        params: *p,
        sing_count: p.b.abs() * (p.h - 1),
        sing_orbits: p.h / 2,
        cosing_count: p.a.abs() * (p.ell - 1),
        cosing_orbits: p.ell / 2,
        ar_shape: (p.h - 1, p.b.abs()),
    };

    let sing = build_stable_quiver(p)?;
    if report.sing_count != sing.vertices.len() as i64
        || report.sing_orbits != sing.sigma_orbits().len() as i64
    {
        return Err(Error::Shape(format!(
            "summary disagrees with the quiver build for {p:?}"
        )));
    }
    let cosing = build_stable_quiver(&p.swap())?;
    if report.cosing_count != cosing.vertices.len() as i64
        || report.cosing_orbits != cosing.sigma_orbits().len() as i64
    {
        return Err(Error::Shape(format!(
            "summary disagrees with the reversed quiver build for {p:?}"
        )));
    }
    Ok(report)
}
