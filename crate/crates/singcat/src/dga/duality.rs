//! Self-duality of the truncated algebra after inverting the central
//! generator.
//!
//! Over the localized coefficient ring the algebra is equivalent, as a DG
//! bimodule, to a shift of its own coefficient-ring dual; the shift is by
//! the bidegree of `xi_1`. The equivalence is induced by the "coefficient
//! of `xi_1`" functional `pi`: the map sends `m` to the functional
//! `pi(- * m)`, which takes `1` to the dual of `xi_1` and `xi_1` to the
//! dual of `1`.
//!
//! What holds at the chain level, and what this module verifies:
//!
//! * left actions:  `pi((y g) m) = pi(y (g m))` for all generators `g`
//!   and all standard monomials `y`, `m` (plain associativity, so the
//!   map is strictly equivariant for the left action);
//! * differential:  `pi((d y) m) + (-1)^{|y|} pi(y (d m)) = 0`
//!   (equivalently `pi . d = 0`: the map is a strict chain map);
//! * right actions on homology: the graded trace property
//!   `pi(u v) = (-1)^{|u||v|} pi(v u)` for all pairs of *cycles* `u`,
//!   `v` in the window. Products of cycles commute up to exact
//!   boundaries (homology is graded-commutative), and `pi` kills
//!   boundaries, so on cycles the trace property is an exact identity.
//!   It genuinely fails on non-cycles -- see the pinned counterexample
//!   test -- so right equivariance is a homology-level statement, not a
//!   monomial-level one.
//! * bijectivity: homology dimensions, folded modulo the central
//!   generator's bidegree, pair up under `c -> |xi_1| - c`, and the
//!   induced pairing between paired classes has full rank.

use super::{build_q, DgAlgebra, Element, Monomial};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::SparseMatrix;
use crate::params::{BiDegree, ParamSet};
use crate::Result;
use std::collections::BTreeMap;

/// An element of the localized algebra: the central generator is
/// invertible, so monomials may carry negative `tau` exponents. Only this
/// check needs localization, hence the dedicated wrapper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedElement {
    pub inner: Element,
}

impl LocalizedElement {
    pub fn from_element(e: Element) -> Self {
        LocalizedElement { inner: e }
    }

    /// Multiplies by `tau^k`; `k` may be negative.
    pub fn shift_tau(&self, k: i64) -> LocalizedElement {
        let mut out = Element::zero(self.inner.field);
        for (m, c) in &self.inner.terms {
            out.add_term(
                Monomial {
                    tau: m.tau + k,
                    word: m.word.clone(),
                },
                c.clone(),
            );
        }
        LocalizedElement { inner: out }
    }

    pub fn mul(&self, alg: &DgAlgebra, other: &LocalizedElement) -> Result<LocalizedElement> {
        Ok(LocalizedElement {
            inner: alg.mul(&self.inner, &other.inner)?,
        })
    }

    pub fn diff(&self, alg: &DgAlgebra) -> Result<LocalizedElement> {
        Ok(LocalizedElement {
            inner: alg.diff(&self.inner)?,
        })
    }
}

/// Coefficient functional dual to `xi_1`: extracts the (localized)
/// coefficient of `tau^s * xi_1` from a normalized element, as the pair
/// `(s, coefficient)`. Returns zero when no such term exists.
fn xi1_component(x: &LocalizedElement) -> (i64, Scalar) {
    for (m, c) in &x.inner.terms {
        if m.word == [1] {
            return (m.tau, c.clone());
        }
    }
    (0, x.inner.field.zero())
}

/// Result of the bimodule self-duality verification.
#[derive(Debug, Clone)]
pub struct DualityReport {
    /// Number of probe pairs exercised across all identities.
    pub checked_pairs: usize,
    /// Failures of the left-action / chain-map / cycle-trace identities.
    pub failures: Vec<String>,
    /// Whether the homology dimensions pair up under the duality shift
    /// and the induced pairing has full rank.
    pub homology_involution_ok: bool,
    pub homology_failures: Vec<String>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.homology_involution_ok
    }
}

/// Folds a bidegree modulo the central generator's degree `(2b, h)`,
/// putting the internal weight into `[0, h)`.
fn fold_class(p: ParamSet, c: BiDegree) -> BiDegree {
    let q = c.w.div_euclid(p.h);
    BiDegree::new(c.n - 2 * p.b * q, c.w - p.h * q)
}

/// Kernel of the differential on the span of the given basis monomials
/// (all of one bidegree), expressed as elements.
fn cycle_basis(
    alg: &DgAlgebra,
    source: &[Monomial],
    target: &[Monomial],
) -> Result<Vec<Element>> {
    let field = alg.field;
    let row_of: BTreeMap<&Monomial, usize> =
        target.iter().enumerate().map(|(r, m)| (m, r)).collect();
    let mut d = SparseMatrix::new(target.len(), source.len(), field);
    for (col, m) in source.iter().enumerate() {
        let dm = alg.diff(&Element::from_monomial(field, m.clone(), field.one()))?;
        for (t, c) in &dm.terms {
            d.set(row_of[t], col, c.clone());
        }
    }
    let (_, kernel) = crate::matrix::rank_kernel(&d);
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut e = Element::zero(field);
            for (col, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    e.add_term(source[col].clone(), c);
                }
            }
            e
        })
        .collect())
}

/// Verifies that `m -> pi(- * m)` is a chain map, strictly equivariant
/// for the left action, trace-symmetric on cycles (right equivariance on
/// homology), and dimensionwise bijective on homology -- all on standard
/// monomials of internal weight at most `max_weight`.
pub fn bimodule_duality_check(
    p: ParamSet,
    max_weight: i64,
    field: FieldSpec,
) -> Result<DualityReport> {
    let alg = build_q(p, field);
    let monomials = alg.standard_monomials(max_weight);
    let mut generators: Vec<Monomial> = vec![Monomial::tau_pow(1)];
    for i in 1..p.h {
        generators.push(Monomial::xi(i as u8));
    }

    let loc = |m: &Monomial| {
        LocalizedElement::from_element(Element::from_monomial(field, m.clone(), field.one()))
    };
    let pair = |u: &LocalizedElement, v: &LocalizedElement| -> Result<(i64, Scalar)> {
        Ok(xi1_component(&u.mul(&alg, v)?))
    };

    let mut failures = Vec::new();
    let mut checked_pairs = 0usize;
    for m in &monomials {
        let me = loc(m);
        let dm = me.diff(&alg)?;
        let mut bad_left = false;
        let mut bad_chain = false;
        for (k, y) in monomials.iter().enumerate() {
            // Shift a third of the probes into negative exponents: the
            // pairing must be equivariant under localization.
            let ye = if k % 3 == 0 { loc(y).shift_tau(-1) } else { loc(y) };
            checked_pairs += 1;
            for g in &generators {
                let ge = loc(g);
                // Left: pi((y g) m) = pi(y (g m)).
                let lhs = pair(&ye.mul(&alg, &ge)?, &me)?;
                let rhs = pair(&ye, &ge.mul(&alg, &me)?)?;
                if lhs != rhs {
                    bad_left = true;
                }
            }
            // Chain: pi((d y) m) + (-1)^{|y|} pi(y (d m)) = 0. The two
            // terms share one tau-slot by homogeneity, so comparing the
            // coefficients suffices.
            let sign = if y.height() % 2 == 0 { 1 } else { -1 };
            let (_, c1) = pair(&ye.diff(&alg)?, &me)?;
            let (_, c2) = pair(&ye, &dm)?;
            if !c1.add(&c2.mul_i64(sign)).is_zero() {
                bad_chain = true;
            }
        }
        if bad_left {
            failures.push(format!("left action fails at {m}"));
        }
        if bad_chain {
            failures.push(format!("chain compatibility fails at {m}"));
        }
    }

    // Cycle bases per bidegree, for the trace property and the pairing.
    let mut by_degree: BTreeMap<BiDegree, Vec<Monomial>> = BTreeMap::new();
    for m in &monomials {
        by_degree
            .entry(alg.monomial_degree(m))
            .or_default()
            .push(m.clone());
    }
    let empty = Vec::new();
    let mut cycles: Vec<(BiDegree, Element)> = Vec::new();
    for (&deg, slice) in &by_degree {
        let target = by_degree
            .get(&deg.sub(BiDegree::new(1, 0)))
            .unwrap_or(&empty);
        for z in cycle_basis(&alg, slice, target)? {
            cycles.push((deg, z));
        }
    }

    // Right actions on homology: the graded trace property on cycles.
    for (i, (du, u)) in cycles.iter().enumerate() {
        for (j, (dv, v)) in cycles.iter().enumerate() {
            checked_pairs += 1;
            let (ue, ve) = if (i + j) % 3 == 0 {
                // Exercise localization on a third of the pairs; shifting
                // both keeps the product's tau-slot aligned.
                (
                    LocalizedElement::from_element(u.clone()).shift_tau(-1),
                    LocalizedElement::from_element(v.clone()).shift_tau(1),
                )
            } else {
                (
                    LocalizedElement::from_element(u.clone()),
                    LocalizedElement::from_element(v.clone()),
                )
            };
            let sign = if du.is_odd() && dv.is_odd() { -1 } else { 1 };
            let (_, uv) = pair(&ue, &ve)?;
            let (_, vu) = pair(&ve, &ue)?;
            if !uv.add(&vu.mul_i64(-sign)).is_zero() {
                failures.push(format!("trace property fails on cycle pair ({i}, {j})"));
            }
        }
    }

    // Homology pairing: fold classes modulo the central degree, demand
    // dim[c] = dim[|xi_1| - c], and demand the pairing between the two
    // classes has full rank on cycle representatives.
    let dims = alg.homology_dims(max_weight)?;
    let mut class_dims: BTreeMap<BiDegree, usize> = BTreeMap::new();
    let mut class_rep: BTreeMap<BiDegree, BiDegree> = BTreeMap::new();
    let mut homology_failures = Vec::new();
    for (&deg, &dim) in &dims {
        let cls = fold_class(p, deg);
        if let Some(&prev) = class_dims.get(&cls) {
            if prev != dim {
                homology_failures.push(format!(
                    "inconsistent class dimension at {cls}: {prev} vs {dim}"
                ));
            }
        }
        class_dims.insert(cls, dim);
        class_rep.entry(cls).or_insert(deg);
    }
    let shift = p.xi_degree(1);
    for (&cls, &dim) in &class_dims {
        let partner = fold_class(p, shift.sub(cls));
        let pdim = class_dims.get(&partner).copied().unwrap_or(0);
        if pdim != dim {
            homology_failures.push(format!(
                "class {cls} has dimension {dim} but its partner {partner} has {pdim}"
            ));
            continue;
        }
        // Nondegeneracy: boundaries pair to zero against cycles, so the
        // rank of the cycle-level pairing matrix equals the rank of the
        // homology-level pairing, which must be the full class dimension.
        let (d1, d2) = (class_rep[&cls], class_rep[&partner]);
        let z1: Vec<&Element> = cycles.iter().filter(|(d, _)| *d == d1).map(|(_, z)| z).collect();
        let z2: Vec<&Element> = cycles.iter().filter(|(d, _)| *d == d2).map(|(_, z)| z).collect();
        let mut mat = SparseMatrix::new(z1.len(), z2.len(), field);
        for (r, u) in z1.iter().enumerate() {
            for (c, v) in z2.iter().enumerate() {
                let (_, val) = pair(
                    &LocalizedElement::from_element((*u).clone()),
                    &LocalizedElement::from_element((*v).clone()),
                )?;
                mat.set(r, c, val);
            }
        }
        if mat.rank() != dim {
            homology_failures.push(format!(
                "pairing between classes {cls} and {partner} has rank {} < {dim}",
                mat.rank()
            ));
        }
    }

    Ok(DualityReport {
        checked_pairs,
        failures,
        homology_involution_ok: homology_failures.is_empty(),
        homology_failures,
    })
}
