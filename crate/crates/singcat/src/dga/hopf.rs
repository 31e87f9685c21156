//! Hopf-algebra structure on the free DG algebra: primitive
//! comultiplication, graded antipode, counit, and the standard axioms.
//!
//! The comultiplication does *not* descend to the truncated algebra: the
//! defining sum at subscript `h` is primitive but `tau^ell` is not, so
//! these maps reject truncated inputs.

use super::{AlgebraKind, DgAlgebra, Element, Monomial};
use crate::field::{FieldSpec, Scalar};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// An element of the two-fold tensor product, in the monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    pub field: FieldSpec,
    pub terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl TensorElement {
    pub fn zero(field: FieldSpec) -> Self {
        TensorElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, u: Monomial, v: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((u, v)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let next = e.get().add(&c);
                if next.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = next;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((u, v), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*({u}|{v})")?;
        }
        Ok(())
    }
}

fn require_free(alg: &DgAlgebra) -> Result<()> {
    match alg.kind {
        AlgebraKind::FreeOdd { .. } => Ok(()),
        AlgebraKind::Truncated(_) => Err(Error::InvalidParams(
            "comultiplication only exists on the free algebra".into(),
        )),
    }
}

/// Comultiplication: each generator is primitive, extended as an algebra
/// map with Koszul signs.
pub fn comultiply(alg: &DgAlgebra, x: &Element) -> Result<TensorElement> {
    require_free(alg)?;
    let mut out = TensorElement::zero(x.field);
    for (m, c) in &x.terms {
        // Fold Delta(xi_{w0}) * ... * Delta(xi_{w_{r-1}}) left to right:
        // (u|v) * (g|1 + 1|g) = (-1)^{|v|} (ug|v) + (u|vg).
        let mut acc = TensorElement::zero(x.field);
        acc.add_term(Monomial::one(), Monomial::one(), c.clone());
        for &g in &m.word {
            let mut next = TensorElement::zero(x.field);
            for ((u, v), cc) in &acc.terms {
                let mut ug = u.clone();
                ug.word.push(g);
                let sign = if v.height() % 2 == 0 { 1 } else { -1 };
                next.add_term(ug, v.clone(), cc.mul_i64(sign));
                let mut vg = v.clone();
                vg.word.push(g);
                next.add_term(u.clone(), vg, cc.clone());
            }
            acc = next;
        }
        for ((u, v), cc) in acc.terms {
            out.add_term(u, v, cc);
        }
    }
    Ok(out)
}

/// The graded antipode: `-1` on each generator, extended as a graded
/// anti-automorphism. On a word of `r` odd letters this reverses the word
/// and multiplies by `(-1)^r * (-1)^{r(r-1)/2}`.
pub fn antipode(alg: &DgAlgebra, x: &Element) -> Result<Element> {
    require_free(alg)?;
    let mut out = Element::zero(x.field);
    for (m, c) in &x.terms {
        let r = m.height() as i64;
        let sign = if (r + r * (r - 1) / 2) % 2 == 0 { 1 } else { -1 };
        let mut word = m.word.clone();
        word.reverse();
        out.add_term(Monomial { tau: m.tau, word }, c.mul_i64(sign));
    }
    Ok(out)
}

/// Counit: the coefficient of `1`.
pub fn counit(x: &Element) -> Scalar {
    x.terms
        .get(&Monomial::one())
        .cloned()
        .unwrap_or_else(|| x.field.zero())
}

/// `d (x) 1 + 1 (x) d` on a tensor element, with the Koszul sign on the
/// second slot.
pub fn tensor_diff(alg: &DgAlgebra, t: &TensorElement) -> Result<TensorElement> {
    let mut out = TensorElement::zero(t.field);
    for ((u, v), c) in &t.terms {
        let du = alg.diff(&Element::from_monomial(t.field, u.clone(), c.clone()))?;
        for (mu, cc) in &du.terms {
            out.add_term(mu.clone(), v.clone(), cc.clone());
        }
        let sign = if u.height() % 2 == 0 { 1 } else { -1 };
        let dv = alg.diff(&Element::from_monomial(t.field, v.clone(), c.mul_i64(sign)))?;
        for (mv, cc) in &dv.terms {
            out.add_term(u.clone(), mv.clone(), cc.clone());
        }
    }
    Ok(out)
}

/// The graded flip `u (x) v -> (-1)^{|u||v|} v (x) u`.
pub fn tensor_swap(t: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(t.field);
    for ((u, v), c) in &t.terms {
        let sign = if (u.height() * v.height()) % 2 == 0 { 1 } else { -1 };
        out.add_term(v.clone(), u.clone(), c.mul_i64(sign));
    }
    out
}

/// Multiplies the two tensor slots back together after applying the
/// antipode to the first: `mu . (S (x) 1)`.
fn contract_antipode(alg: &DgAlgebra, t: &TensorElement) -> Result<Element> {
    let mut out = Element::zero(t.field);
    for ((u, v), c) in &t.terms {
        let su = antipode(alg, &Element::from_monomial(t.field, u.clone(), c.clone()))?;
        let prod = alg.mul(&su, &Element::from_monomial(t.field, v.clone(), t.field.one()))?;
        out = out.add(&prod);
    }
    Ok(out)
}

/// Outcome of the Hopf-axiom sweep over a basis window.
#[derive(Debug, Clone)]
pub struct HopfReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies, monomial by monomial up to `max_weight`: the
/// comultiplication is a chain map, is cocommutative, and satisfies the
/// antipode identity `mu . (S (x) 1) . Delta = eta . eps`.
pub fn hopf_check(alg: &DgAlgebra, max_weight: i64) -> Result<HopfReport> {
    require_free(alg)?;
    let mut violations = Vec::new();
    let basis = alg.standard_monomials(max_weight);
    let checked = basis.len();
    for m in basis {
        let x = Element::from_monomial(alg.field, m.clone(), alg.field.one());
        let dm = comultiply(alg, &alg.diff(&x)?)?;
        let md = tensor_diff(alg, &comultiply(alg, &x)?)?;
        if dm != md {
            violations.push(format!("chain map fails on {m}"));
        }
        let delta = comultiply(alg, &x)?;
        if tensor_swap(&delta) != delta {
            violations.push(format!("cocommutativity fails on {m}"));
        }
        let folded = contract_antipode(alg, &delta)?;
        let expected = Element::from_monomial(alg.field, Monomial::one(), counit(&x));
        if folded != expected {
            violations.push(format!("antipode identity fails on {m}"));
        }
    }
    Ok(HopfReport {
        checked,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::build_r;
    use crate::params::ParamSet;

    fn r() -> DgAlgebra {
        build_r(1, 6, FieldSpec::Rationals).unwrap()
    }

    fn word(alg: &DgAlgebra, w: &[u8]) -> Element {
        Element::from_monomial(
            alg.field,
            Monomial {
                tau: 0,
                word: w.to_vec(),
            },
            alg.field.one(),
        )
    }

    #[test]
    fn antipode_on_small_words() {
        let r = r();
        // S(xi1) = -xi1; S(xi1 xi2) = -xi2 xi1.
        assert_eq!(antipode(&r, &word(&r, &[1])).unwrap(), word(&r, &[1]).neg());
        assert_eq!(
            antipode(&r, &word(&r, &[1, 2])).unwrap(),
            word(&r, &[2, 1]).neg()
        );
        // Three letters: reversal sign cancels the generator signs.
        assert_eq!(
            antipode(&r, &word(&r, &[1, 2, 3])).unwrap(),
            word(&r, &[3, 2, 1])
        );
    }

    #[test]
    fn antipode_identity_needs_the_graded_signs() {
        // On xi1^2 the graded antipode gives
        //   S(xi1^2) + S(1) xi1^2 = -xi1^2 + xi1^2 = 0,
        // while a sign-free reversal would give 2 xi1^2 != 0.
        let r = r();
        let sq = word(&r, &[1, 1]);
        let delta = comultiply(&r, &sq).unwrap();
        let folded = contract_antipode(&r, &delta).unwrap();
        assert!(folded.is_zero());

        let mut naive = Element::zero(r.field);
        for ((u, v), c) in &delta.terms {
            // "Antipode" without the reversal sign.
            let bad_sign = if u.height() % 2 == 0 { 1 } else { -1 };
            let mut uw = u.clone();
            uw.word.reverse();
            let su = Element::from_monomial(r.field, uw, c.mul_i64(bad_sign));
            let prod = r
                .mul(&su, &Element::from_monomial(r.field, v.clone(), r.field.one()))
                .unwrap();
            naive = naive.add(&prod);
        }
        assert!(!naive.is_zero());
    }

    #[test]
    fn comultiplication_is_cocommutative_and_chain() {
        let r = r();
        let x = word(&r, &[1, 2]);
        let delta = comultiply(&r, &x).unwrap();
        assert_eq!(tensor_swap(&delta), delta);
        let lhs = comultiply(&r, &r.diff(&x).unwrap()).unwrap();
        let rhs = tensor_diff(&r, &delta).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn axioms_hold_on_a_window() {
        let report = hopf_check(&r(), 6).unwrap();
        assert!(report.passed(), "violations: {:?}", report.violations);
        assert!(report.checked > 10);
    }

    #[test]
    fn truncated_algebra_is_rejected() {
        let q = crate::dga::build_q(ParamSet::new(1, 1, 3, 2).unwrap(), FieldSpec::Rationals);
        assert!(comultiply(&q, &Element::one(q.field)).is_err());
        assert!(hopf_check(&q, 4).is_err());
    }
}
