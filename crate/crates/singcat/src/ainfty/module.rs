//! Two-generator A-infinity modules over the minimal algebras.
//!
//! Over the `B` side there is a ladder of modules indexed by
//! `1 <= i <= ell`: the homology is free of rank two over the polynomial
//! subring, on generators `u` (degree `(0,0)`) and `v` (degree
//! `(-2ib-1, -ih)`), and the only higher module operations are the two
//! quoted families
//!
//! ```text
//!   m_{i+1}(t, ..., t, u) = v
//!   m_{ell-i+1}(t, ..., t, v) = (-1)^{(ell-2i+2)(ell-1)/2} x^h u
//! ```
//!
//! extended multilinearly over powers of the even generator. At the top
//! index the `v` generator disappears and the homology collapses to the
//! truncated polynomial ring `k[x]/(x^h) . u`.
//!
//! The mirror ladder over the `A` side is indexed by `1 <= i <= h`, with
//! `u` in degree `(2a-1, ell)`, `v` in degree `(-2(i-1)a, -(i-1)ell)`, and
//!
//! ```text
//!   m_{i+1}(xi, ..., xi, v) = u
//!   m_{h-i+1}(xi, ..., xi, u) = (-1)^{(h-2i+2)(h-1)/2} tau^ell v
//! ```
//!
//! At index 1 this is the algebra acting on itself (`v` is the unit and
//! `u` is the odd class); at index `h` the homology collapses to
//! `k[tau]/(tau^ell) . u`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::field::{FieldSpec, Scalar};
use crate::params::{BiDegree, ParamSet};
use crate::{Error, Result};

use super::algebra::{algebra_a, algebra_b, sign_pow, AElem, AGen, MinimalAlgebra};
use super::stasheff::enumerate_tuples;

/// A module basis element `even^pow * (v or u)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MGen {
    pub pow: i64,
    pub v: bool,
}

impl fmt::Display for MGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.v { "v" } else { "u" };
        if self.pow == 0 {
            write!(f, "{name}")
        } else {
            write!(f, "e^{}*{name}", self.pow)
        }
    }
}

/// A finite linear combination of module basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MElem {
    pub field: FieldSpec,
    pub terms: BTreeMap<MGen, Scalar>,
}

impl MElem {
    pub fn zero(field: FieldSpec) -> Self {
        MElem {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(field: FieldSpec, g: MGen) -> Self {
        let mut e = MElem::zero(field);
        e.add_term(g, field.one());
        e
    }

    pub fn add_term(&mut self, g: MGen, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let next = o.get().add(&c);
                if next.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = next;
                }
            }
        }
    }

    pub fn add(&self, other: &MElem) -> MElem {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(*g, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> MElem {
        let mut out = MElem::zero(self.field);
        for (g, v) in &self.terms {
            out.add_term(*g, v.mul(c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// One of the two quoted operation families.
#[derive(Debug, Clone, Copy)]
struct OpFamily {
    arity: usize,
    src_v: bool,
    dst_v: bool,
    coeff: i64,
    /// Extra power of the even generator added beyond the inputs.
    extra_pow: i64,
}

/// A rank-two (or truncated rank-one) minimal A-infinity module.
#[derive(Debug, Clone)]
pub struct MinimalModule {
    pub alg: MinimalAlgebra,
    pub index: i64,
    pub u_deg: BiDegree,
    /// `None` at the top index, where only `u` survives.
    pub v_deg: Option<BiDegree>,
    /// Truncation: even powers at or above this annihilate the module.
    pub trunc: Option<i64>,
    families: Vec<OpFamily>,
}

/// The ladder module over the `B`-side algebra, `1 <= i <= ell`.
pub fn module_w(p: &ParamSet, i: i64, field: FieldSpec) -> Result<MinimalModule> {
    if i < 1 || i > p.ell {
        return Err(Error::IndexRange(format!(
            "module index {i} outside 1..={}",
            p.ell
        )));
    }
    let alg = algebra_b(p, field);
    if i == p.ell {
        return Ok(MinimalModule {
            alg,
            index: i,
            u_deg: BiDegree::new(0, 0),
            v_deg: None,
            trunc: Some(p.h),
            families: Vec::new(),
        });
    }
    Ok(MinimalModule {
        alg,
        index: i,
        u_deg: BiDegree::new(0, 0),
        v_deg: Some(BiDegree::new(-2 * i * p.b - 1, -i * p.h)),
        trunc: None,
        families: vec![
            OpFamily {
                arity: (i + 1) as usize,
                src_v: false,
                dst_v: true,
                coeff: 1,
                extra_pow: 0,
            },
            OpFamily {
                arity: (p.ell - i + 1) as usize,
                src_v: true,
                dst_v: false,
                coeff: sign_pow((p.ell - 2 * i + 2) * (p.ell - 1) / 2),
                extra_pow: p.h,
            },
        ],
    })
}

/// The mirror ladder over the `A`-side algebra, `1 <= i <= h`.
pub fn module_y(p: &ParamSet, i: i64, field: FieldSpec) -> Result<MinimalModule> {
    if i < 1 || i > p.h {
        return Err(Error::IndexRange(format!(
            "module index {i} outside 1..={}",
            p.h
        )));
    }
    let alg = algebra_a(p, field);
    let u_deg = BiDegree::new(2 * p.a - 1, p.ell);
    if i == p.h {
        return Ok(MinimalModule {
            alg,
            index: i,
            u_deg,
            v_deg: None,
            trunc: Some(p.ell),
            families: Vec::new(),
        });
    }
    Ok(MinimalModule {
        alg,
        index: i,
        u_deg,
        v_deg: Some(BiDegree::new(-2 * (i - 1) * p.a, -(i - 1) * p.ell)),
        trunc: None,
        families: vec![
            OpFamily {
                arity: (i + 1) as usize,
                src_v: true,
                dst_v: false,
                coeff: 1,
                extra_pow: 0,
            },
            OpFamily {
                arity: (p.h - i + 1) as usize,
                src_v: false,
                dst_v: true,
                coeff: sign_pow((p.h - 2 * i + 2) * (p.h - 1) / 2),
                extra_pow: p.ell,
            },
        ],
    })
}

impl MinimalModule {
    pub fn degree(&self, g: &MGen) -> BiDegree {
        let base = if g.v {
            self.v_deg.expect("v generator present")
        } else {
            self.u_deg
        };
        self.alg.even_deg.scale(g.pow).add(base)
    }

    fn truncate(&self, g: MGen) -> Option<MGen> {
        match self.trunc {
            Some(p) if g.pow >= p => None,
            _ => Some(g),
        }
    }

    /// Evaluate the module operation on basis generators; the module slot
    /// is the last argument.
    pub fn m_basis(&self, args: &[AGen], m: MGen) -> MElem {
        let n = args.len() + 1;
        let mut out = MElem::zero(self.alg.field);
        if n == 2 {
            let g = args[0];
            if !g.odd {
                // Central action of the polynomial subring.
                if let Some(res) = self.truncate(MGen {
                    pow: m.pow + g.pow,
                    v: m.v,
                }) {
                    out.add_term(res, self.alg.field.one());
                }
                return out;
            }
        }
        for fam in &self.families {
            if fam.arity == n && fam.src_v == m.v && args.iter().all(|g| g.odd) {
                let total: i64 = args.iter().map(|g| g.pow).sum();
                if let Some(res) = self.truncate(MGen {
                    pow: m.pow + total + fam.extra_pow,
                    v: fam.dst_v,
                }) {
                    out.add_term(res, Scalar::from_i64(fam.coeff, self.alg.field));
                }
            }
        }
        out
    }

    /// Multilinear extension of [`MinimalModule::m_basis`].
    pub fn m(&self, args: &[AElem], m: &MElem) -> MElem {
        let field = self.alg.field;
        let mut out = MElem::zero(field);
        let term_lists: Vec<Vec<(AGen, Scalar)>> = args
            .iter()
            .map(|a| a.terms.iter().map(|(g, c)| (*g, c.clone())).collect())
            .collect();
        if term_lists.iter().any(|l| l.is_empty()) || m.is_zero() {
            return out;
        }
        for combo in term_lists.iter().multi_cartesian_product() {
            let gens: Vec<AGen> = combo.iter().map(|(g, _)| *g).collect();
            let mut coeff = field.one();
            for (_, c) in &combo {
                coeff = coeff.mul(c);
            }
            for (mg, mc) in &m.terms {
                out = out.add(&self.m_basis(&gens, *mg).scale(&coeff.mul(mc)));
            }
        }
        out
    }

    /// Flip the sign of the family that produces the top even power; a
    /// deliberate corruption used as a negative control.
    pub fn corrupt_return_sign(&mut self) {
        for fam in &mut self.families {
            if fam.extra_pow > 0 {
                fam.coeff = -fam.coeff;
            }
        }
    }

    /// Module basis generators with `|internal degree| <= window`.
    pub fn basis_in_window(&self, window: i64) -> Vec<MGen> {
        let mut out = Vec::new();
        for v in [false, true] {
            if v && self.v_deg.is_none() {
                continue;
            }
            for pow in 0.. {
                if let Some(p) = self.trunc {
                    if pow >= p {
                        break;
                    }
                }
                let g = MGen { pow, v };
                if self.degree(&g).w.abs() > window {
                    break;
                }
                out.push(g);
            }
        }
        out
    }
}

/// A basis tuple on which a module identity failed.
#[derive(Debug, Clone)]
pub struct ModuleViolation {
    pub arity: usize,
    pub algebra_inputs: Vec<AGen>,
    pub module_input: MGen,
    pub defect: MElem,
}

/// The module identity sum for one tuple `(a_1, ..., a_{n-1}, m)`.
pub fn module_identity_defect(module: &MinimalModule, gens: &[AGen], m: MGen) -> MElem {
    let field = module.alg.field;
    let n = gens.len() + 1;
    let mut total = MElem::zero(field);
    for s in 2..n {
        for r in 0..=(n - s) {
            let t = n - r - s;
            if r + 1 + t < 2 {
                continue;
            }
            let sign_base = r + s * t;
            let skipped: usize = gens[..r]
                .iter()
                .filter(|g| module.alg.degree(g).is_odd())
                .count();
            let sign = Scalar::from_i64(sign_pow((sign_base + s * skipped) as i64), field);
            let contribution = if t >= 1 {
                // Inner operation is an algebra operation on a slice of the
                // algebra inputs; the module slot stays outside.
                let inner_args: Vec<AElem> = gens[r..r + s]
                    .iter()
                    .map(|g| AElem::basis(field, *g))
                    .collect();
                let inner = module.alg.m(&inner_args);
                if inner.is_zero() {
                    continue;
                }
                let mut outer_args: Vec<AElem> = Vec::with_capacity(r + t);
                for g in &gens[..r] {
                    outer_args.push(AElem::basis(field, *g));
                }
                outer_args.push(inner);
                for g in &gens[r + s..] {
                    outer_args.push(AElem::basis(field, *g));
                }
                module.m(&outer_args, &MElem::basis(field, m))
            } else {
                // Inner operation is the module operation on the tail.
                let inner_args: Vec<AElem> = gens[r..]
                    .iter()
                    .map(|g| AElem::basis(field, *g))
                    .collect();
                let inner = module.m(&inner_args, &MElem::basis(field, m));
                if inner.is_zero() {
                    continue;
                }
                let outer_args: Vec<AElem> = gens[..r]
                    .iter()
                    .map(|g| AElem::basis(field, *g))
                    .collect();
                module.m(&outer_args, &inner)
            };
            total = total.add(&contribution.scale(&sign));
        }
    }
    total
}

/// Check every module identity of arity at most `max_arity` on tuples
/// whose total internal weight fits in the window.
pub fn module_stasheff_defect(
    module: &MinimalModule,
    max_arity: usize,
    window: i64,
) -> Vec<ModuleViolation> {
    let basis = module.alg.basis_in_window(window);
    let weights: Vec<i64> = basis
        .iter()
        .map(|g| module.alg.degree(g).w.abs())
        .collect();
    let module_basis = module.basis_in_window(window);
    let mut violations = Vec::new();
    for n in 3..=max_arity {
        let mut tuple: Vec<AGen> = Vec::with_capacity(n - 1);
        enumerate_tuples(&basis, &weights, window, n - 1, &mut tuple, &mut |gens| {
            let used: i64 = gens.iter().map(|g| module.alg.degree(g).w.abs()).sum();
            for mg in &module_basis {
                if used + module.degree(mg).w.abs() > window {
                    continue;
                }
                let defect = module_identity_defect(module, gens, *mg);
                if !defect.is_zero() {
                    violations.push(ModuleViolation {
                        arity: n,
                        algebra_inputs: gens.to_vec(),
                        module_input: *mg,
                        defect,
                    });
                }
            }
        });
    }
    violations
}
