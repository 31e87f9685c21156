//! Exhaustive verification of the defining identities of an A-infinity
//! structure on enumerated basis tuples.
//!
//! For every arity `n` up to a bound, and every tuple of basis generators
//! whose total internal weight fits in a window, the checker evaluates
//!
//! ```text
//!   sum_{r+s+t=n} (-1)^{r+st} (-1)^{s(|x_1|+...+|x_r|)}
//!       m_{r+1+t}(x_1, ..., x_r, m_s(x_{r+1}, ..., x_{r+s}), ..., x_n)
//! ```
//!
//! and reports each tuple on which the sum fails to vanish. Internal
//! degree is conserved by every operation, so a window-closed tuple set
//! only ever queries operations inside the same window.

use crate::field::FieldSpec;
use crate::params::BiDegree;

use super::algebra::{sign_pow, AElem, AGen, MinimalAlgebra};

/// Anything carrying A-infinity operations on the two-generator basis.
pub trait AInfOps {
    fn field(&self) -> FieldSpec;
    fn degree(&self, g: &AGen) -> BiDegree;
    /// Evaluate `m_n`, `n = args.len()`.
    fn apply(&self, args: &[AElem]) -> AElem;
    /// Basis generators with `|internal degree| <= window`.
    fn basis_in_window(&self, window: i64) -> Vec<AGen>;
}

impl AInfOps for MinimalAlgebra {
    fn field(&self) -> FieldSpec {
        self.field
    }

    fn degree(&self, g: &AGen) -> BiDegree {
        self.degree(g)
    }

    fn apply(&self, args: &[AElem]) -> AElem {
        self.m(args)
    }

    fn basis_in_window(&self, window: i64) -> Vec<AGen> {
        self.basis_in_window(window)
    }
}

/// A basis tuple on which the identity sum failed to vanish.
#[derive(Debug, Clone)]
pub struct StasheffViolation {
    pub arity: usize,
    pub inputs: Vec<AGen>,
    pub defect: AElem,
}

/// The identity sum for one basis tuple.
pub fn identity_defect<O: AInfOps>(ops: &O, gens: &[AGen]) -> AElem {
    let field = ops.field();
    let n = gens.len();
    let mut total = AElem::zero(field);
    for s in 2..n {
        for r in 0..=(n - s) {
            let t = n - r - s;
            if r + 1 + t < 2 {
                continue;
            }
            let inner_args: Vec<AElem> = gens[r..r + s]
                .iter()
                .map(|g| AElem::basis(field, *g))
                .collect();
            let inner = ops.apply(&inner_args);
            if inner.is_zero() {
                continue;
            }
            let mut outer_args: Vec<AElem> = Vec::with_capacity(r + 1 + t);
            for g in &gens[..r] {
                outer_args.push(AElem::basis(field, *g));
            }
            outer_args.push(inner);
            for g in &gens[r + s..] {
                outer_args.push(AElem::basis(field, *g));
            }
            let outer = ops.apply(&outer_args);
            if outer.is_zero() {
                continue;
            }
            let skipped: usize = gens[..r]
                .iter()
                .filter(|g| ops.degree(g).is_odd())
                .count();
            let sign = sign_pow((r + s * t + s * skipped) as i64);
            total = total.add(&outer.scale(&crate::field::Scalar::from_i64(sign, field)));
        }
    }
    total
}

/// Check every identity of arity at most `max_arity` on tuples whose total
/// internal weight (in absolute value) is at most `window`.
pub fn stasheff_defect<O: AInfOps>(
    ops: &O,
    max_arity: usize,
    window: i64,
) -> Vec<StasheffViolation> {
    let basis = ops.basis_in_window(window);
    let weights: Vec<i64> = basis.iter().map(|g| ops.degree(g).w.abs()).collect();
    let mut violations = Vec::new();
    for n in 3..=max_arity {
        let mut tuple: Vec<AGen> = Vec::with_capacity(n);
        enumerate_tuples(&basis, &weights, window, n, &mut tuple, &mut |gens| {
            let defect = identity_defect(ops, gens);
            if !defect.is_zero() {
                violations.push(StasheffViolation {
                    arity: n,
                    inputs: gens.to_vec(),
                    defect,
                });
            }
        });
    }
    violations
}

pub(crate) fn enumerate_tuples<F: FnMut(&[AGen])>(
    basis: &[AGen],
    weights: &[i64],
    budget: i64,
    arity: usize,
    tuple: &mut Vec<AGen>,
    visit: &mut F,
) {
    if tuple.len() == arity {
        visit(tuple);
        return;
    }
    for (g, &w) in basis.iter().zip(weights) {
        if w > budget {
            continue;
        }
        tuple.push(*g);
        enumerate_tuples(basis, weights, budget - w, arity, tuple, visit);
        tuple.pop();
    }
}
