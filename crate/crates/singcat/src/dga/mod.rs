//! The two differential graded algebras at the heart of the crate.
//!
//! * The *free* DG algebra on odd generators `xi_1, xi_2, ...` (one per
//!   subscript up to a weight cap), with `d(xi_i) = sum_{j+k=i} xi_j xi_k`.
//!   Its homology is the exterior algebra on `xi_1`, and the defining sums
//!   are iterated Massey powers of that class.
//! * The *truncated* algebra on `xi_1..xi_{h-1}` plus a central even
//!   generator `tau`, where the defining sum at subscript `h` is set to
//!   `-tau^ell` and the sums above `h` are set to zero. Standard monomials
//!   are `tau^s` times a word in `xi_1..xi_{h-2}`, with at most one
//!   leading `xi_{h-1}`.
//!
//! Both carry the same contracting homotopy `delta` with
//! `delta d + d delta = id - pi`, where `pi` projects onto the span of
//! `1` and `xi_1` over the coefficient ring.

pub mod duality;
pub mod hopf;
pub mod packed;

use crate::field::{FieldSpec, Scalar};
use crate::matrix::{subquotient_dim, SparseMatrix};
use crate::params::{BiDegree, ParamSet};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// A basis monomial: `tau^tau * xi_{word[0]} ... xi_{word[r-1]}`.
///
/// The free algebra never uses `tau` (kept at 0). Negative `tau` exponents
/// only appear in localized computations (see [`duality`]).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub tau: i64,
    pub word: Vec<u8>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            tau: 0,
            word: Vec::new(),
        }
    }

    pub fn xi(i: u8) -> Self {
        Monomial {
            tau: 0,
            word: vec![i],
        }
    }

    pub fn tau_pow(s: i64) -> Self {
        Monomial {
            tau: s,
            word: Vec::new(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.tau == 0 && self.word.is_empty()
    }

    /// Word length (number of odd letters); parity drives Koszul signs.
    pub fn height(&self) -> usize {
        self.word.len()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        if self.tau != 0 {
            write!(f, "tau^{}", self.tau)?;
            first = false;
        }
        for &i in &self.word {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "xi{i}")?;
            first = false;
        }
        Ok(())
    }
}

/// A finite linear combination of monomials over a fixed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub field: FieldSpec,
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero(field: FieldSpec) -> Self {
        Element {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(field: FieldSpec, m: Monomial, c: Scalar) -> Self {
        let mut e = Element::zero(field);
        e.add_term(m, c);
        e
    }

    pub fn one(field: FieldSpec) -> Self {
        Element::from_monomial(field, Monomial::one(), field.one())
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        let mut out = Element::zero(self.field);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero(self.field);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.mul(c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{m}")?;
        }
        Ok(())
    }
}

/// Which of the two algebra families an instance belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraKind {
    /// Free on odd `xi_1..xi_cap`; internal weight of `xi_i` is `i`.
    FreeOdd { a: i64, weight_cap: i64 },
    /// Truncated with parameters; internal weight of `xi_i` is `i*ell`,
    /// of `tau` is `h`.
    Truncated(ParamSet),
}

/// A DG algebra instance: the structure maps `mul`, `diff`, `delta`,
/// `proj`, plus basis enumeration and homology.
#[derive(Debug, Clone)]
pub struct DgAlgebra {
    pub kind: AlgebraKind,
    pub field: FieldSpec,
}

/// The free DG algebra on odd generators `xi_1..xi_weight_cap`.
pub fn build_r(a: i64, weight_cap: i64, field: FieldSpec) -> Result<DgAlgebra> {
    if a == 0 {
        return Err(Error::InvalidParams("need a != 0".into()));
    }
    if !(2..=60).contains(&weight_cap) {
        return Err(Error::InvalidParams(format!(
            "need 2 <= weight_cap <= 60, got {weight_cap}"
        )));
    }
    Ok(DgAlgebra {
        kind: AlgebraKind::FreeOdd { a, weight_cap },
        field,
    })
}

/// The truncated DG algebra for a parameter set.
pub fn build_q(p: ParamSet, field: FieldSpec) -> DgAlgebra {
    DgAlgebra {
        kind: AlgebraKind::Truncated(p),
        field,
    }
}

impl DgAlgebra {
    /// Largest generator subscript.
    pub fn max_letter(&self) -> i64 {
        match self.kind {
            AlgebraKind::FreeOdd { weight_cap, .. } => weight_cap,
            AlgebraKind::Truncated(p) => p.h - 1,
        }
    }

    pub fn params(&self) -> Option<ParamSet> {
        match self.kind {
            AlgebraKind::FreeOdd { .. } => None,
            AlgebraKind::Truncated(p) => Some(p),
        }
    }

    /// Bigraded degree of the generator `xi_i`.
    pub fn xi_degree(&self, i: i64) -> BiDegree {
        match self.kind {
            AlgebraKind::FreeOdd { a, .. } => BiDegree::new(2 * i * a - 1, i),
            AlgebraKind::Truncated(p) => p.xi_degree(i),
        }
    }

    pub fn monomial_degree(&self, m: &Monomial) -> BiDegree {
        let mut deg = match self.kind {
            AlgebraKind::FreeOdd { .. } => {
                debug_assert_eq!(m.tau, 0, "free algebra monomial with tau power");
                BiDegree::ZERO
            }
            AlgebraKind::Truncated(p) => p.tau_degree().scale(m.tau),
        };
        for &i in &m.word {
            deg = deg.add(self.xi_degree(i as i64));
        }
        deg
    }

    /// Checks the letter alphabet and the standard-word condition
    /// (truncated case: the top generator appears at most once, leftmost).
    pub fn is_standard(&self, m: &Monomial) -> bool {
        let max = self.max_letter();
        match self.kind {
            AlgebraKind::FreeOdd { .. } => {
                m.tau == 0 && m.word.iter().all(|&i| 1 <= i as i64 && i as i64 <= max)
            }
            AlgebraKind::Truncated(_) => m.word.iter().enumerate().all(|(k, &i)| {
                let i = i as i64;
                1 <= i && i <= max && (k == 0 || i < max)
            }),
        }
    }

    /// The degree of a homogeneous element (`None` for zero).
    /// Errors if the terms do not all share one bidegree.
    pub fn degree(&self, x: &Element) -> Result<Option<BiDegree>> {
        let mut deg: Option<BiDegree> = None;
        for m in x.terms.keys() {
            let d = self.monomial_degree(m);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => {
                    return Err(Error::NotHomogeneous(format!(
                        "terms in degrees {prev} and {d}"
                    )))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Rewrites an element into the standard-monomial basis. Idempotent;
    /// the identity map on the free algebra.
    pub fn normalize(&self, x: &Element) -> Element {
        let AlgebraKind::Truncated(p) = self.kind else {
            return x.clone();
        };
        let top = (p.h - 1) as u8;
        let mut out = Element::zero(x.field);
        let mut work: Vec<(Monomial, Scalar)> =
            x.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        while let Some((m, c)) = work.pop() {
            // Leftmost top generator at a non-leading position.
            let bad = (1..m.word.len()).find(|&k| m.word[k] == top);
            let Some(k) = bad else {
                out.add_term(m, c);
                continue;
            };
            let i = m.word[k - 1] as i64;
            if i == p.h - 1 {
                // Adjacent pair of top generators. The square is zero
                // except when h = 2, where the sole defining relation is
                // xi_1^2 = -tau^ell.
                if p.h == 2 {
                    let mut shrunk = m.clone();
                    shrunk.word.drain(k - 1..=k);
                    shrunk.tau += p.ell;
                    work.push((shrunk, c.neg()));
                }
                continue;
            }
            // xi_i xi_{h-1} -> -xi_{h-1} xi_i - sum_j xi_j xi_{i+h-1-j}
            //                  - [i=1] tau^ell
            let mut swapped = m.clone();
            swapped.word.swap(k - 1, k);
            work.push((swapped, c.neg()));
            for j in (i + 1)..=(p.h - 2) {
                let mut corr = m.clone();
                corr.word[k - 1] = j as u8;
                corr.word[k] = (i + p.h - 1 - j) as u8;
                work.push((corr, c.neg()));
            }
            if i == 1 {
                let mut shrunk = m.clone();
                shrunk.word.drain(k - 1..=k);
                shrunk.tau += p.ell;
                work.push((shrunk, c.neg()));
            }
        }
        out
    }

    /// Product of two homogeneous elements, in standard form.
    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.degree(x)?;
        self.degree(y)?;
        let mut out = Element::zero(x.field);
        for (mx, cx) in &x.terms {
            for (my, cy) in &y.terms {
                let mut word = mx.word.clone();
                word.extend_from_slice(&my.word);
                out.add_term(
                    Monomial {
                        tau: mx.tau + my.tau,
                        word,
                    },
                    cx.mul(cy),
                );
            }
        }
        Ok(self.normalize(&out))
    }

    /// The differential: splits one letter at a time with Koszul signs.
    /// Requires a homogeneous input.
    pub fn diff(&self, x: &Element) -> Result<Element> {
        self.degree(x)?;
        let mut out = Element::zero(x.field);
        for (m, c) in &x.terms {
            for (t, &i) in m.word.iter().enumerate() {
                let sign = if t % 2 == 0 { 1 } else { -1 };
                for j in 1..(i as i64) {
                    let k = i as i64 - j;
                    let mut word = Vec::with_capacity(m.word.len() + 1);
                    word.extend_from_slice(&m.word[..t]);
                    word.push(j as u8);
                    word.push(k as u8);
                    word.extend_from_slice(&m.word[t + 1..]);
                    out.add_term(Monomial { tau: m.tau, word }, c.mul_i64(sign));
                }
            }
        }
        // Splitting letters of a standard word yields standard words, so
        // this is a no-op; kept to make the invariant airtight.
        Ok(self.normalize(&out))
    }

    /// The contracting homotopy: sends `xi_1 xi_i f` to `xi_{i+1} f`,
    /// everything else to zero, linearly over the central generator.
    pub fn delta(&self, x: &Element) -> Result<Element> {
        self.degree(x)?;
        let mut out = Element::zero(x.field);
        for (m, c) in &x.terms {
            if m.word.len() < 2 || m.word[0] != 1 {
                continue;
            }
            let i = m.word[1] as i64;
            if let AlgebraKind::Truncated(p) = self.kind {
                if i > p.h - 2 {
                    continue;
                }
            }
            if i + 1 > self.max_letter() {
                return Err(Error::IndexRange(format!(
                    "homotopy needs generator {} beyond the weight cap",
                    i + 1
                )));
            }
            let mut word = vec![(i + 1) as u8];
            word.extend_from_slice(&m.word[2..]);
            out.add_term(Monomial { tau: m.tau, word }, c.clone());
        }
        Ok(out)
    }

    /// Projection onto the coefficient-ring span of `1` and `xi_1`.
    pub fn proj(&self, x: &Element) -> Element {
        let mut out = Element::zero(x.field);
        for (m, c) in &x.terms {
            if m.word.is_empty() || m.word == [1] {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// The defining sum at subscript `n`: `sum_{j+k=n} xi_j xi_k` in
    /// standard form. In the free algebra this is `d` of the generator at
    /// `n`; in the truncated algebra at `n = h` it collapses to
    /// `-tau^ell`, exhibiting the `h`-fold Massey power of the bottom
    /// homology class.
    pub fn massey_power(&self, n: i64) -> Result<Element> {
        if n < 2 || n - 1 > self.max_letter() {
            return Err(Error::IndexRange(format!(
                "defining sum at {n} needs generators up to {}",
                n - 1
            )));
        }
        let mut sum = Element::zero(self.field);
        for j in 1..n {
            sum.add_term(
                Monomial {
                    tau: 0,
                    word: vec![j as u8, (n - j) as u8],
                },
                self.field.one(),
            );
        }
        Ok(self.normalize(&sum))
    }

    /// All standard monomials with internal weight at most `max_weight`
    /// (and nonnegative `tau`), in canonical order.
    pub fn standard_monomials(&self, max_weight: i64) -> Vec<Monomial> {
        // Words over the unrestricted letters first.
        let (rest_max, letter_weight): (i64, fn(i64, i64) -> i64) = match self.kind {
            AlgebraKind::FreeOdd { weight_cap, .. } => (weight_cap, |i, _| i),
            AlgebraKind::Truncated(p) => (p.h - 2, |i, ell| i * ell),
        };
        let ell = match self.kind {
            AlgebraKind::FreeOdd { .. } => 1,
            AlgebraKind::Truncated(p) => p.ell,
        };
        fn extend(
            words: &mut Vec<(Vec<u8>, i64)>,
            cur: &mut Vec<u8>,
            cur_w: i64,
            rest_max: i64,
            letter_weight: fn(i64, i64) -> i64,
            ell: i64,
            budget: i64,
        ) {
            words.push((cur.clone(), cur_w));
            for i in 1..=rest_max {
                let w = letter_weight(i, ell);
                if cur_w + w > budget {
                    continue;
                }
                cur.push(i as u8);
                extend(words, cur, cur_w + w, rest_max, letter_weight, ell, budget);
                cur.pop();
            }
        }
        let mut words: Vec<(Vec<u8>, i64)> = Vec::new();
        let mut cur = Vec::new();
        extend(
            &mut words,
            &mut cur,
            0,
            rest_max,
            letter_weight,
            ell,
            max_weight,
        );
        let mut out = Vec::new();
        match self.kind {
            AlgebraKind::FreeOdd { .. } => {
                for (word, _) in words {
                    out.push(Monomial { tau: 0, word });
                }
            }
            AlgebraKind::Truncated(p) => {
                let top = p.h - 1;
                let top_w = letter_weight(top, p.ell);
                let mut full: Vec<(Vec<u8>, i64)> = Vec::new();
                for (word, w) in &words {
                    full.push((word.clone(), *w));
                    if top_w + w <= max_weight {
                        let mut lead = vec![top as u8];
                        lead.extend_from_slice(word);
                        full.push((lead, top_w + w));
                    }
                }
                for (word, w) in full {
                    let mut s = 0;
                    while w + s * p.h <= max_weight {
                        out.push(Monomial {
                            tau: s,
                            word: word.clone(),
                        });
                        s += 1;
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Homology dimensions per bidegree for all internal weights up to
    /// `max_weight`. Every weight slice is finite and closed under the
    /// differential, so no boundary corrections are needed.
    pub fn homology_dims(&self, max_weight: i64) -> Result<BTreeMap<BiDegree, usize>> {
        let basis = self.standard_monomials(max_weight);
        let mut by_degree: BTreeMap<BiDegree, Vec<Monomial>> = BTreeMap::new();
        for m in basis {
            by_degree
                .entry(self.monomial_degree(&m))
                .or_default()
                .push(m);
        }
        let index: BTreeMap<BiDegree, BTreeMap<&Monomial, usize>> = by_degree
            .iter()
            .map(|(d, ms)| (*d, ms.iter().enumerate().map(|(k, m)| (m, k)).collect()))
            .collect();
        // Matrix of d restricted to one bidegree slice.
        let d_matrix = |deg: BiDegree| -> Result<SparseMatrix> {
            let source = by_degree.get(&deg).map(Vec::as_slice).unwrap_or(&[]);
            let tdeg = BiDegree::new(deg.n - 1, deg.w);
            let target = index.get(&tdeg);
            let rows = target.map_or(0, |t| t.len());
            let mut mat = SparseMatrix::new(rows, source.len(), self.field);
            for (col, m) in source.iter().enumerate() {
                let dm = self.diff(&Element::from_monomial(
                    self.field,
                    m.clone(),
                    self.field.one(),
                ))?;
                for (mm, c) in &dm.terms {
                    let row = *target.and_then(|t| t.get(mm)).ok_or_else(|| {
                        Error::Shape(format!("differential left the window at {mm}"))
                    })?;
                    mat.add_to(row, col, c.clone());
                }
            }
            Ok(mat)
        };
        let mut dims = BTreeMap::new();
        for &deg in by_degree.keys() {
            let d_out = d_matrix(deg)?;
            let d_in = d_matrix(BiDegree::new(deg.n + 1, deg.w))?;
            let dim = subquotient_dim(&d_in, &d_out)?;
            if dim > 0 {
                dims.insert(deg, dim);
            }
        }
        Ok(dims)
    }
}
