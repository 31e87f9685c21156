//! Exhaustive integer sweeps of the differential and homotopy identities
//! over large windows.
//!
//! The structure constants of `d`, `delta`, and the projection are all
//! `0` or `+-1`, so the identities `d^2 = 0` and
//! `delta d + d delta = id - pi` can be verified over the integers; they
//! then hold over every coefficient field. Both maps are linear over the
//! central generator, so checking the `tau`-free standard words of a
//! given internal weight covers every standard monomial in that window.
//! Neither map ever leaves the `tau`-free standard span (splitting
//! letters of a standard word gives standard words, and the homotopy only
//! increases the leading letter), so the whole sweep runs on packed words
//! with machine-integer coefficients.
//!
//! Words are packed 4 bits per letter into a `u128`, bounding letters by
//! 15 and lengths by 32 -- ample for every supported parameter set.

use crate::{Error, Result};
use std::collections::HashMap;

/// Which algebra family a sweep runs over.
#[derive(Debug, Clone, Copy)]
pub enum PackedMode {
    /// Free algebra with letters `1..=cap`.
    Free { cap: i64 },
    /// Truncated algebra with letters `1..=h-1`, top letter only leftmost.
    Truncated { h: i64 },
}

/// A word packed 4 bits per letter, least-significant first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PackedWord {
    pub len: u8,
    pub bits: u128,
}

impl PackedWord {
    pub const EMPTY: PackedWord = PackedWord { len: 0, bits: 0 };

    pub fn letter(self, t: u8) -> u8 {
        ((self.bits >> (4 * t as u32)) & 0xF) as u8
    }

    pub fn push(self, letter: u8) -> PackedWord {
        debug_assert!(letter >= 1 && letter <= 15 && self.len < 32);
        PackedWord {
            len: self.len + 1,
            bits: self.bits | ((letter as u128) << (4 * self.len as u32)),
        }
    }

    /// Replaces the letter at `t` by the pair `(j, k)`.
    fn split_at(self, t: u8, j: u8, k: u8) -> PackedWord {
        let shift = 4 * t as u32;
        let low = self.bits & ((1u128 << shift) - 1);
        let high = self.bits >> (shift + 4);
        let mid = (j as u128) | ((k as u128) << 4);
        PackedWord {
            len: self.len + 1,
            bits: low | (mid << shift) | (high << (shift + 8)),
        }
    }

    /// Drops the first two letters and prepends `letter` (the homotopy).
    fn contract_front(self, letter: u8) -> PackedWord {
        PackedWord {
            len: self.len - 1,
            bits: (self.bits >> 8) << 4 | letter as u128,
        }
    }

    pub fn letters(self) -> Vec<u8> {
        (0..self.len).map(|t| self.letter(t)).collect()
    }
}

fn accumulate(acc: &mut HashMap<PackedWord, i64>, w: PackedWord, c: i64) {
    let e = acc.entry(w).or_insert(0);
    *e += c;
    if *e == 0 {
        acc.remove(&w);
    }
}

/// The differential on a packed word: split each letter with alternating
/// signs. Outputs of standard words are standard, so no rewriting occurs.
fn d_packed(w: PackedWord, out: &mut HashMap<PackedWord, i64>, coeff: i64) {
    for t in 0..w.len {
        let i = w.letter(t);
        let sign = if t % 2 == 0 { coeff } else { -coeff };
        for j in 1..i {
            accumulate(out, w.split_at(t, j, i - j), sign);
        }
    }
}

/// The homotopy: `xi_1 xi_i rest -> xi_{i+1} rest` when defined.
fn delta_packed(mode: PackedMode, w: PackedWord) -> Option<PackedWord> {
    if w.len < 2 || w.letter(0) != 1 {
        return None;
    }
    let i = w.letter(1) as i64;
    if let PackedMode::Truncated { h } = mode {
        if i > h - 2 {
            return None;
        }
    }
    Some(w.contract_front((i + 1) as u8))
}

fn is_projected(w: PackedWord) -> bool {
    w.len == 0 || (w.len == 1 && w.letter(0) == 1)
}

/// Outcome of an exhaustive sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepReport {
    pub words_checked: u64,
    pub violations: u64,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn for_each_standard_word(
    mode: PackedMode,
    max_subscript_sum: i64,
    f: &mut impl FnMut(PackedWord),
) -> Result<()> {
    // In the free case the homotopy can raise a letter one past the
    // enumeration cap, so that image must fit in 4 bits too.
    let letter_bound = match mode {
        PackedMode::Free { cap } => cap + 1,
        PackedMode::Truncated { h } => h - 1,
    };
    if letter_bound > 15 {
        return Err(Error::InvalidParams(
            "packed sweeps support letters up to 15".into(),
        ));
    }
    if max_subscript_sum > 32 {
        return Err(Error::InvalidParams(
            "packed sweeps support subscript sums up to 32".into(),
        ));
    }
    // Letters after the first position are capped at h-2 in the
    // truncated case.
    let rest_max = match mode {
        PackedMode::Free { cap } => cap,
        PackedMode::Truncated { h } => h - 2,
    };
    fn rec(
        w: PackedWord,
        used: i64,
        rest_max: i64,
        budget: i64,
        f: &mut impl FnMut(PackedWord),
    ) {
        f(w);
        for i in 1..=rest_max {
            if used + i > budget {
                break;
            }
            rec(w.push(i as u8), used + i, rest_max, budget, f);
        }
    }
    rec(PackedWord::EMPTY, 0, rest_max, max_subscript_sum, f);
    if let PackedMode::Truncated { h } = mode {
        let top = h - 1;
        if top <= max_subscript_sum {
            let seed = PackedWord::EMPTY.push(top as u8);
            rec(seed, top, rest_max, max_subscript_sum, f);
        }
    }
    Ok(())
}

/// Verifies `d^2 = 0` on every standard word with subscript sum at most
/// `max_subscript_sum`.
pub fn d_square_sweep(mode: PackedMode, max_subscript_sum: i64) -> Result<SweepReport> {
    let mut words_checked = 0u64;
    let mut violations = 0u64;
    let mut first = HashMap::new();
    let mut second = HashMap::new();
    for_each_standard_word(mode, max_subscript_sum, &mut |w| {
        words_checked += 1;
        first.clear();
        second.clear();
        d_packed(w, &mut first, 1);
        for (&dw, &c) in &first {
            d_packed(dw, &mut second, c);
        }
        if !second.is_empty() {
            violations += 1;
        }
    })?;
    Ok(SweepReport {
        words_checked,
        violations,
    })
}

/// Verifies `delta d + d delta = id - pi` on every standard word with
/// subscript sum at most `max_subscript_sum`.
pub fn homotopy_sweep(mode: PackedMode, max_subscript_sum: i64) -> Result<SweepReport> {
    let mut words_checked = 0u64;
    let mut violations = 0u64;
    let mut dw_map = HashMap::new();
    let mut acc = HashMap::new();
    for_each_standard_word(mode, max_subscript_sum, &mut |w| {
        words_checked += 1;
        dw_map.clear();
        acc.clear();
        // delta(d w)
        d_packed(w, &mut dw_map, 1);
        for (&dw, &c) in &dw_map {
            if let Some(v) = delta_packed(mode, dw) {
                accumulate(&mut acc, v, c);
            }
        }
        // d(delta w)
        if let Some(v) = delta_packed(mode, w) {
            d_packed(v, &mut acc, 1);
        }
        // minus (id - pi)
        if !is_projected(w) {
            accumulate(&mut acc, w, -1);
        }
        if !acc.is_empty() {
            violations += 1;
        }
    })?;
    Ok(SweepReport {
        words_checked,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::{build_q, build_r, DgAlgebra, Element, Monomial};
    use crate::field::FieldSpec;
    use crate::params::ParamSet;

    #[test]
    fn word_count_is_exact_for_small_truncated_case() {
        // h = 3, sums <= 6: words 1^k (k <= 6) plus 2*1^k (k <= 4).
        let mut n = 0u64;
        for_each_standard_word(PackedMode::Truncated { h: 3 }, 6, &mut |_| n += 1).unwrap();
        assert_eq!(n, 7 + 5);
    }

    #[test]
    fn sweeps_pass_on_moderate_windows() {
        for h in 2..=6 {
            let mode = PackedMode::Truncated { h };
            assert!(d_square_sweep(mode, 12).unwrap().passed());
            assert!(homotopy_sweep(mode, 12).unwrap().passed());
        }
        let free = PackedMode::Free { cap: 8 };
        assert!(d_square_sweep(free, 8).unwrap().passed());
        assert!(homotopy_sweep(free, 8).unwrap().passed());
    }

    #[test]
    fn packed_differential_matches_element_differential() {
        let q = build_q(ParamSet::new(1, 1, 4, 3).unwrap(), FieldSpec::Rationals);
        let r = build_r(1, 9, FieldSpec::Rationals).unwrap();
        let check = |alg: &DgAlgebra, mode: PackedMode, sum: i64| {
            for_each_standard_word(mode, sum, &mut |w| {
                let m = Monomial { tau: 0, word: w.letters() };
                let dm = alg
                    .diff(&Element::from_monomial(alg.field, m, alg.field.one()))
                    .unwrap();
                let mut packed = HashMap::new();
                d_packed(w, &mut packed, 1);
                assert_eq!(packed.len(), dm.terms.len());
                for (pw, c) in packed {
                    let mono = Monomial { tau: 0, word: pw.letters() };
                    let expected = crate::field::Scalar::from_i64(c, alg.field);
                    assert_eq!(dm.terms.get(&mono), Some(&expected), "at {mono}");
                }
            })
            .unwrap();
        };
        check(&q, PackedMode::Truncated { h: 4 }, 8);
        check(&r, PackedMode::Free { cap: 9 }, 7);
    }

    #[test]
    fn homotopy_matches_element_homotopy() {
        let q = build_q(ParamSet::new(1, 1, 4, 3).unwrap(), FieldSpec::Rationals);
        for_each_standard_word(PackedMode::Truncated { h: 4 }, 8, &mut |w| {
            let m = Monomial { tau: 0, word: w.letters() };
            let dm = q
                .delta(&Element::from_monomial(q.field, m, q.field.one()))
                .unwrap();
            match delta_packed(PackedMode::Truncated { h: 4 }, w) {
                None => assert!(dm.is_zero()),
                Some(v) => {
                    let mono = Monomial { tau: 0, word: v.letters() };
                    assert_eq!(dm.terms.len(), 1);
                    assert!(dm.terms.get(&mono).unwrap().is_one());
                }
            }
        })
        .unwrap();
    }

    #[test]
    fn split_packing_is_correct() {
        let w = PackedWord::EMPTY.push(3).push(1).push(2);
        assert_eq!(w.letters(), vec![3, 1, 2]);
        assert_eq!(w.split_at(1, 4, 5).letters(), vec![3, 4, 5, 2]);
        assert_eq!(w.split_at(0, 1, 2).letters(), vec![1, 2, 1, 2]);
        assert_eq!(w.contract_front(6).letters(), vec![6, 2]);
    }
}
