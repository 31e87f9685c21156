//! The four-integer parameter set driving every construction, and the
//! bigraded degree bookkeeping shared across the crate.

use crate::{Error, Result};
use serde::Serialize;
use std::fmt;

/// Parameters `(a, b, h, ell)` subject to `h, ell >= 2`, `a != 0`, and the
/// Bezout relation `a*h - b*ell = 1`.
///
/// Negative `a`, `b` are allowed; [`ParamSet::swap`] produces the
/// role-reversed set `(-b, -a, ell, h)`, which satisfies the same relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ParamSet {
    pub a: i64,
    pub b: i64,
    pub h: i64,
    pub ell: i64,
}

impl ParamSet {
    pub fn new(a: i64, b: i64, h: i64, ell: i64) -> Result<Self> {
        if h < 2 || ell < 2 {
            return Err(Error::InvalidParams(format!(
                "need h >= 2 and ell >= 2, got h={h}, ell={ell}"
            )));
        }
        if a == 0 {
            return Err(Error::InvalidParams("need a != 0".into()));
        }
        if a * h - b * ell != 1 {
            return Err(Error::InvalidParams(format!(
                "need a*h - b*ell = 1, got {a}*{h} - {b}*{ell} = {}",
                a * h - b * ell
            )));
        }
        Ok(ParamSet { a, b, h, ell })
    }

    /// The role-reversed parameter set `(-b, -a, ell, h)`.
    pub fn swap(self) -> ParamSet {
        ParamSet {
            a: -self.b,
            b: -self.a,
            h: self.ell,
            ell: self.h,
        }
    }

    /// Degree of the odd generator family: generator `i` sits in
    /// homological degree `2ia - 1` and internal weight `i * ell`.
    pub fn xi_degree(self, i: i64) -> BiDegree {
        BiDegree::new(2 * i * self.a - 1, i * self.ell)
    }

    /// Degree of the central even generator: `(2b, h)`.
    pub fn tau_degree(self) -> BiDegree {
        BiDegree::new(2 * self.b, self.h)
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.h, self.ell)
    }
}

/// A bigraded degree: homological degree `n`, internal weight `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BiDegree {
    pub n: i64,
    pub w: i64,
}

impl BiDegree {
    pub const ZERO: BiDegree = BiDegree { n: 0, w: 0 };

    pub fn new(n: i64, w: i64) -> Self {
        BiDegree { n, w }
    }

    pub fn add(self, other: BiDegree) -> BiDegree {
        BiDegree::new(self.n + other.n, self.w + other.w)
    }

    pub fn sub(self, other: BiDegree) -> BiDegree {
        BiDegree::new(self.n - other.n, self.w - other.w)
    }

    pub fn scale(self, k: i64) -> BiDegree {
        BiDegree::new(self.n * k, self.w * k)
    }

    /// Parity of the homological degree (drives all Koszul signs).
    pub fn is_odd(self) -> bool {
        self.n.rem_euclid(2) == 1
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_the_standard_sweep() {
        for (a, b, h, ell) in [
            (1, 1, 3, 2),
            (2, 1, 2, 3),
            (1, 1, 4, 3),
            (3, 2, 5, 7),
            (4, 3, 4, 5),
            (6, 5, 6, 7),
        ] {
            let p = ParamSet::new(a, b, h, ell).unwrap();
            assert_eq!(p.a * p.h - p.b * p.ell, 1);
        }
    }

    #[test]
    fn accepts_negative_parameters() {
        // (-1,-1,2,3): (-1)*2 - (-1)*3 = 1.
        let p = ParamSet::new(-1, -1, 2, 3).unwrap();
        assert_eq!(p, ParamSet::new(1, 1, 3, 2).unwrap().swap());
    }

    #[test]
    fn swap_is_an_involution_and_stays_valid() {
        let p = ParamSet::new(3, 2, 5, 7).unwrap();
        let q = p.swap();
        assert_eq!(q.a * q.h - q.b * q.ell, 1);
        assert_eq!(q.swap(), p);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ParamSet::new(1, 1, 2, 2).is_err()); // determinant 0
        assert!(ParamSet::new(0, -1, 2, 2).is_err()); // a = 0
        assert!(ParamSet::new(1, 0, 1, 2).is_err()); // h < 2
        assert!(ParamSet::new(1, 0, 2, 1).is_err()); // ell < 2
        // Taking absolute values of a swap breaks the determinant.
        assert!(ParamSet::new(1, 1, 2, 3).is_err());
    }

    #[test]
    fn generator_degrees() {
        let p = ParamSet::new(1, 1, 3, 2).unwrap();
        assert_eq!(p.xi_degree(1), BiDegree::new(1, 2));
        assert_eq!(p.xi_degree(2), BiDegree::new(3, 4));
        assert_eq!(p.tau_degree(), BiDegree::new(2, 3));
        assert!(p.xi_degree(1).is_odd());
        assert!(!p.tau_degree().is_odd());
    }
}
