//! Exact scalar arithmetic over the rationals or a prime field.
//!
//! Every computation in the crate is exact: a [`Scalar`] is either an
//! arbitrary-precision rational or an element of `F_p` for a prime `p`.
//! The field is chosen once per computation via [`FieldSpec`] and all
//! scalars of one matrix/algebra must share it.

use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// Which exact field to compute over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum FieldSpec {
    /// The rational numbers.
    Rationals,
    /// The prime field `F_p`.
    Prime(u64),
}

impl FieldSpec {
    /// Validates the spec (primality of the modulus).
    pub fn validate(self) -> Result<Self> {
        match self {
            FieldSpec::Rationals => Ok(self),
            FieldSpec::Prime(p) => {
                if is_prime_u64(p) {
                    Ok(self)
                } else {
                    Err(Error::InvalidField(format!("{p} is not prime")))
                }
            }
        }
    }

    /// 0 for the rationals, `p` for `F_p`.
    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar::from_i64(0, self)
    }

    pub fn one(self) -> Scalar {
        Scalar::from_i64(1, self)
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `rat` for the rationals or `fp:<p>` for a prime field.
    fn from_str(s: &str) -> Result<Self> {
        if s == "rat" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad modulus in {s:?}")))?;
            return FieldSpec::Prime(p).validate();
        }
        Err(Error::InvalidField(format!(
            "expected `rat` or `fp:<p>`, got {s:?}"
        )))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "rat"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

/// An exact field element. All arithmetic panics on a field mismatch,
/// which always indicates a programming error rather than bad user input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rat(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn from_i64(n: i64, field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::Prime(p) => {
                let v = n.rem_euclid(p as i64) as u64;
                Scalar::Fp { v, p }
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: (a + b) % p,
                p: *p,
            },
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: mulmod(*a, *b, *p),
                p: *p,
            },
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }

    /// Multiplicative inverse. Panics on zero (checked by callers).
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Rat(a.recip())
            }
            Scalar::Fp { v, p } => {
                assert!(*v != 0, "inverse of zero");
                // Fermat: v^(p-2) mod p.
                Scalar::Fp {
                    v: powmod(*v, p - 2, *p),
                    p: *p,
                }
            }
        }
    }

    pub fn mul_i64(&self, n: i64) -> Scalar {
        self.mul(&Scalar::from_i64(n, self.field()))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

/// Exposes the sign of a rational (used only for display ordering).
pub fn scalar_is_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Rat(r) => r.is_negative(),
        Scalar::Fp { .. } => false,
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the witness set below is known to
/// be exact for all 64-bit integers).
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
