//! Exact arithmetic over prime fields `F_p`.
//!
//! Everything downstream (the closed-form rank tests and the brute-force
//! membership oracle) reduces to ranks of matrices over `F_p`, so this module
//! owns the modulus type, scalar arithmetic, binomial coefficients mod `p`
//! and the two matrix engines: [`FpMatrix`] for one-shot rank queries and
//! [`EchelonBasis`] for incremental row insertion.

mod echelon;
mod matrix;

pub use echelon::EchelonBasis;
pub use matrix::FpMatrix;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("rows have unequal lengths ({first} vs {other})")]
    RaggedRows { first: usize, other: usize },
}

/// A validated prime modulus `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p > u64::from(u32::MAX) || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub const fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u32 {
        (v % u64::from(self.0)) as u32
    }

    #[inline]
    pub fn reduce_signed(self, v: i64) -> u32 {
        v.rem_euclid(i64::from(self.0)) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = u64::from(a) + u64::from(b);
        let p = u64::from(self.0);
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (u64::from(a) + u64::from(self.0) - u64::from(b)) as u32
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.0)) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn pow(self, base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        let mut b = base % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue (Fermat).
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.0), "inverse of zero in F_{}", self.0);
        self.pow(a, u64::from(self.0) - 2)
    }

    /// `(-1)^e` as a residue.
    #[inline]
    pub fn sign(self, e: i64) -> u32 {
        if e.rem_euclid(2) == 0 {
            1 % self.0
        } else {
            self.0 - 1
        }
    }

    pub fn scalar(self, v: u64) -> FpScalar {
        FpScalar {
            value: self.reduce(v),
            modulus: self,
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u64> for Prime {
    type Error = FieldError;
    fn try_from(v: u64) -> Result<Self, Self::Error> {
        Prime::new(v)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        u64::from(p.0)
    }
}

/// An element of `F_p`, carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    modulus: Prime,
}

impl FpScalar {
    pub fn new(value: u64, modulus: Prime) -> Self {
        modulus.scalar(value)
    }

    pub fn zero(modulus: Prime) -> Self {
        FpScalar { value: 0, modulus }
    }

    pub fn one(modulus: Prime) -> Self {
        modulus.scalar(1)
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Prime {
        self.modulus
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: FpScalar) -> FpScalar {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FpScalar {
            value: self.modulus.add(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: FpScalar) -> FpScalar {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FpScalar {
            value: self.modulus.sub(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: FpScalar) -> FpScalar {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FpScalar {
            value: self.modulus.mul(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar {
            value: self.modulus.neg(self.value),
            modulus: self.modulus,
        }
    }
}

/// Deterministic trial-division primality test; inputs here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `C(n, k) mod p` by Lucas' theorem. Zero when `k < 0` or `k > n`.
pub fn binom_mod_p(n: u64, k: i64, p: Prime) -> FpScalar {
    if k < 0 || k as u64 > n {
        return FpScalar::zero(p);
    }
    let pp = u64::from(p.get());
    let (mut n, mut k) = (n, k as u64);
    let mut acc = 1 % p.get();
    while k > 0 {
        let (nd, kd) = (n % pp, k % pp);
        if kd > nd {
            return FpScalar::zero(p);
        }
        acc = p.mul(acc, small_binom(nd as u32, kd as u32, p));
        n /= pp;
        k /= pp;
    }
    FpScalar {
        value: acc,
        modulus: p,
    }
}

// C(n, k) mod p for 0 <= k <= n < p, where every factor is a unit.
fn small_binom(n: u32, k: u32, p: Prime) -> u32 {
    let k = k.min(n - k);
    let mut num = 1 % p.get();
    let mut den = 1 % p.get();
    for i in 0..k {
        num = p.mul(num, n - i);
        den = p.mul(den, i + 1);
    }
    p.mul(num, p.inv(den))
}
