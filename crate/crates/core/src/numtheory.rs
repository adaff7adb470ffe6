//! Fibonacci and Lucas numbers and the key matrices built from them.
//!
//! All arithmetic is arbitrary precision, so there is no cap on the key
//! index.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Which matrix family a key belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KeyFamily {
    /// `Q^n = [[F(n+1), F(n)], [F(n), F(n-1)]]`.
    QPow,
    /// `R_n = R·Q^n = [[L(n+1), L(n)], [L(n), L(n-1)]]` with `R = [[1,2],[2,-1]]`.
    RMat,
}

impl fmt::Display for KeyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KeyFamily::QPow => f.write_str("Q"),
            KeyFamily::RMat => f.write_str("R"),
        }
    }
}

/// A 2×2 exact integer key matrix tagged with its family and index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyMatrix {
    family: KeyFamily,
    n: u64,
    m11: BigInt,
    m12: BigInt,
    m21: BigInt,
    m22: BigInt,
}

impl KeyMatrix {
    /// Builds the key of the given family and index.
    pub fn new(family: KeyFamily, n: u64) -> Result<Self> {
        match family {
            KeyFamily::QPow => q_power(n),
            KeyFamily::RMat => r_matrix(n),
        }
    }

    pub fn family(&self) -> KeyFamily {
        self.family
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m11(&self) -> &BigInt {
        &self.m11
    }

    pub fn m12(&self) -> &BigInt {
        &self.m12
    }

    pub fn m21(&self) -> &BigInt {
        &self.m21
    }

    pub fn m22(&self) -> &BigInt {
        &self.m22
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.m11, &self.m12, &self.m21, &self.m22]
    }

    /// Determinant computed from the entries.
    pub fn determinant(&self) -> BigInt {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }
}

impl fmt::Display for KeyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{} = [[{}, {}], [{}, {}]]",
            self.family, self.n, self.m11, self.m12, self.m21, self.m22
        )
    }
}

/// Walks a second-order recurrence `s(k+1) = s(k) + s(k-1)` from `(s0, s1)`
/// and returns `(s(n), s(n+1))`.
fn walk(s0: BigInt, s1: BigInt, n: u64) -> (BigInt, BigInt) {
    let (mut a, mut b) = (s0, s1);
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    (a, b)
}

/// `F(n)` with `F(0) = 0`, `F(1) = 1`.
pub fn fibonacci(n: u64) -> BigInt {
    walk(BigInt::zero(), BigInt::one(), n).0
}

/// `L(n)` with `L(0) = 2`, `L(1) = 1`.
pub fn lucas(n: u64) -> BigInt {
    walk(BigInt::from(2), BigInt::one(), n).0
}

/// `Q^n` for `n >= 1`.
pub fn q_power(n: u64) -> Result<KeyMatrix> {
    if n == 0 {
        return Err(Error::InvalidKeyIndex(n));
    }
    let (prev, cur) = walk(BigInt::zero(), BigInt::one(), n - 1);
    let next = &prev + &cur;
    Ok(KeyMatrix {
        family: KeyFamily::QPow,
        n,
        m11: next,
        m12: cur.clone(),
        m21: cur,
        m22: prev,
    })
}

/// `R_n = R·Q^n` for `n >= 1`.
pub fn r_matrix(n: u64) -> Result<KeyMatrix> {
    if n == 0 {
        return Err(Error::InvalidKeyIndex(n));
    }
    let (prev, cur) = walk(BigInt::from(2), BigInt::one(), n - 1);
    let next = &prev + &cur;
    Ok(KeyMatrix {
        family: KeyFamily::RMat,
        n,
        m11: next,
        m12: cur.clone(),
        m21: cur,
        m22: prev,
    })
}

/// Closed-form determinant of the key: `(-1)^n` for `Q^n`, `5·(-1)^(n+1)`
/// for `R_n`.
pub fn key_determinant(family: KeyFamily, n: u64) -> i64 {
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    match family {
        KeyFamily::QPow => sign,
        KeyFamily::RMat => -5 * sign,
    }
}
