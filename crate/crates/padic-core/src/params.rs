use serde::{Deserialize, Serialize};

use crate::PadicError;

/// Default reporting precision in p-adic digits.
pub const DEFAULT_PRECISION: u32 = 40;

/// The numeric setting: the prime `p`, the level `M`, the residue degree `f`
/// of `Q_p(zeta_M)` and `q = p^f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicParams {
    pub p: u64,
    #[serde(rename = "M")]
    pub m: u64,
    pub f: u32,
    pub q: u128,
    pub precision_cap: u32,
}

impl PadicParams {
    pub fn new(p: u64, m: u64, precision_cap: u32) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if m == 0 {
            return Err(PadicError::BadLevel(m));
        }
        if precision_cap == 0 {
            return Err(PadicError::BadPrecision(precision_cap));
        }
        let f = order_mod(p, m)?;
        let q = (p as u128).checked_pow(f).ok_or(PadicError::Unsupported(format!("q = {p}^{f} overflows")))?;
        Ok(PadicParams { p, m, f, q, precision_cap })
    }

    /// Number of residues of `Z/(pM)`.
    pub fn pm(&self) -> u64 {
        self.p * self.m
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Least `f >= 1` with `p^f = 1 mod M`.
pub fn order_mod(p: u64, m: u64) -> Result<u32, PadicError> {
    if m == 0 || gcd(p, m) != 1 {
        return Err(PadicError::NotCoprime { p, m });
    }
    if m == 1 {
        return Ok(1);
    }
    let mut x = p % m;
    let mut f = 1u32;
    while x != 1 {
        x = (x as u128 * p as u128 % m as u128) as u64;
        f += 1;
    }
    Ok(f)
}

/// `v_p(n)` for a nonzero integer.
pub fn vp_u64(p: u64, mut n: u64) -> u32 {
    debug_assert!(n != 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}
