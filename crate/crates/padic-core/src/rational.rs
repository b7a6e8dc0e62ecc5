//! Exact rational kernels: Bernoulli numbers and sums of powers.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

fn cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Rising factorial `x (x+1) ... (x+k-1)`.
pub fn pochhammer(x: i64, k: u64) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(x + i))
}

/// `B_k` with the convention `x / (e^x - 1) = sum B_k x^k / k!`, so `B_1 = -1/2`.
pub fn bernoulli(k: usize) -> Rational {
    let mut table = cache().lock().expect("bernoulli cache poisoned");
    while table.len() <= k {
        // sum_{j <= n} C(n+1, j) B_j = 0
        let n = table.len();
        let mut s = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            s += Rational::from_integer(binomial(n as u64 + 1, j as u64)) * b;
        }
        let bn = -s / Rational::from_integer(BigInt::from(n + 1));
        table.push(bn);
    }
    table[k].clone()
}

/// `sum_{1 <= m <= n} m^j`.
pub fn faulhaber_sum(j: u32, n: u64) -> Rational {
    let nn = Rational::from_integer(BigInt::from(n));
    let mut s = Rational::zero();
    for k in 0..=j as usize {
        let mut term = Rational::from_integer(binomial(j as u64 + 1, k as u64)) * bernoulli(k);
        if k % 2 == 1 {
            term = -term;
        }
        s += term * num_traits::pow(nn.clone(), j as usize + 1 - k);
    }
    s / Rational::from_integer(BigInt::from(j + 1))
}

/// Coefficients (constant term first) of the polynomial `K -> sum_{0 <= m < K} m^j`.
pub fn faulhaber_poly(j: u32) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); j as usize + 2];
    let den = Rational::from_integer(BigInt::from(j + 1));
    for k in 0..=j as usize {
        let t = Rational::from_integer(binomial(j as u64 + 1, k as u64)) * bernoulli(k);
        c[j as usize + 1 - k] = t / &den;
    }
    c
}

/// `v_p` of a nonzero rational.
pub fn rational_vp(r: &Rational, p: u64) -> i64 {
    fn v(n: &BigInt, p: &BigInt) -> i64 {
        let mut n = n.clone();
        let mut k = 0;
        while !n.is_zero() && (&n % p).is_zero() {
            n /= p;
            k += 1;
        }
        k
    }
    let pb = BigInt::from(p);
    v(r.numer(), &pb) - v(r.denom(), &pb)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn small_bernoulli() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), rat(0, 1));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn poly_matches_sum() {
        for j in 0..6u32 {
            let c = faulhaber_poly(j);
            for k in 0..12u64 {
                let direct: u64 = (0..k).map(|m| m.pow(j)).sum();
                let mut val = Rational::zero();
                for (e, ce) in c.iter().enumerate() {
                    val += ce * Rational::from_integer(BigInt::from(k).pow(e as u32));
                }
                assert_eq!(val, Rational::from_integer(BigInt::from(direct)), "j={j} k={k}");
            }
        }
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(2, 3), BigInt::from(24));
        assert_eq!(pochhammer(5, 0), BigInt::from(1));
    }
}
