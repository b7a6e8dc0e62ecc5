//! Batch tables of `1/n` for `n = 1..=N`, used by the long summations.

use crate::ring::{Scalar, Zq};

pub struct IntInverses {
    vals: Vec<u8>,
    units: Vec<u128>,
}

impl IntInverses {
    /// Tables for `1..=n_max` via one modular inversion and prefix products.
    pub fn new(ring: &Zq, n_max: usize) -> Self {
        let md = ring.modp();
        let p = ring.p() as usize;
        let mut vals = vec![0u8; n_max + 1];
        let mut units = vec![md.one(); n_max + 1];
        for n in 1..=n_max {
            let (mut x, mut v) = (n, 0u8);
            while x % p == 0 {
                x /= p;
                v += 1;
            }
            vals[n] = v;
            units[n] = md.from_u128(x as u128);
        }
        let mut prefix = vec![md.one(); n_max + 1];
        for n in 1..=n_max {
            prefix[n] = md.mul(prefix[n - 1], units[n]);
        }
        let mut inv = md.inv(prefix[n_max]);
        for n in (1..=n_max).rev() {
            let u = units[n];
            units[n] = md.mul(inv, prefix[n - 1]);
            inv = md.mul(inv, u);
        }
        IntInverses { vals, units }
    }

    pub fn len(&self) -> usize {
        self.vals.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `v_p(n)`.
    #[inline]
    pub fn vp(&self, n: usize) -> u32 {
        self.vals[n] as u32
    }

    /// `1/n` as an exact scalar.
    #[inline]
    pub fn inv(&self, n: usize) -> Scalar {
        Scalar { v: -(self.vals[n] as i32), u: self.units[n] }
    }

    /// `1/n^s`.
    #[inline]
    pub fn inv_pow(&self, ring: &Zq, n: usize, s: u32) -> Scalar {
        let md = ring.modp();
        let mut u = self.units[n];
        let b = u;
        for _ in 1..s {
            u = md.mul(u, b);
        }
        if s == 0 {
            u = md.one();
        }
        Scalar { v: -(self.vals[n] as i32) * s as i32, u }
    }
}
