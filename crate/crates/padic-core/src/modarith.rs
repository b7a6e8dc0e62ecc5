//! Arithmetic modulo `p^R` on `u128` words.
//!
//! For odd `p` residues are kept in Montgomery form (`x * 2^128 mod N`).  For
//! `p = 2` the modulus is a power of two and plain masking is used.  Divisibility
//! by `p` and exact division by `p^k` commute with the Montgomery factor, which
//! is what lets the floating representation in [`crate::ring`] strip powers of
//! `p` without leaving Montgomery form.

/// Largest modulus we allow, so that `a + b` never overflows.
const MOD_LIMIT: u128 = 1 << 126;

#[derive(Clone, Debug)]
enum Kind {
    Two { mask: u128 },
    Odd { ninv: u128, r2: u128 },
}

#[derive(Clone, Debug)]
pub struct ModP {
    p: u64,
    digits: u32,
    n: u128,
    /// `p^k` as plain integers, `k = 0..=digits`.
    pow: Vec<u128>,
    /// `p^k` in internal form.
    pow_int: Vec<u128>,
    kind: Kind,
}

#[inline]
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    let (a1, a0) = (a >> 64, a & u64::MAX as u128);
    let (b1, b0) = (b >> 64, b & u64::MAX as u128);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & u64::MAX as u128) + (p10 & u64::MAX as u128);
    let lo = (p00 & u64::MAX as u128) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

impl ModP {
    /// The largest `R` with `p^R < 2^126`.
    pub fn max_digits(p: u64) -> u32 {
        let mut d = 0u32;
        let mut x: u128 = 1;
        while let Some(y) = x.checked_mul(p as u128) {
            if y >= MOD_LIMIT {
                break;
            }
            x = y;
            d += 1;
        }
        d
    }

    pub fn new(p: u64, digits: u32) -> Self {
        assert!(p >= 2);
        assert!(digits >= 1 && digits <= Self::max_digits(p));
        let mut pow = Vec::with_capacity(digits as usize + 1);
        let mut x: u128 = 1;
        for _ in 0..=digits {
            pow.push(x);
            x = x.wrapping_mul(p as u128);
        }
        let n = pow[digits as usize];
        let kind = if p == 2 {
            Kind::Two { mask: n - 1 }
        } else {
            // Newton iteration for N^{-1} mod 2^128.
            let mut inv: u128 = n;
            for _ in 0..7 {
                inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
            }
            debug_assert_eq!(n.wrapping_mul(inv), 1);
            let mut r = (u128::MAX % n + 1) % n;
            for _ in 0..128 {
                r <<= 1;
                if r >= n {
                    r -= n;
                }
            }
            Kind::Odd { ninv: inv.wrapping_neg(), r2: r }
        };
        let mut m = ModP { p, digits, n, pow: pow.clone(), pow_int: Vec::new(), kind };
        m.pow_int = pow.iter().map(|&x| m.from_plain(x % n)).collect();
        m
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }
    #[inline]
    pub fn digits(&self) -> u32 {
        self.digits
    }
    #[inline]
    pub fn modulus(&self) -> u128 {
        self.n
    }
    /// `p^k` as a plain integer.
    #[inline]
    pub fn pow_p(&self, k: u32) -> u128 {
        self.pow[k as usize]
    }

    #[inline]
    fn redc(&self, hi: u128, lo: u128, ninv: u128) -> u128 {
        let m = lo.wrapping_mul(ninv);
        let (mh, ml) = mul_wide(m, self.n);
        let (_, carry) = lo.overflowing_add(ml);
        let t = hi + mh + carry as u128;
        if t >= self.n {
            t - self.n
        } else {
            t
        }
    }

    /// Plain integer (< N) into internal form.
    #[inline]
    pub fn from_plain(&self, x: u128) -> u128 {
        debug_assert!(x < self.n);
        match self.kind {
            Kind::Two { .. } => x,
            Kind::Odd { ninv, r2 } => {
                let (hi, lo) = mul_wide(x, r2);
                self.redc(hi, lo, ninv)
            }
        }
    }

    /// Internal form back to a plain integer < N.
    #[inline]
    pub fn to_plain(&self, x: u128) -> u128 {
        match self.kind {
            Kind::Two { .. } => x,
            Kind::Odd { ninv, .. } => self.redc(0, x, ninv),
        }
    }

    pub fn from_u128(&self, x: u128) -> u128 {
        self.from_plain(x % self.n)
    }

    pub fn from_i128(&self, x: i128) -> u128 {
        let r = self.from_u128(x.unsigned_abs());
        if x < 0 {
            self.neg(r)
        } else {
            r
        }
    }

    #[inline]
    pub fn one(&self) -> u128 {
        self.pow_int[0]
    }

    #[inline]
    pub fn add(&self, a: u128, b: u128) -> u128 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u128, b: u128) -> u128 {
        if a >= b {
            a - b
        } else {
            a + (self.n - b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u128) -> u128 {
        if a == 0 {
            0
        } else {
            self.n - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u128, b: u128) -> u128 {
        match self.kind {
            Kind::Two { mask } => a.wrapping_mul(b) & mask,
            Kind::Odd { ninv, .. } => {
                let (hi, lo) = mul_wide(a, b);
                self.redc(hi, lo, ninv)
            }
        }
    }

    /// `a * p^k`.
    #[inline]
    pub fn mul_pow_p(&self, a: u128, k: u32) -> u128 {
        if k >= self.digits {
            return 0;
        }
        match self.kind {
            Kind::Two { mask } => (a << k) & mask,
            Kind::Odd { .. } => self.mul(a, self.pow_int[k as usize]),
        }
    }

    /// Exact division of the representative by `p^k`; the caller guarantees
    /// divisibility of the low digits that matter.
    #[inline]
    pub fn div_pow_p(&self, a: u128, k: u32) -> u128 {
        match self.kind {
            Kind::Two { .. } => a >> k,
            Kind::Odd { .. } => a / self.pow[k as usize],
        }
    }

    /// `v_p` of the representative, capped at `digits`.
    #[inline]
    pub fn val(&self, a: u128) -> u32 {
        if a == 0 {
            return self.digits;
        }
        match self.kind {
            Kind::Two { .. } => a.trailing_zeros().min(self.digits),
            Kind::Odd { .. } => {
                let p = self.p as u128;
                let mut a = a;
                let mut v = 0;
                while a % p == 0 {
                    a /= p;
                    v += 1;
                }
                v.min(self.digits)
            }
        }
    }

    /// Representative reduced modulo `p^k`, `k <= digits`.
    #[inline]
    pub fn reduce(&self, a: u128, k: u32) -> u128 {
        if k >= self.digits {
            return a;
        }
        match self.kind {
            Kind::Two { .. } => a & (self.pow[k as usize] - 1),
            Kind::Odd { .. } => a % self.pow[k as usize],
        }
    }

    pub fn pow(&self, mut a: u128, mut e: u128) -> u128 {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a unit (internal form in, internal form out).
    pub fn inv(&self, a: u128) -> u128 {
        debug_assert!(self.val(a) == 0);
        // Inverse mod p by Fermat, then Newton lifting.
        let p = self.p as u128;
        let ap = self.to_plain(a) % p;
        let mut x0: u128 = 1;
        let mut e = p - 2;
        let mut b = ap;
        while e > 0 {
            if e & 1 == 1 {
                x0 = x0 * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        let mut x = self.from_plain(x0);
        let two = self.add(self.one(), self.one());
        let mut good = 1u32;
        while good < self.digits {
            let ax = self.mul(a, x);
            x = self.mul(x, self.sub(two, ax));
            good *= 2;
        }
        debug_assert_eq!(self.mul(a, x), self.one());
        x
    }

    /// Base-`p` digits (little endian) of the plain representative modulo `p^k`.
    pub fn digits_of(&self, a: u128, k: u32) -> Vec<u8> {
        let mut x = self.reduce(self.to_plain(a), k);
        let p = self.p as u128;
        (0..k)
            .map(|_| {
                let d = (x % p) as u8;
                x /= p;
                d
            })
            .collect()
    }
}
