//! The unramified ring `Z_q = Z_p[x]/(h)` with `h` the minimal polynomial of a
//! primitive `M`-th root of unity, and its elements.
//!
//! Elements are floating: `p^v * u` where `u` is a coefficient vector with at
//! least one coefficient prime to `p` (so `u` is a unit), together with an
//! absolute precision `prec`: the element is known modulo `p^prec`.  The
//! relative precision `prec - v` never exceeds the storage width `R` of
//! [`ModP`].  Digits of the stored representative above `prec` are ignored by
//! every comparison and by output.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::modarith::ModP;
use crate::params::{vp_u64, PadicParams};
use crate::PadicError;

/// Largest residue degree supported by the fixed-width coefficient array.
pub const MAX_F: usize = 4;

/// Precision of exact zero.
pub const INF_PREC: i32 = 1 << 28;

#[derive(Clone, Copy, Debug)]
pub struct ZqElem {
    v: i32,
    prec: i32,
    c: [u128; MAX_F],
}

impl ZqElem {
    /// An element known to be zero modulo `p^prec`.
    pub fn zero_mod(prec: i32) -> Self {
        ZqElem { v: prec, prec, c: [0; MAX_F] }
    }

    /// Exact zero.
    pub fn zero() -> Self {
        Self::zero_mod(INF_PREC)
    }

    /// No known nonzero digit.
    #[inline]
    pub fn is_zero(&self) -> bool {
        self.v >= self.prec
    }

    /// Valuation, `None` for (inexact) zero.
    pub fn valuation(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.v)
        }
    }

    /// Lower bound for the valuation: the valuation, or the precision for zero.
    #[inline]
    pub fn val_lb(&self) -> i32 {
        self.v
    }

    /// Absolute precision: the element is known modulo `p^prec`.
    #[inline]
    pub fn prec(&self) -> i32 {
        self.prec
    }

    /// Known digits past the valuation.
    pub fn rel_prec(&self) -> i32 {
        (self.prec - self.v).max(0)
    }

    /// Same element, known only modulo `p^prec` (never raises precision).
    pub fn with_prec(mut self, prec: i32) -> Self {
        if prec < self.prec {
            self.prec = prec;
            if self.v >= prec {
                return Self::zero_mod(prec);
            }
        }
        self
    }
}

/// An exact element of `Z_p`: `p^v * u` with `u` a unit in internal form.
#[derive(Clone, Copy, Debug)]
pub struct Scalar {
    pub v: i32,
    pub u: u128,
}

/// Ring context.  Cheap to share behind an `Arc`; all methods take `&self`.
#[derive(Clone, Debug)]
pub struct Zq {
    params: PadicParams,
    md: ModP,
    f: usize,
    /// `h = x^f + sum h[k] x^k`, internal form.
    h: [u128; MAX_F],
    zeta: Vec<ZqElem>,
}

fn cyclotomic(m: u64) -> Vec<i64> {
    // x^m - 1 divided by all cyclotomic factors of proper divisors.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    assert_eq!(b[db], 1);
    let mut r = a.to_vec();
    let mut qt = vec![0i64; a.len() - db];
    for k in (0..qt.len()).rev() {
        let c = r[k + db];
        qt[k] = c;
        for j in 0..=db {
            r[k + j] -= c * b[j];
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    qt
}

/// Whether monic `g` divides `a` over `F_p` (little-endian, reduced coefficients).
fn divides_mod_p(g: &[u64], a: &[u64], p: u64) -> bool {
    let dg = g.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= dg {
        return r.iter().all(|&x| x == 0);
    }
    for k in (0..r.len() - dg).rev() {
        let c = r[k + dg];
        if c != 0 {
            for j in 0..=dg {
                r[k + j] = (r[k + j] + p - c * g[j] % p) % p;
            }
        }
    }
    r[..dg].iter().all(|&x| x == 0)
}

/// First (in lexicographic order) monic degree-`f` divisor of `Phi_M mod p`.
fn find_factor_mod_p(p: u64, m: u64, f: usize) -> Result<Vec<u64>, PadicError> {
    let phi: Vec<u64> = cyclotomic(m).iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
    let total = (p as u128).pow(f as u32);
    if total > 50_000_000 {
        return Err(PadicError::Unsupported(format!("factor search space {total} too large")));
    }
    for idx in 0..total {
        let mut g = Vec::with_capacity(f + 1);
        let mut x = idx;
        for _ in 0..f {
            g.push((x % p as u128) as u64);
            x /= p as u128;
        }
        g.push(1);
        if divides_mod_p(&g, &phi, p) {
            return Ok(g);
        }
    }
    Err(PadicError::Unsupported("no degree-f factor found".into()))
}

impl Zq {
    /// Build the ring at the largest storage width available for `p`.
    pub fn new(params: PadicParams) -> Result<Self, PadicError> {
        let r = ModP::max_digits(params.p);
        Self::with_storage(params, r)
    }

    /// Build the ring storing `digits` p-adic digits of relative precision.
    pub fn with_storage(params: PadicParams, digits: u32) -> Result<Self, PadicError> {
        let f = params.f as usize;
        if f > MAX_F {
            return Err(PadicError::Unsupported(format!("residue degree {f} exceeds the supported maximum {MAX_F}")));
        }
        if digits == 0 || digits > ModP::max_digits(params.p) {
            return Err(PadicError::Unsupported(format!("storage of {digits} digits")));
        }
        let md = ModP::new(params.p, digits);
        let g = find_factor_mod_p(params.p, params.m, f)?;
        let mut h0 = [0u128; MAX_F];
        for k in 0..f {
            h0[k] = md.from_u128(g[k] as u128);
        }
        let tmp = Zq { params: params.clone(), md: md.clone(), f, h: h0, zeta: Vec::new() };
        // Teichmueller lift of the class of x, then its minimal polynomial.
        let x = tmp.x_elem();
        let mut t = x;
        for _ in 0..=digits + 2 {
            let nt = tmp.pow(&t, params.q);
            if tmp.agree(&nt, &t) >= digits as i32 {
                t = nt;
                break;
            }
            t = nt;
        }
        let mut poly: Vec<ZqElem> = vec![tmp.one()];
        let mut conj = t;
        for _ in 0..f {
            // poly *= (X - conj)
            let mut next = vec![ZqElem::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] = tmp.add(&next[k + 1], c);
                next[k] = tmp.sub(&next[k], &tmp.mul(c, &conj));
            }
            poly = next;
            conj = tmp.pow(&conj, params.p as u128);
        }
        let mut h = [0u128; MAX_F];
        for k in 0..f {
            let c = &poly[k];
            let plain = tmp.coeffs_plain(c);
            if plain[1..].iter().any(|&y| y != 0) {
                return Err(PadicError::Unsupported("minimal polynomial has coefficients outside Z_p".into()));
            }
            h[k] = match c.valuation() {
                None => 0,
                Some(v) if v >= 0 => md.mul_pow_p(md.from_u128(plain[0]), v as u32),
                Some(_) => return Err(PadicError::Unsupported("non-integral minimal polynomial".into())),
            };
        }
        let mut ring = Zq { params, md, f, h, zeta: Vec::new() };
        let z = ring.x_elem();
        let mut pows = Vec::with_capacity(ring.params.m as usize);
        let mut acc = ring.one();
        for _ in 0..ring.params.m {
            pows.push(acc);
            acc = ring.mul(&acc, &z);
        }
        ring.zeta = pows;
        Ok(ring)
    }

    pub fn params(&self) -> &PadicParams {
        &self.params
    }
    pub fn p(&self) -> u64 {
        self.params.p
    }
    pub fn m(&self) -> u64 {
        self.params.m
    }
    pub fn f(&self) -> usize {
        self.f
    }
    pub fn q(&self) -> u128 {
        self.params.q
    }
    /// Relative precision every element can carry.
    pub fn storage_digits(&self) -> i32 {
        self.md.digits() as i32
    }
    /// Reporting precision.
    pub fn cap(&self) -> i32 {
        self.params.precision_cap as i32
    }
    pub fn modp(&self) -> &ModP {
        &self.md
    }

    /// Coefficients of `h` as plain integers mod `p^R`, low degree first,
    /// including the leading 1.
    pub fn modulus_poly(&self) -> Vec<u128> {
        let mut v: Vec<u128> = (0..self.f).map(|k| self.md.to_plain(self.h[k])).collect();
        v.push(1);
        v
    }

    fn x_elem(&self) -> ZqElem {
        let mut c = [0u128; MAX_F];
        if self.f == 1 {
            c[0] = self.md.neg(self.h[0]);
        } else {
            c[1] = self.md.one();
        }
        self.normalize(0, self.storage_digits(), c)
    }

    // ----- construction -------------------------------------------------

    pub fn one(&self) -> ZqElem {
        let mut c = [0u128; MAX_F];
        c[0] = self.md.one();
        ZqElem { v: 0, prec: self.storage_digits(), c }
    }

    fn exact_scalar_elem(&self, s: Scalar) -> ZqElem {
        let mut c = [0u128; MAX_F];
        c[0] = s.u;
        ZqElem { v: s.v, prec: s.v + self.storage_digits(), c }
    }

    pub fn from_i64(&self, n: i64) -> ZqElem {
        self.from_i128(n as i128)
    }

    pub fn from_i128(&self, n: i128) -> ZqElem {
        if n == 0 {
            return ZqElem::zero();
        }
        self.exact_scalar_elem(self.scalar_i128(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> ZqElem {
        if n.is_zero() {
            return ZqElem::zero();
        }
        let p = BigInt::from(self.p());
        let mut x = n.abs();
        let mut v = 0;
        while (&x % &p).is_zero() {
            x /= &p;
            v += 1;
        }
        let modulus = BigInt::from(self.md.modulus());
        let r = u128::try_from(&x % &modulus).expect("reduced residue fits");
        let mut u = self.md.from_u128(r);
        if n.sign() == Sign::Minus {
            u = self.md.neg(u);
        }
        self.exact_scalar_elem(Scalar { v, u })
    }

    pub fn from_rational(&self, r: &BigRational) -> ZqElem {
        let num = self.from_bigint(r.numer());
        let den = self.from_bigint(r.denom());
        self.div(&num, &den).expect("nonzero denominator")
    }

    /// Element from plain integer coefficients in the power basis `1, x, ...`.
    pub fn from_coeffs(&self, coeffs: &[i128]) -> ZqElem {
        assert!(coeffs.len() <= self.f);
        let mut c = [0u128; MAX_F];
        for (k, &a) in coeffs.iter().enumerate() {
            c[k] = self.md.from_i128(a);
        }
        self.normalize(0, self.storage_digits(), c)
    }

    /// `zeta^k`, any integer `k`.
    #[inline]
    pub fn zeta_pow(&self, k: i64) -> ZqElem {
        let m = self.params.m as i64;
        self.zeta[k.rem_euclid(m) as usize]
    }

    pub fn zeta(&self) -> ZqElem {
        self.zeta_pow(1)
    }

    // ----- scalars ------------------------------------------------------

    pub fn scalar_i128(&self, n: i128) -> Scalar {
        assert!(n != 0);
        let p = self.p() as u128;
        let mut x = n.unsigned_abs();
        let mut v = 0;
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        let mut u = self.md.from_u128(x);
        if n < 0 {
            u = self.md.neg(u);
        }
        Scalar { v, u }
    }

    pub fn scalar_inv(&self, s: Scalar) -> Scalar {
        Scalar { v: -s.v, u: self.md.inv(s.u) }
    }

    pub fn scalar_mul(&self, a: Scalar, b: Scalar) -> Scalar {
        Scalar { v: a.v + b.v, u: self.md.mul(a.u, b.u) }
    }

    pub fn scalar_pow(&self, a: Scalar, e: u32) -> Scalar {
        Scalar { v: a.v * e as i32, u: self.md.pow(a.u, e as u128) }
    }

    pub fn scalar_elem(&self, s: Scalar) -> ZqElem {
        self.exact_scalar_elem(s)
    }

    /// `a * s` for an exact scalar `s`.
    #[inline]
    pub fn mul_scalar(&self, a: &ZqElem, s: Scalar) -> ZqElem {
        if a.is_zero() {
            return ZqElem::zero_mod(sat(a.prec + s.v));
        }
        let mut c = a.c;
        for k in 0..self.f {
            c[k] = self.md.mul(c[k], s.u);
        }
        ZqElem { v: a.v + s.v, prec: sat(a.prec + s.v), c }
    }

    // ----- ring operations -----------------------------------------------

    #[inline]
    fn normalize(&self, v: i32, prec: i32, mut c: [u128; MAX_F]) -> ZqElem {
        let rel = prec - v;
        if rel <= 0 {
            return ZqElem::zero_mod(prec);
        }
        let mut k = u32::MAX;
        for x in c.iter().take(self.f) {
            if *x != 0 {
                k = k.min(self.md.val(*x));
                if k == 0 {
                    break;
                }
            }
        }
        if k as i64 >= rel as i64 {
            return ZqElem::zero_mod(prec);
        }
        if k > 0 {
            for x in c.iter_mut().take(self.f) {
                *x = self.md.div_pow_p(*x, k);
            }
        }
        ZqElem { v: v + k as i32, prec, c }
    }

    #[inline]
    fn poly_mul(&self, a: &[u128; MAX_F], b: &[u128; MAX_F]) -> [u128; MAX_F] {
        let md = &self.md;
        match self.f {
            1 => {
                let mut r = [0u128; MAX_F];
                r[0] = md.mul(a[0], b[0]);
                r
            }
            2 => {
                // (a0 + a1 x)(b0 + b1 x), x^2 = -h1 x - h0
                let d0 = md.mul(a[0], b[0]);
                let d1 = md.add(md.mul(a[0], b[1]), md.mul(a[1], b[0]));
                let d2 = md.mul(a[1], b[1]);
                let mut r = [0u128; MAX_F];
                r[0] = md.sub(d0, md.mul(d2, self.h[0]));
                r[1] = md.sub(d1, md.mul(d2, self.h[1]));
                r
            }
            f => {
                let mut d = [0u128; 2 * MAX_F - 1];
                for i in 0..f {
                    for j in 0..f {
                        d[i + j] = md.add(d[i + j], md.mul(a[i], b[j]));
                    }
                }
                for k in (f..2 * f - 1).rev() {
                    let t = d[k];
                    if t != 0 {
                        for j in 0..f {
                            d[k - f + j] = md.sub(d[k - f + j], md.mul(t, self.h[j]));
                        }
                    }
                }
                let mut r = [0u128; MAX_F];
                r[..f].copy_from_slice(&d[..f]);
                r
            }
        }
    }

    #[inline]
    pub fn add(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        let prec = a.prec.min(b.prec);
        if b.is_zero() {
            return a.with_prec(prec);
        }
        if a.is_zero() {
            return b.with_prec(prec);
        }
        let v = a.v.min(b.v);
        let rel = prec - v;
        if rel <= 0 {
            return ZqElem::zero_mod(prec);
        }
        let md = &self.md;
        let (sa, sb) = ((a.v - v) as u32, (b.v - v) as u32);
        let mut c = [0u128; MAX_F];
        for k in 0..self.f {
            let x = if sa == 0 {
                a.c[k]
            } else if (sa as i32) < rel {
                md.mul_pow_p(a.c[k], sa)
            } else {
                0
            };
            let y = if sb == 0 {
                b.c[k]
            } else if (sb as i32) < rel {
                md.mul_pow_p(b.c[k], sb)
            } else {
                0
            };
            c[k] = md.add(x, y);
        }
        if sa == 0 && sb == 0 {
            self.normalize(v, prec, c)
        } else {
            // Leading digit comes from one side only, so the sum stays a unit.
            ZqElem { v, prec, c }
        }
    }

    #[inline]
    pub fn neg(&self, a: &ZqElem) -> ZqElem {
        if a.is_zero() {
            return *a;
        }
        let mut c = a.c;
        for x in c.iter_mut().take(self.f) {
            *x = self.md.neg(*x);
        }
        ZqElem { v: a.v, prec: a.prec, c }
    }

    #[inline]
    pub fn sub(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        self.add(a, &self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        let prec = sat(a.prec + b.v).min(sat(b.prec + a.v));
        if a.is_zero() || b.is_zero() {
            return ZqElem::zero_mod(prec);
        }
        let v = a.v + b.v;
        if prec <= v {
            return ZqElem::zero_mod(prec);
        }
        ZqElem { v, prec, c: self.poly_mul(&a.c, &b.c) }
    }

    pub fn square(&self, a: &ZqElem) -> ZqElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &ZqElem, mut e: u128) -> ZqElem {
        let mut r = self.one();
        let mut b = *a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    fn unit_inverse(&self, c: &[u128; MAX_F]) -> [u128; MAX_F] {
        let md = &self.md;
        if self.f == 1 {
            let mut r = [0u128; MAX_F];
            r[0] = md.inv(c[0]);
            return r;
        }
        // u^(q-2) is an inverse mod p; refine by Newton.
        let mut x = {
            let mut r = [0u128; MAX_F];
            r[0] = md.one();
            let mut b = *c;
            let mut e = self.params.q - 2;
            while e > 0 {
                if e & 1 == 1 {
                    r = self.poly_mul(&r, &b);
                }
                b = self.poly_mul(&b, &b);
                e >>= 1;
            }
            r
        };
        let mut two = [0u128; MAX_F];
        two[0] = md.add(md.one(), md.one());
        let mut good = 1u32;
        while good < md.digits() {
            let ux = self.poly_mul(c, &x);
            let mut t = [0u128; MAX_F];
            for k in 0..self.f {
                t[k] = md.sub(two[k], ux[k]);
            }
            x = self.poly_mul(&x, &t);
            good *= 2;
        }
        x
    }

    pub fn inv(&self, a: &ZqElem) -> Result<ZqElem, PadicError> {
        if a.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        let rel = a.prec - a.v;
        Ok(ZqElem { v: -a.v, prec: -a.v + rel, c: self.unit_inverse(&a.c) })
    }

    pub fn div(&self, a: &ZqElem, b: &ZqElem) -> Result<ZqElem, PadicError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Inverse of an element required to be a unit.
    pub fn invert_unit(&self, a: &ZqElem) -> Result<ZqElem, PadicError> {
        match a.valuation() {
            Some(0) => self.inv(a),
            Some(v) => Err(PadicError::NonUnit(v)),
            None => Err(PadicError::DivisionByZero),
        }
    }

    pub fn mul_int(&self, a: &ZqElem, n: i64) -> ZqElem {
        if n == 0 {
            return ZqElem::zero();
        }
        self.mul_scalar(a, self.scalar_i128(n as i128))
    }

    /// `a / n`.  The absolute precision drops by `v_p(n)`; an error is
    /// returned when it would fall below one digit.
    pub fn div_int(&self, a: &ZqElem, n: i64) -> Result<ZqElem, PadicError> {
        if n == 0 {
            return Err(PadicError::DivisionByZero);
        }
        let s = self.scalar_inv(self.scalar_i128(n as i128));
        let r = self.mul_scalar(a, s);
        if r.prec < 1 {
            return Err(PadicError::PrecisionExhausted(r.prec));
        }
        Ok(r)
    }

    /// Multiply by `p^k` (any sign of `k`), lossless.
    pub fn mul_p_pow(&self, a: &ZqElem, k: i32) -> ZqElem {
        if a.is_zero() {
            return ZqElem::zero_mod(sat(a.prec + k));
        }
        ZqElem { v: a.v + k, prec: sat(a.prec + k), c: a.c }
    }

    // ----- comparison and output ------------------------------------------

    /// Valuation of `a - b` as far as it is known: the true valuation when the
    /// difference has a known nonzero digit, else the joint precision.
    pub fn agree(&self, a: &ZqElem, b: &ZqElem) -> i32 {
        self.sub(a, b).val_lb()
    }

    /// Digits of the stored representative of the unit part: for each basis
    /// coefficient, `rel_prec` base-p digits, little endian.
    pub fn unit_digits(&self, a: &ZqElem, max_digits: i32) -> Vec<Vec<u8>> {
        let k = a.rel_prec().min(max_digits).max(0) as u32;
        (0..self.f).map(|i| self.md.digits_of(a.c[i], k)).collect()
    }

    /// Plain coefficients of the unit part, reduced to the known digits.
    pub fn coeffs_plain(&self, a: &ZqElem) -> Vec<u128> {
        if a.is_zero() {
            return vec![0; self.f];
        }
        let k = a.rel_prec() as u32;
        (0..self.f).map(|i| self.md.reduce(self.md.to_plain(a.c[i]), k)).collect()
    }

    /// Whether the element lies in `Z_p` (all non-constant coefficients vanish
    /// to known precision).
    pub fn is_rational_padic(&self, a: &ZqElem) -> bool {
        self.coeffs_plain(a)[1..].iter().all(|&x| x == 0)
    }

    /// `log(u) := log(u^(q-1)) / (q-1)` on units; zero on roots of unity.
    pub fn iwasawa_log(&self, u: &ZqElem) -> Result<ZqElem, PadicError> {
        match u.valuation() {
            Some(0) => {}
            Some(v) => return Err(PadicError::NonUnit(v)),
            None => return Err(PadicError::DivisionByZero),
        }
        let w = self.pow(u, self.params.q - 1);
        let x = self.sub(&w, &self.one());
        if x.is_zero() {
            return Ok(ZqElem::zero_mod(x.prec));
        }
        let vx = x.v;
        debug_assert!(vx >= 1);
        let target = x.prec;
        let mut sum = ZqElem::zero();
        let mut xn = x;
        let mut n: i64 = 1;
        loop {
            // v(x^n / n) >= n vx - log_p(n)
            let term = self.div_int(&xn, n).unwrap_or(ZqElem::zero_mod(xn.prec));
            sum = if n % 2 == 1 { self.add(&sum, &term) } else { self.sub(&sum, &term) };
            n += 1;
            let lb = n as i32 * vx - ilog(self.p(), n as u64) as i32;
            if lb >= target {
                break;
            }
            xn = self.mul(&xn, &x);
        }
        let sum = sum.with_prec(target);
        let qm1 = self.scalar_i128(self.params.q as i128 - 1);
        Ok(self.mul_scalar(&sum, self.scalar_inv(qm1)))
    }
}

fn sat(x: i32) -> i32 {
    x.min(INF_PREC)
}

fn ilog(p: u64, n: u64) -> u32 {
    let mut k = 0;
    let mut x = n;
    while x >= p {
        x /= p;
        k += 1;
    }
    k
}

/// `v_p` of a nonzero integer, exposed for the sums modules.
pub fn vp(p: u64, n: u64) -> u32 {
    vp_u64(p, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, m: u64) -> Zq {
        Zq::new(PadicParams::new(p, m, 40).unwrap()).unwrap()
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
    }

    #[test]
    fn zeta_is_primitive() {
        for &(p, m) in &[(2u64, 3u64), (7, 3), (3, 4), (5, 4), (2, 5), (2, 7), (5, 1)] {
            let r = ring(p, m);
            let z = r.zeta();
            let zm = r.pow(&z, m as u128);
            assert!(r.agree(&zm, &r.one()) >= r.storage_digits(), "{p} {m}");
            for d in 1..m {
                if m % d == 0 {
                    let zd = r.pow(&z, d as u128);
                    assert_eq!(r.agree(&zd, &r.one()), 0, "{p} {m} {d}");
                }
            }
        }
    }

    #[test]
    fn field_ops() {
        let r = ring(2, 3);
        let a = r.add(&r.zeta(), &r.from_i64(3));
        let b = r.inv(&a).unwrap();
        assert!(r.agree(&r.mul(&a, &b), &r.one()) >= r.storage_digits() - 1);
        let c = r.div_int(&r.one(), 4).unwrap();
        assert_eq!(c.valuation(), Some(-2));
        let d = r.mul_int(&c, 4);
        assert!(r.agree(&d, &r.one()) >= r.storage_digits() - 2);
    }

    #[test]
    fn cancellation_keeps_precision_honest() {
        let r = ring(3, 4);
        let a = r.from_i64(1 + 27);
        let b = r.from_i64(1);
        let d = r.sub(&a, &b);
        assert_eq!(d.valuation(), Some(3));
        assert_eq!(d.prec(), r.storage_digits());
    }

    #[test]
    fn log_kills_roots_of_unity() {
        let r = ring(7, 3);
        let l = r.iwasawa_log(&r.zeta()).unwrap();
        assert!(l.is_zero());
        let l = r.iwasawa_log(&r.from_i64(-1)).unwrap();
        assert!(l.is_zero());
    }
}
