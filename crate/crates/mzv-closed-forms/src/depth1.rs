//! Depth one: `g_j[e_0^s e_i]` in two ways, `g_j[e_i]`, and the explicit
//! formula for `F(t; i)` on multiples of `p`.

use iterated_sums::{cauchy_certificate, eval_at, q_ladder, SumSpec};
use padic_core::{binomial, ZqElem};

use crate::calc::{Calc, Cv};
use crate::{Mzv, MzvError, MzvValue};

/// Right side of the explicit formula for `F(t; i)(n)`, `p | n`.
#[derive(Clone, Debug)]
pub struct FClosedForm {
    pub value: ZqElem,
    pub certified_digits: i32,
    /// Number of terms kept in the sum over `r >= 1`.
    pub terms: u32,
    /// Valuation bound of the dropped tail: `(terms + 1) v_p(n)`.
    pub truncation: i32,
}

impl Mzv {
    fn same(&self, a: i64, b: i64) -> bool {
        (a - b).rem_euclid(self.m() as i64) == 0
    }

    /// `g_j[e_0^s e_i]` from the `M p^N` ladder of `(p/s) F(s; j-i)(n)/n`.
    pub fn depth1_usual(&self, j: i64, i: i64, s: u32) -> Result<MzvValue, MzvError> {
        if s == 0 {
            return Err(MzvError::Domain("depth1_usual needs s >= 1".into()));
        }
        let c = Calc::new(self, "depth1_usual");
        let lim = c.mp_limit(&SumSpec::f1(s, j - i).with_sup(1))?;
        let v = c.div_int(c.scale(lim, self.p() as i64), s as i64)?;
        Ok(c.finish(v))
    }

    pub(crate) fn alt_cv(&self, c: &Calc, i: i64, j: i64, s: u32) -> Result<Cv, MzvError> {
        let x = c.x1(s, j - i, 0)?;
        Ok(c.sign(s - 1, c.mul(c.w(j, i)?, x)))
    }

    /// `g_i[e_0^(s-1) e_j] = (-1)^(s-1) X(s; j-i) / (1 - zeta^(j_ - i_))`, `i != j`.
    pub fn depth1_alt(&self, i: i64, j: i64, s: u32) -> Result<MzvValue, MzvError> {
        if s == 0 || self.same(i, j) {
            return Err(MzvError::Domain(format!("depth1_alt needs s >= 1 and i != j, got ({i}, {j}, {s})")));
        }
        let c = Calc::new(self, "depth1_alt");
        let v = self.alt_cv(&c, i, j, s)?;
        Ok(c.finish(v))
    }

    /// `g_j[e_i]` as the Iwasawa logarithm of a cyclotomic unit.
    pub fn g_single(&self, j: i64, i: i64) -> Result<MzvValue, MzvError> {
        let c = Calc::new(self, "g_single");
        if self.same(i, j) {
            let z = c.zero();
            return Ok(c.finish(z));
        }
        let ring = self.ring();
        let num = ring.sub(&ring.one(), &ring.zeta_pow(j - i));
        let den = ring.sub(&ring.one(), &ring.zeta_pow(self.under(j) - self.under(i)));
        let u = ring.div(&num, &ring.pow(&den, self.p() as u128))?;
        Ok(c.finish(Cv::exact(ring.iwasawa_log(&u)?)))
    }

    /// The same value as the limit of `F(1; j-i)(p^N) / (1 - zeta^((j_ - i_) p^N))`.
    pub fn g_single_limit(&self, j: i64, i: i64) -> Result<MzvValue, MzvError> {
        let c = Calc::new(self, "g_single_limit");
        if self.same(i, j) {
            let z = c.zero();
            return Ok(c.finish(z));
        }
        let ring = self.ring();
        let pts = q_ladder(self.p() as u128, self.mp_budget());
        let spec = SumSpec::f1(1, j - i);
        let raw = eval_at(self.ctx(), &spec, &pts)?;
        let a = self.under(j) - self.under(i);
        let m = self.m() as i64;
        let mut seq = Vec::with_capacity(pts.len());
        for (n, f) in pts.iter().zip(&raw) {
            let e = (a * (*n % m as u64) as i64).rem_euclid(m);
            let den = ring.sub(&ring.one(), &ring.zeta_pow(e));
            seq.push(ring.div(f, &den)?);
        }
        let Some((_, cert)) = cauchy_certificate(ring, &seq) else {
            return Err(MzvError::Uncertified { what: "g_single ladder".into(), digits: 0 });
        };
        Ok(c.finish(Cv::with_cert(*seq.last().expect("ladder"), cert)))
    }

    /// `g_M[e_0^a e_i]`, the coefficient appearing in the explicit formula.
    fn g_base(&self, c: &Calc, a: u32, i: i64) -> Result<Cv, MzvError> {
        self.alt_cv(c, self.m() as i64, i, a + 1)
    }

    /// `(-1)^(t-1) (g[e_0^(t-1) e_i](1 - zeta^(i_ n)) - sum_r zeta^(i_ n) C(r+t-1, t-1) g[e_0^(r+t-1) e_i] (n/p)^r)`
    /// for `p | n`, `M` not dividing `i`, the sum cut where `(n/p)^r` passes
    /// the reporting precision.  The powers are of `n/p`, not `n`: the first
    /// Taylor coefficient of `F(t; i)` is `g[e_0^t e_i] / p`, as in the
    /// `M p^N` expression for depth one.
    pub fn f_closed_form(&self, t: u32, i: i64, n: u64) -> Result<FClosedForm, MzvError> {
        let p = self.p();
        if t == 0 || n == 0 || n % p != 0 || self.same(i, 0) {
            return Err(MzvError::Domain(format!(
                "F closed form needs t >= 1, p | n, M not dividing i; got ({t}, {i}, {n})"
            )));
        }
        let c = Calc::new(self, "f_closed_form");
        let ring = self.ring();
        // g[e_0^a e_i] is divisible by p^(a+1), so the r-th term is
        // divisible by p^(r v_p(n)).
        let vn = padic_core::ring::vp(p, n) as i32;
        let terms = (ring.cap() / vn).max(1) as u32;
        let m = self.m() as i64;
        let zin = Cv::exact(ring.zeta_pow((self.under(i) * (n as i64 % m)).rem_euclid(m)));
        let head = c.mul(self.g_base(&c, t - 1, i)?, c.sub(c.int(1), zin));
        let mut tail = c.zero();
        let mut npow = c.int(1);
        let nn = c.int((n / p) as i64);
        for r in 1..=terms {
            npow = c.mul(npow, nn);
            let k = binomial((r + t - 1) as u64, (t - 1) as u64);
            let coef = Cv::exact(ring.from_bigint(&k));
            tail = c.add(tail, c.mul3(coef, self.g_base(&c, r + t - 1, i)?, npow));
        }
        let v = c.sign(t - 1, c.sub(head, c.mul(zin, tail)));
        let out = c.finish(v);
        Ok(FClosedForm {
            value: out.value,
            certified_digits: out.certified_digits,
            terms,
            truncation: (terms as i32 + 1) * vn,
        })
    }
}
