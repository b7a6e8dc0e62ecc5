//! Depth two: `g_i[e_j e_i]`, `g_i[e_j e_k]`, `g_i[e_j e_k e_0^s]`,
//! `g_i[e_j e_0^(s-1) e_k]` and `g_i[e_j e_0^(s-1) e_k e_0^(t-1)]`.

use std::fmt;

use iterated_sums::{Exp, Sym};
use padic_core::binomial;
use serde::{Deserialize, Serialize};

use crate::calc::{Calc, Cv};
use crate::{Mzv, MzvError, MzvValue};

/// Second index of the `d_2` limits `X^(r)(a, b; i-j, ?; d_2)` in the tail
/// formulas, which is written both ways.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reading {
    /// `k - i`, the index the reduction of `S(a, b, c; j, i, k; d_2)` produces.
    KMinusI,
    /// `k - j`.
    KMinusJ,
}

impl Reading {
    pub const ALL: [Reading; 2] = [Reading::KMinusI, Reading::KMinusJ];

    fn second(self, i: i64, j: i64, k: i64) -> i64 {
        match self {
            Reading::KMinusI => k - i,
            Reading::KMinusJ => k - j,
        }
    }
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reading::KMinusI => "i-j,k-i",
            Reading::KMinusJ => "i-j,k-j",
        })
    }
}

const P1: Exp = Exp { s: 1, paren: false };

fn pl(s: u32) -> Exp {
    Exp::plain(s)
}

fn pa(s: u32) -> Exp {
    Exp::paren(s)
}

fn binom(c: &Calc, n: u32, k: u32) -> Cv {
    Cv::exact(c.ring.from_bigint(&binomial(n as u64, k as u64)))
}

impl Mzv {
    fn distinct(&self, name: &str, l: &[i64]) -> Result<(), MzvError> {
        let m = self.m() as i64;
        for a in 0..l.len() {
            for b in a + 1..l.len() {
                if (l[a] - l[b]).rem_euclid(m) == 0 {
                    return Err(MzvError::Domain(format!("{name} needs pairwise distinct letters, got {l:?}")));
                }
            }
        }
        Ok(())
    }

    /// `g_F(infinity)[e_i e_j] = -g_j[e_0 e_i] = X(2; i-j) / (1 - zeta^(i_ - j_))`.
    pub fn gf_inf_pair(&self, i: i64, j: i64) -> Result<MzvValue, MzvError> {
        self.distinct("gf_inf_pair", &[i, j])?;
        let c = Calc::new(self, "gf_inf_pair");
        let v = c.mul(c.x1(2, i - j, 0)?, c.w(i, j)?);
        Ok(c.finish(v))
    }

    /// `g_F(infinity)[e_i e_j e_0^(s-1)] = (-1)^(s+1) g_i[e_0^s e_j]`.
    pub fn gf_inf_tail(&self, i: i64, j: i64, s: u32) -> Result<MzvValue, MzvError> {
        self.distinct("gf_inf_tail", &[i, j])?;
        if s == 0 {
            return Err(MzvError::Domain("gf_inf_tail needs s >= 1".into()));
        }
        let c = Calc::new(self, "gf_inf_tail");
        let v = c.sign(s + 1, self.alt_cv(&c, i, j, s + 1)?);
        Ok(c.finish(v))
    }

    /// `g_i[e_j e_i] = g_j[e_i]^2 / 2 - g_F(infinity)[e_i e_j]`.
    pub fn g_pair_same(&self, i: i64, j: i64) -> Result<MzvValue, MzvError> {
        self.distinct("g_pair_same", &[i, j])?;
        let c = Calc::new(self, "g_pair_same");
        let gji = c.mul(c.x1(1, i - j, 0)?, c.w(i, j)?);
        let inf = c.mul(c.x1(2, i - j, 0)?, c.w(i, j)?);
        let v = c.sub(c.div_int(c.mul(gji, gji), 2)?, inf);
        Ok(c.finish(v))
    }

    /// `g_i[e_j e_k]`, letters pairwise distinct.
    pub fn g_pair_distinct(&self, i: i64, j: i64, k: i64) -> Result<MzvValue, MzvError> {
        self.distinct("g_pair_distinct", &[i, j, k])?;
        let c = Calc::new(self, "g_pair_distinct");
        let zik = c.zu(i, k);
        let zij = c.zu(i, j);
        let terms = [
            c.x(&[P1, pa(1)], &[k - j, i - k], &[Sym::N(2)], 0)?,
            c.neg(c.mul(zik, c.x(&[P1, pa(1)], &[j - i, k - j], &[], 0)?)),
            c.mul(zik, c.x(&[P1, P1], &[i - j, k - i], &[Sym::D(2)], 0)?),
            c.neg(c.mul3(zik, c.x1(2, j - k, 0)?, c.w(j, k)?)),
            c.mul3(zik, c.x1(2, i - j, 0)?, c.w(i, j)?),
            c.neg(c.mul(c.mul3(zij, c.x1(1, j - i, 0)?, c.x1(1, k - j, 0)?), c.w(k, j)?)),
            c.mul(c.mul3(zik, c.x1(1, j - k, 0)?, c.x1(1, k - i, 0)?), c.w(j, k)?),
            c.mul(c.mul3(c.sub(zij, zik), c.x1(1, i - j, 0)?, c.x1(1, k - j, 0)?), c.mul(c.w(i, j)?, c.w(k, j)?)),
        ];
        let v = c.mul(c.sum(terms), c.w(i, k)?);
        Ok(c.finish(v))
    }

    pub(crate) fn pair_tail_cv(&self, c: &Calc, i: i64, j: i64, k: i64, s: u32, rd: Reading) -> Result<Cv, MzvError> {
        let zik = c.zu(i, k);
        let zij = c.zu(i, j);
        let t1 = c.mul(c.mul3(zik, c.x1(1, j - k, 0)?, c.w(j, k)?), c.x1(1, k - i, s)?);
        let t2 = c.mul(zik, c.x(&[P1, P1], &[i - j, rd.second(i, j, k)], &[Sym::D(2)], s)?);
        let mut t3 = c.zero();
        for r in 0..=s {
            t3 = c.add(t3, c.x(&[P1, pa(s + 1 - r)], &[k - j, i - k], &[Sym::N(2)], r)?);
        }
        let mut t4 = c.zero();
        for r in 0..=s {
            t4 = c.add(t4, c.sign(r, c.mul(c.x1(s - r + 1, k - j, 0)?, c.x1(1, j - i, r)?)));
        }
        let t4 = c.neg(c.mul3(zij, c.w(k, j)?, t4));
        let t5 = c.sign(s + 1, c.mul(zik, c.x(&[P1, pa(1)], &[j - i, k - j], &[], s)?));
        let t6 = c.mul(c.mul3(zij, c.x1(1, i - j, 0)?, c.w(i, j)?), c.mul(c.x1(s + 1, k - j, 0)?, c.w(k, j)?));
        let head = c.sign(s, c.add(c.add(t1, t2), t3));
        Ok(c.sum([head, t4, t5, t6]))
    }

    /// `g_i[e_j e_k e_0^s]`, letters pairwise distinct; `s = 0` routes to
    /// [`Mzv::g_pair_distinct`].
    pub fn g_pair_tail(&self, i: i64, j: i64, k: i64, s: u32) -> Result<MzvValue, MzvError> {
        self.g_pair_tail_read(i, j, k, s, self.reading())
    }

    pub fn g_pair_tail_read(&self, i: i64, j: i64, k: i64, s: u32, rd: Reading) -> Result<MzvValue, MzvError> {
        if s == 0 {
            return self.g_pair_distinct(i, j, k);
        }
        self.distinct("g_pair_tail", &[i, j, k])?;
        let c = Calc::new(self, &format!("g_pair_tail[{rd}]"));
        let v = self.pair_tail_cv(&c, i, j, k, s, rd)?;
        Ok(c.finish(v))
    }

    /// `g_i[e_j e_0^(s-1) e_k]`, letters pairwise distinct, `s > 1`; `s = 1`
    /// routes to [`Mzv::g_pair_distinct`].
    pub fn g_mid(&self, i: i64, j: i64, k: i64, s: u32) -> Result<MzvValue, MzvError> {
        if s == 0 {
            return Err(MzvError::Domain("g_mid needs s >= 1".into()));
        }
        if s == 1 {
            return self.g_pair_distinct(i, j, k);
        }
        self.g_mid_formula(i, j, k, s)
    }

    /// The `g_mid` expression without the `s = 1` routing.  At `s = 1` it
    /// rests on `g_k[e_i e_j]` instead of `g_i[e_j e_k]`, so comparing it with
    /// [`Mzv::g_pair_distinct`] is a real check.
    pub fn g_mid_formula(&self, i: i64, j: i64, k: i64, s: u32) -> Result<MzvValue, MzvError> {
        if s == 0 {
            return Err(MzvError::Domain("g_mid needs s >= 1".into()));
        }
        self.distinct("g_mid", &[i, j, k])?;
        let c = Calc::new(self, "g_mid");
        let tail = self.g_pair_tail(k, i, j, s - 1)?;
        let tail = c.absorb(&tail);
        let terms = [
            tail,
            c.scale(c.mul(c.x1(s + 1, j - k, 0)?, c.w(j, k)?), s as i64),
            c.mul(c.x1(s + 1, j - i, 0)?, c.w(j, i)?),
            c.neg(c.mul(c.mul3(c.x1(1, i - k, 0)?, c.w(i, k)?, c.x1(s, j - k, 0)?), c.w(j, k)?)),
            c.sign(s - 1, c.mul(c.mul(c.x1(1, i - j, 0)?, c.x1(s, k - j, 0)?), c.mul(c.w(i, j)?, c.w(k, j)?))),
        ];
        let v = c.sum(terms);
        Ok(c.finish(v))
    }

    /// `g_i[e_j e_0^(s-1) e_k e_0^(t-1)]`, letters pairwise distinct, `s, t >= 2`.
    pub fn g_main(&self, i: i64, j: i64, k: i64, s: u32, t: u32) -> Result<MzvValue, MzvError> {
        self.g_main_read(i, j, k, s, t, self.reading())
    }

    pub fn g_main_read(&self, i: i64, j: i64, k: i64, s: u32, t: u32, rd: Reading) -> Result<MzvValue, MzvError> {
        if s < 2 || t < 2 {
            return Err(MzvError::Domain(format!("g_main needs s, t >= 2, got ({s}, {t})")));
        }
        self.distinct("g_main", &[i, j, k])?;
        let c = Calc::new(self, &format!("g_main[{rd}]"));
        let zij = c.zu(i, j);
        let zik = c.zu(i, k);
        let wkj = c.w(k, j)?;
        let bin = binom(&c, s + t - 2, s - 1);
        let xst = c.x1(s + t - 1, k - j, 0)?;

        let b1 = c.sign(s - 1, c.mul(c.mul3(zij, bin, c.mul(c.x1(1, i - j, 0)?, c.w(i, j)?)), c.mul(xst, wkj)));
        let mut b2 = c.zero();
        for r in 0..=t - 2 {
            let term = c.mul(
                c.mul3(binom(&c, s + t - r - 3, s - 1), c.x1(s + t - r - 2, k - j, 0)?, wkj),
                c.x1(1, j - i, 1 + r)?,
            );
            b2 = c.add(b2, c.sign(r + s, term));
        }
        let b2 = c.neg(c.mul(zij, b2));
        let mut inner = c.sign(t, c.mul3(c.x1(s, j - k, 0)?, c.w(j, k)?, c.x1(1, k - i, t - 1)?));
        inner = c.add(inner, c.sign(s + t, c.x(&[P1, pa(s)], &[j - i, k - j], &[], t - 1)?));
        let mut d2 = c.zero();
        for r in 0..s {
            d2 = c.add(d2, c.x(&[pl(1 + r), pl(s - r)], &[i - j, rd.second(i, j, k)], &[Sym::D(2)], t - 1)?);
        }
        inner = c.add(inner, c.sign(s + t + 1, d2));
        let b3 = c.neg(c.mul(zik, inner));
        let mut n2 = c.zero();
        for r in 0..t {
            n2 = c.add(n2, c.x(&[pl(s), pa(t - r)], &[k - j, i - k], &[Sym::N(2)], r)?);
        }
        let b4 = c.sign(s + t, n2);
        let b5 = c.sign(s, c.mul(c.mul3(bin, zij, c.mul(xst, wkj)), c.x1(1, j - i, 0)?));
        let v = c.sum([b1, b2, b3, b4, b5]);
        Ok(c.finish(v))
    }
}
