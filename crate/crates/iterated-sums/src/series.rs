//! The series `S` and `T`, whose `z^n` coefficients reduce to `F` and `G`.
//!
//! `S(s; i; alpha)[n] = p^(s_k) zeta^(-underbar(i_k) n) op_k F(s'; i'; alpha')(n)`
//! with `s' = (s_1..s_{k-1})`, `i'_m = i_{m+1} - i_m`, and `op_k` either
//! `1/n^(s_k)` or the superscript operator when the last exponent is
//! parenthesized.  A condition on `d_k` becomes `p | (n - n_{k-1})`, one on
//! `n_k` becomes `p | n`.

use std::fmt;

use padic_core::ZqElem;
use serde::{Deserialize, Serialize};

use crate::{eval_all, Exp, SumCtx, SumError, SumSpec, Sym};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeriesSpec {
    pub exps: Vec<Exp>,
    pub idx: Vec<i64>,
    pub alpha: Vec<Sym>,
    /// `true` for `S` (`p` does not divide `n_1`), `false` for `T`.
    pub restrict_first: bool,
}

impl SeriesSpec {
    pub fn s(exps: &[Exp], idx: &[i64], alpha: &[Sym]) -> Self {
        let mut alpha = alpha.to_vec();
        alpha.sort();
        SeriesSpec { exps: exps.to_vec(), idx: idx.to_vec(), alpha, restrict_first: true }
    }

    pub fn t(exps: &[Exp], idx: &[i64], alpha: &[Sym]) -> Self {
        SeriesSpec { restrict_first: false, ..Self::s(exps, idx, alpha) }
    }

    /// Plain exponents, no parentheses.
    pub fn s_plain(exps: &[u32], idx: &[i64], alpha: &[Sym]) -> Self {
        let e: Vec<Exp> = exps.iter().map(|&s| Exp::plain(s)).collect();
        Self::s(&e, idx, alpha)
    }

    pub fn depth(&self) -> usize {
        self.exps.len()
    }

    /// The reduced sum `F(s'; i'; alpha')` (for depth >= 2), with its outer
    /// superscript set when the last exponent is parenthesized.
    pub fn reduced(&self) -> Option<SumSpec> {
        let k = self.depth();
        if k < 2 {
            return None;
        }
        let idx: Vec<i64> = (0..k - 1).map(|m| self.idx[m + 1] - self.idx[m]).collect();
        let alpha: Vec<Sym> = self.alpha.iter().copied().filter(|a| *a != Sym::N(k as u8)).collect();
        let last = self.exps[k - 1];
        Some(SumSpec {
            exps: self.exps[..k - 1].to_vec(),
            idx,
            alpha: {
                let mut a = alpha;
                a.sort();
                a
            },
            restrict_first: self.restrict_first,
            underlined: false,
            sup: if last.paren { last.s } else { 0 },
        })
    }
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut as_sum = SumSpec::f(&self.exps, &self.idx).with_alpha(&self.alpha);
        as_sum.restrict_first = self.restrict_first;
        let s = as_sum.to_string();
        write!(f, "{}{}", if self.restrict_first { "S" } else { "T" }, &s[1..])
    }
}

/// Coefficients `[z^n]` for `n = 0..=n_max`.
pub fn series_coeffs(ctx: &SumCtx, spec: &SeriesSpec, n_max: u64) -> Result<Vec<ZqElem>, SumError> {
    let k = spec.depth();
    if k == 0 || spec.idx.len() != k {
        return Err(SumError::BadSpec(spec.to_string()));
    }
    let ring = ctx.ring();
    let p = ctx.p();
    let last = spec.exps[k - 1];
    let zk = ctx.maps().under(spec.idx[k - 1]) as i64;
    let m = ctx.m() as i64;
    let need_p = spec.alpha.contains(&Sym::N(k as u8)) || (k == 1 && spec.alpha.contains(&Sym::D(1)));
    let inner = match spec.reduced() {
        Some(r) => Some(eval_all(ctx, &r, n_max)?),
        None => {
            if last.paren {
                return Err(SumError::BadSpec(format!("{spec}: depth-1 series cannot be parenthesized")));
            }
            None
        }
    };
    let inv = ctx.inverses(n_max as usize);
    let mut out = vec![ZqElem::zero(); n_max as usize + 1];
    for n in 1..=n_max {
        let div = n % p == 0;
        if (need_p && !div) || (k == 1 && spec.restrict_first && div) {
            continue;
        }
        let z = ring.zeta_pow(-(zk * (n as i64 % m)) % m);
        let base = match &inner {
            Some(v) if last.paren => v[n as usize],
            Some(v) => ring.mul_scalar(&v[n as usize], inv.inv_pow(ring, n as usize, last.s)),
            None => ring.scalar_elem(inv.inv_pow(ring, n as usize, last.s)),
        };
        out[n as usize] = ring.mul_p_pow(&ring.mul(&base, &z), last.s as i32);
    }
    Ok(out)
}
