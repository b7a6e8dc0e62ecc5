//! Values `F(n)` for all `n` up to a bound by one prefix-sum sweep.
//!
//! Level `m` keeps the running sum of its summands, split by residue mod `p`
//! when the next position carries a `d` condition.  At each `n` the summands of
//! all levels are formed from sums over strictly smaller arguments, then added.

use padic_core::{Scalar, ZqElem};

use crate::{SumCtx, SumError, SumSpec};

/// Superscript data for one operator application: per class `1..=pM`
/// divisible by `p`, the Taylor constants `c_0..c_{s-1}`.
struct Sup {
    s: u32,
    consts: Vec<Vec<ZqElem>>,
}

impl Sup {
    fn new(ctx: &SumCtx, inner: &SumSpec, s: u32) -> Result<Self, SumError> {
        let pm = ctx.pm();
        let p = ctx.p();
        let consts = if s == 0 {
            Vec::new()
        } else {
            let k = ctx.kernel(inner)?;
            (1..=pm).map(|l| if l % p == 0 { k.taylor(ctx.ring(), l, s - 1) } else { Vec::new() }).collect()
        };
        Ok(Sup { s, consts })
    }

    /// `f^(s)(n) = (f(n) - sum_(r<s) c_r n^r) / n^s` with the constants of
    /// [`SumCtx::paren_slot`].
    fn apply(&self, ctx: &SumCtx, f: &ZqElem, n: u64, inv_ns: Scalar) -> ZqElem {
        let ring = ctx.ring();
        if self.s == 0 {
            return *f;
        }
        let c = &self.consts[ctx.paren_slot(n) as usize - 1];
        let mut acc = *f;
        let mut npow = ring.scalar_i128(1);
        let sn = ring.scalar_i128(n as i128);
        for cu in c {
            acc = ring.sub(&acc, &ring.mul_scalar(cu, npow));
            npow = ring.scalar_mul(npow, sn);
        }
        ring.mul_scalar(&acc, inv_ns)
    }
}

/// Calls `visit(n, F(n))` for `n = 1..=n_max` in order.
pub fn eval_stream<V: FnMut(u64, &ZqElem)>(
    ctx: &SumCtx,
    spec: &SumSpec,
    n_max: u64,
    mut visit: V,
) -> Result<(), SumError> {
    spec.validate()?;
    let ring = ctx.ring();
    let p = ctx.p();
    let k = spec.depth();
    let inv = ctx.inverses(n_max as usize);
    let maps = ctx.maps();
    let m_mod = ctx.m() as i64;

    let mut sups = Vec::with_capacity(k);
    for m in 1..=k {
        let e = spec.exps[m - 1];
        sups.push(if e.paren { Some(Sup::new(ctx, &spec.prefix(m - 1), e.s)?) } else { None });
    }
    let outer = Sup::new(ctx, &spec.prefix(k), spec.sup)?;
    let under: Vec<i64> = spec.idx.iter().map(|&i| maps.under(i) as i64).collect();
    let split: Vec<bool> = (1..=k).map(|m| spec.d_div(m + 1)).collect();
    let mut acc: Vec<Vec<ZqElem>> =
        split.iter().map(|&s| vec![ZqElem::zero(); if s { p as usize } else { 1 }]).collect();
    let prefactor = if spec.underlined { 0 } else { spec.weight() as i32 };
    let one = ring.one();
    let mut vals = vec![ZqElem::zero(); k];

    for n in 1..=n_max {
        let r = (n % p) as usize;
        let nu = n as usize;
        for m in 1..=k {
            let e = spec.exps[m - 1];
            let skip = (spec.n_div(m) && r != 0) || (m == 1 && spec.restrict_first && r == 0);
            if skip {
                vals[m - 1] = ZqElem::zero();
                continue;
            }
            let g = if m == 1 {
                &one
            } else {
                let a = &acc[m - 2];
                &a[if split[m - 2] { r } else { 0 }]
            };
            let w = inv.inv_pow(ring, nu, e.s);
            let x = match &sups[m - 1] {
                Some(sup) => sup.apply(ctx, g, n, w),
                None => ring.mul_scalar(g, w),
            };
            let z = ring.zeta_pow((under[m - 1] * (n as i64 % m_mod)) % m_mod);
            vals[m - 1] = ring.mul(&x, &z);
        }
        let fin = &acc[k - 1][if split[k - 1] { r } else { 0 }];
        let w = inv.inv_pow(ring, nu, spec.sup);
        let out = ring.mul_p_pow(&outer.apply(ctx, fin, n, w), prefactor);
        visit(n, &out);
        for m in 0..k {
            let slot = if split[m] { r } else { 0 };
            acc[m][slot] = ring.add(&acc[m][slot], &vals[m]);
        }
    }
    Ok(())
}

/// `F(n)` for `n = 0..=n_max` (index `n`; `F(0) = 0`).
pub fn eval_all(ctx: &SumCtx, spec: &SumSpec, n_max: u64) -> Result<Vec<ZqElem>, SumError> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(ZqElem::zero());
    eval_stream(ctx, spec, n_max, |_, v| out.push(*v))?;
    Ok(out)
}

/// `F(n)` at the given points (any order, duplicates allowed).
pub fn eval_at(ctx: &SumCtx, spec: &SumSpec, points: &[u64]) -> Result<Vec<ZqElem>, SumError> {
    let n_max = points.iter().copied().max().unwrap_or(0);
    let mut sorted: Vec<u64> = points.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut found = Vec::with_capacity(sorted.len());
    let mut next = 0;
    eval_stream(ctx, spec, n_max, |n, v| {
        if next < sorted.len() && sorted[next] == n {
            found.push(*v);
            next += 1;
        }
    })?;
    Ok(points
        .iter()
        .map(|n| if *n == 0 { ZqElem::zero() } else { found[sorted.binary_search(n).expect("point visited")] })
        .collect())
}
