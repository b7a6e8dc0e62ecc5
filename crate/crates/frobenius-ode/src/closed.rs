//! Explicit `S`-series expressions for coefficients of `G = g_F(z)`.

use free_series::Word;
use iterated_sums::{series_coeffs, Exp, SeriesSpec, SumCtx, Sym};
use padic_core::{binomial, ZqElem};
use serde::Serialize;

use crate::solve::Constants;
use crate::OdeError;

/// Which expression a word is matched against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// `e_0^a e_k e_0^b`.
    Depth1,
    /// `e_i e_j e_k`, distinct.
    Triple,
    /// `e_j e_0^(t-1) e_k e_0^(s-1)`, `j != k`.
    Pair,
    /// `e_i e_j e_0^(s-1) e_k e_0^(t-1)`, distinct.
    Padded,
}

pub struct ClosedSeries {
    pub word: Word,
    pub family: Family,
    pub terms: Vec<(ZqElem, SeriesSpec)>,
}

fn pl(s: u32) -> Exp {
    Exp::plain(s)
}

fn pa(s: u32) -> Exp {
    Exp::paren(s)
}

fn spec(exps: &[Exp], idx: &[u8], alpha: &[Sym]) -> SeriesSpec {
    let idx: Vec<i64> = idx.iter().map(|&a| a as i64).collect();
    SeriesSpec::s(exps, &idx, alpha)
}

/// Splits a word into blocks `e_x e_0^r`, a leading run of `e_0` as `(0, r)`.
fn blocks(w: &Word) -> Vec<(u8, u32)> {
    let mut out: Vec<(u8, u32)> = Vec::new();
    for &a in w.letters() {
        if a == 0 {
            if let Some(last) = out.last_mut() {
                last.1 += 1;
            } else {
                out.push((0, 1));
            }
        } else {
            out.push((a, 0));
        }
    }
    out
}

struct Builder<'a> {
    ctx: &'a SumCtx,
    terms: Vec<(ZqElem, SeriesSpec)>,
}

impl Builder<'_> {
    fn add(&mut self, c: ZqElem, s: SeriesSpec) {
        self.terms.push((c, s));
    }

    fn addi(&mut self, c: i64, s: SeriesSpec) {
        let c = self.ctx.ring().from_i64(c);
        self.add(c, s);
    }
}

fn sgn(e: u32) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The closed expression for `word`, if it has one.
pub fn closed_series(ctx: &SumCtx, consts: &Constants, word: &Word) -> Option<ClosedSeries> {
    let ring = ctx.ring();
    let mut b = Builder { ctx, terms: Vec::new() };
    let bl = blocks(word);
    let nz: Vec<u8> = word.letters().iter().copied().filter(|&a| a != 0).collect();
    let family = match (bl.as_slice(), nz.len()) {
        (_, 1) => {
            let a = word.leading_zeros() as u32;
            let k = nz[0];
            let rest = word.len() as u32 - a - 1;
            let c = ring.mul_int(&ring.from_bigint(&binomial((a + rest) as u64, a as u64)), sgn(rest));
            b.add(c, spec(&[pl(a + rest + 1)], &[k], &[]));
            Family::Depth1
        }
        ([(j, sm1), (k, tm1)], 2) if *j != 0 && j != k => {
            // e_j e_0^(t-1) e_k e_0^(s-1)
            let (j, k, t, s) = (*j, *k, sm1 + 1, tm1 + 1);
            // (r+1)_(t-1) / (t-1)! = C(r+t-1, t-1)
            for r in 0..s {
                let c = ring.from_bigint(&binomial((r + t - 1) as u64, (t - 1) as u64));
                b.add(ring.mul_int(&c, sgn(s)), spec(&[pl(t + r), pl(s - r)], &[k, j], &[Sym::D(2)]));
            }
            b.addi(sgn(s + t), spec(&[pl(t), pa(s)], &[j, k], &[]));
            Family::Pair
        }
        ([(i, 0), (j, sm1), (k, tm1)], 3) if *i != 0 && i != j && j != k && i != k => {
            let (i, j, k, s, t) = (*i, *j, *k, sm1 + 1, tm1 + 1);
            if s == 1 && t == 1 {
                triple(&mut b, consts, i, j, k);
                Family::Triple
            } else {
                padded(&mut b, consts, i, j, k, s, t);
                Family::Padded
            }
        }
        _ => return None,
    };
    Some(ClosedSeries { word: word.clone(), family, terms: b.terms })
}

fn triple(b: &mut Builder, consts: &Constants, i: u8, j: u8, k: u8) {
    let ring = b.ctx.ring();
    b.addi(1, spec(&[pl(1), pl(1), pl(1)], &[k, j, i], &[Sym::D(2), Sym::D(3)]));
    b.addi(-1, spec(&[pl(1), pa(1), pa(1)], &[j, k, i], &[Sym::D(3)]));
    b.addi(-1, spec(&[pl(1), pl(1), pa(1)], &[j, i, k], &[Sym::D(2)]));
    b.addi(1, spec(&[pl(1), pa(1), pa(1)], &[i, j, k], &[]));
    let gkj = consts.g(k).get(&Word::letter(j));
    let gjk = consts.g(j).get(&Word::letter(k));
    b.add(ring.neg(&gkj), spec(&[pl(1), pa(1)], &[i, k], &[]));
    b.add(gjk, spec(&[pl(1), pa(1)], &[i, j], &[]));
}

fn padded(b: &mut Builder, consts: &Constants, i: u8, j: u8, k: u8, s: u32, t: u32) {
    let ring = b.ctx.ring();
    for r in 0..t {
        for q in 0..t - r {
            let c = ring.from_bigint(&binomial((r + s - 1) as u64, (s - 1) as u64));
            // The middle exponent is 1 + q: the weights of the three slots
            // must add up to s + t.
            b.add(
                ring.mul_int(&c, sgn(t - 1)),
                spec(&[pl(s + r), pl(1 + q), pl(t - q - r)], &[k, j, i], &[Sym::D(2), Sym::D(3)]),
            );
        }
    }
    for r in 0..t {
        let w = Word::zeros(s as usize - 1).push(k).concat(&Word::zeros((t - 1 - r) as usize));
        let g = consts.g(j).get(&w);
        b.add(ring.mul_int(&g, sgn(r)), spec(&[pl(1), pa(1 + r)], &[i, j], &[]));
    }
    let ginv = consts.g_inv(ring, k, &Word::letter(j).concat(&Word::zeros(s as usize - 1)));
    b.add(ring.mul_int(&ginv, sgn(t - 1)), spec(&[pl(1), pa(t)], &[i, k], &[]));
    b.addi(sgn(s + t), spec(&[pl(1), pa(s), pa(t)], &[i, j, k], &[]));
    for r in 0..s {
        b.addi(sgn(s + t + 1), spec(&[pl(1 + r), pl(s - r), pa(t)], &[j, i, k], &[Sym::D(2)]));
    }
    for r in 1..=t {
        b.addi(sgn(s + t + 1), spec(&[pl(s), pa(t + 1 - r), pa(r)], &[j, k, i], &[Sym::D(3)]));
    }
}

/// Coefficients `0..=n_max` of the closed expression.
pub fn eval_closed(ctx: &SumCtx, cs: &ClosedSeries, n_max: u64) -> Result<Vec<ZqElem>, OdeError> {
    let ring = ctx.ring();
    let mut out = vec![ZqElem::zero(); n_max as usize + 1];
    for (c, s) in &cs.terms {
        if c.is_zero() && c.prec() >= padic_core::INF_PREC {
            continue;
        }
        let v = series_coeffs(ctx, s, n_max)?;
        for (o, x) in out.iter_mut().zip(&v) {
            *o = ring.add(o, &ring.mul(c, x));
        }
    }
    Ok(out)
}
