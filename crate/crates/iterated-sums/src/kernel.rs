//! Class-series kernel.
//!
//! Every partial sum `f` of an iterated sum is, on each residue class
//! `c mod pM`, a power series in `m` where `n = c + pM m`.  Summation over
//! `k < n` is exact on these series through power-sum polynomials, the weights
//! `1/k^s` expand as binomial series on classes prime to `p`, and the
//! superscript operator on classes divisible by `p` is synthetic division by
//! `m - m0`, where `m0 = -c/(pM)` is the parameter of `n = 0`.  The Taylor
//! coefficients at `n = 0` of a class divisible by `p` are then the limits
//! along `q^N` and the constants the superscript operator subtracts.
//!
//! Coefficients decay like `p^j`, so truncating at degree `D` costs nothing
//! beyond a bound tracked in [`ClassSeries::bound`].

use padic_core::{Scalar, Zq, ZqElem};

use crate::{SumCtx, SumError, SumSpec};

/// One polynomial per class `1..=pM`; an empty vector is a structural zero.
#[derive(Clone, Debug)]
pub struct ClassSeries {
    pm: u64,
    p: u64,
    polys: Vec<Vec<ZqElem>>,
    bound: i32,
}

type Poly = Vec<ZqElem>;

fn scalar_ratio(ring: &Zq, num: i128, den: i128) -> Scalar {
    ring.scalar_mul(ring.scalar_i128(num), ring.scalar_inv(ring.scalar_i128(den)))
}

/// `c^-s (1 + pM m / c)^-s` to degree `d`, for `p` not dividing `c`.
fn weight_series(ctx: &SumCtx, c: u64, s: u32, d: usize) -> Poly {
    let ring = ctx.ring();
    let pm = ctx.pm() as i128;
    let c = c as i128;
    let step = scalar_ratio(ring, pm, c);
    let mut t = ring.scalar_pow(ring.scalar_inv(ring.scalar_i128(c)), s);
    let mut out = Vec::with_capacity(d + 1);
    for j in 0..=d {
        out.push(ring.scalar_elem(t));
        if j < d {
            let num = -(s as i128) - j as i128;
            t = ring.scalar_mul(t, ring.scalar_mul(scalar_ratio(ring, num, j as i128 + 1), step));
        }
    }
    out
}

fn poly_mul(ring: &Zq, a: &[ZqElem], b: &[ZqElem], d: usize) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZqElem::zero(); d + 1];
    for (i, x) in a.iter().enumerate().take(d + 1) {
        if x.is_zero() && x.prec() >= padic_core::INF_PREC {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(d + 1 - i) {
            out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
        }
    }
    out
}

fn poly_add_into(ring: &Zq, acc: &mut Poly, b: &[ZqElem], d: usize) {
    if b.is_empty() {
        return;
    }
    if acc.is_empty() {
        *acc = vec![ZqElem::zero(); d + 1];
    }
    for (x, y) in acc.iter_mut().zip(b) {
        *x = ring.add(x, y);
    }
}

impl ClassSeries {
    /// Class series of the final partial sum of `spec`, as a function of the
    /// outer argument, honouring a tail condition `p | (n - n_k)`.  The spec is
    /// read as underlined and without outer superscript.
    pub fn build(ctx: &SumCtx, spec: &SumSpec) -> Result<Self, SumError> {
        spec.validate()?;
        let ring = ctx.ring();
        let p = ctx.p();
        let pm = ctx.pm();
        let d = ctx.degree();
        let k = spec.depth();
        let maps = ctx.maps();
        let not_analytic = || SumError::NotLocallyAnalytic(spec.to_string());

        // Level-1 summand.
        let s1 = spec.exps[0].s;
        let z1 = maps.under(spec.idx[0]) as i64;
        let mut v: Vec<Poly> = Vec::with_capacity(pm as usize);
        for c in 1..=pm {
            let divisible = c % p == 0;
            let poly = if (spec.n_div(1) && !divisible) || (divisible && spec.restrict_first) {
                Vec::new()
            } else if divisible {
                return Err(not_analytic());
            } else {
                let z = ring.zeta_pow(z1 * c as i64);
                weight_series(ctx, c, s1, d).iter().map(|t| ring.mul(t, &z)).collect()
            };
            v.push(poly);
        }

        let sum_loss = 2 + ctx.log_p(d as u64 + 1) as i32;
        let mut bound = d as i32 + 1;
        for m in 2..=k {
            let g = Self::sum_level(ctx, &v, spec.d_div(m));
            bound -= sum_loss;
            let e = spec.exps[m - 1];
            let zm = maps.under(spec.idx[m - 1]) as i64;
            // Off p the superscript operator subtracts the Taylor part of the
            // class divisible by p with the same residue mod M.
            let consts: Vec<Poly> = if e.paren && e.s > 0 {
                let tmp = ClassSeries { pm, p, polys: g.clone(), bound };
                (1..=pm).map(|c| if c % p == 0 { tmp.taylor(ring, c, e.s - 1) } else { Vec::new() }).collect()
            } else {
                Vec::new()
            };
            let next = ctx.exec().map_range(pm as usize, |ci| -> Result<Poly, SumError> {
                let c = ci as u64 + 1;
                let gc = &g[ci];
                let divisible = c % p == 0;
                if gc.is_empty() || (spec.n_div(m) && !divisible) {
                    return Ok(Vec::new());
                }
                let poly = if !divisible && e.paren && e.s > 0 {
                    let cr = &consts[ctx.paren_slot(c) as usize - 1];
                    let mut h = gc.clone();
                    // (c + pM m)^r
                    let mut npow: Poly = vec![ring.one()];
                    let lin = [ring.from_i64(c as i64), ring.from_i64(pm as i64)];
                    for cu in cr {
                        for (x, y) in h.iter_mut().zip(&npow) {
                            *x = ring.sub(x, &ring.mul(cu, y));
                        }
                        npow = poly_mul(ring, &npow, &lin, d);
                    }
                    poly_mul(ring, &h, &weight_series(ctx, c, e.s, d), d)
                } else if !divisible {
                    poly_mul(ring, gc, &weight_series(ctx, c, e.s, d), d)
                } else if e.paren {
                    let mut q = gc.clone();
                    for _ in 0..e.s {
                        q = Self::bracket(ctx, &q, c);
                    }
                    q
                } else {
                    return Err(not_analytic());
                };
                let z = ring.zeta_pow(zm * c as i64);
                Ok(poly.iter().map(|t| ring.mul(t, &z)).collect())
            });
            let next = next.into_iter().collect::<Result<Vec<_>, _>>()?;
            if e.paren {
                bound -= e.s as i32;
            }
            v = next;
        }
        let polys = Self::sum_level(ctx, &v, spec.d_div(k + 1));
        bound -= sum_loss;
        Ok(ClassSeries { pm, p, polys, bound })
    }

    /// `G(n) = sum_{k < n} v(k)`, restricted to `k = n mod p` when `same_p`.
    fn sum_level(ctx: &SumCtx, v: &[Poly], same_p: bool) -> Vec<Poly> {
        let ring = ctx.ring();
        let d = ctx.degree();
        let p = ctx.p();
        let pm = ctx.pm();
        // T_c(m) = sum_{m' < m} v_c(m'), via power-sum polynomials.
        let t: Vec<Poly> = ctx.exec().map(v, |a| {
            if a.is_empty() {
                return Vec::new();
            }
            let mut out = vec![ZqElem::zero(); d + 1];
            for (j, aj) in a.iter().enumerate() {
                if aj.is_zero() && aj.prec() >= padic_core::INF_PREC {
                    continue;
                }
                for (e, fe) in ctx.faulhaber(j).iter().enumerate().take(d + 1) {
                    if !fe.is_zero() {
                        out[e] = ring.add(&out[e], &ring.mul(aj, fe));
                    }
                }
            }
            out
        });
        ctx.exec().map_range(pm as usize, |li| {
            let l = li as u64 + 1;
            let mut acc: Poly = Vec::new();
            for c in 1..=pm {
                if same_p && (c + pm - l) % p != 0 {
                    continue;
                }
                let i = c as usize - 1;
                poly_add_into(ring, &mut acc, &t[i], d);
                if c < l {
                    poly_add_into(ring, &mut acc, &v[i], d);
                }
            }
            acc
        })
    }

    /// `(P(m) - P(m0)) / (pM (m - m0))` on class `c`, `m0 = -c/(pM)`.
    fn bracket(ctx: &SumCtx, a: &[ZqElem], c: u64) -> Poly {
        let ring = ctx.ring();
        let pm = ctx.pm() as i128;
        let m0 = scalar_ratio(ring, -(c as i128), pm);
        let inv_pm = ring.scalar_inv(ring.scalar_i128(pm));
        let d = a.len() - 1;
        let mut q = vec![ZqElem::zero(); d + 1];
        // q_{j-1} = a_j + m0 q_j
        let mut carry = ZqElem::zero();
        for j in (1..=d).rev() {
            carry = ring.add(&a[j], &ring.mul_scalar(&carry, m0));
            q[j - 1] = ring.mul_scalar(&carry, inv_pm);
        }
        q
    }

    /// Absolute precision guaranteed against truncation, before the `(pM)^-r`
    /// of a Taylor coefficient.
    pub fn bound(&self) -> i32 {
        self.bound
    }

    /// The polynomial on class `c` (`1..=pM`); empty means zero.
    pub fn poly(&self, c: u64) -> &[ZqElem] {
        &self.polys[c as usize - 1]
    }

    /// Value at a positive integer `n`.
    pub fn eval(&self, ring: &Zq, n: u64) -> ZqElem {
        let c = match n % self.pm {
            0 => self.pm,
            r => r,
        };
        let a = self.poly(c);
        let m = ((n - c) / self.pm) as i64;
        let mut acc = ZqElem::zero();
        for x in a.iter().rev() {
            acc = ring.add(&ring.mul_int(&acc, m), x);
        }
        acc.with_prec(self.bound)
    }

    /// Taylor coefficients `c_0..=c_rmax` at `n = 0` of the series on class `l`
    /// (`p | l`), as a function of `n`.
    pub fn taylor(&self, ring: &Zq, l: u64, rmax: u32) -> Vec<ZqElem> {
        assert!(l % self.p == 0, "Taylor coefficients only on classes divisible by p");
        let a = self.poly(l);
        if a.is_empty() {
            return vec![ZqElem::zero(); rmax as usize + 1];
        }
        let pm = self.pm as i128;
        let m0 = scalar_ratio(ring, -(l as i128), pm);
        let inv_pm = ring.scalar_inv(ring.scalar_i128(pm));
        (0..=rmax)
            .map(|r| {
                let r_us = r as usize;
                let mut sum = ZqElem::zero();
                let mut binom = ring.scalar_i128(1);
                let mut pw = ring.scalar_i128(1);
                for j in r_us..a.len() {
                    if j > r_us {
                        binom = ring.scalar_mul(binom, scalar_ratio(ring, j as i128, (j - r_us) as i128));
                        pw = ring.scalar_mul(pw, m0);
                    }
                    sum = ring.add(&sum, &ring.mul_scalar(&a[j], ring.scalar_mul(binom, pw)));
                }
                ring.mul_scalar(&sum, ring.scalar_pow(inv_pm, r)).with_prec(self.bound - r as i32)
            })
            .collect()
    }
}
