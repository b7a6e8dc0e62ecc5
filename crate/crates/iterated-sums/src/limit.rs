//! Limits along `q^N` with digit certificates.

use padic_core::{Zq, ZqElem};

use crate::{eval_at, SumCtx, SumError, SumSpec};

#[derive(Clone, Debug)]
pub struct LimitResult {
    pub value: ZqElem,
    /// Minimum valuation of the last two ladder differences.
    pub certified_digits: i32,
    /// Largest ladder exponent `N` used.
    pub n_used: u32,
    /// `v_p(x_N - x_{N-1})` for `N = 2..=n_used`.
    pub diff_valuations: Vec<i32>,
    /// `v_p(value - x_{n_used})`.
    pub ladder_agreement: i32,
}

impl LimitResult {
    /// Certificate after each ladder step: entry `N - 3` is the certificate
    /// available once `x_N` is known (`N >= 3`).
    pub fn certificate_history(&self) -> Vec<i32> {
        self.diff_valuations.windows(2).map(|w| w[0].min(w[1])).collect()
    }
}

/// Valuations of consecutive differences and the certificate (minimum of the
/// last two).  `None` with fewer than three terms.
pub fn cauchy_certificate(ring: &Zq, seq: &[ZqElem]) -> Option<(Vec<i32>, i32)> {
    if seq.len() < 3 {
        return None;
    }
    let diffs: Vec<i32> = seq.windows(2).map(|w| ring.agree(&w[1], &w[0])).collect();
    let n = diffs.len();
    Some((diffs.clone(), diffs[n - 1].min(diffs[n - 2])))
}

/// One Richardson step for `x_N = L + A r^N + O(r^2N)`:
/// `y_N = (x_N - r x_{N-1}) / (1 - r)`, returned for `N = 1..`.
pub fn richardson(ring: &Zq, seq: &[ZqElem], r: &ZqElem) -> Result<Vec<ZqElem>, SumError> {
    let den = ring.inv(&ring.sub(&ring.one(), r))?;
    Ok(seq.windows(2).map(|w| ring.mul(&ring.sub(&w[1], &ring.mul(r, &w[0])), &den)).collect())
}

/// Ladder points `q^N <= budget`, `N >= 1`.
pub fn q_ladder(q: u128, budget: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut x = q;
    while x <= budget as u128 {
        out.push(x as u64);
        x *= q;
    }
    out
}

/// `lim_N F^(sup)(q^N)` for the spec, i.e. the sup-th Taylor coefficient at
/// zero of the class of `q`.  The value comes from the class series; the
/// direct ladder up to `q^N <= budget` supplies the certificate.
pub fn x_limit(ctx: &SumCtx, spec: &SumSpec, budget: u64) -> Result<LimitResult, SumError> {
    let points = q_ladder(ctx.ring().q(), budget);
    if points.len() < 3 {
        return Err(SumError::Budget(budget));
    }
    class_limit(ctx, spec, ctx.q_class(), &points)
}

/// Limit of `F^(sup)(n)` as `n -> 0` inside residue class `class` of `pM`,
/// certified by the values at `points` (all in that class, increasing
/// valuation).
pub fn class_limit(ctx: &SumCtx, spec: &SumSpec, class: u64, points: &[u64]) -> Result<LimitResult, SumError> {
    let ring = ctx.ring();
    if points.len() < 3 {
        return Err(SumError::Budget(points.last().copied().unwrap_or(0)));
    }
    if let Some(&bad) = points.iter().find(|&&n| ctx.class_of(n) != class) {
        return Err(SumError::BadSpec(format!("ladder point {bad} is not in class {class}")));
    }
    let kern = ctx.kernel(spec)?;
    let c = kern.taylor(ring, class, spec.sup)[spec.sup as usize];
    let prefactor = if spec.underlined { 0 } else { spec.weight() as i32 };
    let value = ring.mul_p_pow(&c, prefactor);

    let seq = eval_at(ctx, spec, points)?;
    let (diffs, cert) = cauchy_certificate(ring, &seq).expect("three ladder terms");
    let ladder_agreement = ring.agree(&value, seq.last().expect("nonempty"));
    if ladder_agreement < cert {
        return Err(SumError::Inconsistent { spec: spec.to_string(), agree: ladder_agreement, cert });
    }
    Ok(LimitResult {
        value,
        certified_digits: cert,
        n_used: points.len() as u32,
        diff_valuations: diffs,
        ladder_agreement,
    })
}
