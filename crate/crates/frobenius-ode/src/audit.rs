//! Audits of closed forms against the solved series.

use free_series::{NCSeries, Word};
use iterated_sums::{cauchy_certificate, richardson, SumCtx};
use padic_core::{IndexMaps, Zq, ZqElem};
use serde::Serialize;

use crate::closed::{closed_series, eval_closed};
use crate::solve::{Constants, FormSeries};
use crate::OdeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditKind {
    ClosedFormMatch,
    Residue,
    Funprop,
    Cauchy,
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditStatus {
    Pass,
    Fail,
    /// The limits were not certified far enough to decide.
    Inconclusive,
}

/// One audited word.  `worst_valuation` is the smallest number of agreeing
/// digits seen, counted from the valuation of the compared values.
#[derive(Clone, Debug, Serialize)]
pub struct OdeAudit {
    pub word: String,
    pub kind: AuditKind,
    pub worst_valuation: i32,
    pub threshold: i32,
    pub status: AuditStatus,
    pub note: String,
}

impl OdeAudit {
    pub fn passed(&self) -> bool {
        self.status == AuditStatus::Pass
    }
}

/// Digits of agreement of `a` and `b` beyond the smaller valuation; `None`
/// when both are zero to their precision.
fn relative_agreement(ring: &Zq, a: &ZqElem, b: &ZqElem) -> Option<i32> {
    let v = match (a.valuation(), b.valuation()) {
        (None, None) => return None,
        (Some(x), None) | (None, Some(x)) => x,
        (Some(x), Some(y)) => x.min(y),
    };
    Some(ring.agree(a, b) - v)
}

/// Compare every solved word that has a closed expression, degrees `1..=upto`.
pub fn match_closed_series(
    ctx: &SumCtx,
    solved: &FormSeries,
    consts: &Constants,
    upto: u64,
    threshold: i32,
) -> Result<Vec<OdeAudit>, OdeError> {
    let ring = ctx.ring();
    let mut out = Vec::new();
    for w in solved.words() {
        let Some(cs) = closed_series(ctx, consts, w) else { continue };
        let stream = solved.stream(w, upto).ok_or(OdeError::NotRecorded(upto))?;
        let closed = eval_closed(ctx, &cs, upto)?;
        let mut worst = i32::MAX;
        let mut at = 0;
        for n in 1..=upto as usize {
            if let Some(r) = relative_agreement(ring, &stream[n], &closed[n]) {
                if r < worst {
                    worst = r;
                    at = n;
                }
            }
        }
        let status = if worst >= threshold { AuditStatus::Pass } else { AuditStatus::Fail };
        out.push(OdeAudit {
            word: w.to_string(),
            kind: AuditKind::ClosedFormMatch,
            worst_valuation: worst,
            threshold,
            status,
            note: format!("{:?} expression, {} terms, worst at n = {at}", cs.family, cs.terms.len()),
        });
    }
    Ok(out)
}

/// A limit read off a ladder, accelerated by Richardson steps.
#[derive(Clone, Debug, Serialize)]
pub struct LimitEstimate {
    #[serde(skip)]
    pub value: ZqElem,
    pub certified_digits: i32,
    /// Richardson levels applied to the chosen sequence.
    pub levels: u32,
    /// Cauchy certificate of the raw ladder.
    pub raw_certificate: i32,
}

/// Limit of `seq` where `seq[N] - L` expands in powers of `ratio^N`.  Each
/// Richardson level removes one power; the level with the best Cauchy
/// certificate (needing three terms) is reported.
pub fn accelerated_limit(ring: &Zq, seq: &[ZqElem], ratio: u64) -> Option<LimitEstimate> {
    let (_, raw) = cauchy_certificate(ring, seq)?;
    let mut best = LimitEstimate { value: *seq.last()?, certified_digits: raw, levels: 0, raw_certificate: raw };
    let mut cur = seq.to_vec();
    let mut r = ring.one();
    for level in 1.. {
        r = ring.mul_int(&r, ratio as i64);
        let Ok(next) = richardson(ring, &cur, &r) else { break };
        let Some((_, cert)) = cauchy_certificate(ring, &next) else { break };
        if cert > best.certified_digits {
            best = LimitEstimate { value: *next.last()?, certified_digits: cert, levels: level, raw_certificate: raw };
        }
        cur = next;
    }
    Some(best)
}

/// Ladder `l b^N <= n_max`, `N >= 1`.
pub fn ladder(l: u64, b: u64, n_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut x = l as u128 * b as u128;
    while x <= n_max as u128 {
        out.push(x as u64);
        x *= b as u128;
    }
    out
}

/// `g_F(infinity)[w] = -lim a_(M p^N)[w]`.
pub fn infinity_value(ring: &Zq, solved: &FormSeries, w: &Word) -> Result<LimitEstimate, OdeError> {
    let pts = ladder(ring.m(), ring.p(), solved.n_max);
    let seq = pts.iter().map(|&n| solved.coeff(w, n).ok_or(OdeError::NotRecorded(n))).collect::<Result<Vec<_>, _>>()?;
    let mut est = accelerated_limit(ring, &seq, ring.p())
        .ok_or_else(|| OdeError::Config(format!("fewer than three points M p^N <= {}", solved.n_max)))?;
    est.value = ring.neg(&est.value);
    Ok(est)
}

/// `g_F(infinity)` on the given words, with the smallest certificate.
pub fn infinity_series(
    ring: &Zq,
    solved: &FormSeries,
    words: &[Word],
    cap: usize,
) -> Result<(NCSeries, i32), OdeError> {
    let mut s = NCSeries::one(ring, cap);
    let mut cert = i32::MAX;
    for w in words.iter().filter(|w| !w.is_empty()) {
        let e = infinity_value(ring, solved, w)?;
        cert = cert.min(e.certified_digits);
        s.set(w.clone(), e.value.with_prec(e.certified_digits));
    }
    Ok((s, cert))
}

/// Coefficientwise check of `G (e_0 + sum_a C_a) = (e_0 + ... + e_M) G` with
/// `G = g_F(infinity)` on all words of length `1..=max_len`.  `G` is needed
/// up to length `max_len - 1`.
pub fn residue_identity_check(
    ring: &Zq,
    ginf: &NCSeries,
    consts: &Constants,
    max_len: usize,
    threshold: i32,
) -> Vec<OdeAudit> {
    let m = consts.m() as u8;
    let words: Vec<Word> =
        free_series::words_up_to(m, max_len, max_len).into_iter().filter(|w| !w.is_empty()).collect();
    let cs = |u: &Word| -> ZqElem {
        let mut acc = if u.letters() == [0] { ring.one() } else { ZqElem::zero() };
        for a in 1..=m {
            acc = ring.add(&acc, &consts.conj(ring, a, u));
        }
        acc
    };
    let mut out = Vec::new();
    for w in &words {
        let n = w.len();
        let mut lhs = ZqElem::zero();
        for cut in 0..n {
            let x = w.slice(0, cut);
            let u = w.slice(cut, n);
            lhs = ring.add(&lhs, &ring.mul(&ginf.get(&x), &cs(&u)));
        }
        let rhs = ginf.get(&w.slice(1, n));
        let worst = ring.agree(&lhs, &rhs);
        out.push(OdeAudit {
            word: w.to_string(),
            kind: AuditKind::Residue,
            worst_valuation: worst,
            threshold,
            status: if worst >= threshold { AuditStatus::Pass } else { AuditStatus::Fail },
            note: String::new(),
        });
    }
    out
}

/// Result of reading the constant errors off one word.
#[derive(Clone, Debug, Serialize)]
pub struct FunpropReport {
    pub word: String,
    /// `(l, certificate)` of `lim l q^N a_(l q^N)[w]` for `l = 1..=M`.
    pub limits: Vec<(u64, i32)>,
    /// `(a, valuation)` of the error in `C_a[w]`; `None` if zero to its precision.
    pub delta_valuations: Vec<(u8, Option<i32>)>,
    #[serde(skip)]
    pub delta: Vec<ZqElem>,
    /// Certified digits of the errors.
    pub delta_certified: i32,
    /// Smallest valuation among the nonzero `C_a[w]`.
    pub reference_valuation: i32,
    /// Worst agreement of the remaining limits `l = M+1..=pM` with the
    /// character sum `p sum_a zeta^(-a_ l) dC_a`.
    pub consistency: Option<i32>,
    pub audit: OdeAudit,
}

/// `dC_a = (1/(pM)) sum_(l=1..M) zeta^(a_ l) L(l)`, inverting
/// `L(l) = p sum_a zeta^(-a_ l) dC_a`.
pub fn dft_constants(ring: &Zq, limits: &[ZqElem]) -> Result<Vec<ZqElem>, OdeError> {
    let m = ring.m();
    let maps = IndexMaps::new(ring.p(), m);
    let mut out = Vec::with_capacity(m as usize);
    for a in 1..=m as i64 {
        let ua = maps.under(a) as i64;
        let mut acc = ZqElem::zero();
        for (l, v) in limits.iter().enumerate() {
            let l = l as i64 + 1;
            acc = ring.add(&acc, &ring.mul(&ring.zeta_pow((ua * l).rem_euclid(m as i64)), v));
        }
        out.push(ring.div_int(&acc, (ring.p() * m) as i64)?);
    }
    Ok(out)
}

/// Limits `lim l q^N a_(l q^N)[w]` for `l = 1..=pM`, the constant errors they
/// imply, and a verdict: pass when every error sits `threshold` digits below
/// the reference valuation.
pub fn funprop_check(
    ring: &Zq,
    solved: &FormSeries,
    consts: &Constants,
    w: &Word,
    threshold: i32,
) -> Result<FunpropReport, OdeError> {
    let p = ring.p();
    let m = ring.m();
    let q = ring.q() as u64;
    let maps = IndexMaps::new(p, m);
    let mut limits = Vec::new();
    for l in 1..=p * m {
        let pts = ladder(l, q, solved.n_max);
        let seq: Vec<ZqElem> = pts
            .iter()
            .map(|&n| solved.coeff(w, n).map(|a| ring.mul_int(&a, n as i64)))
            .collect::<Option<_>>()
            .ok_or(OdeError::NotRecorded(pts.last().copied().unwrap_or(0)))?;
        match accelerated_limit(ring, &seq, q) {
            Some(e) => limits.push((l, e)),
            None if l <= m => {
                return Err(OdeError::Config(format!("fewer than three points {l} q^N <= {}", solved.n_max)))
            }
            None => {}
        }
    }
    let reference = (1..=m as u8).filter_map(|a| consts.conj(ring, a, w).valuation()).min().unwrap_or(0);
    let delta_certified = limits.iter().take(m as usize).map(|(_, e)| e.certified_digits).min().unwrap_or(0) - 1;
    if delta_certified < 1 {
        // The limits did not settle, which happens when lower constants are
        // off; nothing can be read from them.
        let delta = vec![ZqElem::zero().with_prec(0); m as usize];
        return Ok(FunpropReport {
            word: w.to_string(),
            limits: limits.iter().take(m as usize).map(|(l, e)| (*l, e.certified_digits)).collect(),
            delta_valuations: (1..=m as u8).map(|a| (a, None)).collect(),
            delta,
            delta_certified,
            reference_valuation: reference,
            consistency: None,
            audit: OdeAudit {
                word: w.to_string(),
                kind: AuditKind::Funprop,
                worst_valuation: delta_certified - reference,
                threshold,
                status: AuditStatus::Inconclusive,
                note: format!("limits did not converge (certified to {delta_certified} digits)"),
            },
        });
    }
    let first: Vec<ZqElem> =
        limits.iter().take(m as usize).map(|(_, e)| e.value.with_prec(e.certified_digits)).collect();
    let delta = dft_constants(ring, &first)?;

    let mut consistency: Option<i32> = None;
    for (l, e) in limits.iter().skip(m as usize) {
        let mut pred = ZqElem::zero();
        for (a, d) in delta.iter().enumerate() {
            let ua = maps.under(a as i64 + 1) as i64;
            pred = ring.add(&pred, &ring.mul(&ring.zeta_pow(-(ua * *l as i64)), d));
        }
        pred = ring.mul_int(&pred, p as i64);
        let ag = ring.agree(&pred, &e.value.with_prec(e.certified_digits));
        consistency = Some(consistency.map_or(ag, |c| c.min(ag)));
    }

    let need = reference + threshold;
    let mut worst = i32::MAX;
    let mut visible_failure = false;
    for d in &delta {
        match d.valuation() {
            Some(v) => {
                worst = worst.min(v - reference);
                if v < need {
                    visible_failure = true;
                }
            }
            None => worst = worst.min(d.prec() - reference),
        }
    }
    let status = if visible_failure {
        AuditStatus::Fail
    } else if delta_certified < need {
        AuditStatus::Inconclusive
    } else {
        AuditStatus::Pass
    };
    let audit = OdeAudit {
        word: w.to_string(),
        kind: AuditKind::Funprop,
        worst_valuation: worst,
        threshold,
        status,
        note: format!("limits certified to {delta_certified} digits, reference valuation {reference}"),
    };
    Ok(FunpropReport {
        word: w.to_string(),
        limits: limits.iter().take(m as usize).map(|(l, e)| (*l, e.certified_digits)).collect(),
        delta_valuations: delta.iter().enumerate().map(|(a, d)| (a as u8 + 1, d.valuation())).collect(),
        delta,
        delta_certified,
        reference_valuation: reference,
        consistency,
        audit,
    })
}
