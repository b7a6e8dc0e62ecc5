//! Choosing between the two readings of the ambiguous `d_2` index by running
//! the whole pipeline once per reading.

use std::sync::Arc;

use free_series::{GroupLikeReport, Word};
use iterated_sums::SumCtx;
use mzv_closed_forms::{build_g, Mzv, MzvError, Reading};
use serde::Serialize;

use crate::audit::{funprop_check, ladder, match_closed_series, AuditStatus, FunpropReport, OdeAudit};
use crate::solve::{solve_gf, Constants, Record, SolveOpts};
use crate::OdeError;

/// `e_i e_j e_0^(s-1) e_k e_0^(t-1)`.
pub fn padded_word(i: u8, j: u8, k: u8, s: usize, t: usize) -> Word {
    Word::from_letters(&[i, j]).concat(&Word::zeros(s - 1)).push(k).concat(&Word::zeros(t - 1))
}

/// Padded words over all ordered triples of distinct letters.
pub fn padded_words(m: u8, shapes: &[(usize, usize)]) -> Vec<Word> {
    let mut out = Vec::new();
    for &(s, t) in shapes {
        for i in 1..=m {
            for j in (1..=m).filter(|&j| j != i) {
                for k in (1..=m).filter(|&k| k != i && k != j) {
                    out.push(padded_word(i, j, k, s, t));
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct AdjudicationOpts {
    pub budget: u64,
    pub cap: usize,
    /// Degree bound of the solver; funprop ladders are `l q^N <= n_max`.
    pub n_max: u64,
    /// Degrees recorded in full for the closed-series comparison.
    pub match_upto: u64,
    pub threshold: i32,
    pub solve: SolveOpts,
}

#[derive(Debug, Serialize)]
pub struct ReadingOutcome {
    pub reading: String,
    /// Worst shuffle-relation agreement over the constructed `g_1..g_M`.
    pub grouplike_min_agreement: i32,
    pub grouplike_failures: usize,
    pub closed_series: Vec<OdeAudit>,
    pub funprop: Vec<FunpropReport>,
    /// Every funprop check passed and no other audit failed.
    pub consistent: bool,
}

#[derive(Debug, Serialize)]
pub struct Adjudication {
    pub outcomes: Vec<ReadingOutcome>,
    /// The unique consistent reading, if exactly one is.
    pub survivor: Option<String>,
}

fn fold_audits(reports: &[GroupLikeReport]) -> (i32, usize) {
    let min = reports.iter().map(|r| r.min_agreement).min().unwrap_or(i32::MAX);
    (min, reports.iter().map(|r| r.failures.len()).sum())
}

/// Build `g_1..g_M` under each reading, solve on `words`, and run the
/// closed-series and funprop audits on them.
pub fn adjudicate(ctx: &Arc<SumCtx>, words: &[Word], opts: &AdjudicationOpts) -> Result<Adjudication, OdeError> {
    let ring = ctx.ring();
    let m = ring.m();
    let mut record = Record { full_upto: opts.match_upto, ..Default::default() };
    for l in 1..=ring.p() * m {
        record.points.extend(ladder(l, ring.q() as u64, opts.n_max));
    }
    let mut outcomes = Vec::new();
    for rd in Reading::ALL {
        let z = Mzv::new(ctx.clone(), opts.budget).with_reading(rd);
        let built = (1..=m as u8)
            .map(|a| build_g(&z, a, opts.cap, opts.threshold))
            .collect::<Result<Vec<_>, MzvError>>()
            .map_err(|e| OdeError::Config(format!("building constants: {e}")))?;
        let (gl_min, gl_fail) = fold_audits(&built.iter().map(|b| b.audit.clone()).collect::<Vec<_>>());
        let consts = Constants::new(built.into_iter().map(|b| b.series).collect());
        let solved = solve_gf(ring, &consts, words, opts.n_max, &record, opts.solve)?;
        let closed = match_closed_series(ctx, &solved, &consts, opts.match_upto, opts.threshold)?;
        let funprop = words
            .iter()
            .map(|w| funprop_check(ring, &solved, &consts, w, opts.threshold))
            .collect::<Result<Vec<_>, _>>()?;
        let consistent = gl_fail == 0
            && closed.iter().all(|a| a.passed())
            && funprop.iter().all(|f| f.audit.status == AuditStatus::Pass);
        outcomes.push(ReadingOutcome {
            reading: rd.to_string(),
            grouplike_min_agreement: gl_min,
            grouplike_failures: gl_fail,
            closed_series: closed,
            funprop,
            consistent,
        });
    }
    let good: Vec<&ReadingOutcome> = outcomes.iter().filter(|o| o.consistent).collect();
    let survivor = if good.len() == 1 { Some(good[0].reading.clone()) } else { None };
    Ok(Adjudication { outcomes, survivor })
}
