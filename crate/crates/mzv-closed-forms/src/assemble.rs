//! Full truncated `g_i`: closed forms on canonical words, the rest from the
//! shuffle relations.

use std::collections::HashMap;

use free_series::{is_grouplike, shuffle_complete, GroupLikeReport, NCSeries, Word};

use crate::{Mzv, MzvError, MzvQuery, MzvValue};

pub struct BuiltG {
    pub base: u8,
    pub series: NCSeries,
    /// Canonical words with a closed form, and their values.
    pub pinned: Vec<(Word, MzvValue)>,
    /// Canonical words fixed by shuffle relations.
    pub derived: Vec<Word>,
    /// Canonical words with neither, set to zero.
    pub uncovered: Vec<Word>,
    /// Smallest certificate among the pinned values.
    pub certified_digits: i32,
    /// Shuffle audit over pairs with `|u| + |v| <= cap` and total depth <= 2.
    pub audit: GroupLikeReport,
}

fn canonical_words(m: u8, cap: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for j in 1..=m {
        for b in 0..cap {
            out.push(Word::letter(j).concat(&Word::zeros(b)));
        }
    }
    for x in 1..=m {
        for y in 1..=m {
            for n in 0..=cap.saturating_sub(2) {
                for a in 0..=n {
                    out.push(Word::letter(x).concat(&Word::zeros(a)).push(y).concat(&Word::zeros(n - a)));
                }
            }
        }
    }
    out.retain(|w| w.len() <= cap);
    out
}

/// `g_base` on all words of length `<= cap` and depth `<= 2`.
pub fn build_g(z: &Mzv, base: u8, cap: usize, threshold: i32) -> Result<BuiltG, MzvError> {
    let m = z.m() as u8;
    let words = canonical_words(m, cap);
    let results = z.exec().map(&words, |w| z.compute(&MzvQuery::new(base, w.clone())));
    let mut pinned = Vec::new();
    for (w, r) in words.into_iter().zip(results) {
        match r {
            Ok(v) => pinned.push((w, v)),
            Err(MzvError::Domain(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let map: HashMap<Word, _> = pinned.iter().map(|(w, v)| (w.clone(), v.value)).collect();
    let done = shuffle_complete(z.ring(), m, cap, &map, |_| false);
    let audit = is_grouplike(z.ring(), &done.series, m, cap, 2, threshold);
    let certified_digits = pinned.iter().map(|(_, v)| v.certified_digits).min().unwrap_or(z.ring().cap());
    Ok(BuiltG {
        base,
        series: done.series,
        pinned,
        derived: done.derived,
        uncovered: done.uncovered,
        certified_digits,
        audit,
    })
}
