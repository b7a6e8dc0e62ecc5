use std::collections::HashMap;

use padic_core::{Zq, ZqElem};

use crate::word::{shuffle, words_up_to, Word};

/// A noncommutative power series truncated at word length `cap`.  Missing
/// words have coefficient exactly zero.
#[derive(Clone, Debug, Default)]
pub struct NCSeries {
    cap: usize,
    coeffs: HashMap<Word, ZqElem>,
}

impl NCSeries {
    pub fn new(cap: usize) -> Self {
        NCSeries { cap, coeffs: HashMap::new() }
    }

    pub fn one(ring: &Zq, cap: usize) -> Self {
        let mut s = Self::new(cap);
        s.set(Word::empty(), ring.one());
        s
    }

    /// The series `e_a`.
    pub fn letter(ring: &Zq, a: u8, cap: usize) -> Self {
        let mut s = Self::new(cap);
        s.set(Word::letter(a), ring.one());
        s
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn get(&self, w: &Word) -> ZqElem {
        self.coeffs.get(w).copied().unwrap_or_else(ZqElem::zero)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.coeffs.contains_key(w)
    }

    pub fn set(&mut self, w: Word, v: ZqElem) {
        if w.len() <= self.cap {
            self.coeffs.insert(w, v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &ZqElem)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, ring: &Zq, other: &NCSeries) -> NCSeries {
        let mut out = self.clone();
        out.cap = self.cap.min(other.cap);
        for (w, v) in &other.coeffs {
            let x = ring.add(&out.get(w), v);
            out.set(w.clone(), x);
        }
        out.coeffs.retain(|w, _| w.len() <= out.cap);
        out
    }

    pub fn sub(&self, ring: &Zq, other: &NCSeries) -> NCSeries {
        self.add(ring, &other.scale(ring, &ring.from_i64(-1)))
    }

    pub fn scale(&self, ring: &Zq, c: &ZqElem) -> NCSeries {
        let coeffs = self.coeffs.iter().map(|(w, v)| (w.clone(), ring.mul(v, c))).collect();
        NCSeries { cap: self.cap, coeffs }
    }

    /// Concatenation product, truncated at the smaller cap.
    pub fn mul(&self, ring: &Zq, other: &NCSeries) -> NCSeries {
        let cap = self.cap.min(other.cap);
        let mut out = NCSeries::new(cap);
        for (u, a) in &self.coeffs {
            for (v, b) in &other.coeffs {
                if u.len() + v.len() > cap {
                    continue;
                }
                let w = u.concat(v);
                let x = ring.add(&out.get(&w), &ring.mul(a, b));
                out.coeffs.insert(w, x);
            }
        }
        out
    }

    /// Inverse of a series with constant term 1: `sum_k (1 - a)^k`.
    pub fn invert(&self, ring: &Zq) -> NCSeries {
        let one = NCSeries::one(ring, self.cap);
        let x = one.sub(ring, self);
        let mut term = one.clone();
        let mut acc = one;
        for _ in 0..self.cap {
            term = term.mul(ring, &x);
            acc = acc.add(ring, &term);
        }
        acc
    }

    /// `g^-1 e_a g`.
    pub fn conjugate(&self, ring: &Zq, a: u8) -> NCSeries {
        let inv = self.invert(ring);
        inv.mul(ring, &NCSeries::letter(ring, a, self.cap)).mul(ring, self)
    }

    /// Antipode `w -> (-1)^|w| g[reverse w]`, the inverse of a group-like series.
    pub fn antipode(&self, ring: &Zq) -> NCSeries {
        let coeffs =
            self.coeffs.iter().map(|(w, v)| (w.reversed(), if w.len() % 2 == 1 { ring.neg(v) } else { *v })).collect();
        NCSeries { cap: self.cap, coeffs }
    }
}

#[derive(Clone, Debug, Default)]
pub struct GroupLikeReport {
    pub pairs_checked: usize,
    /// Smallest `v_p(g[u]g[v] - g[u sh v])` over the checked pairs.
    pub min_agreement: i32,
    /// Pairs whose agreement fell below the threshold.
    pub failures: Vec<(Word, Word, i32)>,
}

impl GroupLikeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.pairs_checked > 0
    }
}

/// Checks `g[u] g[v] = g[u sh v]` for nonempty `u, v` over `e_0..e_m` with
/// `|u| + |v| <= max_total` and `depth(u) + depth(v) <= max_depth`.
pub fn is_grouplike(
    ring: &Zq,
    g: &NCSeries,
    m: u8,
    max_total: usize,
    max_depth: usize,
    threshold: i32,
) -> GroupLikeReport {
    let words: Vec<Word> =
        words_up_to(m, max_total.saturating_sub(1), max_depth).into_iter().filter(|w| !w.is_empty()).collect();
    let mut rep = GroupLikeReport { min_agreement: i32::MAX, ..Default::default() };
    let constant_ok = ring.agree(&g.get(&Word::empty()), &ring.one()) >= threshold;
    if !constant_ok {
        rep.failures.push((Word::empty(), Word::empty(), ring.agree(&g.get(&Word::empty()), &ring.one())));
    }
    for (a, u) in words.iter().enumerate() {
        for v in &words[a..] {
            if u.len() + v.len() > max_total || u.depth() + v.depth() > max_depth {
                continue;
            }
            let lhs = ring.mul(&g.get(u), &g.get(v));
            let mut rhs = ZqElem::zero();
            for (w, c) in shuffle(u, v) {
                rhs = ring.add(&rhs, &ring.mul_int(&g.get(&w), c as i64));
            }
            let ag = ring.agree(&lhs, &rhs);
            rep.pairs_checked += 1;
            rep.min_agreement = rep.min_agreement.min(ag);
            if ag < threshold {
                rep.failures.push((u.clone(), v.clone(), ag));
            }
        }
    }
    rep
}
