//! Completion of a group-like series of depth <= 2 from canonical coefficients.
//!
//! A canonical word starts with a letter other than `e_0`.  Given `g` on
//! canonical words, the relations `g[e_0^a sh v] = g[e_0^a] g[v] = 0` fix every
//! word with leading `e_0`s.  Among depth-2 canonical words the products
//! `g[e_x e_0^a] g[e_y e_0^b]` give linear relations, solved exactly over `Q`
//! for the words that were not supplied.  Directions left free by those
//! relations are set to zero and reported.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use padic_core::{Zq, ZqElem};

use crate::series::NCSeries;
use crate::word::{shuffle, Word};

#[derive(Clone, Debug)]
pub struct Completion {
    pub series: NCSeries,
    /// Canonical words not supplied and not fixed by relations, set to zero.
    pub uncovered: Vec<Word>,
    /// Canonical words not supplied but solved from relations.
    pub derived: Vec<Word>,
}

struct Row {
    coef: Vec<BigRational>,
    rhs: ZqElem,
}

fn rat_elem(ring: &Zq, r: &BigRational) -> ZqElem {
    ring.from_rational(r)
}

/// Solve `A x = b` for the unknown columns, free columns set to zero.
/// Returns the value per column and the list of free columns.
fn solve(ring: &Zq, mut rows: Vec<Row>, ncols: usize) -> (Vec<ZqElem>, Vec<usize>) {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r0 = 0;
    for col in 0..ncols {
        let Some(pr) = (r0..rows.len()).find(|&r| !rows[r].coef[col].is_zero()) else { continue };
        rows.swap(r0, pr);
        let piv = rows[r0].coef[col].clone();
        let inv = BigRational::one() / piv;
        for c in rows[r0].coef.iter_mut() {
            *c = &*c * &inv;
        }
        rows[r0].rhs = ring.mul(&rows[r0].rhs, &rat_elem(ring, &inv));
        for r in 0..rows.len() {
            if r == r0 || rows[r].coef[col].is_zero() {
                continue;
            }
            let factor = rows[r].coef[col].clone();
            let (prow_coef, prow_rhs) = (rows[r0].coef.clone(), rows[r0].rhs);
            for (c, pc) in rows[r].coef.iter_mut().zip(&prow_coef) {
                *c = &*c - &factor * pc;
            }
            rows[r].rhs = ring.sub(&rows[r].rhs, &ring.mul(&prow_rhs, &rat_elem(ring, &factor)));
        }
        pivots.push((col, r0));
        r0 += 1;
    }
    let mut vals = vec![ZqElem::zero(); ncols];
    let mut free: Vec<usize> = (0..ncols).collect();
    for (col, r) in pivots {
        vals[col] = rows[r].rhs;
        free.retain(|&c| c != col);
    }
    (vals, free)
}

/// Complete `g` on all words over `e_0..e_m` of length `<= cap` and depth
/// `<= 2`.  `pinned` holds the supplied canonical coefficients (depth 1 and
/// 2).  Among unsupplied words of one depth-2 content, those for which
/// `prefer_free` holds are the first to be left free.
pub fn shuffle_complete<P: Fn(&Word) -> bool>(
    ring: &Zq,
    m: u8,
    cap: usize,
    pinned: &HashMap<Word, ZqElem>,
    prefer_free: P,
) -> Completion {
    let mut g = NCSeries::one(ring, cap);
    let mut uncovered = Vec::new();
    let mut derived = Vec::new();

    // Depth 1 canonical words.
    for j in 1..=m {
        for b in 0..cap {
            let w = Word::letter(j).concat(&Word::zeros(b));
            match pinned.get(&w) {
                Some(v) => g.set(w, *v),
                None => {
                    g.set(w.clone(), ZqElem::zero());
                    uncovered.push(w);
                }
            }
        }
    }

    // Depth 2 canonical words, one content class at a time.
    if cap >= 2 {
        for x in 1..=m {
            for y in x..=m {
                for n in 0..=cap - 2 {
                    let mut words = Vec::new();
                    for a in 0..=n {
                        let w =
                            |s: u8, t: u8| Word::letter(s).concat(&Word::zeros(a)).push(t).concat(&Word::zeros(n - a));
                        words.push(w(x, y));
                        if x != y {
                            words.push(w(y, x));
                        }
                    }
                    let mut unknown: Vec<Word> = words.iter().filter(|w| !pinned.contains_key(*w)).cloned().collect();
                    for w in &words {
                        if let Some(v) = pinned.get(w) {
                            g.set(w.clone(), *v);
                        }
                    }
                    if unknown.is_empty() {
                        continue;
                    }
                    unknown.sort_by_key(|w| (prefer_free(w), w.clone()));
                    let col: HashMap<&Word, usize> = unknown.iter().enumerate().map(|(i, w)| (w, i)).collect();
                    let mut rows = Vec::new();
                    for a in 0..=n {
                        let u = Word::letter(x).concat(&Word::zeros(a));
                        let v = Word::letter(y).concat(&Word::zeros(n - a));
                        let mut coef = vec![BigRational::zero(); unknown.len()];
                        let mut rhs = ring.mul(&g.get(&u), &g.get(&v));
                        for (w, c) in shuffle(&u, &v) {
                            match col.get(&w) {
                                Some(&i) => coef[i] += BigRational::from_integer(BigInt::from(c)),
                                None => rhs = ring.sub(&rhs, &ring.mul_int(&g.get(&w), c as i64)),
                            }
                        }
                        rows.push(Row { coef, rhs });
                    }
                    let (vals, free) = solve(ring, rows, unknown.len());
                    for (i, w) in unknown.iter().enumerate() {
                        g.set(w.clone(), vals[i]);
                        if free.contains(&i) {
                            uncovered.push(w.clone());
                        } else {
                            derived.push(w.clone());
                        }
                    }
                }
            }
        }
    }

    // Words with leading e_0, by increasing number of leading e_0.
    for a in 1..cap {
        for len in a + 1..=cap {
            let tails: Vec<Word> = g
                .iter()
                .map(|(w, _)| w.clone())
                .filter(|w| w.len() == len - a && w.leading_zeros() == 0 && !w.is_empty())
                .collect();
            for v in tails {
                let target = Word::zeros(a).concat(&v);
                let mut acc = ZqElem::zero();
                for (w, c) in shuffle(&Word::zeros(a), &v) {
                    if w != target {
                        acc = ring.add(&acc, &ring.mul_int(&g.get(&w), c as i64));
                    }
                }
                g.set(target, ring.neg(&acc));
            }
        }
    }

    uncovered.sort();
    derived.sort();
    Completion { series: g, uncovered, derived }
}
