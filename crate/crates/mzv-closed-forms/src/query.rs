//! Routing of a coefficient query `g_base[word]` to the formula that covers it.

use free_series::Word;
use padic_core::binomial;
use serde::{Deserialize, Serialize};

use crate::calc::{Calc, Cv};
use crate::{Mzv, MzvError, MzvValue};

/// The canonical shapes a word can take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    Empty,
    /// `e_0^n`, `n >= 1`.
    Zeros(u32),
    /// `e_0^a e_k e_0^b`.
    Depth1 {
        a: u32,
        k: u8,
        b: u32,
    },
    /// `e_j e_0^(s-1) e_k e_0^(t-1)`.
    Depth2 {
        j: u8,
        k: u8,
        s: u32,
        t: u32,
    },
    /// Anything else: depth 2 with leading `e_0`, or depth above 2.
    Other,
}

impl Shape {
    pub fn of(w: &Word) -> Shape {
        let l = w.letters();
        if l.is_empty() {
            return Shape::Empty;
        }
        let nz: Vec<usize> = (0..l.len()).filter(|&x| l[x] != 0).collect();
        match nz.as_slice() {
            [] => Shape::Zeros(l.len() as u32),
            [x] => Shape::Depth1 { a: *x as u32, k: l[*x], b: (l.len() - x - 1) as u32 },
            [0, y] => Shape::Depth2 { j: l[0], k: l[*y], s: *y as u32, t: (l.len() - y) as u32 },
            _ => Shape::Other,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MzvQuery {
    pub base: u8,
    pub word: Word,
}

impl MzvQuery {
    pub fn new(base: u8, word: Word) -> Self {
        MzvQuery { base, word }
    }

    /// Shift the base and all nonzero letters by `l` modulo `M` (into `1..=M`).
    pub fn rotate(&self, l: u64, m: u64) -> MzvQuery {
        let sh = |a: u8| ((a as u64 - 1 + l) % m + 1) as u8;
        let letters: Vec<u8> = self.word.letters().iter().map(|&a| if a == 0 { 0 } else { sh(a) }).collect();
        MzvQuery { base: sh(self.base), word: Word::from_letters(&letters) }
    }
}

impl Mzv {
    fn g_depth1(&self, base: i64, k: i64, n: u32) -> Result<MzvValue, MzvError> {
        let same = (base - k).rem_euclid(self.m() as i64) == 0;
        match (n, same) {
            (0, _) => self.g_single(base, k),
            (_, false) => self.depth1_alt(base, k, n + 1),
            (_, true) => self.depth1_usual(base, base, n),
        }
    }

    /// `g_base[word]` for every shape with a closed form.
    pub fn compute(&self, q: &MzvQuery) -> Result<MzvValue, MzvError> {
        let m = self.m();
        if q.base == 0 || q.base as u64 > m {
            return Err(MzvError::Domain(format!("base {} outside 1..={m}", q.base)));
        }
        if let Some(&bad) = q.word.letters().iter().find(|&&a| a as u64 > m) {
            return Err(MzvError::Domain(format!("letter e{bad} outside e0..e{m}")));
        }
        let i = q.base as i64;
        let c = Calc::new(self, "compute");
        let md = |a: i64, b: i64| (a - b).rem_euclid(m as i64) == 0;
        let v = match Shape::of(&q.word) {
            Shape::Empty => c.int(1),
            Shape::Zeros(_) => c.zero(),
            Shape::Depth1 { a, k, b } => {
                let g = c.absorb(&self.g_depth1(i, k as i64, a + b)?);
                let coef = c.ring.from_bigint(&binomial((a + b) as u64, a as u64));
                c.sign(b, c.mul(Cv::exact(coef), g))
            }
            Shape::Depth2 { j, k, s, t } => {
                let (j, k) = (j as i64, k as i64);
                if md(i, j) || md(i, k) || md(j, k) {
                    if s != 1 || t != 1 {
                        return Err(MzvError::Domain(format!(
                            "g_{i}[{}]: repeated letters are covered only at length 2",
                            q.word
                        )));
                    }
                    if md(j, k) && md(i, j) {
                        c.zero()
                    } else if md(j, k) {
                        let g = c.absorb(&self.g_single(i, j)?);
                        c.div_int(c.mul(g, g), 2)?
                    } else if md(k, i) {
                        c.absorb(&self.g_pair_same(i, j)?)
                    } else {
                        c.neg(c.absorb(&self.g_pair_same(i, k)?))
                    }
                } else {
                    let v = match (s, t) {
                        (1, 1) => self.g_pair_distinct(i, j, k)?,
                        (1, t) => self.g_pair_tail(i, j, k, t - 1)?,
                        (s, 1) => self.g_mid(i, j, k, s)?,
                        (s, t) => self.g_main(i, j, k, s, t)?,
                    };
                    c.absorb(&v)
                }
            }
            Shape::Other => {
                return Err(MzvError::Domain(format!("g_{i}[{}]: no closed form for this shape", q.word)));
            }
        };
        Ok(c.finish(v))
    }
}
