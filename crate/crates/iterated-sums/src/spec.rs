//! Description of one iterated sum.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::SumError;

/// Exponent at one position: `1/n^s`, or the superscript operator of order `s`
/// applied to the inner partial sum when `paren` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Exp {
    pub s: u32,
    pub paren: bool,
}

impl Exp {
    pub fn plain(s: u32) -> Self {
        Exp { s, paren: false }
    }
    pub fn paren(s: u32) -> Self {
        Exp { s, paren: true }
    }
}

/// A summation symbol required divisible by `p`: `N(m)` is `n_m`, `D(m)` is
/// `d_m = n_m - n_{m-1}` (1-based).  `D(k+1)` on a depth-`k` sum means
/// `p | (n - n_k)` for the outer argument `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sym {
    N(u8),
    D(u8),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SumSpec {
    pub exps: Vec<Exp>,
    /// Indices `i_m`; the summand carries `zeta^(underbar(i_m) n_m)`.
    pub idx: Vec<i64>,
    pub alpha: Vec<Sym>,
    /// Condition `p does not divide n_1` (the `F`/`S` families; off for `G`/`T`).
    pub restrict_first: bool,
    /// Drop the `p^(sum s)` prefactor.
    pub underlined: bool,
    /// Outer superscript order.
    pub sup: u32,
}

impl SumSpec {
    /// `F(s_1..s_k; i_1..i_k)` with no divisibility conditions.
    pub fn f(exps: &[Exp], idx: &[i64]) -> Self {
        SumSpec {
            exps: exps.to_vec(),
            idx: idx.to_vec(),
            alpha: Vec::new(),
            restrict_first: true,
            underlined: false,
            sup: 0,
        }
    }

    /// Depth-1 `F(t; i)`.
    pub fn f1(t: u32, i: i64) -> Self {
        Self::f(&[Exp::plain(t)], &[i])
    }

    /// Depth-2 `F(a, b; i, j)` (plain) or `F(a, (b); i, j)` (paren).
    pub fn f2(a: u32, b: Exp, i: i64, j: i64) -> Self {
        Self::f(&[Exp::plain(a), b], &[i, j])
    }

    pub fn with_alpha(mut self, alpha: &[Sym]) -> Self {
        self.alpha = alpha.to_vec();
        self.alpha.sort();
        self.alpha.dedup();
        self
    }

    pub fn with_sup(mut self, sup: u32) -> Self {
        self.sup = sup;
        self
    }

    pub fn unrestricted(mut self) -> Self {
        self.restrict_first = false;
        self
    }

    pub fn underlined(mut self) -> Self {
        self.underlined = true;
        self
    }

    pub fn depth(&self) -> usize {
        self.exps.len()
    }

    /// Total exponent, the power of `p` in front.
    pub fn weight(&self) -> u32 {
        self.exps.iter().map(|e| e.s).sum()
    }

    pub fn has(&self, s: Sym) -> bool {
        self.alpha.contains(&s)
    }

    /// `p | n_m` forced at position `m` (1-based); `d_1 = n_1`.
    pub fn n_div(&self, m: usize) -> bool {
        self.has(Sym::N(m as u8)) || (m == 1 && self.has(Sym::D(1)))
    }

    /// `p | (n_m - n_{m-1})` for `m >= 2` (`m = k+1` is the tail condition).
    pub fn d_div(&self, m: usize) -> bool {
        m >= 2 && self.has(Sym::D(m as u8))
    }

    pub fn validate(&self) -> Result<(), SumError> {
        let k = self.depth();
        if k == 0 || self.idx.len() != k {
            return Err(SumError::BadSpec(format!("{self}: need matching nonempty exponents and indices")));
        }
        if self.exps.iter().any(|e| e.s == 0) {
            return Err(SumError::BadSpec(format!("{self}: exponents must be positive")));
        }
        if self.exps[0].paren {
            return Err(SumError::BadSpec(format!("{self}: first position cannot be parenthesized")));
        }
        for a in &self.alpha {
            let ok = match *a {
                Sym::N(m) => m >= 1 && (m as usize) <= k,
                Sym::D(m) => m >= 1 && (m as usize) <= k + 1,
            };
            if !ok {
                return Err(SumError::BadSpec(format!("{self}: condition {a:?} out of range")));
            }
        }
        Ok(())
    }

    /// The first `m` positions, with the condition linking position `m+1` kept
    /// as a tail condition.  This is the partial function that the operator at
    /// position `m+1` acts on.
    pub fn prefix(&self, m: usize) -> SumSpec {
        let alpha = self
            .alpha
            .iter()
            .copied()
            .filter(|a| match *a {
                Sym::N(j) => (j as usize) <= m,
                Sym::D(j) => (j as usize) <= m + 1,
            })
            .collect();
        SumSpec {
            exps: self.exps[..m].to_vec(),
            idx: self.idx[..m].to_vec(),
            alpha,
            restrict_first: self.restrict_first,
            underlined: true,
            sup: 0,
        }
    }

    /// Canonical key with indices reduced mod `M`.
    pub fn key(&self, m: u64) -> SumSpec {
        let mut s = self.clone();
        for i in &mut s.idx {
            *i = padic_core::index_norm(m, *i) as i64;
        }
        s
    }
}

impl fmt::Display for SumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match (self.restrict_first, self.underlined) {
            (true, false) => "F",
            (true, true) => "_F",
            (false, false) => "G",
            (false, true) => "_G",
        };
        write!(f, "{name}")?;
        if self.sup > 0 {
            write!(f, "^({})", self.sup)?;
        }
        let exps: Vec<String> =
            self.exps.iter().map(|e| if e.paren { format!("({})", e.s) } else { e.s.to_string() }).collect();
        let idx: Vec<String> = self.idx.iter().map(|i| i.to_string()).collect();
        write!(f, "({};{}", exps.join(","), idx.join(","))?;
        if !self.alpha.is_empty() {
            let a: Vec<String> = self
                .alpha
                .iter()
                .map(|a| match a {
                    Sym::N(m) => format!("n{m}"),
                    Sym::D(m) => format!("d{m}"),
                })
                .collect();
            write!(f, ";{}", a.join(","))?;
        }
        write!(f, ")")
    }
}
