use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::WordError;

/// A word in the letters `e_0..e_M`, stored as letter indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(a: u8) -> Self {
        Word(vec![a])
    }

    pub fn from_letters(l: &[u8]) -> Self {
        Word(l.to_vec())
    }

    /// `e_0^n`.
    pub fn zeros(n: usize) -> Self {
        Word(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    /// Number of letters other than `e_0`.
    pub fn depth(&self) -> usize {
        self.0.iter().filter(|&&a| a != 0).count()
    }

    pub fn leading_zeros(&self) -> usize {
        self.0.iter().take_while(|&&a| a == 0).count()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(mut self, a: u8) -> Word {
        self.0.push(a);
        self
    }

    pub fn slice(&self, a: usize, b: usize) -> Word {
        Word(self.0[a..b].to_vec())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// Sorted multiset of letters, the grading preserved by shuffles.
    pub fn content(&self) -> Vec<u8> {
        let mut c = self.0.clone();
        c.sort_unstable();
        c
    }

    /// Parse the CLI grammar: whitespace-separated `e<k>` or `e<k>^<n>`.
    pub fn parse_checked(s: &str, m: u64) -> Result<Word, WordError> {
        let w: Word = s.parse()?;
        for &a in &w.0 {
            if a as u64 > m {
                return Err(WordError::Letter { letter: a as u32, m });
            }
        }
        Ok(w)
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WordError::Parse(s.to_string());
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            let body = tok.strip_prefix('e').ok_or_else(bad)?;
            let (letter, count) = match body.split_once('^') {
                Some((l, n)) => (l, n.parse::<usize>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let a: u8 = letter.parse().map_err(|_| bad())?;
            out.extend(std::iter::repeat(a).take(count));
        }
        Ok(Word(out))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let a = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == a {
                j += 1;
            }
            if a == 0 && j - i > 1 {
                parts.push(format!("e0^{}", j - i));
            } else {
                for _ in i..j {
                    parts.push(format!("e{a}"));
                }
            }
            i = j;
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Shuffle product of two words with multiplicities.
pub fn shuffle(u: &Word, v: &Word) -> Vec<(Word, u64)> {
    let mut acc: HashMap<Word, u64> = HashMap::new();
    let mut prefix = Vec::with_capacity(u.len() + v.len());
    fn rec(u: &[u8], v: &[u8], prefix: &mut Vec<u8>, acc: &mut HashMap<Word, u64>) {
        if u.is_empty() || v.is_empty() {
            let mut w = prefix.clone();
            w.extend_from_slice(u);
            w.extend_from_slice(v);
            *acc.entry(Word(w)).or_insert(0) += 1;
            return;
        }
        prefix.push(u[0]);
        rec(&u[1..], v, prefix, acc);
        prefix.pop();
        prefix.push(v[0]);
        rec(u, &v[1..], prefix, acc);
        prefix.pop();
    }
    rec(&u.0, &v.0, &mut prefix, &mut acc);
    let mut out: Vec<(Word, u64)> = acc.into_iter().collect();
    out.sort();
    out
}

/// All words over `e_0..e_m` of length `<= cap` and depth `<= max_depth`,
/// shortest first.
pub fn words_up_to(m: u8, cap: usize, max_depth: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..cap {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..=m {
                let x = w.clone().push(a);
                if x.depth() <= max_depth {
                    next.push(x);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w: Word = "e2 e0^1 e3 e0^2".parse().unwrap();
        assert_eq!(w.0, vec![2, 0, 3, 0, 0]);
        assert_eq!(w.to_string(), "e2 e0 e3 e0^2");
        assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
        assert!("f2".parse::<Word>().is_err());
        assert!(Word::parse_checked("e5", 3).is_err());
    }

    #[test]
    fn shuffle_counts() {
        let u = Word::from_letters(&[1, 2]);
        let v = Word::from_letters(&[3]);
        let s = shuffle(&u, &v);
        assert_eq!(s.len(), 3);
        assert_eq!(s.iter().map(|x| x.1).sum::<u64>(), 3);
        let a = Word::letter(1);
        assert_eq!(shuffle(&a, &a), vec![(Word::from_letters(&[1, 1]), 2)]);
    }
}
