//! The index maps `i -> i bar` and `i -> i underbar` describing how frobenius
//! permutes the punctures `zeta^i`, and normalized index differences.

/// The unique `1 <= b <= M` with `b = p i mod M`; `bar(0) = 0`.
pub fn bar(p: u64, m: u64, i: u64) -> u64 {
    if i == 0 {
        return 0;
    }
    let r = (p % m) * (i % m) % m;
    if r == 0 {
        m
    } else {
        r
    }
}

/// The unique `1 <= u <= M` with `p u = i mod M`; `underbar(0) = 0`.
pub fn underbar(p: u64, m: u64, i: u64) -> u64 {
    if i == 0 {
        return 0;
    }
    (1..=m).find(|&u| (p % m) * u % m == i % m).expect("p invertible mod M")
}

/// Representative of `a - b mod M` in `1..=M`.
pub fn index_diff(m: u64, a: i64, b: i64) -> u64 {
    let r = (a - b).rem_euclid(m as i64) as u64;
    if r == 0 {
        m
    } else {
        r
    }
}

/// Representative of `a mod M` in `1..=M`.
pub fn index_norm(m: u64, a: i64) -> u64 {
    index_diff(m, a, 0)
}

/// Precomputed index maps for one `(p, M)`.
#[derive(Clone, Debug)]
pub struct IndexMaps {
    m: u64,
    under: Vec<u64>,
    over: Vec<u64>,
}

impl IndexMaps {
    pub fn new(p: u64, m: u64) -> Self {
        let under = (0..=m).map(|i| underbar(p, m, i)).collect();
        let over = (0..=m).map(|i| bar(p, m, i)).collect();
        IndexMaps { m, under, over }
    }

    /// `underbar` of any integer, read modulo `M` (with `0 -> 0`).
    #[inline]
    pub fn under(&self, i: i64) -> u64 {
        let r = i.rem_euclid(self.m as i64) as u64;
        if r == 0 {
            // multiples of M: 0 stays 0 and M maps to M, both = 0 mod M
            return self.under[self.m as usize] % self.m;
        }
        self.under[r as usize]
    }

    #[inline]
    pub fn bar(&self, i: i64) -> u64 {
        let r = i.rem_euclid(self.m as i64) as u64;
        if r == 0 {
            return self.over[self.m as usize] % self.m;
        }
        self.over[r as usize]
    }

    pub fn m(&self) -> u64 {
        self.m
    }
}
