//! Shared state for one `(p, M)`: the ring, index maps, power-sum tables and
//! caches of class series and inverse tables.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use padic_core::{faulhaber_poly, Exec, IndexMaps, IntInverses, Zq, ZqElem};

use crate::kernel::ClassSeries;
use crate::{SumError, SumSpec};

pub struct SumCtx {
    ring: Arc<Zq>,
    maps: IndexMaps,
    exec: Exec,
    degree: usize,
    /// `faulhaber[j][e]`: coefficient of `K^e` in `sum_{0 <= m < K} m^j`.
    faulhaber: Vec<Vec<ZqElem>>,
    kernels: Mutex<HashMap<SumSpec, Arc<ClassSeries>>>,
    inverses: Mutex<Arc<IntInverses>>,
}

fn ceil_log(p: u64, n: u64) -> usize {
    let mut k = 0;
    let mut x = 1u64;
    while x < n {
        x = x.saturating_mul(p);
        k += 1;
    }
    k
}

impl SumCtx {
    pub fn new(ring: Arc<Zq>) -> Self {
        Self::with_exec(ring, Exec::default())
    }

    pub fn with_exec(ring: Arc<Zq>, exec: Exec) -> Self {
        let p = ring.p();
        let r = ring.storage_digits() as usize;
        // Enough terms that the tail stays below the storage width after a few
        // summation levels, each of which costs about 2 + log_p(D) digits of decay.
        let degree = r + 4 * (2 + ceil_log(p, 2 * r as u64)) + 8;
        let faulhaber =
            (0..=degree).map(|j| faulhaber_poly(j as u32).iter().map(|c| ring.from_rational(c)).collect()).collect();
        let maps = IndexMaps::new(p, ring.m());
        let inverses = Mutex::new(Arc::new(IntInverses::new(&ring, 1024)));
        SumCtx { ring, maps, exec, degree, faulhaber, kernels: Mutex::new(HashMap::new()), inverses }
    }

    pub fn ring(&self) -> &Zq {
        &self.ring
    }

    pub fn ring_arc(&self) -> Arc<Zq> {
        self.ring.clone()
    }

    pub fn maps(&self) -> &IndexMaps {
        &self.maps
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    pub fn p(&self) -> u64 {
        self.ring.p()
    }

    pub fn m(&self) -> u64 {
        self.ring.m()
    }

    pub fn pm(&self) -> u64 {
        self.ring.p() * self.ring.m()
    }

    /// Truncation degree of the class series.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub(crate) fn faulhaber(&self, j: usize) -> &[ZqElem] {
        &self.faulhaber[j]
    }

    /// `ceil(log_p(n))`, used in truncation bounds.
    pub(crate) fn log_p(&self, n: u64) -> usize {
        ceil_log(self.p(), n)
    }

    /// The residue class `1..=pM` of `n`.
    pub fn class_of(&self, n: u64) -> u64 {
        let pm = self.pm();
        match n % pm {
            0 => pm,
            r => r,
        }
    }

    /// The class whose Taylor constants the superscript operator removes at
    /// `n`: the class of `n` when `p | n`, else the class divisible by `p`
    /// congruent to `n` mod `M`.
    pub fn paren_slot(&self, n: u64) -> u64 {
        let p = self.p();
        if n % p == 0 {
            return self.class_of(n);
        }
        let m = self.m();
        let u = match self.maps().under((n % m) as i64) {
            0 => m,
            u => u,
        };
        p * u
    }

    /// The class of `q^N` for every `N >= 1`: divisible by `p`, `1 mod M`.
    pub fn q_class(&self) -> u64 {
        self.class_of(self.ring.q() as u64 % self.pm())
    }

    /// Inverse table covering `1..=n`.
    pub fn inverses(&self, n: usize) -> Arc<IntInverses> {
        let mut g = self.inverses.lock().expect("inverse cache poisoned");
        if g.len() < n {
            *g = Arc::new(IntInverses::new(&self.ring, n.max(2 * g.len())));
        }
        g.clone()
    }

    /// Class series of the (underlined, unsuperscripted) sum, cached.
    pub fn kernel(&self, spec: &SumSpec) -> Result<Arc<ClassSeries>, SumError> {
        let mut key = spec.key(self.m());
        key.underlined = true;
        key.sup = 0;
        if let Some(k) = self.kernels.lock().expect("kernel cache poisoned").get(&key) {
            return Ok(k.clone());
        }
        let k = Arc::new(ClassSeries::build(self, &key)?);
        self.kernels.lock().expect("kernel cache poisoned").insert(key, k.clone());
        Ok(k)
    }
}
