//! Degree-by-degree solution of
//! `dG = (sum_i e_i F*w_i) G - G (sum_i p C_i w_(i_))`, `G(0) = 1`,
//! with `C_i = g_i^-1 e_i g_i`, as a power series in `z`.
//!
//! Writing `a_n[w]` for the coefficient of `z^n` in `G[w]`, the coefficient of
//! `z^(n-1) dz` gives
//!
//! ```text
//! n a_n[w] = p (a_n[w'] if w = e_0 w') - p (a_n[w''] if w = w'' e_0)
//!          - p Q_m[w'](n)                       if w = e_m w', m >= 1
//!          + p sum_a sum_(w = x u, u nonempty) C_a[u] P_a[x](n)
//! ```
//!
//! where `Q_m[w'](n) = sum_(k>=1) zeta^(-mk) a_(n-pk)[w']` comes from
//! `F*w_m = -p sum zeta^(-m(k+1)) z^(p(k+1)-1) dz` and
//! `P_a[x](n) = sum_(k>=1) zeta^(-a_ k) a_(n-k)[x]` from
//! `w_(a_) = -sum zeta^(-a_(k+1)) z^k dz`.  Both satisfy one-step recursions,
//! so only the last `p` layers are kept.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use free_series::{NCSeries, Word};
use padic_core::{Exec, IndexMaps, Zq, ZqElem};

use crate::OdeError;

/// `C_a = g_a^-1 e_a g_a` on demand, with the inverse taken as the antipode.
pub struct Constants {
    gs: Vec<NCSeries>,
}

impl Constants {
    /// `gs[a - 1]` is `g_a`.
    pub fn new(gs: Vec<NCSeries>) -> Self {
        Constants { gs }
    }

    pub fn m(&self) -> usize {
        self.gs.len()
    }

    pub fn g(&self, a: u8) -> &NCSeries {
        &self.gs[a as usize - 1]
    }

    /// `g_a^-1[x] = (-1)^|x| g_a[reverse x]`.
    pub fn g_inv(&self, ring: &Zq, a: u8, x: &Word) -> ZqElem {
        let v = self.g(a).get(&x.reversed());
        if x.len() % 2 == 1 {
            ring.neg(&v)
        } else {
            v
        }
    }

    /// `C_a[u] = sum over u = x e_a y of g_a^-1[x] g_a[y]`.
    pub fn conj(&self, ring: &Zq, a: u8, u: &Word) -> ZqElem {
        let l = u.letters();
        let mut acc = ZqElem::zero();
        for (pos, &b) in l.iter().enumerate() {
            if b != a {
                continue;
            }
            let x = u.slice(0, pos);
            let y = u.slice(pos + 1, l.len());
            acc = ring.add(&acc, &ring.mul(&self.g_inv(ring, a, &x), &self.g(a).get(&y)));
        }
        acc
    }
}

/// Which coefficients to keep.
#[derive(Clone, Debug, Default)]
pub struct Record {
    /// Every degree `0..=full_upto`.
    pub full_upto: u64,
    /// Isolated degrees, typically ladder points.
    pub points: BTreeSet<u64>,
}

/// Recorded coefficients of the solution on a factor-closed set of words.
pub struct FormSeries {
    pub n_max: u64,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    full: Vec<Vec<ZqElem>>,
    points: BTreeMap<u64, Vec<ZqElem>>,
}

impl FormSeries {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn has_word(&self, w: &Word) -> bool {
        self.index.contains_key(w)
    }

    /// `a_n[w]`, if `w` was solved and degree `n` recorded.
    pub fn coeff(&self, w: &Word, n: u64) -> Option<ZqElem> {
        let id = *self.index.get(w)?;
        if let Some(layer) = self.full.get(n as usize) {
            return Some(layer[id]);
        }
        self.points.get(&n).map(|layer| layer[id])
    }

    /// `a_0[w] .. a_upto[w]` from the fully recorded range.
    pub fn stream(&self, w: &Word, upto: u64) -> Option<Vec<ZqElem>> {
        let id = *self.index.get(w)?;
        if upto as usize >= self.full.len() {
            return None;
        }
        Some(self.full[..=upto as usize].iter().map(|l| l[id]).collect())
    }
}

/// All factors of the targets, the empty word first, then by length.
pub fn factor_closure(targets: &[Word]) -> Vec<Word> {
    let mut set = BTreeSet::new();
    for w in targets {
        let n = w.len();
        for a in 0..=n {
            for b in a..=n {
                set.insert(w.slice(a, b));
            }
        }
    }
    set.insert(Word::empty());
    let mut out: Vec<Word> = set.into_iter().collect();
    out.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
    out
}

struct Plan {
    lead0: Option<usize>,
    trail0: Option<usize>,
    /// Slot in the `Q` state and the letter `m`.
    q: Option<(usize, usize)>,
    /// `(a - 1, x, C_a[u])` for each split `w = x u`.
    splits: Vec<(usize, usize, ZqElem)>,
}

/// Solver options beyond the problem data.
#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOpts {
    pub exec: Exec,
    /// Process words of equal length in reverse order (results must not change).
    pub reverse_schedule: bool,
}

/// Solve on the factor closure of `targets` up to degree `n_max`.
pub fn solve_gf(
    ring: &Zq,
    constants: &Constants,
    targets: &[Word],
    n_max: u64,
    record: &Record,
    opts: SolveOpts,
) -> Result<FormSeries, OdeError> {
    let p = ring.p();
    let m = ring.m() as usize;
    if constants.m() != m {
        return Err(OdeError::Config(format!("{} constant series for M = {m}", constants.m())));
    }
    if let Some(bad) = targets.iter().flat_map(|w| w.letters()).find(|&&a| a as usize > m) {
        return Err(OdeError::Config(format!("letter e{bad} outside e0..e{m}")));
    }
    let maps = IndexMaps::new(p, m as u64);
    let words = factor_closure(targets);
    let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let nw = words.len();

    let mut q_slots: Vec<(usize, usize)> = Vec::new();
    let mut plans = Vec::with_capacity(nw);
    for w in &words {
        let l = w.letters();
        let mut plan = Plan { lead0: None, trail0: None, q: None, splits: Vec::new() };
        if let Some(&first) = l.first() {
            let rest = index[&w.slice(1, l.len())];
            if first == 0 {
                plan.lead0 = Some(rest);
            } else {
                plan.q = Some((q_slots.len(), first as usize));
                q_slots.push((first as usize, rest));
            }
            if *l.last().expect("nonempty") == 0 {
                plan.trail0 = Some(index[&w.slice(0, l.len() - 1)]);
            }
            for cut in 0..l.len() {
                let x = index[&w.slice(0, cut)];
                let u = w.slice(cut, l.len());
                for a in 1..=m as u8 {
                    let c = constants.conj(ring, a, &u);
                    if !c.is_zero() {
                        plan.splits.push((a as usize - 1, x, c));
                    }
                }
            }
        }
        plans.push(plan);
    }

    let z_under: Vec<ZqElem> = (1..=m as i64).map(|a| ring.zeta_pow(-(maps.under(a) as i64))).collect();
    let z_raw: Vec<ZqElem> = (1..=m as i64).map(|a| ring.zeta_pow(-a)).collect();
    let pp = ring.from_i64(p as i64);

    // Ring buffers indexed by n mod p: before degree n is written they hold
    // degree n - p.
    let mut a_hist = vec![vec![ZqElem::zero(); nw]; p as usize];
    a_hist[0][0] = ring.one();
    let mut q_hist = vec![vec![ZqElem::zero(); q_slots.len()]; p as usize];
    let mut a_prev = a_hist[0].clone();
    let mut p_state = vec![vec![ZqElem::zero(); nw]; m];

    let mut full = Vec::new();
    if record.full_upto > 0 || record.points.contains(&0) {
        full.push(a_prev.clone());
    }
    let mut points = BTreeMap::new();

    // Groups of equal length, in scheduling order.
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (id, w) in words.iter().enumerate().skip(1) {
        if groups.last().map_or(true, |g: &Vec<usize>| words[g[0]].len() != w.len()) {
            groups.push(Vec::new());
        }
        groups.last_mut().expect("group").push(id);
    }
    if opts.reverse_schedule {
        for g in &mut groups {
            g.reverse();
        }
    }

    for n in 1..=n_max {
        let slot = (n % p) as usize;
        for (a, st) in p_state.iter_mut().enumerate() {
            for (x, v) in st.iter_mut().enumerate() {
                *v = ring.mul(&z_under[a], &ring.add(&a_prev[x], v));
            }
        }
        let q_now: Vec<ZqElem> = q_slots
            .iter()
            .enumerate()
            .map(|(s, &(mm, rest))| ring.mul(&z_raw[mm - 1], &ring.add(&a_hist[slot][rest], &q_hist[slot][s])))
            .collect();

        let inv_n = ring.scalar_inv(ring.scalar_i128(n as i128));
        let mut a_now = vec![ZqElem::zero(); nw];
        for g in &groups {
            let vals = opts.exec.map(g, |&id| {
                let plan = &plans[id];
                let mut acc = ZqElem::zero();
                for &(a, x, ref c) in &plan.splits {
                    acc = ring.add(&acc, &ring.mul(c, &p_state[a][x]));
                }
                if let Some((s, _)) = plan.q {
                    acc = ring.sub(&acc, &q_now[s]);
                }
                if let Some(r) = plan.lead0 {
                    acc = ring.add(&acc, &a_now[r]);
                }
                if let Some(r) = plan.trail0 {
                    acc = ring.sub(&acc, &a_now[r]);
                }
                ring.mul_scalar(&ring.mul(&acc, &pp), inv_n)
            });
            for (&id, v) in g.iter().zip(vals) {
                a_now[id] = v;
            }
        }

        if n <= record.full_upto {
            full.push(a_now.clone());
        } else if record.points.contains(&n) {
            points.insert(n, a_now.clone());
        }
        a_hist[slot].clone_from(&a_now);
        q_hist[slot] = q_now;
        a_prev = a_now;
    }

    Ok(FormSeries { n_max, words, index, full, points })
}
