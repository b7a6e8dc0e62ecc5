use std::collections::HashMap;

use free_series::{is_grouplike, shuffle, shuffle_complete, words_up_to, NCSeries, Word};
use padic_core::{build_ring, Zq, ZqElem};
use proptest::prelude::*;

fn ring() -> Zq {
    build_ring(3, 4, 40).unwrap()
}

/// exp of a Lie-like element is group-like: exp(a e_1 + b e_2) for commuting
/// scalars gives coefficients a^k b^l / (k! l!) spread over shuffles.  Here we
/// build exp(a e_1) exp(b e_0) exp(c e_2), a product of group-like series.
fn grouplike_sample(r: &Zq, a: i64, b: i64, c: i64, cap: usize) -> NCSeries {
    let exp = |letter: u8, t: i64| {
        let mut s = NCSeries::one(r, cap);
        let mut term = r.one();
        for k in 1..=cap {
            term = r.div_int(&r.mul_int(&term, t), k as i64).unwrap();
            s.set(Word(vec![letter; k]), term);
        }
        s
    };
    exp(1, a).mul(r, &exp(0, b)).mul(r, &exp(2, c))
}

/// Same with a trailing `exp(-b e_0)`, so that `g[e_0] = 0`.
fn balanced_sample(r: &Zq, a: i64, b: i64, c: i64, cap: usize) -> NCSeries {
    let mut back = NCSeries::one(r, cap);
    let mut term = r.one();
    for k in 1..=cap {
        term = r.div_int(&r.mul_int(&term, -b), k as i64).unwrap();
        back.set(Word(vec![0; k]), term);
    }
    grouplike_sample(r, a, b, c, cap).mul(r, &back)
}

#[test]
fn products_of_exponentials_are_grouplike() {
    let r = ring();
    let g = grouplike_sample(&r, 3, 6, -9, 4);
    let rep = is_grouplike(&r, &g, 2, 4, 4, 30);
    assert!(rep.passed(), "{:?}", rep.failures);
    // perturb one coefficient
    let mut h = g.clone();
    let w = Word::from_letters(&[1, 2]);
    h.set(w.clone(), r.add(&h.get(&w), &r.one()));
    assert!(!is_grouplike(&r, &h, 2, 4, 4, 30).passed());
}

#[test]
fn inverse_and_antipode_agree_on_grouplike() {
    let r = ring();
    let g = grouplike_sample(&r, 3, 6, -9, 4);
    let inv = g.invert(&r);
    let ant = g.antipode(&r);
    for (w, v) in inv.iter() {
        assert!(r.agree(v, &ant.get(w)) >= 30, "{w}");
    }
    let one = g.mul(&r, &inv);
    assert!(r.agree(&one.get(&Word::empty()), &r.one()) >= 30);
    assert!(one.iter().filter(|(w, _)| !w.is_empty()).all(|(_, v)| v.val_lb() >= 30));
}

#[test]
fn completion_rebuilds_a_grouplike_series() {
    let r = ring();
    let g = balanced_sample(&r, 3, 6, -9, 5);
    let mut pinned = HashMap::new();
    for w in words_up_to(2, 5, 2) {
        if !w.is_empty() && w.leading_zeros() == 0 {
            pinned.insert(w.clone(), g.get(&w));
        }
    }
    let c = shuffle_complete(&r, 2, 5, &pinned, |_| false);
    assert!(c.uncovered.is_empty());
    for (w, v) in g.iter() {
        if w.depth() <= 2 {
            assert!(r.agree(v, &c.series.get(w)) >= 30, "{w}");
        }
    }
}

#[test]
fn completion_solves_missing_order_and_zero_fills_free_directions() {
    let r = ring();
    let g = balanced_sample(&r, 3, 6, -9, 4);
    // Supply depth 1 and only the e_1 ... e_2 order of depth 2.
    let mut pinned = HashMap::new();
    for (w, v) in g.iter() {
        if !w.is_empty()
            && w.leading_zeros() == 0
            && (w.depth() == 1 || (w.depth() == 2 && w.first() == Some(1) && w.0.contains(&2)))
        {
            pinned.insert(w.clone(), *v);
        }
    }
    let c = shuffle_complete(&r, 2, 4, &pinned, |_| false);
    let w = Word::from_letters(&[2, 0, 1]);
    assert!(c.derived.contains(&w));
    assert!(r.agree(&g.get(&w), &c.series.get(&w)) >= 30);
    // Repeated letters: some directions are genuinely free.
    assert!(c.uncovered.iter().any(|w| w.0.iter().filter(|&&a| a == 1).count() == 2));
    let rep = is_grouplike(&r, &c.series, 2, 4, 2, 30);
    assert!(rep.passed(), "{:?}", rep.failures);
}

proptest! {
    #[test]
    fn shuffle_multiplicities_are_binomial(a in 0usize..5, b in 0usize..5) {
        let u = Word(vec![1; a]);
        let v = Word(vec![2; b]);
        let total: u64 = shuffle(&u, &v).iter().map(|x| x.1).sum();
        let mut binom = 1u64;
        for k in 0..b as u64 {
            binom = binom * (a as u64 + b as u64 - k) / (k + 1);
        }
        prop_assert_eq!(total, binom);
    }

    #[test]
    fn word_display_roundtrips(letters in proptest::collection::vec(0u8..6, 0..8)) {
        let w = Word(letters);
        let back: Word = w.to_string().parse().unwrap_or_default();
        if !w.is_empty() {
            prop_assert_eq!(back, w);
        }
    }

    #[test]
    fn antipode_inverts_exponential_products(a in -20i64..20, b in -20i64..20, c in -20i64..20) {
        let r = ring();
        let g = grouplike_sample(&r, 3 * a, 3 * b, 3 * c, 3);
        let prod = g.mul(&r, &g.antipode(&r));
        for (w, v) in prod.iter() {
            let want = if w.is_empty() { r.one() } else { ZqElem::zero() };
            prop_assert!(r.agree(v, &want) >= 30);
        }
    }
}
