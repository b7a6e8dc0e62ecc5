use std::sync::Arc;

use free_series::Word;
use iterated_sums::SumCtx;
use mzv_closed_forms::{build_g, Mzv, MzvError, MzvQuery, Reading};
use padic_core::build_ring;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CONFIGS: [(u64, u64, u64); 3] = [(2, 3, 16384), (3, 4, 59049), (7, 3, 117649)];

fn engine(p: u64, m: u64, budget: u64) -> Mzv {
    let ring = Arc::new(build_ring(p, m, 40).unwrap());
    Mzv::new(Arc::new(SumCtx::new(ring)), budget)
}

fn word(s: &str) -> Word {
    Word::parse_checked(s, 9).unwrap()
}

fn triples(m: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            for k in 1..=m {
                if i != j && j != k && i != k {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

#[test]
fn built_series_are_grouplike() {
    for (p, m, budget) in CONFIGS {
        let z = engine(p, m, budget);
        for base in 1..=m as u8 {
            let g = build_g(&z, base, 4, 4).unwrap();
            println!(
                "({p},{m}) g_{base}: {} pinned, {} derived, {} pairs, min agreement {}",
                g.pinned.len(),
                g.derived.len(),
                g.audit.pairs_checked,
                g.audit.min_agreement
            );
            assert!(g.audit.passed(), "{:?}", g.audit.failures);
            assert!(g.certified_digits >= 4);
            for n in 1..=4 {
                assert!(g.series.get(&Word::zeros(n)).is_zero());
            }
            assert!(g.series.get(&Word::letter(base)).is_zero());
        }
    }
}

#[test]
fn rejected_reading_breaks_the_shuffle_relations() {
    let z = engine(2, 3, 16384).with_reading(Reading::KMinusJ);
    let g = build_g(&z, 1, 4, 4).unwrap();
    assert!(!g.audit.passed());
}

#[test]
fn trivial_coefficients_vanish() {
    let z = engine(3, 4, 59049);
    for base in 1..=4u8 {
        for n in 1..=5 {
            let v = z.compute(&MzvQuery::new(base, Word::zeros(n))).unwrap();
            assert!(v.value.is_zero());
        }
        let v = z.compute(&MzvQuery::new(base, Word::letter(base))).unwrap();
        assert!(v.value.is_zero());
        let v = z.compute(&MzvQuery::new(base, Word::empty())).unwrap();
        assert_eq!(z.ring().agree(&v.value, &z.ring().one()), z.ring().storage_digits());
    }
}

fn random_word(rng: &mut ChaCha8Rng, m: u8) -> Word {
    let letter = |rng: &mut ChaCha8Rng| rng.gen_range(1..=m);
    match rng.gen_range(0..3) {
        0 => {
            let a = rng.gen_range(0..3);
            let b = rng.gen_range(0..3);
            Word::zeros(a).push(letter(rng)).concat(&Word::zeros(b))
        }
        1 => Word::from_letters(&[letter(rng), letter(rng)]),
        _ => {
            let j = letter(rng);
            let mut k = letter(rng);
            while k == j {
                k = letter(rng);
            }
            let s = rng.gen_range(1..=3);
            let t = rng.gen_range(1..=3);
            Word::letter(j).concat(&Word::zeros(s - 1)).push(k).concat(&Word::zeros(t - 1))
        }
    }
}

#[test]
fn rotation_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, m, budget) in CONFIGS {
        let z = engine(p, m, budget);
        let mut checked = 0;
        while checked < 50 {
            let base = rng.gen_range(1..=m as u8);
            let q = MzvQuery::new(base, random_word(&mut rng, m as u8));
            let a = match z.compute(&q) {
                Ok(v) => v,
                Err(MzvError::Domain(_)) => continue,
                Err(e) => panic!("{e}"),
            };
            let l = rng.gen_range(1..m);
            let b = z.compute(&q.rotate(l, m)).unwrap();
            let need = a.certified_digits.min(b.certified_digits);
            assert!(z.ring().agree(&a.value, &b.value) >= need, "{q:?} by {l}");
            checked += 1;
        }
    }
}

#[test]
fn length_two_routing_agrees_with_the_middle_formula() {
    for (p, m, budget) in CONFIGS {
        let z = engine(p, m, budget);
        for (i, j, k) in triples(m as i64) {
            let a = z.g_pair_distinct(i, j, k).unwrap();
            let b = z.g_mid_formula(i, j, k, 1).unwrap();
            let ag = z.ring().agree(&a.value, &b.value);
            let need = a.certified_digits.min(b.certified_digits);
            assert!(ag >= need && need >= 4, "({p},{m}) {i}{j}{k}: {ag} < {need}");
        }
    }
}

#[test]
fn repeated_letter_pair_is_half_square_minus_infinity_value() {
    for (p, m, budget) in CONFIGS {
        let z = engine(p, m, budget);
        let r = z.ring();
        for i in 1..=m as i64 {
            for j in (1..=m as i64).filter(|&j| j != i) {
                let same = z.g_pair_same(i, j).unwrap();
                let g = z.g_single(j, i).unwrap();
                let inf = z.gf_inf_pair(i, j).unwrap();
                let composed = r.sub(&r.div_int(&r.mul(&g.value, &g.value), 2).unwrap(), &inf.value);
                let need = same.certified_digits.min(inf.certified_digits);
                assert!(r.agree(&same.value, &composed) >= need);
                // and g_F(infinity)[e_i e_j] = -g_j[e_0 e_i]
                let d = z.depth1_alt(j, i, 2).unwrap();
                assert!(r.agree(&inf.value, &r.neg(&d.value)) >= need);
            }
        }
    }
}

#[test]
fn off_stratum_words_are_refused() {
    let z = engine(2, 3, 16384);
    for w in ["e1 e0 e1", "e2 e0 e2 e0", "e0 e1 e2", "e1 e2 e3", "e1 e1 e0"] {
        let r = z.compute(&MzvQuery::new(1, word(w)));
        assert!(matches!(r, Err(MzvError::Domain(_))), "{w}");
    }
    assert!(matches!(z.g_main(1, 2, 3, 1, 2), Err(MzvError::Domain(_))));
    assert!(matches!(z.g_main(1, 1, 3, 2, 2), Err(MzvError::Domain(_))));
    assert!(matches!(z.depth1_alt(2, 2, 2), Err(MzvError::Domain(_))));
    assert!(matches!(z.compute(&MzvQuery::new(4, word("e1"))), Err(MzvError::Domain(_))));
}

#[test]
fn certificates_are_stable_under_a_longer_ladder() {
    let short = engine(2, 3, 4u64.pow(7));
    let long = engine(2, 3, 4u64.pow(8));
    let r = short.ring();
    let pairs = [
        (short.g_single_limit(1, 2).unwrap(), long.g_single_limit(1, 2).unwrap()),
        (short.depth1_alt(1, 2, 3).unwrap(), long.depth1_alt(1, 2, 3).unwrap()),
        (short.g_main(1, 2, 3, 2, 2).unwrap(), long.g_main(1, 2, 3, 2, 2).unwrap()),
    ];
    for (a, b) in pairs {
        assert!(a.certified_digits >= 4);
        assert!(b.certified_digits >= a.certified_digits);
        assert!(r.agree(&a.value, &b.value) >= a.certified_digits);
    }
}

#[test]
fn values_carry_provenance_and_ingredients() {
    let z = engine(2, 3, 16384);
    let v = z.g_main(1, 2, 3, 2, 3).unwrap();
    assert_eq!(v.provenance[0], "g_main[i-j,k-i]");
    assert!(!v.ingredients.is_empty());
    assert!(v.certified_digits >= 4);
    for ing in z.consumed() {
        assert!(ing.certified_digits >= 4, "{}", ing.name);
        assert!(ing.history.windows(2).all(|w| w[0] <= w[1]), "{} {:?}", ing.name, ing.history);
    }
}
