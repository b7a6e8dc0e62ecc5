use std::sync::Arc;

use free_series::{shuffle, words_up_to, NCSeries, Word};
use frobenius_ode::*;
use iterated_sums::SumCtx;
use mzv_closed_forms::{build_g, Mzv};
use padic_core::{build_ring, Exec, Zq};

fn context(p: u64, m: u64) -> Arc<SumCtx> {
    Arc::new(SumCtx::new(Arc::new(build_ring(p, m, 40).unwrap())))
}

fn trivial_constants(ring: &Zq) -> Constants {
    Constants::new((0..ring.m()).map(|_| NCSeries::one(ring, 5)).collect())
}

fn built_constants(ctx: &Arc<SumCtx>, budget: u64, cap: usize) -> Constants {
    let z = Mzv::new(ctx.clone(), budget);
    let m = ctx.m() as u8;
    Constants::new((1..=m).map(|a| build_g(&z, a, cap, 4).unwrap().series).collect())
}

fn full(n: u64) -> Record {
    Record { full_upto: n, ..Default::default() }
}

#[test]
fn depth_one_coefficients_have_the_expected_closed_form() {
    for (p, m) in [(2u64, 3u64), (3, 4), (7, 3)] {
        let ctx = context(p, m);
        let ring = ctx.ring();
        let consts = trivial_constants(ring);
        let words: Vec<Word> = (0..=m as u8).map(Word::letter).collect();
        let sol = solve_gf(ring, &consts, &words, 300, &full(300), SolveOpts::default()).unwrap();
        for n in 1..=300u64 {
            assert!(sol.coeff(&Word::letter(0), n).unwrap().is_zero());
            for i in 1..=m as i64 {
                let a = sol.coeff(&Word::letter(i as u8), n).unwrap();
                if n % p == 0 {
                    assert!(a.is_zero(), "({p},{m}) n={n} i={i}");
                } else {
                    // p zeta^(-i_ n) / n
                    let u = ctx.maps().under(i) as i64;
                    let e = ring.div_int(&ring.mul_int(&ring.zeta_pow(-u * n as i64), p as i64), n as i64).unwrap();
                    assert!(ring.agree(&a, &e) >= ring.storage_digits() - 8, "({p},{m}) n={n} i={i}");
                }
            }
        }
    }
}

#[test]
fn schedule_and_execution_mode_do_not_change_the_solution() {
    let ctx = context(2, 3);
    let ring = ctx.ring();
    let consts = built_constants(&ctx, 4096, 4);
    let targets = words_up_to(3, 4, 2);
    let run = |opts| solve_gf(ring, &consts, &targets, 200, &full(200), opts).unwrap();
    let base = run(SolveOpts { exec: Exec::Sequential, reverse_schedule: false });
    for opts in [
        SolveOpts { exec: Exec::Sequential, reverse_schedule: true },
        SolveOpts { exec: Exec::Parallel, reverse_schedule: false },
        SolveOpts { exec: Exec::Parallel, reverse_schedule: true },
    ] {
        let other = run(opts);
        for w in base.words() {
            let a = base.stream(w, 200).unwrap();
            let b = other.stream(w, 200).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert_eq!(ring.agree(x, y), x.prec().min(y.prec()), "{w}");
            }
        }
    }
}

#[test]
fn solution_is_grouplike_degree_by_degree() {
    let ctx = context(2, 3);
    let ring = ctx.ring();
    let consts = built_constants(&ctx, 4096, 4);
    let words: Vec<Word> = words_up_to(3, 3, 3).into_iter().filter(|w| !w.is_empty()).collect();
    let n_max = 120;
    let sol = solve_gf(ring, &consts, &words, n_max, &full(n_max), SolveOpts::default()).unwrap();
    for (a, u) in words.iter().enumerate() {
        for v in &words[a..] {
            if u.len() + v.len() > 3 {
                continue;
            }
            let su = sol.stream(u, n_max).unwrap();
            let sv = sol.stream(v, n_max).unwrap();
            let sh = shuffle(u, v);
            for n in 0..=n_max as usize {
                let mut lhs = padic_core::ZqElem::zero();
                for k in 0..=n {
                    lhs = ring.add(&lhs, &ring.mul(&su[k], &sv[n - k]));
                }
                let mut rhs = padic_core::ZqElem::zero();
                for (w, c) in &sh {
                    rhs = ring.add(&rhs, &ring.mul_int(&sol.coeff(w, n as u64).unwrap(), *c as i64));
                }
                assert!(ring.agree(&lhs, &rhs) >= 20, "{u} x {v} at z^{n}");
            }
        }
    }
}

fn closed_targets(m: u8) -> Vec<Word> {
    let mut t = Vec::new();
    for k in 1..=m {
        for a in 0..=2 {
            for b in 0..=2 {
                t.push(Word::zeros(a).push(k).concat(&Word::zeros(b)));
            }
        }
    }
    for j in 1..=m {
        for k in (1..=m).filter(|&k| k != j) {
            for s in 1..=3 {
                for u in 1..=3 {
                    t.push(Word::letter(j).concat(&Word::zeros(u - 1)).push(k).concat(&Word::zeros(s - 1)));
                }
            }
        }
    }
    t.extend(padded_words(m, &[(1, 1), (1, 2), (2, 1), (2, 2)]));
    t
}

#[test]
fn solver_matches_closed_series() {
    for (p, m, budget) in [(2u64, 3u64, 16384u64), (7, 3, 117649)] {
        let ctx = context(p, m);
        let ring = ctx.ring();
        let consts = built_constants(&ctx, budget, 5);
        let targets = closed_targets(m as u8);
        let sol = solve_gf(ring, &consts, &targets, 2000, &full(2000), SolveOpts::default()).unwrap();
        let audits = match_closed_series(&ctx, &sol, &consts, 2000, 4).unwrap();
        let families = audits
            .iter()
            .map(|a| a.note.split(' ').next().unwrap().to_string())
            .collect::<std::collections::BTreeSet<_>>();
        assert_eq!(families.len(), 4, "{families:?}");
        for a in &audits {
            assert!(a.passed(), "({p},{m}) {} {:?} {}", a.word, a.worst_valuation, a.note);
        }
    }
}

#[test]
fn residue_identity_at_infinity() {
    let ctx = context(2, 3);
    let ring = ctx.ring();
    let consts = built_constants(&ctx, 16384, 3);
    let words: Vec<Word> = words_up_to(3, 2, 2);
    let n_max = 3 << 18;
    let mut rec = Record::default();
    rec.points.extend(ladder(3, 2, n_max));
    let sol = solve_gf(ring, &consts, &words, n_max, &rec, SolveOpts::default()).unwrap();
    let (ginf, cert) = infinity_series(ring, &sol, &words, 3).unwrap();
    assert!(cert >= 8, "{cert}");
    for a in residue_identity_check(ring, &ginf, &consts, 3, 4) {
        assert!(a.passed(), "{} {}", a.word, a.worst_valuation);
    }
    // and the length-2 values are the closed forms
    let z = Mzv::new(ctx.clone(), 16384);
    let v = z.gf_inf_pair(1, 2).unwrap();
    assert!(ring.agree(&v.value, &ginf.get(&Word::from_letters(&[1, 2]))) >= cert.min(v.certified_digits));
}

#[test]
fn audit_reports_serialize() {
    let a = OdeAudit {
        word: "e1 e2".into(),
        kind: AuditKind::ClosedFormMatch,
        worst_valuation: 7,
        threshold: 4,
        status: AuditStatus::Pass,
        note: String::new(),
    };
    let v: serde_json::Value = serde_json::to_value(&a).unwrap();
    assert_eq!(v["kind"], "closed-form-match");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["worst_valuation"], 7);
    assert_eq!(v["word"], "e1 e2");
}

#[test]
fn one_reading_survives_funprop() {
    let ctx = context(2, 3);
    let words = padded_words(3, &[(2, 2), (2, 3), (3, 2)]);
    let opts = AdjudicationOpts {
        budget: 16384,
        cap: 5,
        n_max: 6 * 4u64.pow(6),
        match_upto: 200,
        threshold: 4,
        solve: SolveOpts::default(),
    };
    let adj = adjudicate(&ctx, &words, &opts).unwrap();
    for o in &adj.outcomes {
        let pass = o.funprop.iter().filter(|f| f.audit.passed()).count();
        println!("{}: funprop {pass}/{}, shuffle failures {}", o.reading, o.funprop.len(), o.grouplike_failures);
    }
    assert_eq!(adj.survivor.as_deref(), Some("i-j,k-i"));
    let json = serde_json::to_string(&adj).unwrap();
    assert!(json.contains("\"survivor\":\"i-j,k-i\""));
}
