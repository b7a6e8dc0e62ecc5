//! Verification suites.  Each one recomputes something two ways, or checks a
//! structural identity, and reports one [`Check`] per comparison.

use std::collections::BTreeSet;
use std::sync::Arc;

use free_series::{words_up_to, Word};
use frobenius_ode::{
    adjudicate, infinity_series, ladder, match_closed_series, padded_words, residue_identity_check, solve_gf,
    AdjudicationOpts, Constants, Record, SolveOpts,
};
use iterated_sums::{eval_all, eval_at, x_limit, Exp, SumCtx, SumSpec, Sym};
use mzv_closed_forms::{build_g, Mzv};
use num_bigint::BigInt;
use num_rational::BigRational;
use padic_core::rational::rational_vp;
use padic_core::{bernoulli, faulhaber_sum, Zq, ZqElem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Job;
use crate::output::{Check, SuiteReport};
use crate::table::table_queries;
use crate::CliError;

pub const SUITES: [&str; 7] = ["padic", "sums", "shuffle", "dual", "ode-match", "residue", "funprop"];

/// Expand `all`, reject unknown names, keep the canonical order.
pub fn select(names: &[String]) -> Result<Vec<&'static str>, CliError> {
    let names: Vec<&str> = names.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
    if names.is_empty() {
        return Err(CliError::Usage(format!("no suite selected; choose from {} or all", SUITES.join(", "))));
    }
    let mut chosen = BTreeSet::new();
    for n in names {
        if n == "all" {
            chosen.extend(0..SUITES.len());
        } else {
            let i =
                SUITES.iter().position(|s| *s == n).ok_or_else(|| CliError::Usage(format!("unknown suite {n:?}")))?;
            chosen.insert(i);
        }
    }
    Ok(chosen.into_iter().map(|i| SUITES[i]).collect())
}

pub fn run(job: &Job, suite: &str) -> SuiteReport {
    let res = match suite {
        "padic" => padic(job),
        "sums" => sums(job),
        "shuffle" => shuffle(job),
        "dual" => dual(job),
        "ode-match" => ode_match(job),
        "residue" => residue(job),
        "funprop" => funprop(job),
        _ => Err(CliError::Usage(format!("unknown suite {suite:?}"))),
    };
    let checks = res.unwrap_or_else(|e| vec![Check::flag("error", false, e.to_string())]);
    SuiteReport::new(suite, checks)
}

fn agree_check(job: &Job, name: String, a: &ZqElem, ca: i32, b: &ZqElem, cb: i32) -> Check {
    let need = ca.min(cb);
    let ag = job.ring.agree(a, b);
    let passed = ag >= need && need >= job.opts.threshold;
    Check { name, passed, digits: Some(need.min(ag)), detail: format!("agree {ag}, certified {ca} and {cb}") }
}

fn padic(job: &Job) -> Result<Vec<Check>, CliError> {
    let r = &job.ring;
    let m = job.m();
    let mut out = Vec::new();

    let full = r.agree(&r.zeta_pow(m as i64), &r.one()) >= r.storage_digits();
    let proper = (1..m).filter(|d| m % d == 0).all(|d| r.sub(&r.zeta_pow(d as i64), &r.one()).valuation() == Some(0));
    out.push(Check::flag("zeta has order M", full && proper, format!("f = {}", r.f())));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = i32::MAX;
    for _ in 0..64 {
        let mut el = || {
            let c: Vec<i128> = (0..r.f()).map(|_| rng.gen_range(-1_000_000_000i128..1_000_000_000)).collect();
            r.from_coeffs(&c)
        };
        let (a, b, c) = (el(), el(), el());
        let pairs = [
            (r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c))),
            (r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c))),
            (r.mul(&a, &b), r.mul(&b, &a)),
            (r.add(&r.sub(&a, &b), &b), a),
        ];
        for (x, y) in pairs {
            worst = worst.min(r.agree(&x, &y) - x.prec().min(y.prec()));
        }
        if a.valuation() == Some(0) {
            let inv = r.inv(&a)?;
            worst = worst.min(r.agree(&r.mul(&a, &inv), &r.one()) - inv.prec().min(r.storage_digits()));
        }
    }
    out.push(Check::flag("ring axioms on random elements", worst >= 0, format!("worst shortfall {worst}")));

    let mut bad = Vec::new();
    for j in 0..=8u32 {
        let mut acc = BigInt::from(0);
        for n in 1..=1000u64 {
            acc += BigInt::from(n).pow(j);
            if faulhaber_sum(j, n) != BigRational::from_integer(acc.clone()) {
                bad.push((j, n));
            }
        }
    }
    out.push(Check::flag("Faulhaber sums against brute force, j <= 8, n <= 1000", bad.is_empty(), format!("{bad:?}")));

    let low: Vec<(usize, i64)> =
        (2..=30).step_by(2).map(|k| (k, rational_vp(&bernoulli(k), job.opts.p))).filter(|&(_, v)| v < -1).collect();
    out.push(Check::flag("v_p(B_k) >= -1 for even k <= 30", low.is_empty(), format!("{low:?}")));

    let z = job.engine();
    for j in 1..=m as i64 {
        for i in (1..=m as i64).filter(|&i| i != j) {
            let a = z.g_single(j, i)?;
            let b = z.g_single_limit(j, i)?;
            let cap = r.cap();
            out.push(agree_check(
                job,
                format!("g_{j}[e{i}]: logarithm vs limit"),
                &a.value,
                cap,
                &b.value,
                b.certified_digits,
            ));
        }
    }
    Ok(out)
}

/// `F` straight from its definition as nested loops, for specs with no
/// superscripts.
pub fn naive_sum(ctx: &SumCtx, spec: &SumSpec, n: u64) -> ZqElem {
    fn partial(ctx: &SumCtx, spec: &SumSpec, level: usize, x: u64) -> ZqElem {
        let ring = ctx.ring();
        let p = ctx.p();
        if level == 0 {
            return ring.one();
        }
        let tail_d = spec.has(Sym::D(level as u8 + 1));
        let mut acc = ZqElem::zero();
        for n in 1..x {
            if (tail_d && (x - n) % p != 0)
                || (spec.n_div(level) && n % p != 0)
                || (level == 1 && spec.restrict_first && n % p == 0)
            {
                continue;
            }
            let mut t = partial(ctx, spec, level - 1, n);
            for _ in 0..spec.exps[level - 1].s {
                t = ring.div_int(&t, n as i64).expect("n is a unit here or the sum was restricted");
            }
            let u = ctx.maps().under(spec.idx[level - 1]) as i64;
            acc = ring.add(&acc, &ring.mul(&t, &ring.zeta_pow(u * n as i64)));
        }
        acc
    }
    let v = partial(ctx, spec, spec.depth(), n);
    if spec.underlined {
        v
    } else {
        ctx.ring().mul_p_pow(&v, spec.weight() as i32)
    }
}

/// Random spec with plain exponents: depth `<= 3`, arbitrary divisibility
/// conditions, every family flag.
pub fn random_plain_spec(rng: &mut ChaCha8Rng, m: u64) -> SumSpec {
    let k = rng.gen_range(1..=3usize);
    let exps: Vec<Exp> = (0..k).map(|_| Exp::plain(rng.gen_range(1..=3))).collect();
    let idx: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=2 * m as i64)).collect();
    let mut alpha = Vec::new();
    for l in 1..=k as u8 {
        if rng.gen_bool(0.25) {
            alpha.push(Sym::N(l));
        }
        if rng.gen_bool(0.25) {
            alpha.push(Sym::D(l));
        }
    }
    if rng.gen_bool(0.2) {
        alpha.push(Sym::D(k as u8 + 1));
    }
    let mut s = SumSpec::f(&exps, &idx).with_alpha(&alpha);
    if rng.gen_bool(0.3) {
        s = s.unrestricted();
    }
    if rng.gen_bool(0.2) {
        s = s.underlined();
    }
    s
}

fn same(ring: &Zq, a: &ZqElem, b: &ZqElem) -> bool {
    ring.agree(a, b) >= a.prec().min(b.prec())
}

fn sums(job: &Job) -> Result<Vec<Check>, CliError> {
    let ctx = &job.ctx;
    let r = &job.ring;
    let m = job.m();
    let p = job.opts.p;
    let mut out = Vec::new();

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut bad = Vec::new();
    for _ in 0..200 {
        let spec = random_plain_spec(&mut rng, m);
        let n = rng.gen_range(2..=60u64);
        let fast = eval_at(ctx, &spec, &[n])?[0];
        if !same(r, &fast, &naive_sum(ctx, &spec, n)) {
            bad.push(format!("{spec} at {n}"));
        }
    }
    out.push(Check::flag("prefix-sum sweep vs nested loops, 200 random sums", bad.is_empty(), bad.join("; ")));

    let specs = [
        SumSpec::f1(2, 1),
        SumSpec::f2(1, Exp::paren(1), 2, 1),
        SumSpec::f2(2, Exp::plain(1), 1, 3).with_alpha(&[Sym::D(2)]),
    ];
    for spec in &specs {
        let k = ctx.kernel(spec)?;
        let vals = eval_all(ctx, &spec.clone().underlined(), 200)?;
        let worst = (1..=200u64)
            .map(|n| r.agree(&k.eval(r, n), &vals[n as usize]) - vals[n as usize].prec().min(k.eval(r, n).prec()))
            .min()
            .unwrap_or(0);
        out.push(Check::flag(
            format!("class series vs sweep for {spec}"),
            worst >= -2,
            format!("worst shortfall {worst}"),
        ));
    }

    let z = job.engine();
    let q = r.q() as u64;
    for t in 1..=3u32 {
        for i in 1..m as i64 {
            for n in [p * q, 2 * p * q, q * q] {
                let cf = z.f_closed_form(t, i, n)?;
                let direct = eval_at(ctx, &SumSpec::f1(t, i), &[n])?[0];
                let need = cf.certified_digits.min(cf.truncation);
                out.push(agree_check(
                    job,
                    format!("F({t};{i})({n}) closed form"),
                    &cf.value,
                    need,
                    &direct,
                    direct.prec(),
                ));
            }
        }
    }

    for t in 1..=3u32 {
        let lim = x_limit(ctx, &SumSpec::f1(t, m as i64), job.budget)?;
        let zero = lim.value.valuation().map_or(lim.value.prec(), |v| v);
        out.push(Check::digits(
            format!("X({t};M) vanishes"),
            zero,
            r.cap(),
            format!("certified {}", lim.certified_digits),
        ));
    }

    // Every limit consumed by the depth <= 2 table.
    for q in table_queries(m as u8, job.opts.word_cap.min(4)) {
        z.compute(&q)?;
    }
    for j in 1..=m as i64 {
        for i in (1..=m as i64).filter(|&i| i != j) {
            for s in 1..=3 {
                z.depth1_alt(j, i, s)?;
            }
        }
    }
    for ing in z.consumed().iter().filter(|g| g.name.starts_with('X')) {
        let mono = ing.history.windows(2).all(|w| w[0] <= w[1]);
        out.push(Check {
            name: format!("certificate of {}", ing.name),
            passed: mono && ing.certified_digits >= job.opts.threshold,
            digits: Some(ing.certified_digits),
            detail: format!("history {:?}", ing.history),
        });
    }
    Ok(out)
}

fn shuffle(job: &Job) -> Result<Vec<Check>, CliError> {
    let z = job.engine();
    let mut out = Vec::new();
    for base in 1..=job.m() as u8 {
        let g = build_g(&z, base, job.opts.word_cap, job.opts.threshold)?;
        out.push(Check {
            name: format!("g_{base} is group-like up to length {}", job.opts.word_cap),
            passed: g.audit.passed(),
            digits: Some(g.audit.min_agreement),
            detail: format!("{} shuffle pairs, {} below threshold", g.audit.pairs_checked, g.audit.failures.len()),
        });
    }
    Ok(out)
}

fn dual(job: &Job) -> Result<Vec<Check>, CliError> {
    let z = job.engine();
    let m = job.m() as i64;
    let mut out = Vec::new();
    for j in 1..=m {
        for i in (1..=m).filter(|&i| i != j) {
            for s in 1..=4 {
                let u = z.depth1_usual(j, i, s)?;
                let a = z.depth1_alt(j, i, s + 1)?;
                out.push(agree_check(
                    job,
                    format!("g_{j}[{}]: usual vs alternative", Word::zeros(s as usize).push(i as u8)),
                    &u.value,
                    u.certified_digits,
                    &a.value,
                    a.certified_digits,
                ));
            }
        }
    }
    for i in 1..=m {
        for j in (1..=m).filter(|&j| j != i) {
            for k in (1..=m).filter(|&k| k != i && k != j) {
                let a = z.g_pair_distinct(i, j, k)?;
                let b = z.g_mid_formula(i, j, k, 1)?;
                out.push(agree_check(
                    job,
                    format!("g_{i}[e{j} e{k}]: length-two formula vs middle formula"),
                    &a.value,
                    a.certified_digits,
                    &b.value,
                    b.certified_digits,
                ));
            }
        }
    }
    Ok(out)
}

fn constants(z: &Mzv, cap: usize, threshold: i32) -> Result<Constants, CliError> {
    let built = (1..=z.m() as u8).map(|a| build_g(z, a, cap, threshold)).collect::<Result<Vec<_>, _>>()?;
    Ok(Constants::new(built.into_iter().map(|b| b.series).collect()))
}

/// Words with closed series in all four families, up to length `cap`.
pub fn closed_targets(m: u8, cap: usize) -> Vec<Word> {
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
    t.retain(|w| w.len() <= cap);
    t
}

fn solve_opts(job: &Job) -> SolveOpts {
    SolveOpts { exec: job.exec, ..SolveOpts::default() }
}

fn ode_match(job: &Job) -> Result<Vec<Check>, CliError> {
    let n_max = job.opts.n_max.unwrap_or(2000);
    let cap = job.opts.word_cap;
    let consts = constants(&job.engine(), cap, job.opts.threshold)?;
    let targets = closed_targets(job.m() as u8, cap);
    let rec = Record { full_upto: n_max, ..Default::default() };
    let sol = solve_gf(&job.ring, &consts, &targets, n_max, &rec, solve_opts(job))?;
    let audits = match_closed_series(&job.ctx, &sol, &consts, n_max, job.opts.threshold)?;
    let families: BTreeSet<&str> = audits.iter().filter_map(|a| a.note.split(' ').next()).collect();
    let mut out =
        vec![Check::flag("closed series cover every family", families.len() == 4 || cap < 5, format!("{families:?}"))];
    for a in audits {
        out.push(Check {
            name: format!("ODE vs closed series for {}, n <= {n_max}", a.word),
            passed: a.passed(),
            digits: Some(a.worst_valuation),
            detail: a.note,
        });
    }
    Ok(out)
}

/// Largest `l b^N <= bound`.
fn largest_rung(l: u64, b: u64, bound: u64) -> u64 {
    ladder(l, b, bound).last().copied().unwrap_or(l * b)
}

fn residue(job: &Job) -> Result<Vec<Check>, CliError> {
    let (p, m) = (job.opts.p, job.m());
    let n_max = job.opts.n_max.unwrap_or_else(|| largest_rung(m, p, 1_000_000));
    let consts = constants(&job.engine(), 3, job.opts.threshold)?;
    let words = words_up_to(m as u8, 2, 2);
    let rec = Record { points: ladder(m, p, n_max).into_iter().collect(), ..Default::default() };
    let sol = solve_gf(&job.ring, &consts, &words, n_max, &rec, solve_opts(job))?;
    let (ginf, cert) = infinity_series(&job.ring, &sol, &words, 3)?;
    let mut out =
        vec![Check::digits("values at infinity certified", cert, job.opts.threshold, format!("n_max {n_max}"))];
    for a in residue_identity_check(&job.ring, &ginf, &consts, 3, job.opts.threshold.min(cert)) {
        out.push(Check {
            name: format!("residue identity on {}", a.word),
            passed: a.passed(),
            digits: Some(a.worst_valuation),
            detail: a.note,
        });
    }
    Ok(out)
}

fn funprop(job: &Job) -> Result<Vec<Check>, CliError> {
    let (p, m, q) = (job.opts.p, job.m(), job.ring.q() as u64);
    let cap = job.opts.word_cap;
    let shapes: Vec<(usize, usize)> = [(2, 2), (2, 3), (3, 2)].into_iter().filter(|&(s, t)| s + t <= cap).collect();
    if shapes.is_empty() || m < 3 {
        return Err(CliError::Usage("funprop needs M >= 3 and a word cap of at least 4".into()));
    }
    let words = padded_words(m as u8, &shapes);
    let opts = AdjudicationOpts {
        budget: job.budget,
        cap,
        n_max: job.opts.n_max.unwrap_or_else(|| largest_rung(p * m, q, 100_000)),
        match_upto: 200,
        threshold: job.opts.threshold,
        solve: solve_opts(job),
    };
    let ctx: &Arc<SumCtx> = &job.ctx;
    let adj = adjudicate(ctx, &words, &opts)?;
    let mut out = Vec::new();
    for o in &adj.outcomes {
        let pass = o.funprop.iter().filter(|f| f.audit.passed()).count();
        out.push(Check::flag(
            format!("reading {}", o.reading),
            true,
            format!(
                "{} funprop {pass}/{}, shuffle min agreement {}, closed series failures {}",
                if o.consistent { "consistent:" } else { "rejected:" },
                o.funprop.len(),
                o.grouplike_min_agreement,
                o.closed_series.iter().filter(|a| !a.passed()).count()
            ),
        ));
    }
    out.push(Check::flag(
        "exactly one reading survives",
        adj.survivor.is_some(),
        match &adj.survivor {
            Some(s) => format!("survivor {s}"),
            None => "no unique survivor".into(),
        },
    ));
    if let Some(o) = adj.outcomes.iter().find(|o| Some(&o.reading) == adj.survivor.as_ref()) {
        for f in &o.funprop {
            out.push(Check {
                name: format!("funprop on {} under {}", f.word, o.reading),
                passed: f.audit.passed(),
                digits: Some(f.audit.worst_valuation),
                detail: f.audit.note.clone(),
            });
        }
    }
    Ok(out)
}
