//! The cross-check battery behind `cwl verify`. Every check compares two
//! independent evaluations exactly; cases are seeded per (check, case) so
//! the report does not depend on the thread count.

use cwl_core::arith::{dedekind_reciprocity_rhs, dedekind_sum_direct, dedekind_sum_fast};
use cwl_core::conway::{braid_pd, builtin, conway_data_from_diagram, Closure, IntPoly, SkeinEngine, SkeinOptions};
use cwl_core::cosmetic::{thm21_verdict, thm22_exact_quadratics, with_split_component, Outcome};
use cwl_core::surgery::{
    boyer_lines_lambda, ito_lambda_walker, lemma21_lambda, lescop_lambda, m00_lambda, m0_lambda,
    three_component_split_lambda, two_component_lambda, walker_from_lescop, ComponentSubset, ConwayData,
    SurgeryPresentation, ThetaOverrides,
};
use cwl_core::{Rational, Slope};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cosmetic::{run_cosmetic, CosmeticArgs, Mode};
use crate::gen;
use crate::input::Loaded;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub cases: u64,
    pub threads: usize,
    /// perturb one evaluator so the battery must fail
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions { seed: 0, cases: 200, threads: 1, inject_fault: false }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: u64,
    pub failed: u64,
    pub first_failure: Option<String>,
}

struct Ctx {
    fault: bool,
    engine: SkeinEngine,
}

type CaseFn = fn(&Ctx, &mut ChaCha8Rng) -> Result<(), String>;

fn ensure_eq(what: &str, a: &Rational, b: &Rational) -> Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what}: {a} != {b}"))
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn no_theta() -> ThetaOverrides {
    ThetaOverrides::new()
}

fn dedekind(_: &Ctx, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (p, q) = gen::coprime_positive(rng, 10_000);
    let f = |a, b| dedekind_sum_fast(a, b).map_err(err);
    ensure_eq(&format!("reciprocity at ({p},{q})"), &(f(p, q)? + f(q, p)?), &dedekind_reciprocity_rhs(p, q))?;
    let sp = if rng.gen_bool(0.5) { -p } else { p };
    let sq = if rng.gen_bool(0.5) { -q } else { q };
    ensure_eq(&format!("fast vs direct at ({sp},{sq})"), &f(sp, sq)?, &dedekind_sum_direct(sp, sq).map_err(err)?)
}

fn boyer_lines(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let a2 = rng.gen_range(-10..=10);
    let (p, q) = gen::coprime_positive(rng, 50);
    let p = if rng.gen_bool(0.5) { -p } else { p };
    let s = Slope::new(p, q).map_err(err)?;
    let mut bl = boyer_lines_lambda(a2, s).map_err(err)?;
    if ctx.fault {
        bl += Rational::new(1, 1000);
    }
    let general = lescop_lambda(&SurgeryPresentation::knot(s), &ConwayData::from_knots(&[a2]), &no_theta()).map_err(err)?;
    ensure_eq(&format!("a2 = {a2}, slope {s}"), &bl, &general)
}

fn two_component(_: &Ctx, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let pres = gen::presentation(rng, 2, 5, 30, 30);
    let cd = gen::conway_data(rng, 2, 5);
    let two = two_component_lambda(&pres, &cd).map_err(err)?;
    let general = lescop_lambda(&pres, &cd, &no_theta()).map_err(err)?;
    ensure_eq(&format!("{pres:?}"), &two, &general)
}

fn ito(_: &Ctx, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let pres = loop {
        let p = gen::presentation(rng, 2, 5, 30, 30);
        if !p.linking_matrix().det().is_zero() {
            break p;
        }
    };
    let cd = gen::conway_data(rng, 2, 5);
    let a = |j: ComponentSubset| cd.get_raw(&j).unwrap();
    let ito = ito_lambda_walker(&pres, a(ComponentSubset::single(0)), a(ComponentSubset::single(1)), -a(ComponentSubset::full(2)))
        .map_err(err)?;
    let lambda = lescop_lambda(&pres, &cd, &no_theta()).map_err(err)?;
    let walker = walker_from_lescop(&pres, &lambda).map_err(err)?;
    ensure_eq(&format!("{pres:?}"), &ito, &walker)
}

fn three_split(_: &Ctx, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let pres = gen::split(rng, 3, 20, 12, true);
    let cd = gen::conway_data(rng, 3, 5);
    let closed = three_component_split_lambda(&pres, &cd).map_err(err)?;
    ensure_eq(&format!("{pres:?}"), &closed, &lescop_lambda(&pres, &cd, &no_theta()).map_err(err)?)
}

fn m0_m00(_: &Ctx, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let cd = gen::conway_data(rng, 3, 5);
    let s0 = gen::slope(rng, 20, 12, true);
    let s1 = gen::slope(rng, 20, 12, true);
    let m0 = SurgeryPresentation::split(vec![s0, s1, Slope::integral(0)]);
    ensure_eq(&format!("m0 {s0} {s1}"), &m0_lambda(&m0, &cd).map_err(err)?, &lescop_lambda(&m0, &cd, &no_theta()).map_err(err)?)?;
    let m00 = SurgeryPresentation::split(vec![s0, Slope::integral(0), Slope::integral(0)]);
    ensure_eq(&format!("m00 {s0}"), &m00_lambda(&m00, &cd).map_err(err)?, &lescop_lambda(&m00, &cd, &no_theta()).map_err(err)?)
}

fn lemma21(_: &Ctx, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(2..=4);
    let inner = gen::presentation(rng, n - 1, 2, 12, 8);
    let pres = with_split_component(&inner, gen::slope(rng, 12, 8, false));
    let cd = gen::conway_data(rng, n, 5);
    let ov = gen::theta_overrides(rng, n);
    let a = lemma21_lambda(&pres, &cd, &ov).map_err(err)?;
    ensure_eq(&format!("{pres:?}"), &a, &lescop_lambda(&pres, &cd, &ov).map_err(err)?)
}

fn thm21(_: &Ctx, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let inner = gen::inner_link(rng);
    let cd = gen::conway_data(rng, inner.len() + 1, 4);
    let v = thm21_verdict(&inner, &cd).map_err(err)?;
    let poly = &v.polys[0].1;
    for p in 1..=10 {
        let at = |s: i64| lescop_lambda(&with_split_component(&inner, Slope::integral(s)), &cd, &no_theta()).map_err(err);
        ensure_eq(&format!("p = {p}, {inner:?}"), &poly.eval_int(p), &(at(p)? - at(-p)?))?;
    }
    match v.admissible.values() {
        Some(vals) if vals.len() <= 2 => Ok(()),
        other => Err(format!("admissible p {other:?} is not at most two values")),
    }
}

fn thm22(_: &Ctx, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let inner = gen::inner_link(rng);
    let cd = gen::conway_data(rng, inner.len() + 1, 4);
    let (plus, minus) = thm22_exact_quadratics(&inner, &cd).map_err(err)?;
    let inner_cd = cd.restrict(&ComponentSubset::new((1..=inner.len()).collect()));
    let base = lescop_lambda(&inner, &inner_cd, &no_theta()).map_err(err)?;
    for q in 1..=10 {
        let scale = inner.q_product() / q;
        let at = |p: i64| -> Result<Rational, String> {
            let s = Slope::new(p, q).map_err(err)?;
            Ok(lescop_lambda(&with_split_component(&inner, s), &cd, &no_theta()).map_err(err)? - &base)
        };
        ensure_eq(&format!("M+ q = {q}, {inner:?}"), &(&scale * plus.eval_int(q)), &at(1)?)?;
        ensure_eq(&format!("M- q = {q}, {inner:?}"), &(&scale * minus.eval_int(q)), &at(-1)?)?;
    }
    Ok(())
}

/// thm3/4/5 witnesses; `run_cosmetic` compares each with the engine.
fn witnesses(_: &Ctx, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (mode, n) = match rng.gen_range(0..3) {
        0 => (Mode::Thm3, 2),
        1 => (Mode::Thm4, 3),
        _ => (Mode::Thm5, 3),
    };
    let pres = SurgeryPresentation::split(vec![Slope::integral(0); n]);
    let l = Loaded { pres, cd: gen::conway_data(rng, n, 4), theta: no_theta() };
    let mut args = CosmeticArgs::new(mode);
    args.q0 = rng.gen_range(1..=6);
    args.q0p = rng.gen_range(1..=6);
    args.same_sign = rng.gen_bool(0.5);
    let s1 = gen::slope(rng, 9, 6, false);
    args.p1 = s1.p();
    args.q1 = s1.q();
    let r = run_cosmetic(&l, args).map_err(err)?;
    if r.checks.len() != 3 {
        return Err(format!("{}: expected 3 engine checks, got {}", mode.name(), r.checks.len()));
    }
    Ok(())
}

fn skein(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(2..=4usize);
    let word: Vec<i32> = loop {
        let len = rng.gen_range(2..=9);
        let w: Vec<i32> =
            (0..len).map(|_| rng.gen_range(1..n as i32) * if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
        if (1..n as i32).all(|i| w.iter().any(|g| g.abs() == i)) {
            break w;
        }
    };
    let d = braid_pd(n, &word, Closure::Braid).to_diagram().map_err(err)?;
    let plain = SkeinEngine::new(SkeinOptions { memo: false, ..Default::default() });
    let nabla = plain.conway(&d).map_err(err)?;
    if ctx.engine.conway(&d).map_err(err)? != nabla {
        return Err(format!("memo disagrees on braid {word:?}"));
    }
    for c in 0..d.crossing_count() {
        let lhs = &nabla - &plain.conway(&d.switch(c)).map_err(err)?;
        let rhs = plain.conway(&d.smooth(c)).map_err(err)?.shift().scale(d.sign(c) as i64);
        if lhs != rhs {
            return Err(format!("skein relation fails at crossing {c} of braid {word:?}"));
        }
    }
    Ok(())
}

/// Published values; the same whatever the case index.
fn golden(ctx: &Ctx, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let lam = |s: Slope, a: i64| lescop_lambda(&SurgeryPresentation::knot(s), &ConwayData::from_knots(&[a]), &no_theta()).map_err(err);
    ensure_eq("unknot 1/1", &lam(Slope::integral(1), 0)?, &Rational::zero())?;
    ensure_eq("unknot 0/1", &lam(Slope::integral(0), 0)?, &Rational::new(-1, 12))?;
    let a = rng.gen_range(-50..=50);
    ensure_eq(&format!("knot with a1hat {a}, 0/1"), &lam(Slope::integral(0), a)?, &(Rational::from_integer(a) - Rational::new(1, 12)))?;

    let poly = |name: &str, param: Option<i64>| -> Result<IntPoly, String> {
        ctx.engine.conway(&builtin(name, param).map_err(err)?).map_err(err)
    };
    let z = |c: i64, k: usize| IntPoly::monomial(c, k);
    if poly("whitehead", None)? != z(1, 3) || poly("borromean", None)? != z(1, 4) {
        return Err("whitehead/borromean Conway polynomial".into());
    }
    if poly("trefoil", None)? != IntPoly::from_coeffs(vec![1, 0, 1]) {
        return Err("trefoil Conway polynomial".into());
    }
    let m = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    if poly("L_m", Some(m))? != z(m, 3) {
        return Err(format!("L_{m} Conway polynomial"));
    }

    // whitehead with slopes (p0/q0, 0): sign(p0)(-q0 - p0/12)
    let w = builtin("whitehead", None).map_err(err)?;
    let cd = conway_data_from_diagram(&w, &ctx.engine).map_err(err)?;
    let s0 = gen::slope(rng, 20, 10, false);
    let pres = SurgeryPresentation::new(vec![vec![0, 0], vec![0, 0]], vec![s0, Slope::integral(0)]).map_err(err)?;
    let want = (Rational::from_integer(-s0.q()) - Rational::new(s0.p(), 12)) * s0.p().signum() as i64;
    ensure_eq(&format!("whitehead ({s0}, 0)"), &lescop_lambda(&pres, &cd, &no_theta()).map_err(err)?, &want)?;

    for (name, param, mode) in [("L_m", Some(m), Mode::Thm3), ("borromean", None, Mode::Thm5)] {
        let d = builtin(name, param).map_err(err)?;
        let l = Loaded::from_diagram(&d, vec![Slope::integral(0); d.mu()], &ctx.engine).map_err(err)?;
        let r = run_cosmetic(&l, CosmeticArgs::new(mode)).map_err(err)?;
        if r.verdict.outcome != Outcome::NoPurelyCosmetic {
            return Err(format!("{name} {}: {}", mode.name(), r.verdict.outcome));
        }
    }
    Ok(())
}

const CHECKS: &[(&str, u64, CaseFn)] = &[
    ("dedekind", 5, dedekind),
    ("boyer-lines", 1, boyer_lines),
    ("two-component", 1, two_component),
    ("ito", 1, ito),
    ("three-split", 1, three_split),
    ("m0-m00", 1, m0_m00),
    ("lemma21", 1, lemma21),
    ("thm21", 1, thm21),
    ("thm22", 1, thm22),
    ("witnesses", 1, witnesses),
    ("skein", 0, skein),
    ("golden", 0, golden),
];

/// Weight 0 means a fixed count: a tenth of `cases`, at least 5.
fn case_count(weight: u64, cases: u64) -> u64 {
    if weight == 0 {
        (cases / 10).max(5)
    } else {
        weight * cases
    }
}

pub fn run_checks(opts: VerifyOptions) -> Result<Vec<CheckResult>, String> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.threads.max(1)).build().map_err(err)?;
    let ctx = Ctx { fault: opts.inject_fault, engine: SkeinEngine::default() };
    Ok(pool.install(|| {
        CHECKS
            .iter()
            .enumerate()
            .map(|(ci, &(name, weight, f))| {
                let cases = case_count(weight, opts.cases);
                let outcomes: Vec<Result<(), String>> = (0..cases)
                    .into_par_iter()
                    .map(|c| f(&ctx, &mut gen::case_rng(opts.seed, ci as u64, c)))
                    .collect();
                let failed = outcomes.iter().filter(|o| o.is_err()).count() as u64;
                let first_failure = outcomes
                    .iter()
                    .enumerate()
                    .find_map(|(c, o)| o.as_ref().err().map(|e| format!("case {c}: {e}")));
                CheckResult { name, cases, failed, first_failure }
            })
            .collect()
    }))
}

/// Report text and overall success.
pub fn render(opts: &VerifyOptions, results: &[CheckResult]) -> (String, bool) {
    let mut out = format!("seed {}, cases {}\n\n", opts.seed, opts.cases);
    out += &format!("{:<16} {:>6} {:>7}  status\n", "check", "cases", "failed");
    for r in results {
        let status = if r.failed == 0 { "ok" } else { "FAIL" };
        out += &format!("{:<16} {:>6} {:>7}  {status}\n", r.name, r.cases, r.failed);
    }
    let bad: Vec<&CheckResult> = results.iter().filter(|r| r.failed > 0).collect();
    for r in &bad {
        out += &format!("\n{}: {}", r.name, r.first_failure.as_deref().unwrap_or("?"));
    }
    if bad.is_empty() {
        out += &format!("\nall {} checks passed\n", results.len());
    } else {
        out += &format!("\n\n{} of {} checks failed\n", bad.len(), results.len());
    }
    (out, bad.is_empty())
}
