//! Seeded randomized checks. Each suite draws from its own ChaCha stream of
//! the given seed, so suites are reproducible one at a time or together.

use jimm_core::{
    apply_shuffle, build_tree, decode_bits, decompose, dyer, encode_bits, galois_conjugate, is_noble, jimm_bits,
    jimm_runlength, jimm_surd, verify_fe6, BigCf, BigMobius, BigSurd, FareyTree, GeneratorWord, JimmResult, Letter,
    TreeAutomorphism,
};
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::output::{CommandResult, Outcome};
use crate::Suite;

const TREE_DEPTH: usize = 10;

struct Context {
    tree: Option<FareyTree>,
}

type Trial = fn(&mut ChaCha8Rng, &Context) -> Result<(), String>;

fn suites(s: Suite) -> Vec<(&'static str, Trial)> {
    let all: [(Suite, &'static str, Trial); 5] = [
        (Suite::Fe, "fe", fe),
        (Suite::Galois, "galois", galois),
        (Suite::Dual, "dual", dual),
        (Suite::Group, "group", group),
        (Suite::Tree, "tree", tree),
    ];
    all.into_iter().filter(|(k, _, _)| s == Suite::All || s == *k).map(|(_, n, t)| (n, t)).collect()
}

/// A non-noble `(p + q sqrt d) / r` with `|p|, |q|, r <= 15`, `d <= 80`.
fn surd(rng: &mut ChaCha8Rng) -> BigSurd {
    loop {
        let q: i64 = rng.gen_range(1..=15) * if rng.gen() { 1 } else { -1 };
        let (p, d, r) = (rng.gen_range(-15..=15i64), rng.gen_range(2..=80i64), rng.gen_range(1..=15i64));
        if let Ok(x) = BigSurd::new(p.into(), q.into(), d.into(), r.into()) {
            if !is_noble(&x) {
                return x;
            }
        }
    }
}

fn word(rng: &mut ChaCha8Rng, max: usize) -> GeneratorWord {
    let n = rng.gen_range(0..=max);
    GeneratorWord::new((0..n).map(|_| [Letter::V, Letter::U, Letter::K][rng.gen_range(0..3)]))
}

fn prefix(rng: &mut ChaCha8Rng) -> BigCf {
    let n = rng.gen_range(1..30);
    let terms = std::iter::once(rng.gen_range(0..=12i64))
        .chain((0..n).map(|_| rng.gen_range(1..=12i64)))
        .map(BigInt::from)
        .collect();
    BigCf::finite(rng.gen(), terms).expect("valid terms")
}

fn j(x: &BigSurd) -> Result<BigSurd, String> {
    match jimm_surd(x) {
        JimmResult::Surd { value } => Ok(value),
        other => Err(format!("J({x}) is not a surd: {other:?}")),
    }
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn m(a: i64, b: i64, c: i64, d: i64) -> BigMobius {
    BigMobius::from_i64(a, b, c, d).expect("unimodular")
}

fn fe(rng: &mut ChaCha8Rng, _: &Context) -> Result<(), String> {
    let x = surd(rng);
    let jx = j(&x)?;
    check(j(&jx)? == x, || format!("J(J({x})) != {x}"))?;
    check(j(&x.recip())? == jx.recip(), || format!("FE:I fails at {x}"))?;
    check(j(&x.neg())? == jx.recip().neg(), || format!("FE:II fails at {x}"))?;
    let k = m(-1, 1, 0, 1);
    check(j(&k.apply_surd(&x))? == k.apply_surd(&jx), || format!("FE:III fails at {x}"))?;
    check(j(&m(1, 1, 0, 1).apply_surd(&x))? == m(1, 1, 1, 0).apply_surd(&jx), || format!("FE:IV fails at {x}"))?;
    let w = word(rng, 12);
    let mm: BigMobius = w.to_matrix();
    check(verify_fe6(&mm, &x) == Ok(true), || format!("FE:VI fails at M = {w}, x = {x}"))
}

fn galois(rng: &mut ChaCha8Rng, _: &Context) -> Result<(), String> {
    let x = surd(rng);
    check(j(&galois_conjugate(&x))? == galois_conjugate(&j(&x)?), || format!("J(x*) != J(x)* at {x}"))
}

fn dual(rng: &mut ChaCha8Rng, _: &Context) -> Result<(), String> {
    let cf = prefix(rng);
    let bits = encode_bits(&cf).map_err(|e| e.to_string())?;
    let via_bits: BigCf = decode_bits(&jimm_bits(&bits), 0).map_err(|e| e.to_string())?;
    let (a, b) = (via_bits.value(), jimm_runlength(&cf).value());
    check(a == b, || format!("{cf}: bits give {a:?}, runs give {b:?}"))
}

fn group(rng: &mut ChaCha8Rng, _: &Context) -> Result<(), String> {
    let (w1, w2) = (word(rng, 40), word(rng, 40));
    let (a, b): (BigMobius, BigMobius) = (w1.to_matrix(), w2.to_matrix());
    check(dyer(&dyer(&a)) == a, || format!("dyer is not an involution at {w1}"))?;
    check(dyer(&(&a * &b)) == &dyer(&a) * &dyer(&b), || format!("dyer is not multiplicative at {w1} / {w2}"))?;
    check(w1.dyer().to_matrix::<BigInt>() == dyer(&a), || format!("letter substitution differs at {w1}"))?;
    check(decompose(&a).to_matrix::<BigInt>() == a, || format!("decomposition of {a} does not recompose"))
}

fn tree(rng: &mut ChaCha8Rng, ctx: &Context) -> Result<(), String> {
    let cf = prefix(rng);
    let bits = encode_bits(&cf).map_err(|e| e.to_string())?;
    let flipped: BigCf = decode_bits(&bits.complement(), 0).map_err(|e| e.to_string())?;
    let (x, y) = (cf.value().map_err(|e| e.to_string())?, flipped.value().map_err(|e| e.to_string())?);
    check(y == x.recip(), || format!("flipping the bits of {cf} gives {y}, not 1/x"))?;

    let t = ctx.tree.as_ref().expect("tree suite builds the tree");
    let e = &t.edges()[rng.gen_range(0..t.edges().len())];
    let image = apply_shuffle(t, &TreeAutomorphism::jimm(t), e).map_err(|e| e.to_string())?;
    let (s, b) = e.bits();
    let masked: Vec<bool> = b.iter().enumerate().map(|(i, &v)| v ^ ((i % 2 == 1) != s)).collect();
    check(image.bits() == (s, masked), || format!("shuffle of {e} is {image}, not the XOR mask"))
}

pub fn run(suite: Suite, trials: usize, seed: u64) -> (CommandResult, Outcome) {
    let selected = suites(suite);
    let ctx = Context {
        tree: selected.iter().any(|(n, _)| *n == "tree").then(|| build_tree(TREE_DEPTH).expect("depth within limit")),
    };
    let mut r = CommandResult::new("verify", "exact comparisons").input("trials", trials).input("seed", seed);
    let mut reports = Vec::new();
    let mut all_passed = true;
    for (i, (name, trial)) in selected.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let mut failed = 0usize;
        let mut first = None;
        for t in 0..trials {
            if let Err(msg) = trial(&mut rng, &ctx) {
                failed += 1;
                first.get_or_insert(format!("trial {t}: {msg}"));
            }
        }
        all_passed &= failed == 0;
        r = r.line(format!("{name:<7} {trials} trials, {} passed, {failed} failed", trials - failed));
        if let Some(f) = &first {
            r = r.line(format!("        first counterexample: {f}"));
        }
        reports.push(json!({
            "suite": name,
            "trials": trials,
            "passed": trials - failed,
            "failed": failed,
            "first_counterexample": first,
        }));
    }
    let r = r.input("suite", format!("{suite:?}").to_lowercase()).output("suites", reports).output("passed", all_passed);
    (r, if all_passed { Outcome::Ok } else { Outcome::VerifyFailed })
}
