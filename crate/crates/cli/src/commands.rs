use std::path::Path;

use anyhow::{Context, Result};
use jimm_core::codec::jimm_runlength_with_budget;
use jimm_core::tree::write_csv;
use jimm_core::{
    cf_of_algebraic, cf_of_e, cf_of_pi, cf_of_real, cf_of_surd, decompose, dyer, eval_decimal, is_noble, jimm_q,
    jimm_rational_twovalued, jimm_surd, sample_approximant, BigCf, BigMobius, BigRational, BigReal, BigSurd, Error,
    GeneratorWord, IntPolynomial, JimmResult, RealBracket, Tail, Terms,
};
use num_bigint::BigInt;
use serde_json::json;

use crate::output::{prefix, terms_json, terms_text, BudgetExceeded, CommandResult, Outcome};
use crate::Constant;

/// Terms an algebraic expansion computes before deciding it is irrational.
const LOOKAHEAD: usize = 8;

fn cf_text(x: &BigReal) -> String {
    cf_of_real(x, usize::MAX).map_or_else(|e| e.to_string(), |cf| cf.to_string())
}

/// Length of the boundary bit string of a finite or periodic expansion.
fn bit_length(cf: &BigCf) -> BigInt {
    match &cf.terms {
        Terms::Finite(t) => t.iter().sum(),
        Terms::Periodic { preperiod, period } => preperiod.iter().chain(period).sum(),
        Terms::Stream(_) => BigInt::from(0),
    }
}

fn check_bits(x: &BigSurd, max_bits: usize) -> Result<()> {
    let n = bit_length(&cf_of_surd(x, usize::MAX)?);
    if n > BigInt::from(max_bits) {
        return Err(BudgetExceeded(format!("{x} encodes to {n} bits, over the cap of {max_bits}")).into());
    }
    Ok(())
}

pub fn rational(q: &BigRational, single: bool) -> CommandResult {
    let r = CommandResult::new("rational", "exact").input("value", q.to_string()).input("single", single);
    if single {
        let v = jimm_q(q);
        return r.output("kind", "rational").output("value", v.to_string()).line(format!("J_Q({q}) = {v}"));
    }
    let JimmResult::NoblePairFromRational { lower, upper } = jimm_rational_twovalued(q) else {
        unreachable!("a rational input gives its one-sided limits")
    };
    r.output("kind", "pair")
        .output("lower", lower.to_string())
        .output("upper", upper.to_string())
        .output("lower_cf", cf_text(&lower))
        .output("upper_cf", cf_text(&upper))
        .line(format!("J({q})- = {lower}    {}", cf_text(&lower)))
        .line(format!("J({q})+ = {upper}    {}", cf_text(&upper)))
}

pub fn surd(text: &str, max_bits: usize) -> Result<CommandResult> {
    let x: BigSurd = text.parse().with_context(|| format!("reading surd {text:?}"))?;
    check_bits(&x, max_bits)?;
    let noble = is_noble(&x);
    let y = jimm_surd(&x).value().expect("J of a surd is single-valued");
    let kind = if y.is_rational() { "rational" } else { "surd" };
    let input = BigReal::from(x.clone());
    let mut r = CommandResult::new("surd", "exact")
        .input("value", x.to_string())
        .output("kind", kind)
        .output("value", y.to_string())
        .output("noble", noble)
        .output("input_cf", cf_text(&input))
        .output("output_cf", cf_text(&y))
        .line(format!("J({x}) = {y}"))
        .line(format!("{} -> {}", cf_text(&input), cf_text(&y)));
    if noble {
        r = r.line("noble input: J sends it to a rational");
    }
    Ok(r)
}

/// The first `n` terms of `cf`, then `InsufficientTerms`.
fn truncate(cf: &BigCf, n: usize) -> BigCf {
    let err = Error::InsufficientTerms { available: n, required: n + 1 };
    BigCf::stream(cf.s_prefix, cf.iter().take(n).chain(std::iter::repeat(Err(err))))
}

fn digits_result(
    command: &'static str,
    input: &BigCf,
    digits: usize,
    terms: usize,
    show: usize,
    max_bits: usize,
) -> Result<CommandResult> {
    let input = match input.terms {
        Terms::Stream(_) => truncate(input, terms),
        _ => input.clone(),
    };
    let image = jimm_runlength_with_budget(&input, max_bits);
    let value = eval_decimal(&image, digits)?;
    let (a, _) = prefix(&input, show);
    let (b, _) = prefix(&image, show);
    let certification = format!(
        "{digits} significant digits, rounded to nearest; every value between two consecutive convergents rounds the same way"
    );
    Ok(CommandResult::new(command, certification)
        .input("digits", digits)
        .input("terms", terms)
        .input("max_bits", max_bits)
        .output("decimal", value.clone())
        .output("input_cf", terms_json(&input, &a))
        .output("output_cf", terms_json(&image, &b))
        .line(format!("J = {value}"))
        .line(format!("input  {}", terms_text(&input, &a, a.len() == show)))
        .line(format!("output {}", terms_text(&image, &b, b.len() == show))))
}

pub fn constant(name: Constant, digits: usize, terms: usize, show: usize, max_bits: usize) -> Result<CommandResult> {
    let (label, cf) = match name {
        Constant::Pi => ("pi", cf_of_pi()),
        Constant::E => ("e", cf_of_e()),
    };
    Ok(digits_result("const", &cf, digits, terms, show, max_bits)?.input("name", label))
}

pub fn algebraic(
    coeffs: &str,
    lo: BigRational,
    hi: BigRational,
    digits: usize,
    terms: usize,
    show: usize,
    max_bits: usize,
) -> Result<CommandResult> {
    let c: Vec<BigInt> = coeffs
        .split(',')
        .map(|s| s.trim().parse().with_context(|| format!("coefficient {s:?} is not an integer")))
        .collect::<Result<_>>()?;
    let p = IntPolynomial::new(c.clone())?;
    let bracket = RealBracket::new(lo.clone(), hi.clone())?;
    let cf = cf_of_algebraic(&p, &bracket, LOOKAHEAD)?;
    Ok(digits_result("algebraic", &cf, digits, terms, show, max_bits)?
        .input("coeffs", c.iter().map(|t| t.to_string()).collect::<Vec<_>>())
        .input("lo", lo.to_string())
        .input("hi", hi.to_string()))
}

fn parse_matrix(entries: &[String]) -> Result<BigMobius> {
    let v: Vec<BigInt> = entries
        .iter()
        .map(|s| s.trim().parse().with_context(|| format!("matrix entry {s:?} is not an integer")))
        .collect::<Result<_>>()?;
    let [a, b, c, d] = <[BigInt; 4]>::try_from(v).map_err(|_| anyhow::anyhow!("a matrix needs four entries"))?;
    Ok(BigMobius::new(a, b, c, d)?)
}

/// `a x + b` with unit and zero coefficients dropped.
fn linear(a: &BigInt, b: &BigInt) -> String {
    let zero = BigInt::from(0);
    let one = BigInt::from(1);
    let x = if *a == zero {
        String::new()
    } else if *a == one {
        "x".into()
    } else if *a == -one.clone() {
        "-x".into()
    } else {
        format!("{a}x")
    };
    match (x.is_empty(), b.sign()) {
        (true, _) => b.to_string(),
        (false, num_bigint::Sign::NoSign) => x,
        (false, num_bigint::Sign::Minus) => format!("{x}{b}"),
        (false, _) => format!("{x}+{b}"),
    }
}

fn formula(m: &BigMobius) -> String {
    let (a, b, c, d) = m.entries();
    format!("({})/({})", linear(a, b), linear(c, d))
}

pub fn matrix(entries: &[String]) -> Result<CommandResult> {
    let m = parse_matrix(entries)?;
    let image = dyer(&m);
    let (word, image_word) = (decompose(&m), decompose(&image));
    Ok(CommandResult::new("matrix", "exact")
        .input("matrix", m.to_string())
        .input("word", word.to_string())
        .output("image", image.to_string())
        .output("formula", formula(&image))
        .output("word", image_word.to_string())
        .line(format!("{m} = {word}"))
        .line(format!("dyer: {image}    x -> {}    {image_word}", formula(&image))))
}

pub fn fixed_point(spec: &str, max_bits: usize) -> Result<(CommandResult, Outcome)> {
    let tokens: Vec<String> = spec.split_whitespace().map(String::from).collect();
    let m: BigMobius = if tokens.len() == 4 && tokens.iter().all(|t| t.parse::<BigInt>().is_ok()) {
        parse_matrix(&tokens)?
    } else {
        spec.parse::<GeneratorWord>().with_context(|| format!("reading word {spec:?}"))?.to_matrix()
    };
    let x = jimm_core::fixed_point(&m)?;
    check_bits(&x, max_bits)?;
    let jx = jimm_surd(&x).value().expect("J of a surd is single-valued");
    let mx = m.apply_surd(&x);
    let holds = jx == BigReal::from(mx.clone());
    let r = CommandResult::new("fixed-point", "exact")
        .input("map", m.to_string())
        .output("value", x.to_string())
        .output("cf", cf_text(&BigReal::from(x.clone())))
        .output("check", json!({ "jimm": jx.to_string(), "image": mx.to_string(), "holds": holds }))
        .line(format!("x = {x}    {}", cf_text(&BigReal::from(x.clone()))))
        .line(format!("J(x) = {jx}, M x = {mx}: {}", if holds { "equal" } else { "DIFFERENT" }));
    Ok((r, if holds { Outcome::Ok } else { Outcome::VerifyFailed }))
}

pub fn approx(
    n: usize,
    lo: &BigRational,
    hi: &BigRational,
    samples: usize,
    tail: Tail,
    out: Option<&Path>,
    max_bits: usize,
) -> Result<CommandResult> {
    if n.saturating_mul(2) > max_bits {
        return Err(BudgetExceeded(format!("a depth-{n} mask has {} bits, over the cap of {max_bits}", 2 * n)).into());
    }
    let rows = sample_approximant(n, lo, hi, samples, tail)?;
    let mut csv = Vec::new();
    write_csv(&rows, &mut csv)?;
    let csv = String::from_utf8(csv).expect("CSV is ASCII");
    let r = CommandResult::new("approx", "exact rationals")
        .input("n", n)
        .input("lo", lo.to_string())
        .input("hi", hi.to_string())
        .input("samples", samples)
        .input("tail", tail.to_string())
        .output("rows", rows.len());
    match out {
        Some(path) => {
            std::fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
            Ok(r.output("path", path.display().to_string())
                .line(format!("wrote {} rows to {}", rows.len(), path.display())))
        }
        None => {
            let lines: Vec<&str> = csv.lines().collect();
            let r = r.output("csv", lines.clone());
            Ok(lines.into_iter().fold(r, |r, l| r.line(l)))
        }
    }
}
