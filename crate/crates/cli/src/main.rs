mod commands;
mod output;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use jimm_core::codec::jimm::DEFAULT_MAX_BITS;
use jimm_core::BigRational;

use output::{classify, CommandResult, Outcome};

/// Dyer's involution J of the real line, computed exactly.
#[derive(Parser, Debug)]
#[command(name = "jimm", version)]
struct Cli {
    /// Print the result as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Bit budget: input bits a streamed computation may read without
    /// output, and the longest encoded surd or approximant mask. The
    /// JIMM_MAX_BITS environment variable caps it.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_BITS)]
    max_bits: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// J at a rational: both one-sided limits, or J_Q with --single.
    Rational {
        #[arg(allow_hyphen_values = true)]
        value: BigRational,
        #[arg(long)]
        single: bool,
    },
    /// J of a quadratic irrational "(P+Q*sqrt(D))/R".
    Surd {
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Decimal digits of J(pi) or J(e).
    Const {
        #[arg(value_enum)]
        name: Constant,
        #[arg(long, default_value_t = 20)]
        digits: usize,
        /// Partial quotients of the input that may be read.
        #[arg(long, default_value_t = 10_000)]
        terms: usize,
        /// Length of the printed expansions.
        #[arg(long, default_value_t = 20)]
        show: usize,
    },
    /// J of the root of a0 + a1 x + ... + an x^n isolated by [lo, hi].
    Algebraic {
        /// Comma-separated coefficients, constant term first.
        #[arg(allow_hyphen_values = true, value_name = "A0,A1,...,AN")]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: BigRational,
        #[arg(long, allow_hyphen_values = true)]
        hi: BigRational,
        #[arg(long, default_value_t = 16)]
        digits: usize,
        #[arg(long, default_value_t = 10_000)]
        terms: usize,
        #[arg(long, default_value_t = 20)]
        show: usize,
    },
    /// The Dyer image of the matrix ((a, b), (c, d)).
    Matrix {
        #[arg(allow_hyphen_values = true, num_args = 4, value_names = ["A", "B", "C", "D"])]
        entries: Vec<String>,
    },
    /// The point x with J(x) = M x, for a word in V, U, K, S, T or four
    /// matrix entries.
    FixedPoint {
        #[arg(allow_hyphen_values = true, num_args = 1..=4, value_name = "WORD|A B C D")]
        map: Vec<String>,
    },
    /// Samples of the depth-n approximant as CSV.
    Approx {
        n: usize,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
        range: Vec<BigRational>,
        #[arg(long, default_value_t = 512)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = TailArg::Zeros)]
        tail: TailArg,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Seeded randomized checks of the identities.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Constant {
    Pi,
    E,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum TailArg {
    Zeros,
    Ones,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Fe,
    Galois,
    Dual,
    Group,
    Tree,
    All,
}

fn max_bits(flag: usize) -> anyhow::Result<usize> {
    match std::env::var("JIMM_MAX_BITS") {
        Ok(v) => {
            let cap: usize = v.trim().parse().map_err(|_| anyhow::anyhow!("JIMM_MAX_BITS={v:?} is not a bit count"))?;
            Ok(flag.min(cap))
        }
        Err(std::env::VarError::NotPresent) => Ok(flag),
        Err(e) => Err(anyhow::anyhow!("JIMM_MAX_BITS: {e}")),
    }
}

fn run(cli: Cli) -> anyhow::Result<(CommandResult, Outcome)> {
    let bits = max_bits(cli.max_bits)?;
    let ok = |r: CommandResult| (r, Outcome::Ok);
    Ok(match cli.command {
        Command::Rational { value, single } => ok(commands::rational(&value, single)),
        Command::Surd { value } => ok(commands::surd(&value, bits)?),
        Command::Const { name, digits, terms, show } => ok(commands::constant(name, digits, terms, show, bits)?),
        Command::Algebraic { coeffs, lo, hi, digits, terms, show } => {
            ok(commands::algebraic(&coeffs, lo, hi, digits, terms, show, bits)?)
        }
        Command::Matrix { entries } => ok(commands::matrix(&entries)?),
        Command::FixedPoint { map } => commands::fixed_point(&map.join(" "), bits)?,
        Command::Approx { n, range, samples, tail, out } => {
            let tail = match tail {
                TailArg::Zeros => jimm_core::Tail::Zeros,
                TailArg::Ones => jimm_core::Tail::Ones,
            };
            ok(commands::approx(n, &range[0], &range[1], samples, tail, out.as_deref(), bits)?)
        }
        Command::Verify { suite, trials, seed } => verify::run(suite, trials, seed),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok((result, outcome)) => {
            result.print(json);
            outcome.exit_code()
        }
        Err(e) => {
            let code = classify(&e);
            if json {
                println!("{}", serde_json::json!({ "error": format!("{e:#}"), "exit_code": code }));
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(code)
        }
    }
}
