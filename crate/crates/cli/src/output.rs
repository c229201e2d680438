use std::fmt;
use std::process::ExitCode;

use jimm_core::{BigCf, Error};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{Map, Value};

/// What a command produced, in a form that prints as text or JSON.
#[derive(Serialize, Debug)]
pub struct CommandResult {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub output: Map<String, Value>,
    pub certification: String,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl CommandResult {
    pub fn new(command: &'static str, certification: impl Into<String>) -> Self {
        CommandResult {
            command,
            inputs: Map::new(),
            output: Map::new(),
            certification: certification.into(),
            text: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.inputs.insert(key.into(), v.into());
        self
    }

    pub fn output(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.output.insert(key.into(), v.into());
        self
    }

    pub fn line(mut self, l: impl Into<String>) -> Self {
        self.text.push(l.into());
        self
    }

    pub fn print(&self, json: bool) {
        if json {
            println!("{}", serde_json::to_string_pretty(self).expect("plain JSON values"));
        } else {
            for l in &self.text {
                println!("{l}");
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    VerifyFailed,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::VerifyFailed => 1,
        }
    }

    pub fn exit_code(self) -> ExitCode {
        ExitCode::from(self.code())
    }
}

/// A cap set on the command line or by `JIMM_MAX_BITS` was reached.
#[derive(Debug)]
pub struct BudgetExceeded(pub String);

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "budget exhausted: {}", self.0)
    }
}

impl std::error::Error for BudgetExceeded {}

/// Exit code 3 for exhausted budgets, 2 for everything else.
pub fn classify(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.downcast_ref::<BudgetExceeded>().is_some() {
            return 3;
        }
        if let Some(err) = cause.downcast_ref::<Error>() {
            return match err {
                Error::PeriodNotFound { .. }
                | Error::InsufficientTerms { .. }
                | Error::PrecisionNotReached { .. }
                | Error::Undecided { .. }
                | Error::PrecisionExhausted { .. } => 3,
                _ => 2,
            };
        }
    }
    2
}

/// A partial quotient as a JSON number when it fits, else as a string.
pub fn term(t: &BigInt) -> Value {
    i64::try_from(t).map_or_else(|_| Value::from(t.to_string()), Value::from)
}

/// Up to `n` leading terms; a failing source ends the list early.
pub fn prefix(cf: &BigCf, n: usize) -> (Vec<BigInt>, Option<Error>) {
    let mut out = Vec::new();
    for t in cf.iter().take(n) {
        match t {
            Ok(t) => out.push(t),
            Err(e) => return (out, Some(e)),
        }
    }
    (out, None)
}

pub fn terms_json(cf: &BigCf, terms: &[BigInt]) -> Value {
    serde_json::json!({ "s_prefix": cf.s_prefix, "terms": terms.iter().map(term).collect::<Vec<_>>() })
}

pub fn terms_text(cf: &BigCf, terms: &[BigInt], more: bool) -> String {
    let body: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
    let head = match body.split_first() {
        Some((first, rest)) if rest.is_empty() => first.clone(),
        Some((first, rest)) => format!("{first}; {}", rest.join(", ")),
        None => String::new(),
    };
    format!("{}[{}{}]", if cf.s_prefix { "S" } else { "" }, head, if more { ", ..." } else { "" })
}
