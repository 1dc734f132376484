use std::path::PathBuf;

use clap::{Parser, Subcommand};
use qsl2_core::center::{harish_chandra, sigma_expand};
use qsl2_core::coeff::RatFunc;
use qsl2_core::completion::{ideal_member, Filtration, Ideal, TruncatedElement};
use qsl2_core::hopf::{adjoint, antipode, coproduct, counit, theta_trunc, TensorElement};
use qsl2_core::pbw::{grade_decompose, Grading};
use serde_json::json;

use crate::config::{load_config, Format, Settings};
use crate::error::{CliError, CliResult};
use crate::eval::{eval_pbw, eval_str, Value};
use crate::json;
use crate::suites::{run_checks, suite_checks, SUITES};

#[derive(Parser, Debug)]
#[command(name = "qsl2", version, about = "Exact computations in the integral form of quantum sl2")]
pub struct Cli {
    /// Output format: text or json.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Range bound for verify suites.
    #[arg(long, global = true)]
    pub max: Option<u32>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// key=value file with defaults for the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// PBW normal form of an expression.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Coproduct.
    Delta {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Counit.
    Counit {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Antipode.
    Antipode {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Harish-Chandra projection onto the torus.
    Hc {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Adjoint action x |> y.
    Ad {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Expansion of a central element in the basis sigma(n), C sigma(n).
    CentralExpand {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Ideal membership: IN, OUT or UNKNOWN.
    Member {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// U1pow, U0kl, Un, UPrime or Ue.
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        n: u32,
        /// Second index of U0kl (defaults to n).
        #[arg(long)]
        l: Option<u32>,
    },
    /// Canonical truncation at a finite precision.
    Truncate {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Un or U1pow.
        #[arg(long)]
        filtration: String,
        #[arg(long)]
        n: u32,
    },
    /// Truncated quasi-R-matrix.
    Theta {
        #[arg(long, allow_hyphen_values = true)]
        terms: i64,
    },
    /// Run invariant suites.
    Verify {
        /// qcomb, torus, pbw, hopf, center, completion, all, or literal-un
        /// (a known counterexample search, excluded from all).
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Homogeneous components for a grading.
    Grade {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Z, K2 or V2.
        #[arg(long, default_value = "Z")]
        grading: String,
    },
}

#[derive(Debug, Default)]
pub struct Output {
    /// 0, or 1 when a verification failed.
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Tensor text for command output: ascending terms, unit coefficients
/// omitted, e.g. `1 (x) 1 - F(1) (x) e`. Re-parses to the same tensor.
pub fn tensor_text(t: &TensorElement) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let one = RatFunc::one();
    let neg_one = -RatFunc::one();
    let mut out = String::new();
    for (i, (slots, c)) in t.terms().iter().enumerate() {
        let body = slots.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" (x) ");
        let (neg, text) = if *c == one {
            (false, body)
        } else if *c == neg_one {
            (true, body)
        } else {
            (false, format!("({c}) {body}"))
        };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&text);
    }
    out
}

pub fn value_text(v: &Value) -> String {
    match v {
        Value::Pbw(x) => x.to_string(),
        Value::Tensor(t) => tensor_text(t),
    }
}

fn ideal_from(name: &str, n: u32, l: Option<u32>) -> CliResult<Ideal> {
    Ok(match name {
        "U1pow" => Ideal::U1Pow(n),
        "U0kl" => Ideal::U0kl(n, l.unwrap_or(n)),
        "Un" => Ideal::Un(n),
        "UPrime" => Ideal::UPrime(n),
        "Ue" => Ideal::UeCentral(n),
        _ => return Err(CliError::Usage(format!("unknown ideal '{name}' (expected U1pow, U0kl, Un, UPrime or Ue)"))),
    })
}

fn ideal_label(i: Ideal) -> String {
    match i {
        Ideal::U1Pow(n) => format!("U1pow({n})"),
        Ideal::U0kl(k, l) => format!("U0kl({k},{l})"),
        Ideal::Un(n) => format!("Un({n})"),
        Ideal::UPrime(n) => format!("UPrime({n})"),
        Ideal::UeCentral(n) => format!("Ue({n})"),
    }
}

fn grading_from(name: &str) -> CliResult<Grading> {
    match name {
        "Z" => Ok(Grading::Z),
        "K2" => Ok(Grading::K2),
        "V2" => Ok(Grading::V2),
        _ => Err(CliError::Usage(format!("unknown grading '{name}' (expected Z, K2 or V2)"))),
    }
}

fn filtration_from(name: &str) -> CliResult<Filtration> {
    match name {
        "Un" => Ok(Filtration::Un),
        "U1pow" => Ok(Filtration::U1pow),
        _ => Err(CliError::Usage(format!("unknown filtration '{name}' (expected Un or U1pow)"))),
    }
}

const NON_INTEGRAL: &str = "note: result has coefficients outside Z[v,v^-1]\n";

struct Emit<'a> {
    format: Format,
    out: &'a mut Output,
}

impl Emit<'_> {
    fn doc(&mut self, text: String, j: serde_json::Value, integral: bool) {
        match self.format {
            Format::Text => self.out.stdout.push_str(&text),
            Format::Json => self.out.stdout.push_str(&json::render(&j)),
        }
        self.out.stdout.push('\n');
        if !integral {
            self.out.stderr.push_str(NON_INTEGRAL);
        }
    }
}

pub fn settings(cli: &Cli) -> CliResult<Settings> {
    let file = match &cli.config {
        Some(p) => load_config(p)?,
        None => Default::default(),
    };
    let format = match &cli.format {
        Some(f) => Format::parse(f)?,
        None => file.format.unwrap_or_default(),
    };
    Ok(Settings { format, max: cli.max.or(file.max), seed: cli.seed.or(file.seed).unwrap_or(0) })
}

pub fn execute(cli: &Cli) -> CliResult<Output> {
    let st = settings(cli)?;
    let mut out = Output::default();
    let mut emit = Emit { format: st.format, out: &mut out };
    match &cli.cmd {
        Cmd::Normalize { expr } => {
            let v = eval_str(expr)?;
            emit.doc(value_text(&v), json::value(&v), v.is_integral());
        }
        Cmd::Delta { expr } => {
            let d = coproduct(&eval_pbw(expr)?);
            emit.doc(tensor_text(&d), json::tensor(&d), d.is_integral());
        }
        Cmd::Counit { expr } => {
            let c = counit(&eval_pbw(expr)?);
            emit.doc(c.to_string(), json::scalar(&c), c.is_integral());
        }
        Cmd::Antipode { expr } => {
            let s = antipode(&eval_pbw(expr)?);
            emit.doc(s.to_string(), json::pbw(&s), s.is_integral());
        }
        Cmd::Hc { expr } => {
            let t = harish_chandra(&eval_pbw(expr)?)?;
            emit.doc(t.to_string(), json::torus(&t), t.is_integral());
        }
        Cmd::Ad { x, y } => {
            let a = adjoint(&eval_pbw(x)?, &eval_pbw(y)?);
            emit.doc(a.to_string(), json::pbw(&a), a.is_integral());
        }
        Cmd::CentralExpand { expr } => {
            let p = sigma_expand(&eval_pbw(expr)?)?;
            emit.doc(p.to_string(), json::central(&p), p.is_integral());
        }
        Cmd::Member { expr, ideal, n, l } => {
            let i = ideal_from(ideal, *n, *l)?;
            let m = ideal_member(&eval_pbw(expr)?, i)?;
            emit.doc(m.to_string(), json::membership(&ideal_label(i), m), true);
        }
        Cmd::Truncate { expr, filtration, n } => {
            let t = TruncatedElement::truncate(&eval_pbw(expr)?, filtration_from(filtration)?, *n)?;
            emit.doc(t.to_string(), json::truncated(&t), true);
        }
        Cmd::Theta { terms } => {
            let t = theta_trunc(*terms)?;
            emit.doc(tensor_text(&t), json::tensor(&t), t.is_integral());
        }
        Cmd::Grade { expr, grading } => {
            let g = grading_from(grading)?;
            let x = eval_pbw(expr)?;
            let parts = grade_decompose(&x, g);
            let text = if parts.is_empty() {
                "0".to_string()
            } else {
                parts.iter().map(|(d, p)| format!("degree {d}: {p}")).collect::<Vec<_>>().join("\n")
            };
            let j = json!({
                "grading": grading,
                "parts": parts.iter().map(|(d, p)| json!({"degree": d, "element": json::pbw(p)})).collect::<Vec<_>>(),
            });
            emit.doc(text, j, x.is_integral());
        }
        Cmd::Verify { suite } => return verify(suite, &st, out),
    }
    Ok(out)
}

fn verify(suite: &str, st: &Settings, mut out: Output) -> CliResult<Output> {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut checks = Vec::new();
    for name in &names {
        match suite_checks(name, st.max, st.seed) {
            Some(c) => checks.extend(c),
            None => {
                return Err(CliError::Usage(format!(
                    "unknown suite '{name}' (expected one of {}, all, literal-un)",
                    SUITES.join(", ")
                )))
            }
        }
    }
    let results = run_checks(&checks);
    let passed = results.iter().filter(|r| r.outcome.passed()).count();
    let max = st.max.map_or("default".to_string(), |m| m.to_string());
    match st.format {
        Format::Text => {
            out.stdout.push_str(&format!("verify suite={suite} seed={} max={max}\n", st.seed));
            for r in &results {
                let tag = if r.outcome.passed() { "PASS" } else { "FAIL" };
                out.stdout.push_str(&format!("[{tag}] {}: {} ({} instances)\n", r.suite, r.anchor, r.outcome.count));
                if let Some(f) = &r.outcome.failure {
                    out.stdout.push_str(&format!("  counterexample: {f}\n"));
                }
            }
            out.stdout.push_str(&format!("{passed}/{} checks passed\n", results.len()));
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = results
                .iter()
                .map(|r| {
                    json!({
                        "suite": r.suite,
                        "anchor": r.anchor,
                        "passed": r.outcome.passed(),
                        "count": r.outcome.count,
                        "counterexample": r.outcome.failure,
                    })
                })
                .collect();
            let doc = json!({"suite": suite, "seed": st.seed, "max": st.max, "checks": items, "passed": passed == results.len()});
            out.stdout.push_str(&json::render(&doc));
            out.stdout.push('\n');
        }
    }
    for r in &results {
        out.stderr.push_str(&format!("{}: {} took {:.2}s\n", r.suite, r.anchor, r.elapsed.as_secs_f64()));
    }
    if passed != results.len() {
        let first = results.iter().find(|r| !r.outcome.passed()).expect("a failing check");
        let why = first.outcome.failure.clone().unwrap_or_default();
        out.stderr.push_str(&format!("verification failed: {}: {}: {why}\n", first.suite, first.anchor));
        out.code = 1;
    }
    Ok(out)
}
