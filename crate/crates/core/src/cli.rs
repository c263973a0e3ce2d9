//! Command-line front end. The binary only forwards its arguments to [`run`].
//!
//! Exit codes: 0 success, 2 hypotheses fail, 3 a check fails, 4 usage or
//! input error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::group::PermGroup;
use crate::projline::{Permutation, ProjLine};
use crate::psl2::{certify_simplicity, psl2_order, psl2_perm_group, sl2_group, Psl2Error};
use crate::search::{search, SearchMode};
use crate::verifier::{
    build_exceptional, corollary_check, p3_case_check, verify, Verdict, VerificationReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_HYPOTHESES: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "psl2kit",
    version,
    about = "PSL(2, q) on the projective line: construction, verification, search"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest group order that may be enumerated element by element.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_order: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the classification chain on a group.
    Classify {
        #[arg(long)]
        p: u32,
        /// `psl2`, `exceptional:3`, `exceptional:5` or `file:PATH`.
        #[arg(long, default_value = "psl2")]
        group: String,
    },
    /// Enumerate all groups satisfying the hypotheses.
    Search {
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value_t = Mode::Constrained)]
        mode: Mode,
    },
    /// Check a property of PSL(2, q).
    Psl2 {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum)]
        check: Psl2Check,
    },
    /// Identify PSL(2, p) through its action on Sylow p-subgroups.
    Corollary {
        #[arg(long)]
        p: u32,
    },
    /// Build and classify an exceptional group at p = 7.
    Exceptional {
        #[arg(long)]
        variant: u32,
    },
    /// The p = 3 case.
    P3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Full,
    Constrained,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Psl2Check {
    Order,
    Simplicity,
    Generation,
}

/// A rendered command result.
pub struct Output {
    pub exit: i32,
    pub json: String,
    pub text: String,
}

impl Output {
    fn from_report(report: &VerificationReport) -> Self {
        let exit = match report.verdict {
            Verdict::HypothesesFailed => EXIT_HYPOTHESES,
            Verdict::ContainsNegativeReciprocal | Verdict::Exceptional if report.all_passed() => {
                EXIT_OK
            }
            _ => EXIT_CHECK_FAILED,
        };
        Output {
            exit,
            json: report.to_json(),
            text: report.render_text(),
        }
    }

    fn from_value(value: Value, pass: bool) -> Self {
        let text = render_value(&value);
        Output {
            exit: if pass { EXIT_OK } else { EXIT_CHECK_FAILED },
            json: serde_json::to_string_pretty(&value).expect("value serializes"),
            text,
        }
    }
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Parses `args` (including the program name), runs the command and
/// writes the output. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let output = match execute(&cli) {
        Ok(output) => output,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let body = match cli.format {
        Format::Json => output.json + "\n",
        Format::Text => output.text,
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, body).map_err(|e| e.to_string()),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return EXIT_USAGE;
    }
    output.exit
}

pub fn execute(cli: &Cli) -> Result<Output, UsageError> {
    let cap = cli.max_order.map(u128::from);
    match &cli.command {
        Command::Classify { p, group } => {
            let mut g = resolve_group(*p, group)?;
            if let Some(cap) = cap {
                g = g.with_enumeration_cap(cap);
            }
            Ok(Output::from_report(&verify(&g, *p)?.report))
        }
        Command::Search { p, mode } => {
            let mode = match mode {
                Mode::Full => SearchMode::Full,
                Mode::Constrained => SearchMode::Constrained,
            };
            let outcome = search(*p, mode)?;
            let pass = outcome.matches_classification();
            let mut value = serde_json::to_value(&outcome)?;
            value["matches_classification"] = json!(pass);
            Ok(Output::from_value(value, pass))
        }
        Command::Psl2 { q, check } => psl2_command(*q, *check, cap),
        Command::Corollary { p } => Ok(Output::from_report(&corollary_check(*p)?)),
        Command::Exceptional { variant } => exceptional_command(*variant),
        Command::P3 => Ok(Output::from_report(&p3_case_check())),
    }
}

fn resolve_group(p: u32, source: &str) -> Result<PermGroup, UsageError> {
    if source == "psl2" {
        return Ok(psl2_perm_group(p as u64)?);
    }
    if let Some(v) = source.strip_prefix("exceptional:") {
        if p != 7 {
            return Err(UsageError("exceptional groups exist only for p = 7".into()));
        }
        let v: u32 = v.parse()?;
        return Ok(build_exceptional(v)?);
    }
    if let Some(path) = source.strip_prefix("file:") {
        let (file_p, g) = read_generators(Path::new(path))?;
        if file_p != p {
            return Err(UsageError(format!(
                "file declares p={file_p}, expected p={p}"
            )));
        }
        return Ok(g);
    }
    Err(UsageError(format!("unknown group source {source:?}")))
}

/// Reads a generators file: `p=<prime>` then one permutation per line.
pub fn read_generators(path: &Path) -> Result<(u32, PermGroup), UsageError> {
    let text = fs::read_to_string(path)?;
    parse_generators(&text)
}

pub fn parse_generators(text: &str) -> Result<(u32, PermGroup), UsageError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| UsageError("empty generators file".into()))?;
    let p: u32 = header
        .strip_prefix("p=")
        .ok_or_else(|| UsageError(format!("expected p=<prime>, found {header:?}")))?
        .trim()
        .parse()?;
    let line = ProjLine::prime(p)?;
    let gens = lines
        .map(|l| Permutation::parse_cycles(line.size(), l))
        .collect::<Result<Vec<_>, _>>()?;
    let g = if gens.is_empty() {
        PermGroup::trivial(line.size())
    } else {
        PermGroup::new(gens)?
    };
    Ok((p, g))
}

fn psl2_command(q: u64, check: Psl2Check, cap: Option<u128>) -> Result<Output, UsageError> {
    let mut g = psl2_perm_group(q)?;
    if let Some(cap) = cap {
        g = g.with_enumeration_cap(cap);
    }
    let (value, pass) = match check {
        Psl2Check::Order => {
            let expected = psl2_order(q) as u128;
            let pass = g.order() == expected;
            let value = json!({
                "q": q,
                "check": "order",
                "order": g.order(),
                "expected": expected,
                "pass": pass,
            });
            (value, pass)
        }
        Psl2Check::Simplicity => {
            let brute = g.is_simple()?;
            let certificate = match certify_simplicity(q) {
                Ok(c) => Some(c),
                Err(Psl2Error::FieldTooSmall(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let certified = certificate.as_ref().map(|c| c.verdict && c.reverify());
            let pass = match certified {
                Some(c) => c == brute,
                None => !brute,
            };
            let value = json!({
                "q": q,
                "check": "simplicity",
                "order": g.order(),
                "simple": brute,
                "certificate": certified,
                "certified_classes": certificate.as_ref().map(|c| c.classes.len()),
                "pass": pass,
            });
            (value, pass)
        }
        Psl2Check::Generation => {
            let line = ProjLine::with_order(q)?;
            let f = line.field();
            let two = PermGroup::new(vec![line.translation(f.one()), line.negative_reciprocal()])?;
            let matrices = match sl2_group(q) {
                Ok(sl2) => Some(sl2.perm_image()),
                Err(Psl2Error::FieldTooLarge(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let expected = psl2_order(q) as u128;
            let pass =
                two.order() == expected && matrices.as_ref().is_none_or(|m| m.same_elements(&two));
            let value = json!({
                "q": q,
                "check": "generation",
                "generators": [line.translation(f.one()), line.negative_reciprocal()],
                "generated_order": two.order(),
                "expected": expected,
                "equals_matrix_image": matrices.as_ref().map(|m| m.same_elements(&two)),
                "pass": pass,
            });
            (value, pass)
        }
    };
    Ok(Output::from_value(value, pass))
}

fn exceptional_command(variant: u32) -> Result<Output, UsageError> {
    let g = build_exceptional(variant)?;
    let classification = verify(&g, 7)?;
    let normal = &classification.dichotomy.normal_subgroup;
    let normal_order = if normal.is_empty() {
        0
    } else {
        PermGroup::generated_by(g.degree(), normal.clone())?.order()
    };
    let report = &classification.report;
    let pass = g.order() == 168
        && normal_order == 8
        && report.verdict == Verdict::Exceptional
        && report.all_passed();
    let value = json!({
        "variant": variant,
        "order": g.order(),
        "generators": g.generators(),
        "lambda": report.witness,
        "normal_subgroup_order": normal_order,
        "normal_subgroup_generators": normal,
        "verdict": report.verdict,
        "all_checks_pass": report.all_passed(),
        "pass": pass,
    });
    Ok(Output::from_value(value, pass))
}

fn render_value(value: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = value {
        for (k, v) in map {
            let shown = match v {
                Value::String(s) => s.clone(),
                Value::Array(items) if items.iter().all(Value::is_string) => items
                    .iter()
                    .filter_map(Value::as_str)
                    .collect::<Vec<_>>()
                    .join(", "),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {shown}\n"));
        }
    } else {
        out.push_str(&value.to_string());
        out.push('\n');
    }
    out
}
