use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fockalg::catalogue::{build, list_catalogue, parse_params, AlgebraKind, RepSpec};
use fockalg::fock::MatrixRep;
use fockalg::realize::{generator_matrix, Realization};
use fockalg::verify::{casimir_check, render, verify, Evaluator, VerificationReport};
use fockalg::Scalar;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "fockalg", version, about = "Exact Fock-space representations of Lie, super and quantum algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Render scalars as approximate decimals.
    #[arg(long, global = true)]
    decimal: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum RealizationArg {
    Fock,
    Diff,
    Fd,
    Jackson,
}

#[derive(Args)]
struct Target {
    /// Representation id, see `list`.
    rep: String,
    /// Parameters as name=value with exact rationals, e.g. n=2 delta=-1/3.
    params: Vec<String>,
    /// Degree cutoff of the truncated Fock space.
    #[arg(long)]
    cutoff: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// List the catalogue.
    List {
        /// Keep entries whose id or description contains this text, or of this kind (lie, super, quantum).
        #[arg(long)]
        filter: Option<String>,
    },
    /// Run the full verification suite on one representation.
    Verify(Target),
    /// Print the matrix of one generator.
    Matrix {
        #[command(flatten)]
        target: Target,
        /// Generator name.
        #[arg(long = "gen")]
        generator: String,
        #[arg(long, value_enum, default_value_t = RealizationArg::Fock)]
        realization: RealizationArg,
    },
    /// Check the Casimir value.
    Casimir(Target),
    /// Verify every catalogue entry at its example parameters.
    ReportAll {
        #[arg(long)]
        cutoff: Option<u32>,
    },
}

/// Failures that map to exit code 2.
#[derive(Debug, thiserror::Error)]
enum UsageError {
    #[error(transparent)]
    Core(#[from] fockalg::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Other(String),
}

struct Output {
    text: String,
    passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, passed: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out.text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), UsageError> {
    match &cli.out {
        Some(path) => {
            fs::write(path, text).map_err(|source| UsageError::Io { path: path.display().to_string(), source })
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(t: &Target) -> Result<RepSpec, UsageError> {
    Ok(build(&t.rep, &parse_params(&t.params)?)?)
}

fn run(cli: &Cli) -> Result<Output, UsageError> {
    match &cli.command {
        Command::List { filter } => Ok(Output::ok(list(cli, filter.as_deref()))),
        Command::Verify(t) => {
            let rep = load(t)?;
            let report = verify(&rep, t.cutoff)?;
            let text = match cli.format {
                Format::Json => json_text(cli, &report.to_json()),
                Format::Pretty => render(&report),
            };
            Ok(Output { text, passed: report.passed() })
        }
        Command::Matrix { target, generator, realization } => matrix(cli, target, generator, *realization),
        Command::Casimir(t) => casimir(cli, t),
        Command::ReportAll { cutoff } => report_all(cli, *cutoff),
    }
}

fn list(cli: &Cli, filter: Option<&str>) -> String {
    let entries: Vec<_> = list_catalogue()
        .into_iter()
        .filter(|e| filter.is_none_or(|f| e.id.contains(f) || e.description.contains(f) || kind_name(e.kind) == f))
        .collect();
    match cli.format {
        Format::Json => json_text(cli, &serde_json::to_value(&entries).expect("entries serialize")),
        Format::Pretty => {
            let mut out = String::new();
            for e in entries {
                let mut sig: Vec<String> = e.required.iter().map(|p| p.to_string()).collect();
                sig.extend(e.optional.iter().map(|p| format!("[{p}]")));
                out.push_str(&format!("{:<18} {:<16} {}\n", e.id, sig.join(" "), e.description));
            }
            out
        }
    }
}

fn kind_name(kind: AlgebraKind) -> &'static str {
    match kind {
        AlgebraKind::Lie => "lie",
        AlgebraKind::Super => "super",
        AlgebraKind::Quantum => "quantum",
    }
}

fn matrix(cli: &Cli, t: &Target, gen: &str, realization: RealizationArg) -> Result<Output, UsageError> {
    let rep = load(t)?;
    let kind = match realization {
        RealizationArg::Fock => None,
        RealizationArg::Diff => Some(Realization::Differential),
        RealizationArg::Fd => Some(Realization::FiniteDifference),
        RealizationArg::Jackson => Some(Realization::Jackson),
    };
    let m = generator_matrix(&rep, gen, kind, t.cutoff)?;
    let realization = kind.map_or("fock".to_string(), |k| k.to_string());
    let text = match cli.format {
        Format::Json => {
            let mut v = m.to_json();
            v["rep"] = json!(rep.id);
            v["params"] = rep.params_json();
            v["generator"] = json!(gen);
            v["realization"] = json!(realization);
            json_text(cli, &v)
        }
        Format::Pretty => pretty_matrix(cli, &rep, gen, &realization, &m),
    };
    Ok(Output::ok(text))
}

fn scalar_text(cli: &Cli, s: &Scalar) -> String {
    if cli.decimal {
        format!("{}", s.to_f64())
    } else {
        s.to_string()
    }
}

fn pretty_matrix(cli: &Cli, rep: &RepSpec, gen: &str, realization: &str, m: &MatrixRep) -> String {
    let cells: Vec<Vec<String>> =
        m.entries.iter().map(|row| row.iter().map(|c| scalar_text(cli, c)).collect()).collect();
    let labels: Vec<String> = m.basis.iter().map(|k| k.to_string()).collect();
    let width = cells.iter().flatten().chain(&labels).map(String::len).max().unwrap_or(1);
    let label_width = labels.iter().map(String::len).max().unwrap_or(1);
    let mut out = format!("{} {gen} ({realization}), cutoff {}, dimension {}\n", rep.id, m.cutoff, m.dim());
    out.push_str(&format!("{:label_width$} ", ""));
    for (j, l) in labels.iter().enumerate() {
        let mark = if m.is_overflow(j) { "*" } else { " " };
        out.push_str(&format!(" {l:>width$}{mark}"));
    }
    out.push('\n');
    for (l, row) in labels.iter().zip(&cells) {
        out.push_str(&format!("{l:>label_width$} "));
        for c in row {
            out.push_str(&format!(" {c:>width$} "));
        }
        out.push('\n');
    }
    if !m.overflow_columns.is_empty() {
        out.push_str("* image leaves the truncated space\n");
    }
    out
}

fn casimir(cli: &Cli, t: &Target) -> Result<Output, UsageError> {
    let rep = load(t)?;
    let spec = rep.casimir.as_ref().ok_or_else(|| UsageError::Other(format!("no Casimir recorded for {}", rep.id)))?;
    let cutoff = t.cutoff.unwrap_or_else(|| rep.default_cutoff());
    let mut ev = Evaluator::new(&rep);
    let check = casimir_check(&rep, &mut ev, cutoff)?.expect("casimir is recorded");
    let passed = check.passed();
    let text = match cli.format {
        Format::Json => {
            let mut v = json!({
                "rep": rep.id,
                "params": rep.params_json(),
                "cutoff": cutoff,
                "casimir": spec.label,
                "value": spec.expected,
                "check": check.to_json(),
            });
            if let Some(p) = &spec.quoted {
                v["quoted_value"] = json!(p);
            }
            json_text(cli, &v)
        }
        Format::Pretty => {
            let mut out = format!(
                "{} {} = {}  {}\n",
                rep.id,
                spec.label,
                scalar_text(cli, &spec.expected),
                check.status.as_str()
            );
            if let Some(p) = &spec.quoted {
                out.push_str(&format!("  commonly quoted value {} DIFFERS\n", scalar_text(cli, p)));
            }
            if let Some(w) = &check.witness {
                out.push_str(&format!("  witness: {w}\n"));
            }
            out
        }
    };
    Ok(Output { text, passed })
}

fn report_all(cli: &Cli, cutoff: Option<u32>) -> Result<Output, UsageError> {
    let mut reports: Vec<VerificationReport> = Vec::new();
    for e in list_catalogue() {
        let rep = build(e.id, &parse_params(&e.example)?)?;
        reports.push(verify(&rep, cutoff)?);
    }
    let passed = reports.iter().all(VerificationReport::passed);
    let text = match cli.format {
        Format::Json => json_text(cli, &Value::Array(reports.iter().map(VerificationReport::to_json).collect())),
        Format::Pretty => {
            let mut out: String = reports.iter().map(render).collect::<Vec<_>>().join("\n");
            let failed = reports.iter().filter(|r| !r.passed()).count();
            out.push_str(&format!("\n{} representations, {failed} failed\n", reports.len()));
            out
        }
    };
    Ok(Output { text, passed })
}

fn json_text(cli: &Cli, v: &Value) -> String {
    let v = if cli.decimal { decimal(v) } else { v.clone() };
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

/// Replaces every serialized scalar by an approximate number.
fn decimal(v: &Value) -> Value {
    match v {
        Value::Object(o) if o.contains_key("r") && o.keys().all(|k| k == "r" || k == "s2") => {
            match serde_json::from_value::<Scalar>(v.clone()) {
                Ok(s) => json!(s.to_f64()),
                Err(_) => v.clone(),
            }
        }
        Value::Object(o) => Value::Object(o.iter().map(|(k, x)| (k.clone(), decimal(x))).collect()),
        Value::Array(a) => Value::Array(a.iter().map(decimal).collect()),
        _ => v.clone(),
    }
}
