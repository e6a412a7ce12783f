//! Command-line front end: `list`, `verify`, `eval`.
//!
//! Exit codes: 0 all selected records pass, 1 an identity failed,
//! 2 usage, I/O or registry error, 3 convergence failure.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::engine::{self, Selection, Status, VerificationReport, VerificationResult, VerifyConfig};
use crate::seriesdsl::{builtin_sources, parse_registry_named, IdentityRecord, Kind, ParamRange, ParsedRegistry};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fibcat", version, about = "Verify Fibonacci-Catalan series identities")]
pub struct Cli {
    /// Extra registry file, merged with the builtin records (repeatable).
    #[arg(long = "registry", global = true, value_name = "PATH")]
    pub registries: Vec<PathBuf>,
    /// Skip the builtin registry.
    #[arg(long, global = true)]
    pub no_builtin: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List records.
    List(Filter),
    /// Verify records and write a report.
    Verify(VerifyArgs),
    /// Print both sides of one record.
    Eval(EvalArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Filter {
    /// Glob on record ids, e.g. 's3.*'.
    #[arg(long = "id", value_name = "GLOB")]
    pub id: Option<String>,
    #[arg(long, value_parser = parse_kind)]
    pub kind: Option<Kind>,
    /// Also select as-printed (misprint) records.
    #[arg(long)]
    pub include_printed: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub filter: Filter,
    /// Target digits for every numeric record (default: per record).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=10_000))]
    pub digits: Option<u32>,
    /// Parameter restriction, `name=a..b` or `name=v` (repeatable).
    #[arg(long = "param", value_parser = ParamRange::parse_one, value_name = "NAME=RANGE")]
    pub params: Vec<ParamRange>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Record id (or a glob matching exactly one record).
    #[arg(long = "id", value_name = "ID")]
    pub id: String,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=10_000))]
    pub digits: Option<u32>,
    #[arg(long = "param", value_parser = ParamRange::parse_one, value_name = "NAME=RANGE")]
    pub params: Vec<ParamRange>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse()
}

struct Failure(i32, String);

fn load_registry(cli: &Cli) -> Result<Vec<IdentityRecord>, Failure> {
    let mut all = ParsedRegistry::default();
    if !cli.no_builtin {
        for (name, text) in builtin_sources() {
            all.merge(parse_registry_named(text, name));
        }
    }
    for path in &cli.registries {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure(EXIT_USAGE, format!("cannot read registry {}: {e}", path.display())))?;
        all.merge(parse_registry_named(&text, &path.display().to_string()));
    }
    if !all.is_ok() {
        let msgs: Vec<String> = all.diagnostics.iter().map(|d| d.to_string()).collect();
        return Err(Failure(EXIT_USAGE, msgs.join("\n")));
    }
    let mut records = all.records;
    records.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(records)
}

fn selection(f: &Filter) -> Result<Selection, Failure> {
    let id_glob = match &f.id {
        Some(g) => Some(glob::Pattern::new(g).map_err(|e| Failure(EXIT_USAGE, format!("invalid --id glob `{g}`: {e}")))?),
        None => None,
    };
    Ok(Selection { id_glob, kind: f.kind, include_printed: f.include_printed })
}

/// Exit code for a set of results: failures of as-printed records only count
/// when nothing else was selected.
pub fn exit_code(results: &[VerificationResult]) -> i32 {
    let regular: Vec<&VerificationResult> = results.iter().filter(|r| !r.as_printed).collect();
    let counted: Vec<&VerificationResult> = if regular.is_empty() { results.iter().collect() } else { regular };
    if counted.iter().any(|r| r.convergence_failure) {
        EXIT_CONVERGENCE
    } else if counted.iter().any(|r| r.status != Status::Pass) {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}

fn cmd_list(records: &[IdentityRecord], f: &Filter, out: &mut dyn Write) -> Result<i32, Failure> {
    let sel = selection(f)?;
    for r in records.iter().filter(|r| sel.matches(r)) {
        let params = ParamRange::format_list(&r.params);
        let params = if params.is_empty() { "-".to_string() } else { params };
        let printed = if r.as_printed { "as_printed" } else { "-" };
        writeln!(out, "{}\t{}\t{}\t{}\t{}", r.id, r.kind, params, printed, r.paper_ref).map_err(io_failure)?;
    }
    Ok(EXIT_PASS)
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure(EXIT_USAGE, format!("write failed: {e}"))
}

fn cmd_verify(records: &[IdentityRecord], a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let selected = selection(&a.filter)?.apply(records);
    let config = VerifyConfig { digits: a.digits, params: a.params.clone() };
    let report = engine::verify_all(&selected, &config);
    let body = render(&report, a.report);
    match &a.out {
        Some(path) => {
            std::fs::write(path, &body)
                .map_err(|e| Failure(EXIT_USAGE, format!("cannot write {}: {e}", path.display())))?;
            let s = &report.summary;
            writeln!(out, "{} results: {} pass, {} fail, {} error -> {}", s.total, s.pass, s.fail, s.error, path.display())
                .map_err(io_failure)?;
        }
        None => out.write_all(body.as_bytes()).map_err(io_failure)?,
    }
    Ok(exit_code(&report.results))
}

fn render(report: &VerificationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Json => report.to_json(),
        ReportFormat::Csv => report.to_csv(),
    }
}

fn cmd_eval(records: &[IdentityRecord], a: &EvalArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let matches: Vec<&IdentityRecord> = match records.iter().find(|r| r.id == a.id) {
        Some(r) => vec![r],
        None => {
            let g = glob::Pattern::new(&a.id).map_err(|e| Failure(EXIT_USAGE, format!("invalid --id `{}`: {e}", a.id)))?;
            records.iter().filter(|r| g.matches(&r.id)).collect()
        }
    };
    let record = match matches.as_slice() {
        [] => return Err(Failure(EXIT_USAGE, format!("no record matches `{}`", a.id))),
        [r] => *r,
        many => {
            let ids: Vec<&str> = many.iter().map(|r| r.id.as_str()).collect();
            return Err(Failure(EXIT_USAGE, format!("`{}` is ambiguous: {}", a.id, ids.join(", "))));
        }
    };
    let config = VerifyConfig { digits: a.digits, params: a.params.clone() };
    let bindings = engine::effective_bindings(record, &a.params);
    if bindings.is_empty() {
        return Err(Failure(EXIT_USAGE, format!("no binding of `{}` lies in the requested parameter range", record.id)));
    }
    let mut code = EXIT_PASS;
    for env in &bindings {
        let label = if env.is_empty() { String::new() } else { format!(" [{}]", env.label()) };
        match engine::evaluate(record, env, &config) {
            Ok(ev) => {
                let d = ev.digits as usize;
                writeln!(out, "{}{label}", record.id).map_err(io_failure)?;
                writeln!(out, "  lhs      = {}", ev.lhs.to_decimal_string(d)).map_err(io_failure)?;
                writeln!(out, "  rhs      = {}", ev.rhs.to_decimal_string(d)).map_err(io_failure)?;
                writeln!(out, "  abs_diff = {:.3}", ev.abs_diff).map_err(io_failure)?;
                writeln!(out, "  terms    = {}", ev.terms_used).map_err(io_failure)?;
            }
            Err(e) => {
                writeln!(out, "{}{label}: error: {e}", record.id).map_err(io_failure)?;
                code = code.max(if e.is_convergence() { EXIT_CONVERGENCE } else { EXIT_FAIL });
            }
        }
    }
    Ok(code)
}

/// Runs the command line `args` (including the program name); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_PASS
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = load_registry(&cli).and_then(|records| match &cli.command {
        Command::List(f) => cmd_list(&records, f, out),
        Command::Verify(a) => cmd_verify(&records, a, out),
        Command::Eval(a) => cmd_eval(&records, a, out),
    });
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
