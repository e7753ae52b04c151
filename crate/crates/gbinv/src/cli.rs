use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, Parser, Subcommand};
use gbinv_core::invariants::Selection;
use gbinv_core::macaulay::{build_macaulay, lazard_closure};
use gbinv_core::{Analyzer, Limits, OrderKind, TermOrder};

use crate::corpus;
use crate::error::{CliError, Result};
use crate::report::{render_text, ReportJson, TimingJson};
use crate::syntax::{parse_order, parse_system, SystemFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CAP_MISS: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "gbinv", version, about = "Gröbner basis complexity invariants of polynomial systems over prime fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute invariants of the system in FILE.
    Invariants(InvariantsArgs),
    /// Run the bundled example corpus against its expected values.
    VerifyPaper(VerifyArgs),
    /// Dump a Macaulay matrix (or its closure) as CSV.
    Macaulay(MacaulayArgs),
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    pub file: PathBuf,
    /// Term order: drl, grlex or lex, optionally `:a>b>c`. Repeatable.
    #[arg(long)]
    pub order: Vec<String>,
    /// Comma-separated subset of sd,lfd,dff,dreg,reg,maxgb,table.
    #[arg(long, value_delimiter = ',')]
    pub compute: Vec<String>,
    /// Degree cap for closures and the equality table.
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Write the JSON report to PATH, or to stdout for `-`.
    #[arg(long, value_name = "PATH")]
    pub json: Option<String>,
    /// Include the per-degree trace.
    #[arg(long)]
    pub trace: bool,
    /// Leave the timing block out of the JSON report.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 5, value_parser = PossibleValuesParser::new(["3", "5", "7"]).map(|s| s.parse::<u64>().unwrap()))]
    pub q: u64,
    #[arg(long, value_name = "PATH")]
    pub json: Option<String>,
}

#[derive(Debug, Args)]
pub struct MacaulayArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub degree: usize,
    #[arg(long)]
    pub order: Option<String>,
    /// Dump the reduced closure instead of the plain matrix.
    #[arg(long)]
    pub closure: bool,
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Invariants(a) => run_invariants(&a, out, err),
        Command::VerifyPaper(a) => verify_paper(&a, out),
        Command::Macaulay(a) => dump_macaulay(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            EXIT_USAGE
        }
    }
}

fn read_system(path: &PathBuf) -> Result<SystemFile> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_system(&text)
}

fn write_output(target: &str, text: &str, out: &mut dyn Write) -> Result<()> {
    if target == "-" {
        out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "stdout".into(),
            source,
        })
    } else {
        std::fs::write(target, text).map_err(|source| CliError::Io {
            path: target.to_string(),
            source,
        })
    }
}

/// Parses the `--compute` list; empty means everything but the table.
pub fn parse_selection(items: &[String]) -> Result<Selection> {
    if items.is_empty() {
        return Ok(Selection::all());
    }
    let mut s = Selection::none();
    for item in items {
        match item.trim() {
            "sd" => s.solving_degree = true,
            "lfd" => s.last_fall = true,
            "dff" => s.first_fall = true,
            "dreg" => s.degree_of_regularity = true,
            "reg" => s.regularity = true,
            "maxgb" => s.max_gb = true,
            "table" => s.table = true,
            "" => {}
            other => {
                return Err(CliError::Usage(format!(
                    "unknown invariant '{}' (expected sd, lfd, dff, dreg, reg, maxgb or table)",
                    other
                )))
            }
        }
    }
    Ok(s)
}

/// Orders named on the command line, else the file's order, else
/// degrevlex and grlex.
pub fn resolve_orders(file: &SystemFile, tokens: &[String]) -> Result<Vec<TermOrder>> {
    let s = &file.base;
    if !tokens.is_empty() {
        return tokens
            .iter()
            .map(|t| parse_order(t, s.var_names(), file.hvar.as_deref()).map_err(CliError::Usage))
            .collect();
    }
    Ok(match &file.order {
        Some(o) => vec![o.clone()],
        None => vec![
            TermOrder::standard(OrderKind::Degrevlex, s.nvars()),
            TermOrder::standard(OrderKind::Grlex, s.nvars()),
        ],
    })
}

pub fn run_invariants(args: &InvariantsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let start = Instant::now();
    let file = read_system(&args.file)?;
    let selection = parse_selection(&args.compute)?;
    let orders = resolve_orders(&file, &args.order)?;
    if orders.iter().any(|o| o.kind() == OrderKind::Lex) {
        let _ = writeln!(
            err,
            "warning: lex is not degree-compatible; sd = max(d_F, maxGB) need not hold"
        );
    }
    let system = file.system();
    let limits = Limits {
        max_degree: args.max_degree,
        ..Limits::default()
    };
    let mut analyzer = Analyzer::new(system.clone(), limits);
    let report = analyzer.assemble_report(&orders, selection, args.max_degree);
    let mut json = ReportJson::new(&system, &report, args.trace);
    if !args.no_timing {
        json.timing = Some(TimingJson {
            total_ms: start.elapsed().as_millis() as u64,
        });
    }
    match args.json.as_deref() {
        Some(target) => {
            write_output(target, &json.to_json(), out)?;
            if target != "-" {
                let _ = out.write_all(render_text(&system, &report, args.trace).as_bytes());
            }
        }
        None => {
            let _ = out.write_all(render_text(&system, &report, args.trace).as_bytes());
        }
    }
    Ok(if report.has_cap_miss() { EXIT_CAP_MISS } else { EXIT_OK })
}

pub fn verify_paper(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let corpus = corpus::load()?;
    let v = corpus::verify(&corpus, args.q)?;
    let _ = out.write_all(v.render().as_bytes());
    if let Some(target) = &args.json {
        let mut text = serde_json::to_string_pretty(&v).expect("verification serializes");
        text.push('\n');
        write_output(target, &text, out)?;
    }
    Ok(if v.failures() == 0 { EXIT_OK } else { 1 })
}

pub fn dump_macaulay(args: &MacaulayArgs, out: &mut dyn Write) -> Result<i32> {
    let file = read_system(&args.file)?;
    let system = file.system();
    let names = system.var_names();
    let order = match &args.order {
        Some(t) => parse_order(t, names, file.hvar.as_deref()).map_err(CliError::Usage)?,
        None => file
            .order
            .clone()
            .unwrap_or_else(|| TermOrder::degrevlex(system.nvars())),
    };
    let mut text = String::from("row,monomial,coefficient\n");
    let mono = |m: &gbinv_core::Monomial| {
        gbinv_core::Polynomial::term(system.field(), m.clone(), 1)
            .display_with(names)
            .to_string()
    };
    let mut emit = |k: usize, f: &gbinv_core::Polynomial| {
        for (m, c) in f.sorted_terms(&order) {
            text.push_str(&format!("{},{},{}\n", k, mono(&m), c));
        }
    };
    if args.closure {
        let basis = lazard_closure(&system, args.degree, &order)?;
        for (k, f) in basis.rows().iter().enumerate() {
            emit(k, f);
        }
        let pivots: Vec<String> = basis.pivots().iter().map(mono).collect();
        text.push_str(&format!("# pivots: {}\n", pivots.join(" ")));
    } else {
        let m = build_macaulay(&system, args.degree, &order)?;
        for (k, r) in m.rows.iter().enumerate() {
            emit(k, &r.polynomial);
        }
    }
    write_output("-", &text, out)?;
    Ok(EXIT_OK)
}
