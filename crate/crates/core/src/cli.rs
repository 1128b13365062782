//! Command-line front end.
//!
//! `run` never touches the process: it returns the exit code and the text
//! destined for stdout and stderr, which keeps it testable in-process.

use std::fmt::Write as _;
use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::embed::{is_special_monoid, is_special_semigroup, DEFAULT_MIN_ORDER};
use crate::magma::{CayleyTable, Label};
use crate::modular::{generated_mul_semigroup, multiples, power_orbit};
use crate::reproduce::{verify, Fixtures};
use crate::rings::{multiples_ring, residue_ring, RingTable};
use crate::search::{emit_findings, scan, Finding, SearchKind, SearchSpec, DEFAULT_MAX_CARRIER};
use crate::text::{parse_ring, parse_table, render_table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ANALYSIS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest modulus for `zn orbit`.
const ORBIT_LIMIT: u64 = 10_000_000;
/// Largest modulus for commands that build full tables.
const TABLE_LIMIT: u64 = DEFAULT_MAX_CARRIER;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "finalg",
    version,
    about = "Finite semigroup and ring tables: classification and special-structure search"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyze a table or ring file.
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
    /// Structures inside Z_n.
    #[command(subcommand)]
    Zn(ZnCommand),
    /// Scan ranges of moduli for special structures.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Check the built-in worked examples against their reference fixtures.
    VerifyPaper {
        /// Read fixtures from this directory instead of the built-in copies.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum AnalyzeCommand {
    /// Cayley table file.
    Table {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MIN_ORDER, value_parser = clap::value_parser!(usize))]
        min_order: usize,
    },
    /// Ring file with `add:` and `mul:` sections.
    Ring { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum ZnCommand {
    /// Tail and period of the powers of a mod n.
    Orbit { a: u64, n: u64 },
    /// Multiplicative semigroup generated by a mod n.
    Gen {
        a: u64,
        n: u64,
        #[arg(long, default_value_t = DEFAULT_MIN_ORDER)]
        min_order: usize,
    },
    /// The ring Z_n, or its subring dZ_n.
    Ring {
        n: u64,
        #[arg(long)]
        divisor: Option<u64>,
    },
}

#[derive(Debug, clap::Args)]
struct ScanArgs {
    /// Moduli, as `lo..hi` (inclusive) or a single value.
    #[arg(long = "n", value_parser = parse_range)]
    n: RangeInclusive<u64>,
    /// Write findings to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run on a single thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Subcommand)]
enum SearchCommand {
    /// Special cyclic semigroups <a> in Z_n.
    Semigroups {
        #[command(flatten)]
        scan: ScanArgs,
        /// Generators, as `lo..hi` or a single value (default: all a < n).
        #[arg(long = "a", value_parser = parse_range)]
        a: Option<RangeInclusive<u64>>,
        #[arg(long, default_value_t = DEFAULT_MIN_ORDER)]
        min_order: usize,
    },
    /// Special rings among Z_n and dZ_n.
    Rings {
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Special ideals dZ_n of Z_n.
    Ideals {
        #[command(flatten)]
        scan: ScanArgs,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| format!("`{t}` is not a non-negative integer"))
    };
    match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (num(lo)?, num(hi)?);
            if lo > hi {
                return Err(format!("empty range {lo}..{hi}"));
            }
            Ok(lo..=hi)
        }
        None => num(s).map(|v| v..=v),
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Analysis(String),
}

type CmdResult = Result<(String, i32), Failure>;

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let result = match cli.command {
        Command::Analyze(cmd) => analyze(cmd, cli.format),
        Command::Zn(cmd) => zn(cmd, cli.format),
        Command::Search(cmd) => search(cmd, cli.format),
        Command::VerifyPaper { fixtures } => verify_paper(fixtures.as_deref(), cli.format),
    };
    match result {
        Ok((stdout, code)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(m)) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
        Err(Failure::Analysis(m)) => Outcome {
            code: EXIT_ANALYSIS,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
    }
}

fn analysis<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Analysis(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Analysis(format!("{}: {e}", path.display())))
}

fn json_doc(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join(labels: &[Label]) -> String {
    crate::embed::join_labels(labels, " ")
}

fn check_modulus(n: u64, limit: u64) -> Result<(), Failure> {
    if n == 0 || n > limit {
        return Err(Failure::Usage(format!(
            "modulus must be in 1..={limit}, got {n}"
        )));
    }
    Ok(())
}

fn table_report(t: &CayleyTable, min_order: usize, format: Format) -> String {
    let class = t.classify();
    let counterexample = t.associativity_counterexample();
    let semigroup = is_special_semigroup(t, min_order).ok();
    let monoid = class
        .identity
        .and_then(|_| is_special_monoid(t, min_order).ok());
    match format {
        Format::Json => json_doc(json!({
            "elements": t.labels(),
            "rows": t.label_rows(),
            "classification": class,
            "associative": counterexample.is_none(),
            "min_order": min_order,
            "special_semigroup": semigroup,
            "special_monoid": monoid,
        })),
        Format::Text => {
            let mut out = render_table(t, "x");
            out.push('\n');
            let _ = writeln!(out, "classification: {class}");
            let idem: Vec<Label> = class.idempotents.iter().copied().collect();
            let _ = writeln!(out, "idempotents: {}", join(&idem));
            let _ = writeln!(out, "commutative: {}", yes_no(class.commutative));
            if let Some((x, a, y)) = counterexample {
                let (x, a, y) = (t.label(x), t.label(a), t.label(y));
                let _ = writeln!(out, "associative: no, ({x}*{a})*{y} != {x}*({a}*{y})");
            }
            if let Some(v) = semigroup {
                let _ = writeln!(
                    out,
                    "special semigroup (min order {min_order}): {}",
                    verdict_text(&v)
                );
            }
            if let Some(v) = monoid {
                let _ = writeln!(
                    out,
                    "special monoid (min order {min_order}): {}",
                    verdict_text(&v)
                );
            }
            out
        }
    }
}

fn verdict_text<W: std::fmt::Display>(v: &crate::embed::SpecialVerdict<W>) -> String {
    if v.special {
        let ws: Vec<String> = v.witnesses.iter().map(|w| w.to_string()).collect();
        format!("yes, {}", ws.join("; "))
    } else {
        format!("no ({})", v.reason)
    }
}

fn ring_report(
    rt: &RingTable,
    extra: Vec<(&str, Value, String)>,
    format: Format,
) -> Result<String, Failure> {
    let class = rt.classify();
    let fields = rt.embedded_fields().map_err(analysis)?;
    let special = rt.is_special_ring().map_err(analysis)?;
    Ok(match format {
        Format::Json => {
            let mut doc = json!({
                "elements": rt.labels(),
                "zero": rt.zero(),
                "classification": class,
                "embedded_fields": fields,
                "special_ring": special,
            });
            for (key, value, _) in extra {
                doc[key] = value;
            }
            json_doc(doc)
        }
        Format::Text => {
            let mut out = render_table(rt.add_table(), "+");
            out.push('\n');
            out.push_str(&render_table(rt.mul_table(), "x"));
            out.push('\n');
            let _ = writeln!(out, "classification: {class}");
            let _ = writeln!(out, "zero: {}", rt.zero());
            if fields.is_empty() {
                let _ = writeln!(out, "embedded fields: none");
            }
            for f in &fields {
                let _ = writeln!(out, "embedded field: {f}");
            }
            let _ = writeln!(out, "special ring: {}", verdict_text(&special));
            for (_, _, line) in extra {
                out.push_str(&line);
            }
            out
        }
    })
}

fn analyze(cmd: AnalyzeCommand, format: Format) -> CmdResult {
    match cmd {
        AnalyzeCommand::Table { file, min_order } => {
            let t = parse_table(&read(&file)?).map_err(analysis)?;
            Ok((table_report(&t, min_order.max(1), format), EXIT_OK))
        }
        AnalyzeCommand::Ring { file } => {
            let rt = parse_ring(&read(&file)?).map_err(analysis)?;
            Ok((ring_report(&rt, Vec::new(), format)?, EXIT_OK))
        }
    }
}

fn zn(cmd: ZnCommand, format: Format) -> CmdResult {
    match cmd {
        ZnCommand::Orbit { a, n } => {
            check_modulus(n, ORBIT_LIMIT)?;
            let o = power_orbit(a, n);
            let out = match format {
                Format::Json => json_doc(json!(o)),
                Format::Text => {
                    let residues: Vec<String> = o.residues.iter().map(|r| r.to_string()).collect();
                    format!(
                        "residues: {}\ntail: {}\nperiod: {}\n{}^{} = {}^{} (mod {})\n",
                        residues.join(" "),
                        o.tail,
                        o.period,
                        o.base,
                        o.tail,
                        o.base,
                        o.tail + o.period,
                        o.modulus
                    )
                }
            };
            Ok((out, EXIT_OK))
        }
        ZnCommand::Gen { a, n, min_order } => {
            check_modulus(n, TABLE_LIMIT)?;
            let t = generated_mul_semigroup(a, n);
            Ok((table_report(&t, min_order.max(1), format), EXIT_OK))
        }
        ZnCommand::Ring { n, divisor } => {
            check_modulus(n, TABLE_LIMIT)?;
            let Some(d) = divisor else {
                return Ok((ring_report(&residue_ring(n), Vec::new(), format)?, EXIT_OK));
            };
            if d == 0 {
                return Err(Failure::Usage("divisor must be positive".into()));
            }
            let zn = residue_ring(n);
            let subset: Vec<Label> = multiples(d, n).into_iter().map(|r| r as Label).collect();
            let subring = zn.is_special_subring(&subset).map_err(analysis)?;
            let ideal = zn.is_special_ideal(&subset).map_err(analysis)?;
            let extra = vec![
                (
                    "special_subring_of_zn",
                    json!(subring),
                    format!("special subring of Z_{n}: {}\n", verdict_text(&subring)),
                ),
                (
                    "special_ideal_of_zn",
                    json!(ideal),
                    format!("special ideal of Z_{n}: {}\n", verdict_text(&ideal)),
                ),
            ];
            Ok((ring_report(&multiples_ring(d, n), extra, format)?, EXIT_OK))
        }
    }
}

fn search(cmd: SearchCommand, format: Format) -> CmdResult {
    let (spec, args) = match cmd {
        SearchCommand::Semigroups { scan, a, min_order } => {
            let mut spec = SearchSpec::new(SearchKind::SpecialSemigroup, scan.n.clone());
            spec.generator_range = a;
            spec.min_group_order = min_order;
            (spec, scan)
        }
        SearchCommand::Rings { scan } => (
            SearchSpec::new(SearchKind::SpecialRing, scan.n.clone()),
            scan,
        ),
        SearchCommand::Ideals { scan } => (
            SearchSpec::new(SearchKind::SpecialIdeal, scan.n.clone()),
            scan,
        ),
    };
    let spec = SearchSpec {
        parallel: !args.sequential,
        ..spec
    };
    let findings = scan(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
    match args.out {
        Some(path) => {
            let file = fs::File::create(&path)
                .map_err(|e| Failure::Analysis(format!("{}: {e}", path.display())))?;
            let count =
                emit_findings(&findings, std::io::BufWriter::new(file)).map_err(analysis)?;
            let out = match format {
                Format::Json => {
                    json_doc(json!({ "written": count, "out": path.display().to_string() }))
                }
                Format::Text => format!("{count} findings written to {}\n", path.display()),
            };
            Ok((out, EXIT_OK))
        }
        None => match format {
            Format::Json => Ok((json_doc(json!(findings)), EXIT_OK)),
            Format::Text => {
                let mut buf = Vec::new();
                emit_findings(&findings, &mut buf).map_err(analysis)?;
                Ok((String::from_utf8(buf).expect("json is utf-8"), EXIT_OK))
            }
        },
    }
}

fn verify_paper(dir: Option<&Path>, format: Format) -> CmdResult {
    let fixtures = match dir {
        Some(d) => Fixtures::from_dir(d),
        None => Fixtures::builtin(),
    };
    let results = verify(&fixtures);
    let passed = results.iter().filter(|r| r.pass).count();
    let code = if passed == results.len() {
        EXIT_OK
    } else {
        EXIT_ANALYSIS
    };
    let out = match format {
        Format::Json => json_doc(json!(results)),
        Format::Text => {
            let mut out = String::new();
            for r in &results {
                let _ = writeln!(out, "[{}] {}", if r.pass { "PASS" } else { "FAIL" }, r.name);
                if !r.pass {
                    let _ = writeln!(out, "  expected: {}", r.expected.replace('\n', " | "));
                    let _ = writeln!(out, "  actual:   {}", r.actual.replace('\n', " | "));
                }
            }
            let _ = writeln!(out, "{passed}/{} checks passed", results.len());
            out
        }
    };
    Ok((out, code))
}

/// Parses findings back from the line format.
pub fn read_findings(text: &str) -> Result<Vec<Finding>, serde_json::Error> {
    text.lines().map(serde_json::from_str).collect()
}
