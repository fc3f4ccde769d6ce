//! The `overpart` command line: tables, enumeration listings and identity
//! verification with JSON-lines or CSV output.
//!
//! Exit codes: 0 when every check passes, 1 on any identity violation,
//! 2 on usage or configuration errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::{ArithError, ModulusParams, SequenceKind};
use crate::identities::{IdentityError, IdentityReport, Params, Verifier};
use crate::overpartitions::{
    enumerate, pbar_table, CountMethod, OverpartitionError, STable, ENUMERATION_CAP,
};
use crate::qseries::overpartition_gf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "overpart", version, about = "Overpartition statistics and identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PbarMethod {
    Recurrence,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SMethod {
    Series,
    Enumerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityId {
    Rec,
    Th2,
    C3,
    Th1,
    #[value(name = "mu_decomp", alias = "mu-decomp")]
    MuDecomp,
    Phi,
    Prime,
    Squarefree,
    Gauss,
    Eq4,
}

#[derive(Debug, clap::Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write results here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rows (n, p̄(n)) for n = 0..=max.
    Pbar {
        #[arg(long, default_value_t = 120)]
        max: u64,
        #[arg(long, value_enum, default_value = "recurrence")]
        method: PbarMethod,
        #[command(flatten)]
        output: Output,
    },
    /// S(k, n) for every k, at one n (`--n`) or for n = 1..=max (`--max`).
    Stable {
        #[arg(long, conflicts_with = "max", required_unless_present = "max")]
        n: Option<u64>,
        #[arg(long)]
        max: Option<u64>,
        #[arg(long, value_enum, default_value = "series")]
        method: SMethod,
        #[command(flatten)]
        output: Output,
    },
    /// List the overpartitions of n, overlined parts marked with `*`.
    Enumerate {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an identity over a parameter grid.
    Verify {
        #[arg(value_enum)]
        identity: IdentityId,
        /// Weight sequence name, or `all` for the default grid.
        #[arg(long, default_value = "all")]
        seq: String,
        #[arg(long)]
        alpha: Option<u64>,
        #[arg(long, requires = "alpha")]
        beta: Option<u64>,
        /// Largest α in the default modulus grid.
        #[arg(long, default_value_t = 4)]
        alpha_max: u64,
        /// A single k; overrides `--kmax`.
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, default_value_t = 4)]
        kmax: u64,
        #[arg(long, default_value_t = 120)]
        max: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Overpartition(#[from] OverpartitionError),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => EXIT_VIOLATION,
            _ => EXIT_USAGE,
        }
    }
}

/// 0 when every report passed, 1 otherwise.
pub fn verify_exit_code(reports: &[IdentityReport]) -> i32 {
    if reports.iter().all(IdentityReport::passed) {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

/// Parse `args` (program name first) and run, writing to the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn sink<'a>(out: &Option<PathBuf>, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>, CliError> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(stdout),
    })
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Pbar {
            max,
            method,
            output,
        } => {
            let values = match method {
                PbarMethod::Recurrence => pbar_table(max),
                PbarMethod::Series => overpartition_gf(max as usize).into_coeffs(),
            };
            let rows = values.iter().enumerate().map(|(n, v)| PbarRow {
                n: n as u64,
                pbar: v.to_string(),
            });
            write_rows(rows, &output, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Stable {
            n,
            max,
            method,
            output,
        } => {
            let method = match method {
                SMethod::Series => CountMethod::Series,
                SMethod::Enumerate => CountMethod::Enumerate,
            };
            let range = match (n, max) {
                (Some(n), _) => n..=n,
                (None, Some(max)) => 1..=max,
                (None, None) => unreachable!("clap requires one of --n, --max"),
            };
            if method == CountMethod::Enumerate && *range.end() > ENUMERATION_CAP {
                return Err(CliError::Usage(format!(
                    "enumeration is capped at n = {ENUMERATION_CAP}"
                )));
            }
            let mut rows = Vec::new();
            for n in range {
                let table = STable::compute(n, method)?;
                for (i, s) in table.values().iter().enumerate() {
                    rows.push(SRow {
                        n,
                        k: i as u64 + 1,
                        s: s.to_string(),
                    });
                }
            }
            write_rows(rows.into_iter(), &output, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Enumerate { n, out } => {
            if n > ENUMERATION_CAP {
                return Err(CliError::Usage(format!(
                    "enumeration is capped at n = {ENUMERATION_CAP}, got {n}"
                )));
            }
            let mut w = sink(&out, stdout)?;
            for op in enumerate(n as u32) {
                writeln!(w, "{op}")?;
            }
            w.flush()?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            identity,
            seq,
            alpha,
            beta,
            alpha_max,
            k,
            kmax,
            max,
            output,
        } => {
            let moduli = match (alpha, beta) {
                (Some(a), Some(b)) => vec![ModulusParams::new(a, b)?],
                (Some(a), None) => {
                    if a == 0 {
                        return Err(ArithError::InvalidModulus { alpha: 0, beta: 0 }.into());
                    }
                    (0..a).map(|b| ModulusParams::new(a, b)).collect::<Result<_, _>>()?
                }
                (None, _) => ModulusParams::grid(alpha_max),
            };
            let ks: Vec<u64> = match k {
                Some(0) => return Err(CliError::Usage("k must be positive".into())),
                Some(k) => vec![k],
                None => (1..=kmax).collect(),
            };
            let reports = verify(identity, &seq, &moduli, &ks, max)?;
            for r in &reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                writeln!(
                    stderr,
                    "{status} {} {} n={}..={} violations={} ({:.1} ms)",
                    r.identity_id,
                    describe(&r.params),
                    r.range.0,
                    r.range.1,
                    r.violations().count(),
                    r.elapsed.as_secs_f64() * 1e3
                )?;
                for note in &r.notes {
                    writeln!(stderr, "  note: {note}")?;
                }
            }
            let rows = reports.iter().flat_map(|r| {
                r.rows.iter().map(move |row| ReportRow {
                    identity_id: &r.identity_id,
                    params: &r.params,
                    n: row.n,
                    lhs: &row.lhs,
                    rhs: &row.rhs,
                    pass: row.pass,
                })
            });
            write_rows(rows, &output, stdout)?;
            Ok(verify_exit_code(&reports))
        }
    }
}

fn describe(p: &Params) -> String {
    let mut parts = Vec::new();
    if let Some(s) = &p.seq {
        parts.push(format!("seq={s}"));
    }
    if let (Some(a), Some(b)) = (p.alpha, p.beta) {
        parts.push(format!("alpha={a} beta={b}"));
    }
    if let Some(k) = p.k {
        parts.push(format!("k={k}"));
    }
    parts.join(" ")
}

/// Sequences used when `--seq all` is given.
fn default_sequences(identity: IdentityId) -> Vec<SequenceKind> {
    use SequenceKind::*;
    match identity {
        IdentityId::C3 => vec![One, Phi, AbsMu, Chi, Sigma(1), TwoPowOmega],
        _ => {
            let mut v = SequenceKind::theorem_grid();
            v.push(Mangoldt);
            v
        }
    }
}

fn verify(
    identity: IdentityId,
    seq: &str,
    moduli: &[ModulusParams],
    ks: &[u64],
    n_max: u64,
) -> Result<Vec<IdentityReport>, CliError> {
    let kinds: Vec<SequenceKind> = if seq == "all" {
        default_sequences(identity)
    } else {
        vec![seq.parse()?]
    };
    let verifier = Verifier::new(n_max);
    let k_max = ks.iter().copied().max().unwrap_or(0);
    let mut reports = Vec::new();
    match identity {
        IdentityId::Rec => reports.push(verifier.check_rec()),
        IdentityId::Gauss => reports.push(verifier.check_gauss()),
        IdentityId::Eq4 => reports.extend(ks.iter().map(|&k| verifier.check_eq4(k))),
        IdentityId::MuDecomp => reports.push(verifier.check_mu_decomposition()?),
        IdentityId::Th1 => reports = verifier.th1_grid(&kinds, moduli)?,
        IdentityId::Th2 | IdentityId::C3 => {
            for &kind in &kinds {
                for &m in moduli {
                    let a = verifier.sequence(kind);
                    for &k in ks {
                        reports.push(match identity {
                            IdentityId::Th2 => verifier.check_th2(&a, m, k)?,
                            _ => verifier.check_c3(&a, m, k)?,
                        });
                    }
                }
            }
        }
        IdentityId::Phi => reports = verifier.check_phi_suite(k_max)?,
        IdentityId::Prime => reports = verifier.check_prime_suite(k_max)?,
        IdentityId::Squarefree => reports = verifier.check_squarefree_suite(k_max)?,
    }
    if matches!(identity, IdentityId::Phi | IdentityId::Prime | IdentityId::Squarefree) {
        reports.retain(|r| r.params.k.is_none_or(|k| ks.contains(&k)));
    }
    Ok(reports)
}

#[derive(Serialize)]
struct PbarRow {
    n: u64,
    pbar: String,
}

#[derive(Serialize)]
struct SRow {
    n: u64,
    k: u64,
    s: String,
}

#[derive(Serialize)]
struct ReportRow<'a> {
    identity_id: &'a str,
    params: &'a Params,
    n: u64,
    lhs: &'a crate::coeff::Number,
    rhs: &'a crate::coeff::Number,
    pass: bool,
}

trait CsvRecord {
    fn header() -> Vec<&'static str>;
    fn record(&self) -> Vec<String>;
}

impl CsvRecord for PbarRow {
    fn header() -> Vec<&'static str> {
        vec!["n", "pbar"]
    }

    fn record(&self) -> Vec<String> {
        vec![self.n.to_string(), self.pbar.clone()]
    }
}

impl CsvRecord for SRow {
    fn header() -> Vec<&'static str> {
        vec!["n", "k", "s"]
    }

    fn record(&self) -> Vec<String> {
        vec![self.n.to_string(), self.k.to_string(), self.s.clone()]
    }
}

impl CsvRecord for ReportRow<'_> {
    fn header() -> Vec<&'static str> {
        vec!["identity_id", "seq", "alpha", "beta", "k", "n", "lhs", "rhs", "pass"]
    }

    fn record(&self) -> Vec<String> {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        vec![
            self.identity_id.to_string(),
            self.params.seq.clone().unwrap_or_default(),
            opt(self.params.alpha),
            opt(self.params.beta),
            opt(self.params.k),
            self.n.to_string(),
            number_text(self.lhs),
            number_text(self.rhs),
            self.pass.to_string(),
        ]
    }
}

/// Same text JSON uses, so the two renderings carry identical numbers.
fn number_text(n: &crate::coeff::Number) -> String {
    match n {
        crate::coeff::Number::Int(v) => v.to_string(),
        crate::coeff::Number::Float(x) => serde_json::to_string(x).unwrap_or_else(|_| "null".into()),
    }
}

fn write_rows<R, I>(rows: I, output: &Output, stdout: &mut dyn Write) -> Result<(), CliError>
where
    R: Serialize + CsvRecord,
    I: Iterator<Item = R>,
{
    let mut w = sink(&output.out, stdout)?;
    match output.format {
        Format::Json => {
            for row in rows {
                serde_json::to_writer(&mut w, &row)?;
                w.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut w);
            csv.write_record(R::header())?;
            for row in rows {
                csv.write_record(row.record())?;
            }
            csv.flush()?;
        }
    }
    w.flush()?;
    Ok(())
}
