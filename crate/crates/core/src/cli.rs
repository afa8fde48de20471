//! The `mannheim` command line.
//!
//! Exit codes: `0` on success, `1` on domain errors (for example a prime that
//! does not split), `2` on usage errors. Usage errors print one line naming
//! the offending flag.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::codec::{Code, DecodeResult, Word, EXHAUSTIVE_SPACE_LIMIT};
use crate::error::Error;
use crate::field::{ResidueField, TableRow};
use crate::metric::{WeightKind, WeightTable, EXHAUSTIVE_AUDIT_LIMIT};
use crate::Label;

#[derive(Debug, Parser)]
#[command(
    name = "mannheim",
    version,
    about = "Residue constellations, Mannheim metrics and w-cyclic perfect codes over Z[w]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    #[value(name = "wM")]
    Original,
    #[value(name = "wm")]
    Corrected,
    #[value(name = "graph")]
    Graph,
}

impl From<KindArg> for WeightKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Original => WeightKind::Original,
            KindArg::Corrected => WeightKind::Corrected,
            KindArg::Graph => WeightKind::Graph,
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    /// Prime p = 1 (mod 6), 7 <= p <= 49999
    #[arg(long)]
    p: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Split p = pi * conj(pi) and report the labeling ratio r
    SplitPrime(Common),
    /// Export the label table of A_p[w]
    Table(Common),
    /// Audit the metric axioms for one weight kind
    AuditMetric {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Scan every pair and triple
        #[arg(long, conflicts_with = "trials")]
        exhaustive: bool,
        /// Number of sampled triples
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest p accepted by --exhaustive
        #[arg(long, default_value_t = EXHAUSTIVE_AUDIT_LIMIT)]
        exhaustive_limit: usize,
    },
    /// Tabulate the three weights side by side
    CompareWeights(Common),
    /// Encode a message given as comma-separated labels
    Encode {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long, value_parser = parse_word)]
        message: Word,
    },
    /// Correct a single unit error in a received word (t = 0 only)
    Decode {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long, value_parser = parse_word)]
        word: Word,
    },
    /// Check the sphere-packing identity and, when feasible, the ball partition
    VerifyPerfect {
        #[command(flatten)]
        common: Common,
        /// Require the exhaustive partition check (fails if p^n > 10^7)
        #[arg(long)]
        exhaustive: bool,
    },
    /// Run a seeded unit-error channel through the t = 0 code
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_probability)]
        epsilon: f64,
    },
}

fn parse_word(s: &str) -> Result<Word, String> {
    s.parse::<Word>().map_err(|e| e.to_string())
}

fn parse_probability(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside [0, 1]"))
    }
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::SplitPrime(c) | Command::Table(c) | Command::CompareWeights(c) => c,
            Command::AuditMetric { common, .. }
            | Command::Encode { common, .. }
            | Command::Decode { common, .. }
            | Command::VerifyPerfect { common, .. }
            | Command::Simulate { common, .. } => common,
        }
    }

    fn accepts_csv(&self) -> bool {
        matches!(self, Command::Table(_) | Command::CompareWeights(_))
    }
}

#[derive(Serialize)]
struct SplitPrimeOutput {
    p: usize,
    pi: [i64; 2],
    r: usize,
}

#[derive(Serialize)]
struct TableOutput {
    summary: crate::field::FieldSummary,
    rows: Vec<TableRow>,
}

#[derive(Serialize)]
struct EncodeOutput {
    p: usize,
    n: usize,
    t: usize,
    message: Word,
    codeword: Word,
}

#[derive(Serialize)]
struct DecodeOutput {
    p: usize,
    n: usize,
    #[serde(flatten)]
    result: DecodeResult,
    message: Word,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("report types serialize");
    s.push('\n');
    s
}

fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("label,x,y,x_bar,y_bar,norm\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.label, r.x, r.y, r.x_bar, r.y_bar, r.norm
        ));
    }
    out
}

fn execute(cmd: &Command) -> Result<String, Failure> {
    let common = cmd.common();
    if common.format == Format::Csv && !cmd.accepts_csv() {
        return Err(Failure::Usage(
            "error: '--format csv' is only valid for 'table' and 'compare-weights'".into(),
        ));
    }
    let field = Arc::new(ResidueField::build(common.p)?);
    let csv = common.format == Format::Csv;

    Ok(match cmd {
        Command::SplitPrime(_) => json(&SplitPrimeOutput {
            p: field.p(),
            pi: [field.pi().x, field.pi().y],
            r: field.r(),
        }),
        Command::Table(_) => {
            let rows = field.table();
            if csv {
                table_csv(&rows)
            } else {
                json(&TableOutput {
                    summary: field.summary(),
                    rows,
                })
            }
        }
        Command::AuditMetric {
            kind,
            exhaustive,
            trials,
            seed,
            exhaustive_limit,
            ..
        } => {
            let table = WeightTable::new(&field);
            let kind = WeightKind::from(*kind);
            let report = match (exhaustive, trials) {
                (true, _) => table.audit_exhaustive(kind, *exhaustive_limit)?,
                (false, Some(n)) => table.audit_sampled(kind, *n, *seed),
                (false, None) => table.audit_default(kind, *seed),
            };
            json(&report)
        }
        Command::CompareWeights(_) => {
            let report = WeightTable::new(&field).compare();
            if csv {
                report.to_csv()
            } else {
                json(&report)
            }
        }
        Command::Encode { t, message, .. } => {
            let code = Code::build(field.clone(), *t)?;
            let codeword = code.encode(message)?;
            json(&EncodeOutput {
                p: field.p(),
                n: code.n(),
                t: *t,
                message: message.clone(),
                codeword,
            })
        }
        Command::Decode { t, word, .. } => {
            let code = Code::build(field.clone(), *t)?;
            let result = code.decode_single(word)?;
            let message: Vec<Label> = code.message_of(&result.codeword)?;
            json(&DecodeOutput {
                p: field.p(),
                n: code.n(),
                result,
                message: Word::new(message),
            })
        }
        Command::VerifyPerfect { exhaustive, .. } => {
            let code = Code::build(field.clone(), 0)?;
            let within_cap =
                (field.p() as f64).powi(code.n() as i32) <= EXHAUSTIVE_SPACE_LIMIT as f64;
            json(&code.verify_perfect(*exhaustive || within_cap)?)
        }
        Command::Simulate {
            t,
            trials,
            seed,
            epsilon,
            ..
        } => {
            let code = Code::build(field.clone(), *t)?;
            json(&code.simulate(*trials, *seed, *epsilon)?)
        }
    })
}

/// Runs the command line with explicit output streams; returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                let _ = write!(stdout, "{}", e.render());
                return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                    2
                } else {
                    0
                };
            }
            let rendered = e.render().to_string();
            let line = rendered.lines().next().unwrap_or("error: invalid usage");
            let _ = writeln!(stderr, "{line}");
            return 2;
        }
    };

    let output = match execute(&cli.command) {
        Ok(s) => s,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "{msg}");
            return 2;
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return 1;
        }
    };

    let written = match &cli.command.common().output {
        Some(path) => {
            std::fs::write(path, output.as_bytes()).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => stdout
            .write_all(output.as_bytes())
            .map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => 0,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}

/// Runs the command line against the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
