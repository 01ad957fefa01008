use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use secant_trees::distributions::{
    count_trees, entringer_bruteforce, joint_matrix_bruteforce, DistError, EntringerTriangle,
};
use secant_trees::format::{matrix_to_csv, matrix_to_json, matrix_to_text, tree_to_json};
use secant_trees::recurrence::{self, RecurrenceError};
use secant_trees::series::{self, SeriesError};
use secant_trees::trees::{tree_from_perm, AltPerms};
use secant_trees::verify::{parse_checks, run_checks, Check, VerifyError};

/// Secant trees: enumeration, joint distributions, generating functions.
#[derive(Parser)]
#[command(name = "stc", version)]
struct Cli {
    /// Worker threads (STC_THREADS takes precedence; default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate complete increasing trees of size n.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Emit::Count)]
        emit: Emit,
    },
    /// The joint (eoc, pom) matrix M_2n.
    Matrix {
        #[arg(long = "two-n")]
        two_n: usize,
        #[arg(long, value_enum, default_value_t = MatrixMethod::Brute)]
        method: MatrixMethod,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Text)]
        format: MatrixFormat,
    },
    /// The Entringer triangle, rows 2..=n-max.
    Entringer {
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = EntMethod::Rule)]
        method: EntMethod,
    },
    /// Truncated generating functions.
    Series {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long)]
        order: u32,
        /// Comma-separated exponents; prints that EGF coefficient only.
        #[arg(long)]
        query: Option<String>,
    },
    /// Cross-check the three routes against each other.
    Verify {
        #[arg(long = "two-n-max", default_value_t = 10)]
        two_n_max: usize,
        /// Comma-separated check ids, or "all".
        #[arg(long)]
        checks: Option<String>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Count,
    Perms,
    Trees,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixMethod {
    Brute,
    Recurrence,
    Hybrid,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum EntMethod {
    Rule,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Sec,
    Omega1,
    Omega,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

enum Failure {
    Usage(String),
    Checks,
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.into())
    }
}

impl From<DistError> for Failure {
    fn from(e: DistError) -> Self {
        match e {
            DistError::OddSize(_) | DistError::TooSmall(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.into()),
        }
    }
}

impl From<RecurrenceError> for Failure {
    fn from(e: RecurrenceError) -> Self {
        match e {
            RecurrenceError::Dist(d) => d.into(),
            e => Failure::Internal(e.into()),
        }
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::OutOfOrder { .. } | SeriesError::BadVariable(_) => Failure::Usage(e.to_string()),
            e => Failure::Internal(e.into()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::BadSize(_) | VerifyError::UnknownCheck(_) => Failure::Usage(e.to_string()),
            VerifyError::Dist(d) => d.into(),
            VerifyError::Series(s) => s.into(),
            e => Failure::Internal(e.into()),
        }
    }
}

fn threads(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    match std::env::var("STC_THREADS") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("STC_THREADS={v:?} is not a thread count"))),
        Err(_) => Ok(flag),
    }
}

fn print_rows(out: &mut impl Write, tri: &EntringerTriangle, n_max: usize) -> io::Result<()> {
    for n in 2..=n_max {
        let row = tri.row(n).unwrap_or(&[]);
        let line: Vec<String> = row.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(t) = threads(cli.threads)? {
        if t == 0 {
            return Err(Failure::Usage("thread count must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("thread pool")?;
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.cmd {
        Cmd::Enumerate { n, emit } => {
            if n == 0 {
                return Err(Failure::Usage("n must be at least 1".into()));
            }
            match emit {
                Emit::Count => writeln!(out, "{}", count_trees(n))?,
                Emit::Perms => {
                    for p in AltPerms::new(n) {
                        writeln!(out, "{p}")?;
                    }
                }
                Emit::Trees => {
                    for p in AltPerms::new(n) {
                        writeln!(out, "{}", tree_to_json(&tree_from_perm(&p)))?;
                    }
                }
            }
        }
        Cmd::Matrix { two_n, method, format } => {
            let mat = match method {
                MatrixMethod::Brute => joint_matrix_bruteforce(two_n)?,
                MatrixMethod::Recurrence => recurrence::assemble(two_n, false)?,
                MatrixMethod::Hybrid => recurrence::assemble(two_n, true)?,
            };
            match format {
                MatrixFormat::Text => write!(out, "{}", matrix_to_text(&mat))?,
                MatrixFormat::Csv => write!(out, "{}", matrix_to_csv(&mat))?,
                MatrixFormat::Json => writeln!(out, "{}", matrix_to_json(&mat))?,
            }
        }
        Cmd::Entringer { n_max, method } => {
            if n_max < 2 {
                return Err(Failure::Usage("n-max must be at least 2".into()));
            }
            let tri = match method {
                EntMethod::Rule => recurrence::entringer_triangle(n_max),
                EntMethod::Brute => entringer_bruteforce(n_max)?,
            };
            print_rows(&mut out, &tri, n_max)?;
        }
        Cmd::Series { target, order, query } => {
            let s = match target {
                Target::Sec => series::sec(order),
                Target::Omega1 => series::omega1(order),
                Target::Omega => series::omega(order),
            };
            match query {
                Some(q) => {
                    let exps = q
                        .split(',')
                        .map(|x| x.trim().parse::<u32>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| Failure::Usage(format!("bad query {q:?}")))?;
                    if exps.len() != s.nvars() {
                        return Err(Failure::Usage(format!(
                            "query needs {} exponents, got {}",
                            s.nvars(),
                            exps.len()
                        )));
                    }
                    writeln!(out, "{}", s.egf_coefficient(&exps)?)?;
                }
                None => write!(out, "{}", s.dump())?,
            }
        }
        Cmd::Verify {
            two_n_max,
            checks,
            format,
        } => {
            let checks = match checks {
                Some(list) => parse_checks(&list)?,
                None => Check::DEFAULT.to_vec(),
            };
            let report = run_checks(two_n_max, &checks)?;
            match format {
                ReportFormat::Text => writeln!(out, "{report}")?,
                ReportFormat::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report).context("report")?
                )?,
            }
            out.flush()?;
            if !report.passed() {
                return Err(Failure::Checks);
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("stc: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("stc: {e:#}");
            ExitCode::from(1)
        }
    }
}
