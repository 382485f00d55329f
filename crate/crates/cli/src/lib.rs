//! `eposic` command line: construct, verify, decompose and analyze the
//! SU(2)-irreducibly covariant channels `Φ_{m,n,h}`.
//!
//! Output is deterministic. In `--exact` mode every matrix entry carries its
//! exact string, and JSON matrices can be fed back to `decompose`,
//! `classify` and `verify --choi`.

pub mod cache;
pub mod render;
pub mod selftest;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eposic::channels::{
    enumerate_ec, is_unital_scaled, kraus_from_alpha, kraus_symmetry_report, verify_channel, ChannelReport,
    EposicChannel, Superoperator,
};
use eposic::clebsch::{alpha_from_table, CgIndex};
use eposic::covariant::{analyze_family, classify, decompose};
use eposic::io::IoError;
use eposic::scalar::{ExactScalar, Rational};
use eposic::space::{Kind, LinOp};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::cache::EpsilonSource;
use crate::render::Renderer;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Input { path: PathBuf, source: std::io::Error },
    #[error("invalid matrix file {path}: {source}")]
    Matrix { path: PathBuf, source: IoError },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("write error: {0}")]
    Output(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for bad flags or input, 1 for failed checks and everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input { .. } | CliError::Matrix { .. } => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "eposic", version, about = "Exact SU(2)-irreducibly covariant quantum channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Significant digits for float columns (1 to 17).
    #[arg(long, default_value_t = 17, global = true, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub float_digits: u8,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct IndexArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub h: u32,
}

impl IndexArgs {
    fn index(&self) -> Result<CgIndex, CliError> {
        CgIndex::new(self.m, self.n, self.h).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kraus operators T_0..T_n of Φ_{m,n,h}.
    Kraus {
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long)]
        exact: bool,
    },
    /// Choi matrix of Φ_{m,n,h} on P_m ⊗ conj(P_r).
    Choi {
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long)]
        exact: bool,
    },
    /// The isometry α_{m,n,h}, or with --table its coefficient table ε.
    Alpha {
        #[command(flatten)]
        index: IndexArgs,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        table: bool,
    },
    /// The extreme points of the covariant channels End(P_r) → End(P_m).
    Enumerate {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        m: u32,
    },
    /// Check the channel axioms for Φ_{m,n,h} or for a Choi matrix from a file.
    Verify {
        #[arg(long, required_unless_present = "choi", requires_all = ["n", "h"], conflicts_with = "choi")]
        m: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        h: Option<u32>,
        #[arg(long)]
        choi: Option<PathBuf>,
    },
    /// Coordinates of a map in the covariant span, plus the residual.
    Decompose {
        #[arg(long)]
        choi: PathBuf,
    },
    /// covariant_channel, covariant_cp_multiple, covariant_not_cp or not_covariant.
    Classify {
        #[arg(long)]
        choi: PathBuf,
    },
    /// Positivity of Φ_{m,m+1,m} − α Φ_{m,m−1,m−1}.
    Positivity {
        #[arg(long)]
        m: u32,
        /// Rational as P/Q or P; may be negative.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        alpha: Rational,
    },
    /// Run the invariant suite for all indices with m, n up to the bound.
    Selftest {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        max_degree: u32,
    },
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let q: BigInt = q.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(p, q))
}

fn read_superoperator(path: &PathBuf) -> Result<Superoperator, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Input { path: path.clone(), source })?;
    let choi = eposic::io::matrix_from_json(&text).map_err(|source| CliError::Matrix { path: path.clone(), source })?;
    superoperator_from_choi(choi).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Accepts exactly the Choi labels `P_m ⊗ conj(P_r)`.
pub fn superoperator_from_choi(choi: LinOp) -> Result<Superoperator, String> {
    let f = &choi.domain().factors;
    let ok = f.len() == 2 && f[0].kind == Kind::Plain && f[1].kind == Kind::Conjugate && f[0].degree >= 0 && f[1].degree >= 0;
    if !ok {
        return Err(format!("expected a Choi matrix on P_m ⊗ conj(P_r), found {}", choi.domain()));
    }
    let (m, r) = (f[0].degree as u32, f[1].degree as u32);
    Superoperator::new(r, m, choi).map_err(|e| e.to_string())
}

pub fn run(cli: &Cli, source: &dyn EpsilonSource, out: &mut dyn Write) -> Result<(), CliError> {
    let rd = Renderer { format: cli.format, digits: cli.float_digits };
    match &cli.command {
        Command::Kraus { index, exact } => {
            let ix = index.index()?;
            let alpha = alpha_from_table(&source.table(ix));
            let kraus = kraus_from_alpha(ix, &alpha);
            rd.kraus(out, ix, &kraus.operators, *exact)
        }
        Command::Choi { index, exact } => {
            let ix = index.index()?;
            let alpha = alpha_from_table(&source.table(ix));
            let choi = kraus_from_alpha(ix, &alpha).choi();
            rd.choi(out, ix, &choi, *exact)
        }
        Command::Alpha { index, exact, table } => {
            let ix = index.index()?;
            let t = source.table(ix);
            if *table {
                rd.epsilon(out, &t, *exact)
            } else {
                rd.alpha(out, ix, &alpha_from_table(&t), *exact)
            }
        }
        Command::Enumerate { r, m } => rd.enumerate(out, *r, *m, &enumerate_ec(*r, *m)),
        Command::Verify { m, n, h, choi } => {
            let (index, s, extra) = match (m, n, h, choi) {
                (_, _, _, Some(path)) => (None, read_superoperator(path)?, Vec::new()),
                (Some(m), Some(n), Some(h), None) => {
                    let ix = IndexArgs { m: *m, n: *n, h: *h }.index()?;
                    let alpha = alpha_from_table(&source.table(ix));
                    let kraus = kraus_from_alpha(ix, &alpha);
                    let ch = EposicChannel::from_index(ix);
                    let s = Superoperator::new(ix.r(), ix.m(), kraus.choi()).expect("Choi label");
                    let extra = vec![
                        ("kraus_completeness", kraus.is_complete()),
                        ("kraus_symmetries", kraus_symmetry_report(&ch).all()),
                        ("unitality", is_unital_scaled(&ch)),
                    ];
                    (Some(ix), s, extra)
                }
                _ => return Err(CliError::Usage("verify needs --m, --n and --h, or --choi".into())),
            };
            let report = verify_channel(&s);
            let mut checks = report_checks(&report);
            checks.extend(extra);
            checks.sort_by_key(|&(name, _)| name);
            rd.verify(out, index, &report, &checks)?;
            match checks.iter().find(|(_, ok)| !ok) {
                Some((name, _)) => Err(CliError::Verification(format!("{name} failed"))),
                None => Ok(()),
            }
        }
        Command::Decompose { choi } => {
            let s = read_superoperator(choi)?;
            let d = decompose(&s).map_err(|e| CliError::Usage(e.to_string()))?;
            rd.decomposition(out, &d, None)
        }
        Command::Classify { choi } => {
            let s = read_superoperator(choi)?;
            let c = classify(&s).map_err(|e| CliError::Usage(e.to_string()))?;
            rd.decomposition(out, &c.decomposition, Some((c.class, c.extreme)))
        }
        Command::Positivity { m, alpha } => {
            let v = analyze_family(*m, alpha).map_err(|e| CliError::Usage(e.to_string()))?;
            rd.positivity(out, &v)
        }
        Command::Selftest { max_degree } => {
            let report = selftest::selftest(*max_degree, source);
            rd.selftest(out, &report)?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::Verification(format!("failing invariants: {}", report.failing().join(", "))))
            }
        }
    }
}

fn report_checks(r: &ChannelReport) -> Vec<(&'static str, bool)> {
    vec![("hermitian", r.hermitian), ("partial_trace", r.partial_trace_ok), ("psd", r.psd)]
}

pub(crate) fn rational_string(q: &Rational) -> String {
    ExactScalar::from_rational(q.clone()).to_string()
}
