//! The `milnor` command line: file formats and report emitters over
//! `milnor-core`.
//!
//! [`run`] takes the argument vector and two sinks and returns the exit
//! status: 0 on success, 1 when an inner module reports a domain error,
//! 2 on a usage error.

pub mod linkfile;
pub mod matrixfile;

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;
use thiserror::Error;

use milnor_core::counts::{self, CountError, GridReport};
use milnor_core::linkforms::{
    self, cokernel_invariants, cyclic_form_of_matrix, degree_one_verdict, form_split,
    is_semisimple, is_simple, pm_qr_symbol, CyclicForm, FormError, SymIntMatrix,
};
use milnor_core::links::{hopf_family, zero_surgery_degree, FramedLink, LinkError, LongitudeLink};
use milnor_core::magnus::DegreeVerdict;
use milnor_core::qbounds::{
    bing_surgery_order, degree_upper_bound, realization_plan, QBoundError, QuantumData,
    TargetDegree,
};

pub use linkfile::{parse_link_file, serialize_link, ParseError};
pub use matrixfile::{parse_matrix_file, MatrixFileError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    LinkFile { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    MatrixFile {
        path: PathBuf,
        source: MatrixFileError,
    },
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    QBound(#[from] QBoundError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "milnor",
    version,
    about = "Milnor invariants, linking forms and degree bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Milnor degree of a link file, or one mu-bar invariant.
    Mu {
        file: PathBuf,
        /// Search cap; defaults to the file's valid_to.
        #[arg(long)]
        cap: Option<usize>,
        /// Index sequence such as 231 or 2,3,1 (last index is the component).
        #[arg(long)]
        invariant: Option<String>,
    },
    /// The Bing-doubled Hopf link H^d, or a report on surgery along it.
    Hopf {
        #[arg(long)]
        d: usize,
        /// Framings n_0,..,n_d for surgery on H^d.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        surgery_framings: Option<Vec<i64>>,
        /// Prime for the quantum order bound.
        #[arg(long, default_value_t = 5)]
        p: u64,
    },
    /// Linking forms from a linking matrix or a cyclic form (q/n).
    Linkform {
        #[command(subcommand)]
        source: FormSource,
    },
    /// Lens-space classes with non-semisimple linking form.
    Table1 {
        #[arg(long, default_value_t = 52)]
        limit: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Witt numbers, Milnor numbers and the counting inequalities.
    Counts(CountsArgs),
    /// Quantum p-order bound on the Milnor degree, or a realization plan.
    Qbound(QboundArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    JsonLines,
}

#[derive(Subcommand, Debug)]
enum FormSource {
    /// Linking matrix file (whitespace-separated integer rows).
    Matrix {
        file: PathBuf,
        #[command(flatten)]
        action: FormAction,
    },
    /// The cyclic form (q/n).
    Cyclic {
        #[arg(allow_negative_numbers = true)]
        q: i64,
        n: u64,
        #[command(flatten)]
        action: FormAction,
    },
}

#[derive(Args, Debug)]
struct FormAction {
    /// Simple / semisimple / ±QR symbol.
    #[arg(long)]
    classify: bool,
    /// What the form says about the Milnor degree.
    #[arg(long)]
    verdict: bool,
    /// Split into summands of the given pairwise coprime orders.
    #[arg(long, value_delimiter = ',')]
    split: Option<Vec<u64>>,
}

#[derive(Args, Debug)]
struct CountsArgs {
    #[command(flatten)]
    mode: CountsMode,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct CountsMode {
    /// N_k^r.
    #[arg(long, num_args = 2, value_names = ["R", "K"])]
    witt: Option<Vec<u64>>,
    /// M_k^r = r N_k^r - N_{k+1}^r.
    #[arg(long, num_args = 2, value_names = ["R", "K"])]
    milnor: Option<Vec<u64>>,
    /// Check the counting inequalities on 2 <= r <= R, 2 <= k <= K.
    #[arg(long, num_args = 2, value_names = ["R", "K"])]
    verify_grid: Option<Vec<u64>>,
}

#[derive(Args, Debug)]
struct QboundArgs {
    #[arg(long, requires_all = ["ohat", "p"], conflicts_with = "plan")]
    bp: Option<u64>,
    /// Rescaled p-order, an integer or fraction such as 3/2.
    #[arg(long, requires = "bp")]
    ohat: Option<String>,
    #[arg(long, requires = "bp")]
    p: Option<u64>,
    /// Realize Betti number b and degree d (`inf` for infinite degree).
    #[arg(long, num_args = 2, value_names = ["B", "D"], required_unless_present = "bp")]
    plan: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Runs the command line; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Mu {
            file,
            cap,
            invariant,
        } => mu(&file, cap, invariant.as_deref(), out),
        Command::Hopf {
            d,
            surgery_framings,
            p,
        } => hopf(d, surgery_framings.as_deref(), p, out),
        Command::Linkform { source } => linkform(source, out),
        Command::Table1 { limit, format } => {
            let rows = linkforms::table1(limit);
            match format {
                Format::Text => linkforms::write_text(&rows, out)?,
                Format::Csv => linkforms::write_csv(&rows, out)?,
                Format::JsonLines => linkforms::write_json_lines(&rows, out)?,
            }
            Ok(())
        }
        Command::Counts(args) => counts_cmd(args, out),
        Command::Qbound(args) => qbound(args, out),
    }
}

pub fn read_link(path: &PathBuf) -> Result<LongitudeLink, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.clone(),
        source,
    })?;
    parse_link_file(&text).map_err(|source| CliError::LinkFile {
        path: path.clone(),
        source,
    })
}

fn read_matrix(path: &PathBuf) -> Result<SymIntMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.clone(),
        source,
    })?;
    parse_matrix_file(&text).map_err(|source| CliError::MatrixFile {
        path: path.clone(),
        source,
    })
}

/// `231` (single digits) or `2,3,1`.
fn parse_indices(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("invalid index sequence `{s}`"));
    if s.contains(',') {
        s.split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect()
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
            .collect()
    }
}

/// `degree = 2 (exact), witness mu(231)=1` or `degree >= 4`.
pub fn describe_degree(v: &DegreeVerdict) -> String {
    match v {
        DegreeVerdict::Exact { degree, witness } => match witness {
            Some(w) => format!("degree = {degree} (exact), witness {w}"),
            None => format!("degree = {degree} (exact)"),
        },
        DegreeVerdict::AtLeast(k) => format!("degree >= {k}"),
    }
}

fn mu(
    file: &PathBuf,
    cap: Option<usize>,
    invariant: Option<&str>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let link = read_link(file)?;
    if let Some(spec) = invariant {
        let idx = parse_indices(spec)?;
        let v = link.mu_bar(&idx)?;
        let shown = milnor_core::magnus::IndexSequence(idx);
        writeln!(out, "mu({shown}) = {v}")?;
        return Ok(());
    }
    let verdict = link.degree(cap.unwrap_or(link.valid_to()))?;
    writeln!(out, "{}", describe_degree(&verdict))?;
    Ok(())
}

fn hopf(d: usize, framings: Option<&[i64]>, p: u64, out: &mut dyn Write) -> Result<(), CliError> {
    let link = hopf_family(d)?;
    let Some(framings) = framings else {
        writeln!(
            out,
            "# H^{d}: Bing-doubled Hopf link, {} components",
            link.components()
        )?;
        out.write_all(serialize_link(&link).as_bytes())?;
        return Ok(());
    };
    let framed = FramedLink::new(link.clone(), framings.to_vec())?;
    let name = milnor_core::qbounds::Summand::BingSurgery {
        framings: framings.to_vec(),
    };
    let data = bing_surgery_order(d, framings, p)?;
    let bound = degree_upper_bound(&data)?;
    let cap = link.valid_to();
    let link_degree = link.degree(cap)?;
    writeln!(
        out,
        "link H^{d}: {} components, {}",
        link.components(),
        describe_degree(&link_degree)
    )?;
    let lower = if framings.iter().all(|&n| n == 0) {
        zero_surgery_degree(&framed, cap)?
    } else {
        link_degree
    };
    // surgery along L gives a manifold of degree at least that of L
    writeln!(
        out,
        "manifold {name}: lower bound degree >= {}",
        lower.lower_bound()
    )?;
    writeln!(
        out,
        "b_{} = {}, o_hat = {}, {}",
        data.p, data.b_p, data.o_hat, bound
    )?;
    if BigInt::from(lower.lower_bound()) == bound.floor {
        writeln!(out, "milnor degree = {} (exact)", lower.lower_bound())?;
    } else {
        writeln!(
            out,
            "milnor degree in [{}, {}]",
            lower.lower_bound(),
            bound.floor
        )?;
    }
    Ok(())
}

fn linkform(source: FormSource, out: &mut dyn Write) -> Result<(), CliError> {
    let (form, action) = match source {
        FormSource::Matrix { file, action } => {
            let m = read_matrix(&file)?;
            let inv: Vec<String> = cokernel_invariants(&m)
                .iter()
                .map(|x| x.to_string())
                .collect();
            writeln!(
                out,
                "matrix {}x{}, det = {}, nullity = {}, invariant factors: {}",
                m.size(),
                m.size(),
                m.determinant(),
                m.nullity(),
                if inv.is_empty() {
                    "none".to_string()
                } else {
                    inv.join(" ")
                }
            )?;
            (cyclic_form_of_matrix(&m)?, action)
        }
        FormSource::Cyclic { q, n, action } => (CyclicForm::new(q, n)?, action),
    };
    writeln!(out, "form = {form}")?;
    if action.classify {
        let yes = |b: bool| if b { "yes" } else { "no" };
        let symbol = pm_qr_symbol(form.q() as i64, form.order())?;
        writeln!(
            out,
            "simple = {}, semisimple = {}, symbol = {:+}",
            yes(is_simple(&form)),
            yes(is_semisimple(&form)),
            symbol
        )?;
    }
    if action.verdict {
        writeln!(out, "verdict = {}", degree_one_verdict(&form))?;
    }
    if let Some(orders) = action.split {
        writeln!(out, "split = {}", form_split(&form, &orders)?)?;
    }
    Ok(())
}

fn pair(v: &[u64]) -> (u64, u64) {
    (v[0], v[1])
}

fn counts_cmd(args: CountsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let scalar = |name: &str, r: u64, k: u64, v: BigInt, out: &mut dyn Write| -> io::Result<()> {
        match args.format {
            Format::Text => writeln!(out, "{name}(r={r}, k={k}) = {v}"),
            Format::Csv => writeln!(out, "r,k,{name}\n{r},{k},{v}"),
            Format::JsonLines => writeln!(out, "{}", json!({"r": r, "k": k, name: v.to_string()})),
        }
    };
    if let Some(v) = &args.mode.witt {
        let (r, k) = pair(v);
        scalar("witt", r, k, counts::witt(r, k)?, out)?;
    } else if let Some(v) = &args.mode.milnor {
        let (r, k) = pair(v);
        scalar("milnor", r, k, counts::milnor_number(r, k)?, out)?;
    } else if let Some(v) = &args.mode.verify_grid {
        let (r, k) = pair(v);
        let reports = [
            ("lemma_b", counts::verify_lemma_b(r, k)?),
            ("star_bounds", counts::verify_star_bounds(r, k)?),
        ];
        grid_reports(&reports, args.format, out)?;
    }
    Ok(())
}

fn grid_reports(
    reports: &[(&str, GridReport)],
    format: Format,
    out: &mut dyn Write,
) -> io::Result<()> {
    let exceptions = |g: &GridReport| -> Vec<String> {
        g.exceptions
            .iter()
            .map(|(r, k)| format!("({r},{k})"))
            .collect()
    };
    if format == Format::Csv {
        writeln!(out, "check,r_max,k_max,cells,exceptions")?;
    }
    for (name, g) in reports {
        match format {
            Format::Text => writeln!(out, "{name}: {g}")?,
            Format::Csv => writeln!(
                out,
                "{name},{},{},{},{}",
                g.r_max,
                g.k_max,
                g.cells,
                exceptions(g).join(" ")
            )?,
            Format::JsonLines => writeln!(
                out,
                "{}",
                json!({
                    "check": name,
                    "r_max": g.r_max,
                    "k_max": g.k_max,
                    "cells": g.cells,
                    "exceptions": g.exceptions.iter().map(|(r, k)| [r, k]).collect::<Vec<_>>(),
                })
            )?,
        }
    }
    Ok(())
}

fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    s.trim().parse::<BigRational>().map_err(|_| {
        CliError::Usage(format!(
            "invalid o_hat `{s}`: expected an integer or fraction"
        ))
    })
}

fn qbound(args: QboundArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if let Some(b_p) = args.bp {
        let o_hat = parse_rational(args.ohat.as_deref().unwrap_or_default())?;
        let data = QuantumData::new(args.p.unwrap_or_default(), b_p, o_hat)?;
        let bound = degree_upper_bound(&data)?;
        match args.format {
            Format::Text => writeln!(out, "bound = {}, degree <= {}", bound.exact, bound.floor)?,
            Format::Csv => writeln!(
                out,
                "p,b_p,o_hat,bound,degree_max\n{},{},{},{},{}",
                data.p, data.b_p, data.o_hat, bound.exact, bound.floor
            )?,
            Format::JsonLines => writeln!(
                out,
                "{}",
                json!({
                    "p": data.p,
                    "b_p": data.b_p,
                    "o_hat": data.o_hat.to_string(),
                    "bound": bound.exact.to_string(),
                    "degree_max": bound.floor.to_string(),
                })
            )?,
        }
        return Ok(());
    }
    let plan = args.plan.expect("clap requires --plan without --bp");
    let b: u64 = plan[0]
        .parse()
        .map_err(|_| CliError::Usage(format!("invalid Betti number `{}`", plan[0])))?;
    let target = match plan[1].as_str() {
        "inf" | "infinite" => TargetDegree::Infinite,
        s => TargetDegree::Finite(s.parse().map_err(|_| {
            CliError::Usage(format!(
                "invalid degree `{s}`: expected a positive integer or `inf`"
            ))
        })?),
    };
    let plan = realization_plan(b, target)?;
    if args.format == Format::Text {
        write!(out, "{plan}")?;
        return Ok(());
    }
    let degree = match plan.target {
        TargetDegree::Finite(d) => d.to_string(),
        TargetDegree::Infinite => "infinite".to_string(),
    };
    let manifold: Vec<String> = plan.summands.iter().map(|s| s.to_string()).collect();
    let manifold = if manifold.is_empty() {
        "S3".to_string()
    } else {
        manifold.join(" # ")
    };
    let cert = plan.certificate.as_ref();
    let b5 = cert.map(|c| c.b_p.to_string()).unwrap_or_default();
    let o_hat = cert.map(|c| c.o_hat.to_string()).unwrap_or_default();
    let bound = plan
        .bound
        .as_ref()
        .map(|b| b.exact.to_string())
        .unwrap_or_default();
    if args.format == Format::Csv {
        writeln!(out, "betti,degree,manifold,b_5,o_hat,bound")?;
        writeln!(
            out,
            "{},{},{},{},{},{}",
            plan.betti, degree, manifold, b5, o_hat, bound
        )?;
    } else {
        let opt = |s: String| {
            if s.is_empty() {
                serde_json::Value::Null
            } else {
                s.into()
            }
        };
        writeln!(
            out,
            "{}",
            json!({
                "betti": plan.betti,
                "degree": degree,
                "manifold": manifold,
                "b_5": opt(b5),
                "o_hat": opt(o_hat),
                "bound": opt(bound),
            })
        )?;
    }
    Ok(())
}
