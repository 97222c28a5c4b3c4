//! Command line front end: `seq`, `verify`, `orbits`, `blocks`.
//!
//! Exit status is 0 when every verification row matches, 1 when a row
//! fails or a weight is rejected, and 2 for usage errors.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use crate::catalan::{
    weighted_catalan_bruteforce, weighted_catalan_dp_upto, weighted_catalan_series,
    DEFAULT_BRUTE_FORCE_BOUND,
};
use crate::error::{Error, Result};
use crate::report::{write_csv, write_json, write_table, Format, OrbitRow, SeqCompareRow, SeqRow};
use crate::trees::{check_decomposition, odd_double_factorial, orbit_census, DEFAULT_ORBIT_BOUND};
use crate::valuation::{verify_classical, verify_weighted, zero_blocks, ValuationReport};
use crate::weight::{check_membership, CheckWindow, MembershipVerdict, WeightSequence};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "wcat",
    version,
    about = "Weighted Catalan numbers and their powers of two"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print C_0^b, ..., C_{n_max}^b.
    Seq(SeqArgs),
    /// Check the weight's hypotheses, then compare valuations with s(n+1) - 1.
    Verify(VerifyArgs),
    /// Orbit census of n-vertex binary trees and the orbit-sum identity.
    Orbits(OrbitsArgs),
    /// Zero blocks of the Catalan sequence modulo a prime.
    Blocks(BlocksArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WindowArgs {
    /// Highest difference order checked for table weights.
    #[arg(long, default_value_t = CheckWindow::default().n_max)]
    pub window_n: u32,
    /// Highest point checked for table weights.
    #[arg(long, default_value_t = CheckWindow::default().x_max)]
    pub window_x: u64,
}

impl WindowArgs {
    fn window(&self) -> CheckWindow {
        CheckWindow {
            n_max: self.window_n,
            x_max: self.window_x,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqMethod {
    Dp,
    Series,
    Brute,
    All,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    /// const:C, poly:A0,A1,..., geom:Q, oddsq or table:V0,V1,...
    #[arg(long)]
    pub weight: WeightSequence,
    #[arg(long, default_value_t = 10)]
    pub n_max: u32,
    #[arg(long, value_enum, default_value_t = SeqMethod::Dp)]
    pub method: SeqMethod,
    #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_BOUND)]
    pub brute_bound: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// const:C, poly:A0,A1,..., geom:Q, oddsq or table:V0,V1,...
    #[arg(long)]
    pub weight: WeightSequence,
    #[arg(long, default_value_t = 200)]
    pub n_max: u32,
    #[command(flatten)]
    pub window: WindowArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OrbitsArgs {
    /// const:C, poly:A0,A1,..., geom:Q, oddsq or table:V0,V1,...
    #[arg(long)]
    pub weight: WeightSequence,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = DEFAULT_ORBIT_BOUND)]
    pub orbit_bound: u32,
    #[command(flatten)]
    pub window: WindowArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BlocksArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 20000)]
    pub n_max: u64,
    #[arg(long, default_value_t = 20)]
    pub k_max: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Runs a parsed command. `stdout` receives the report unless `--out` is
/// given; `stderr` receives diagnostics and csv-mode summaries.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Seq(a) => with_output(&a.output, stdout, |out| cmd_seq(&a, out)),
        Command::Verify(a) => with_output(&a.output, stdout, |out| cmd_verify(&a, out, stderr)),
        Command::Orbits(a) => with_output(&a.output, stdout, |out| cmd_orbits(&a, out, stderr)),
        Command::Blocks(a) => with_output(&a.output, stdout, |out| cmd_blocks(&a, out)),
    }
}

/// Parses `args` (including the program name) and runs; errors become
/// messages on `stderr` and a nonzero status.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::NotInClass(_)
                | Error::InexactOrbit { .. }
                | Error::EvenReducedWeight { .. }
                | Error::DecompositionMismatch { .. } => EXIT_MISMATCH,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn with_output(
    args: &OutputArgs,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<i32>,
) -> Result<i32> {
    match &args.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            let code = body(&mut file)?;
            file.flush()?;
            Ok(code)
        }
        None => body(stdout),
    }
}

fn status(all_match: bool) -> i32 {
    if all_match {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

fn cmd_seq(a: &SeqArgs, out: &mut dyn Write) -> Result<i32> {
    let b = &a.weight;
    let brute = |n_max: u32| -> Result<Vec<BigInt>> {
        (0..=n_max)
            .map(|n| {
                Ok(weighted_catalan_bruteforce(n, b, a.brute_bound)?
                    .count
                    .value)
            })
            .collect()
    };
    if a.method == SeqMethod::All {
        let dp = weighted_catalan_dp_upto(a.n_max, b)?;
        let series = weighted_catalan_series(a.n_max, b)?;
        let bf = brute(a.n_max)?;
        let rows: Vec<SeqCompareRow> = (0..=a.n_max as usize)
            .map(|n| SeqCompareRow {
                n: n as u32,
                matches: dp[n] == series[n] && dp[n] == bf[n],
                dp: dp[n].clone(),
                series: series[n].clone(),
                brute: bf[n].clone(),
            })
            .collect();
        let all = rows.iter().all(|r| r.matches);
        match a.output.format {
            Format::Csv => write_csv(out, &rows)?,
            Format::Json => write_json(out, &rows)?,
            Format::Table => {
                let cells: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.n.to_string(),
                            r.dp.to_string(),
                            r.series.to_string(),
                            r.brute.to_string(),
                            r.matches.to_string(),
                        ]
                    })
                    .collect();
                write_table(out, &["n", "dp", "series", "brute", "match"], &cells)?;
            }
        }
        return Ok(status(all));
    }
    let values = match a.method {
        SeqMethod::Dp => weighted_catalan_dp_upto(a.n_max, b)?,
        SeqMethod::Series => weighted_catalan_series(a.n_max, b)?,
        SeqMethod::Brute => brute(a.n_max)?,
        SeqMethod::All => unreachable!(),
    };
    let rows: Vec<SeqRow> = values
        .into_iter()
        .enumerate()
        .map(|(n, value)| SeqRow { n: n as u32, value })
        .collect();
    match a.output.format {
        Format::Csv => write_csv(out, &rows)?,
        Format::Json => write_json(out, &rows)?,
        Format::Table => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![r.n.to_string(), r.value.to_string()])
                .collect();
            write_table(out, &["n", "value"], &cells)?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    weight: String,
    verdict: &'a MembershipVerdict,
    reports: &'a [ValuationReport],
    all_match: bool,
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let b = &a.weight;
    let window = a.window.window();
    let (verdict, reports) = if *b == WeightSequence::constant(1) {
        (check_membership(b, window)?, verify_classical(a.n_max))
    } else {
        match verify_weighted(a.n_max, b, window) {
            Ok(r) => r,
            Err(Error::NotInClass(witness)) => {
                (MembershipVerdict::ProvenNonMember { witness }, Vec::new())
            }
            Err(e) => return Err(e),
        }
    };
    let rejected = verdict.is_rejected();
    let all_match = !rejected && reports.iter().all(|r| r.matches);
    match a.output.format {
        Format::Json => write_json(
            out,
            &VerifyDoc {
                weight: b.to_string(),
                verdict: &verdict,
                reports: &reports,
                all_match,
            },
        )?,
        Format::Csv => {
            writeln!(stderr, "membership: {verdict}")?;
            if !rejected {
                write_csv(out, &reports)?;
            }
        }
        Format::Table => {
            writeln!(out, "weight: {b}")?;
            writeln!(out, "membership: {verdict}")?;
            if !rejected {
                let cells: Vec<Vec<String>> = reports
                    .iter()
                    .map(|r| {
                        vec![
                            r.n.to_string(),
                            r.xi.to_string(),
                            r.predicted.to_string(),
                            r.matches.to_string(),
                        ]
                    })
                    .collect();
                write_table(out, &["n", "xi", "predicted", "match"], &cells)?;
                writeln!(out, "all match: {all_match}")?;
            }
        }
    }
    if let Some(w) = verdict.witness() {
        writeln!(stderr, "rejected: {w}")?;
    }
    Ok(status(all_match))
}

#[derive(Serialize)]
struct HistogramEntry {
    t: u32,
    count: u64,
}

#[derive(Serialize)]
struct MinimalSummary {
    t: u32,
    predicted_t: u32,
    count: u64,
    #[serde(with = "crate::report::decimal")]
    expected: BigInt,
}

#[derive(Serialize)]
struct DecompositionSummary {
    #[serde(with = "crate::report::decimal")]
    orbit_sum: BigInt,
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Serialize)]
struct OrbitsDoc {
    weight: String,
    n: u32,
    records: Vec<OrbitRow>,
    histogram: Vec<HistogramEntry>,
    minimal: MinimalSummary,
    orbit_sizes_ok: bool,
    decomposition: DecompositionSummary,
}

fn cmd_orbits(a: &OrbitsArgs, out: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let b = &a.weight;
    if let MembershipVerdict::ProvenNonMember { witness } = check_membership(b, a.window.window())?
    {
        return Err(Error::NotInClass(witness));
    }
    let census = orbit_census(a.n, b, 1, a.orbit_bound)?;
    let total = check_decomposition(&census, b)?;
    let rows: Vec<OrbitRow> = census
        .records
        .iter()
        .map(|r| OrbitRow {
            shape: r.shape.to_string(),
            t: r.size_exponent,
            r0: r.reduced_weight_at_zero().cloned().unwrap(),
        })
        .collect();
    let s = census.predicted_min_exponent();
    let doc = OrbitsDoc {
        weight: b.to_string(),
        n: a.n,
        records: rows,
        histogram: census
            .histogram()
            .into_iter()
            .map(|(t, count)| HistogramEntry { t, count })
            .collect(),
        minimal: MinimalSummary {
            t: census.min_exponent(),
            predicted_t: s,
            count: census.minimal_count(),
            expected: odd_double_factorial(s),
        },
        orbit_sizes_ok: census.orbit_sizes_ok(),
        decomposition: DecompositionSummary {
            orbit_sum: total,
            matches: true,
        },
    };
    let summary = |w: &mut dyn Write| -> Result<()> {
        writeln!(w, "orbits: {}", doc.records.len())?;
        for h in &doc.histogram {
            writeln!(w, "size 2^{}: {} orbits", h.t, h.count)?;
        }
        writeln!(
            w,
            "minimal size 2^{} (predicted 2^{}): {} orbits, expected (2s-1)!! = {}",
            doc.minimal.t, doc.minimal.predicted_t, doc.minimal.count, doc.minimal.expected
        )?;
        writeln!(
            w,
            "decomposition: sum #O * r_b(O;0) = {} = C_{}^b",
            doc.decomposition.orbit_sum, doc.n
        )?;
        Ok(())
    };
    match a.output.format {
        Format::Json => write_json(out, &doc)?,
        Format::Csv => {
            write_csv(out, &doc.records)?;
            summary(stderr)?;
        }
        Format::Table => {
            let cells: Vec<Vec<String>> = doc
                .records
                .iter()
                .map(|r| vec![r.shape.clone(), r.t.to_string(), r.r0.to_string()])
                .collect();
            write_table(out, &["shape", "t", "r0"], &cells)?;
            summary(out)?;
        }
    }
    Ok(status(doc.orbit_sizes_ok))
}

fn cmd_blocks(a: &BlocksArgs, out: &mut dyn Write) -> Result<i32> {
    let reports = zero_blocks(a.p, a.n_max, a.k_max)?;
    let all = reports.iter().filter(|r| r.complete).all(|r| r.matches);
    match a.output.format {
        Format::Csv => write_csv(out, &reports)?,
        Format::Json => write_json(out, &reports)?,
        Format::Table => {
            let cells: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.k.to_string(),
                        r.start.to_string(),
                        r.observed.to_string(),
                        r.predicted.to_string(),
                        r.complete.to_string(),
                        r.matches.to_string(),
                    ]
                })
                .collect();
            writeln!(out, "C_n mod {}, n <= {}", a.p, a.n_max)?;
            write_table(
                out,
                &["k", "start", "observed", "predicted", "complete", "match"],
                &cells,
            )?;
        }
    }
    Ok(status(all))
}
