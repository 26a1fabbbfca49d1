//! The `subpart` command line.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 resource
//! limit, 4 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::counting::{
    corollary2_bound, count_kchains_with_cap, count_subpartitions, partition_count,
    CountResult, DEFAULT_STATE_CAP,
};
use crate::error::{Error, Result};
use crate::io::{join_maximizers, reports_to_csv, rows_to_csv, shape_svg, to_json, ReportRecord};
use crate::maximizer::{convergence_table, find_maximizers_with, shape_report, SearchOptions};
use crate::partition::{Partition, DEFAULT_ENUMERATION_CAP};
use crate::quadrature::DEFAULT_TOLERANCE;
use crate::verify::{self, Faults, Level, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "subpart", version, about = "Exact subpartition and k-chain counts, maximizers, and limit-shape checks")]
pub struct RunConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for maximizer searches.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,

    /// Largest p(n) the exhaustive search will enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: u64,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Absolute tolerance of the adaptive quadrature.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE, value_parser = positive_f64)]
    pub tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

fn positive_f64(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive number, got {s:?}")),
    }
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    /// Partition as comma-separated decreasing parts; "" is the empty one.
    #[arg(allow_hyphen_values = false)]
    pub partition: String,

    /// Chain length.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,

    /// Count strictly increasing chains.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of subpartitions (or k-chains with --k) of a partition.
    Count(ChainArgs),
    /// Alias of `count`.
    Chains(ChainArgs),
    /// Partition number p(n).
    Pn { n: u64 },
    /// Rate-function upper bound on the subpartition (or k-chain) count.
    Bound {
        partition: String,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
    },
    /// Partitions of n with the most subpartitions or k-chains.
    Maximize {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long)]
        strict: bool,
    },
    /// One maximizer report per n, for n in --from..=--to.
    Table {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
    },
    /// SVG plot of the rescaled maximizer against the Vershik curve.
    Shape {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        /// Destination of the SVG; defaults to --out, then shape_n<N>.svg.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Re-run every module invariant and print a pass/fail table.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyLevel::Fast)]
        level: VerifyLevel,
        /// Test hook: deliberately corrupt a component.
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyLevel {
    Fast,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    LambdaStar,
}

/// Parses `args` (including the program name) and runs the command,
/// writing to `stdout` unless `--out` is set. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // --help and --version land here too
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_PARSE;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    match execute(&config) {
        Ok((text, code)) => match emit(&config, &text, stdout) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(stderr, "{e}");
                e.exit_code()
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}

fn emit(config: &RunConfig, text: &str, stdout: &mut dyn Write) -> Result<()> {
    // the shape command writes its own file and reports on stdout
    let target = match &config.command {
        Command::Shape { .. } => None,
        _ => config.out.as_deref(),
    };
    match target {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn search_options(config: &RunConfig, strict: bool) -> SearchOptions {
    SearchOptions {
        cap: config.cap,
        jobs: config.jobs as usize,
        strict,
        state_cap: DEFAULT_STATE_CAP,
    }
}

fn chain_count(lambda: &Partition, k: u32, strict: bool) -> Result<CountResult> {
    if k == 1 && !strict {
        Ok(count_subpartitions(lambda))
    } else {
        count_kchains_with_cap(lambda, k, strict, DEFAULT_STATE_CAP)
    }
}

fn execute(config: &RunConfig) -> Result<(String, i32)> {
    let out = match &config.command {
        Command::Count(a) | Command::Chains(a) => {
            let lambda: Partition = a.partition.parse()?;
            let count = chain_count(&lambda, a.k, a.strict)?;
            match config.format {
                Format::Text => format!("{}\n", count.value),
                Format::Json => to_json(&count)?,
                Format::Csv => rows_to_csv(
                    ["partition", "k", "strict", "method", "count"],
                    &[[
                        lambda.to_string(),
                        a.k.to_string(),
                        a.strict.to_string(),
                        count.method.to_string(),
                        count.value.to_string(),
                    ]],
                )?,
            }
        }
        Command::Pn { n } => {
            let p = partition_count(*n);
            match config.format {
                Format::Text => format!("{}\n", p.value),
                Format::Json => to_json(&p)?,
                Format::Csv => rows_to_csv(["n", "p"], &[[n.to_string(), p.value.to_string()]])?,
            }
        }
        Command::Bound { partition, k } => {
            let lambda: Partition = partition.parse()?;
            let bound = corollary2_bound(&lambda.profile()).pow(*k);
            let count = chain_count(&lambda, *k, false)?;
            #[derive(Serialize)]
            struct BoundRecord {
                partition: String,
                k: u32,
                log_bound: f64,
                bound: f64,
                count: String,
                log_count: f64,
            }
            let rec = BoundRecord {
                partition: lambda.to_string(),
                k: *k,
                log_bound: bound.log_bound,
                bound: bound.bound,
                count: count.value.to_string(),
                log_count: count.ln(),
            };
            match config.format {
                Format::Text => format!(
                    "count {} <= bound {} (log {} <= {})\n",
                    rec.count, rec.bound, rec.log_count, rec.log_bound
                ),
                Format::Json => to_json(&rec)?,
                Format::Csv => rows_to_csv(
                    ["partition", "k", "log_bound", "bound", "count"],
                    &[[
                        rec.partition,
                        rec.k.to_string(),
                        rec.log_bound.to_string(),
                        rec.bound.to_string(),
                        rec.count,
                    ]],
                )?,
            }
        }
        Command::Maximize { n, k, strict } => {
            let r = find_maximizers_with(*n, *k, &search_options(config, *strict))?;
            match config.format {
                Format::Text => format!(
                    "n: {}\nk: {}\nmaximizers: {}\nmax_count: {}\nexponent: {}\nhr_reference: {}\ndistance_to_vershik: {}\n",
                    r.n,
                    r.k,
                    join_maximizers(&r),
                    r.max_count.value,
                    r.exponent,
                    r.hr_reference,
                    r.distance_to_vershik
                ),
                Format::Json => to_json(&ReportRecord::from(&r))?,
                Format::Csv => reports_to_csv(&[r])?,
            }
        }
        Command::Table { from, to, k } => {
            let ns: Vec<u32> = (*from..=*to).collect();
            let reports = convergence_table(&ns, *k, &search_options(config, false))?;
            match config.format {
                Format::Json => {
                    let recs: Vec<ReportRecord> = reports.iter().map(ReportRecord::from).collect();
                    to_json(&recs)?
                }
                // text falls back to CSV: the table is inherently tabular
                Format::Csv | Format::Text => reports_to_csv(&reports)?,
            }
        }
        Command::Shape { n, k, svg } => {
            let r = shape_report(*n, *k, &search_options(config, false))?;
            let path = svg
                .clone()
                .or_else(|| config.out.clone())
                .unwrap_or_else(|| PathBuf::from(format!("shape_n{n}.svg")));
            write_file(&path, &shape_svg(&r))?;
            match config.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct ShapeRecord<'a> {
                        svg: String,
                        maximizer: String,
                        distance_profile: f64,
                        distance_envelope: f64,
                        distance_profile_envelope: f64,
                        f_envelope: f64,
                        report: &'a ReportRecord,
                    }
                    to_json(&ShapeRecord {
                        svg: path.display().to_string(),
                        maximizer: r.report.first().to_string(),
                        distance_profile: r.distance_profile,
                        distance_envelope: r.distance_envelope,
                        distance_profile_envelope: r.distance_profile_envelope,
                        f_envelope: r.f_envelope,
                        report: &ReportRecord::from(&r.report),
                    })?
                }
                _ => format!(
                    "wrote {}\nmaximizer: {}\nd(f, vershik): {:.6}\nd(h, vershik): {:.6}\nF(h): {:.6}\n",
                    path.display(),
                    r.report.first(),
                    r.distance_profile,
                    r.distance_envelope,
                    r.f_envelope
                ),
            }
        }
        Command::Verify {
            level,
            inject_fault,
        } => {
            let level = match level {
                VerifyLevel::Fast => Level::Fast,
                VerifyLevel::Full => Level::Full,
            };
            let faults = Faults {
                lambda_star_off_by_one: *inject_fault == Some(Fault::LambdaStar),
            };
            let checks = verify::run(level, config.seed, faults, config.jobs as usize, config.tol);
            let all_passed = checks.iter().all(|c| c.passed);
            let mut s = String::new();
            for c in &checks {
                s.push_str(&format!(
                    "{:<4} {:<29} {:>7.2}s  {}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.seconds,
                    c.detail
                ));
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            s.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
            let code = if all_passed { EXIT_OK } else { EXIT_VERIFY_FAILED };
            return Ok((s, code));
        }
    };
    Ok((out, EXIT_OK))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(Error::from)
}
