//! `ulam`: generate and inspect Ulam sets from the command line.
//!
//! Exit status is 0 on success, 1 when a check finds a mismatch or
//! violation, and 2 on usage or input errors.

mod input;
mod output;
mod svg;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ulam_core::algebra::{
    characteristic_lattice, embed_integer_lattice, embed_one_dimensional, normalize_axes_2d, structurally_equivalent,
};
use ulam_core::columns::{columns_report, Axis, ColumnOptions, DEFAULT_MAX_PERIOD, DEFAULT_MIN_EVIDENCE};
use ulam_core::cyclic::{finiteness_certificate, generate_cyclic_with, CyclicPoint, CyclicSize};
use ulam_core::onedim::ulam_sequence;
use ulam_core::signal::{alpha_scan, cosine_sum, sign_exception_set};
use ulam_core::verify::{compare_set_to_oracle, OracleId};
use ulam_core::{generate, Bound, UlamSet};

use input::{bound_from_flags, parse_pair, parse_symbolic, parse_symbols, read_set_csv, RunConfig};
use output::{print_json, VERSION};
use svg::{export_svg, Projection, SvgOptions};

#[derive(Parser)]
#[command(name = "ulam", version, about = "Ulam sequences and Ulam sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a set, a 1-D sequence (--dim 1) or a cyclic set (--cyclic n).
    Generate {
        #[command(flatten)]
        set: SetArgs,
        /// Number of terms for 1-D sequences.
        #[arg(long)]
        terms: Option<usize>,
        /// Order used for cyclic generation.
        #[arg(long, value_enum, default_value_t = CyclicOrder::X)]
        cyclic_size: CyclicOrder,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write to a file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Minimal periods of the columns of a planar set.
    Columns {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, value_enum, default_value_t = AxisArg::Y)]
        axis: AxisArg,
        /// Sample every `step`-th cell, one profile per residue class.
        #[arg(long, default_value_t = 1)]
        step: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_PERIOD)]
        max_period: usize,
        #[arg(long, default_value_t = DEFAULT_MIN_EVIDENCE)]
        min_evidence: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Cosine sums of a 1-D sequence.
    Signal {
        /// Initial terms, e.g. "1,2".
        #[arg(long, default_value = "1,2")]
        init: String,
        #[arg(long)]
        terms: usize,
        /// Evaluate the sum and the sign exceptions at this alpha.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        /// Scan alpha over (0, pi) with this grid step.
        #[arg(long)]
        scan_step: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare a set with a closed-form characterization.
    Verify {
        /// Oracle name; see --list.
        #[arg(required_unless_present = "list")]
        oracle: Option<String>,
        /// Parameters m,n for the class-5_5 oracles.
        #[arg(long)]
        params: Option<String>,
        #[arg(long = "box")]
        boxed: Option<String>,
        #[arg(long)]
        level: Option<u64>,
        /// Check a set read from CSV instead of generating one.
        #[arg(long)]
        input: Option<PathBuf>,
        /// List the available oracles.
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide whether two configs share their characteristic lattice.
    Equiv {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Symbols with numeric values, e.g. "pi=3.14159265358979,sqrt2=1.41421356237310".
        #[arg(long)]
        symbols: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Replace a config by an equivalent one: integer lattice, or the line with --line.
    Embed {
        #[arg(long)]
        init: String,
        #[arg(long)]
        symbols: Option<String>,
        /// Embed an integer config into the formal reals instead.
        #[arg(long)]
        line: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Shear a planar integer config onto both axes.
    Normalize {
        #[arg(long)]
        init: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Render a set as SVG.
    Plot {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, short)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = Projection::Xy)]
        projection: Projection,
        #[arg(long, default_value_t = 2.0)]
        radius: f64,
        #[arg(long, default_value_t = 600.0)]
        viewport: f64,
    },
}

/// Flags describing one set.
#[derive(Args)]
struct SetArgs {
    /// Initial vectors, e.g. "(1,0),(2,0),(0,1)"; for --dim 1, "1,2".
    #[arg(long)]
    init: Option<String>,
    /// Dimension; defaults to the length of the first vector.
    #[arg(long)]
    dim: Option<usize>,
    /// Inclusive box limits, e.g. "60,2000".
    #[arg(long = "box")]
    boxed: Option<String>,
    /// Inclusive size-function limit.
    #[arg(long)]
    level: Option<u64>,
    /// coordinate-sum, euclidean-norm-squared or weighted:w1,w2,...
    #[arg(long)]
    size: Option<String>,
    /// Work in Z>=0 x Z_n; initial vectors are (x, r).
    #[arg(long)]
    cyclic: Option<u64>,
    /// JSON file with dim, initials, bound, size and modulus.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Read the set from CSV instead of generating it.
    #[arg(long)]
    input: Option<PathBuf>,
}

impl SetArgs {
    fn resolve(&self) -> Result<RunConfig> {
        RunConfig::resolve(
            self.config.as_deref(),
            self.init.as_deref(),
            self.dim,
            bound_from_flags(self.boxed.as_deref(), self.level)?,
            self.size.as_deref(),
            self.cyclic,
        )
    }

    /// Generates the lattice set, or loads it from `--input`.
    fn lattice_set(&self) -> Result<UlamSet> {
        let rc = self.resolve()?;
        if rc.modulus.is_some() {
            bail!("this command does not support --cyclic");
        }
        let config = rc.lattice_config()?;
        let bound = rc.require_bound()?.clone();
        match &self.input {
            Some(path) => read_set_csv(path, config, rc.size, bound),
            None => Ok(generate(&config, &bound, &rc.size)?),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    X,
    Y,
}

#[derive(Clone, Copy, ValueEnum)]
enum CyclicOrder {
    /// Process x-levels in batches.
    X,
    /// One point at a time in the order n*x + r.
    Linear,
}

/// Result of a successful run.
enum Outcome {
    Success,
    /// A mismatch, violation or negative answer; exit status 1.
    Failed,
}

fn main() -> ExitCode {
    if let Ok(t) = std::env::var("ULAM_THREADS") {
        match t.parse::<usize>() {
            Ok(n) if n > 0 => {
                ulam_core::par::set_thread_cap(n);
            }
            _ => {
                eprintln!("error: ULAM_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// A closed stdout, as in `ulam generate ... | head`, is not an error.
fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<csv::Error>().is_some_and(
                |ce| matches!(ce.kind(), csv::ErrorKind::Io(io) if io.kind() == std::io::ErrorKind::BrokenPipe),
            )
    })
}

fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Generate { set, terms, cyclic_size, format, output } => {
            generate_cmd(&set, terms, cyclic_size, format, output)
        }
        Command::Columns { set, axis, step, max_period, min_evidence, format } => {
            let s = set.lattice_set()?;
            let axis = match axis {
                AxisArg::X => Axis::X,
                AxisArg::Y => Axis::Y,
            };
            let opts = ColumnOptions { max_period, min_evidence, ..ColumnOptions::default() };
            let report = columns_report(&s, axis, step, &opts)?;
            if format == Format::Json {
                print_json(&report)?;
            } else {
                let mut out = std::io::stdout().lock();
                writeln!(out, "column\tresidue\tpreperiod\tperiod\tpattern\tsource")?;
                for p in &report.profiles {
                    let src = p.doubling_source.map_or("-".to_string(), |c| c.to_string());
                    match p.detection.fit() {
                        Some(f) => {
                            let pat: String = f.pattern.iter().map(|b| char::from(b'0' + b)).collect();
                            writeln!(
                                out,
                                "{}\t{}\t{}\t{}\t{}\t{}",
                                p.index, p.residue, f.preperiod, f.period, pat, src
                            )?;
                        }
                        None => writeln!(out, "{}\t{}\t-\tinconclusive\t-\t-", p.index, p.residue)?,
                    }
                }
                writeln!(out, "nonempty columns: {:?}", report.nonempty_columns())?;
                writeln!(out, "minimal periods: {:?}", report.periods())?;
                writeln!(out, "inconclusive: {}", report.inconclusive.len())?;
                writeln!(out, "violations: {}", report.violations.len())?;
                for v in &report.violations {
                    writeln!(out, "  {v:?}")?;
                }
            }
            Ok(if report.violations.is_empty() { Outcome::Success } else { Outcome::Failed })
        }
        Command::Signal { init, terms, alpha, scan_step, format } => {
            let initials = parse_u64_initials(&init)?;
            let seq = ulam_sequence(&initials, terms)?;
            if alpha.is_none() && scan_step.is_none() {
                bail!("give --alpha, --scan-step or both");
            }
            let mut report = serde_json::json!({ "version": VERSION, "initials": initials, "terms": seq.len() });
            if let Some(a) = alpha {
                let sum = cosine_sum(&seq, a)?;
                report["alpha"] = a.into();
                report["sum"] = sum.into();
                report["normalized_sum"] = (sum / seq.len() as f64).into();
                report["sign_exceptions"] = sign_exception_set(&seq, a)?.into();
            }
            if let Some(step) = scan_step {
                let scan = alpha_scan(&seq, step)?;
                report["scan_step"] = step.into();
                report["best_alpha"] = scan.best_alpha.into();
                report["best_normalized_sum"] = scan.best_value.into();
            }
            if format == Format::Json {
                print_json(&report)?;
            } else if let serde_json::Value::Object(map) = &report {
                let mut out = std::io::stdout().lock();
                for (k, v) in map {
                    writeln!(out, "{k}: {v}")?;
                }
            }
            Ok(Outcome::Success)
        }
        Command::Verify { oracle, params, boxed, level, input, list, format } => {
            if list {
                for name in OracleId::names() {
                    println!("{name}");
                }
                return Ok(Outcome::Success);
            }
            let name = oracle.ok_or_else(|| anyhow!("missing oracle name"))?;
            let params = params.as_deref().map(parse_pair).transpose()?;
            let id = OracleId::parse(&name, params)?;
            let bound = bound_from_flags(boxed.as_deref(), level)?.ok_or_else(|| anyhow!("give --box or --level"))?;
            let config = id.config();
            let size = ulam_core::SizeFunction::CoordinateSum;
            let set = match input {
                Some(path) => read_set_csv(&path, config, size, bound.clone())?,
                None => generate(&config, &bound, &size)?,
            };
            let report = compare_set_to_oracle(&set, id, &bound)?;
            let ok = report.is_verified();
            if format == Format::Json || !ok {
                print_json(&report)?;
            } else {
                println!(
                    "{}: verified on {} points ({} transient mismatches){}",
                    report.oracle,
                    report.checked,
                    report.transient_missing.len() + report.transient_extra.len(),
                    if report.degenerate { ", degenerate parameters" } else { "" }
                );
            }
            Ok(if ok { Outcome::Success } else { Outcome::Failed })
        }
        Command::Equiv { left, right, symbols, format } => {
            let table = parse_symbols(symbols.as_deref())?;
            let a = parse_symbolic(&left, &table)?;
            let b = parse_symbolic(&right, &table)?;
            let same = structurally_equivalent(&a, &b, &table)?;
            let la = characteristic_lattice(&a, &table)?;
            let lb = characteristic_lattice(&b, &table)?;
            if format == Format::Json {
                print_json(&serde_json::json!({ "equivalent": same, "left": la, "right": lb }))?;
            } else {
                println!("{}", if same { "equivalent" } else { "not equivalent" });
                println!("left lattice: {}", lattice_string(la.basis()));
                println!("right lattice: {}", lattice_string(lb.basis()));
            }
            Ok(if same { Outcome::Success } else { Outcome::Failed })
        }
        Command::Embed { init, symbols, line, format } => {
            if line {
                let tuples = input::parse_int_tuples(&init)?;
                let dim = tuples.first().map_or(0, Vec::len);
                let config = ulam_core::validate_config(&tuples, dim)?;
                let reals: Vec<String> = embed_one_dimensional(&config).iter().map(ToString::to_string).collect();
                if format == Format::Json {
                    print_json(&serde_json::json!({ "formal_reals": reals }))?;
                } else {
                    println!("{}", reals.join(", "));
                }
                return Ok(Outcome::Success);
            }
            let table = parse_symbols(symbols.as_deref())?;
            let vs = parse_symbolic(&init, &table)?;
            let e = embed_integer_lattice(&vs, &table)?;
            if format == Format::Json {
                print_json(&e)?;
            } else {
                println!("config: {}", points_string(e.config.initials().iter().map(|p| p.coords())));
                println!("basis indices: {:?}", e.basis_indices);
                let dir: Vec<String> = e.direction.iter().map(ToString::to_string).collect();
                println!("direction: ({})", dir.join(","));
                println!("multiplier: {}", e.multiplier);
            }
            Ok(Outcome::Success)
        }
        Command::Normalize { init, format } => {
            let tuples = input::parse_int_tuples(&init)?;
            let config = ulam_core::validate_config(&tuples, 2)?;
            let n = normalize_axes_2d(&config)?;
            if format == Format::Json {
                print_json(&n)?;
            } else {
                println!("config: {}", points_string(n.config.initials().iter().map(|p| p.coords())));
                let m = &n.map;
                println!("map: [[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1]);
            }
            Ok(Outcome::Success)
        }
        Command::Plot { set, output, projection, radius, viewport } => {
            let s = set.lattice_set()?;
            export_svg(&s, &output, &SvgOptions { projection, radius, viewport })?;
            Ok(Outcome::Success)
        }
    }
}

fn generate_cmd(
    args: &SetArgs,
    terms: Option<usize>,
    order: CyclicOrder,
    format: Format,
    output: Option<PathBuf>,
) -> Result<Outcome> {
    let mut sink: Box<dyn Write> = match &output {
        Some(p) => Box::new(std::fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(std::io::stdout().lock()),
    };
    let rc = args.resolve()?;
    let json = |v: serde_json::Value, sink: &mut dyn Write| -> Result<()> {
        serde_json::to_writer_pretty(&mut *sink, &v)?;
        writeln!(sink)?;
        Ok(())
    };
    if format == Format::Text {
        bail!("generate writes csv or json");
    }
    if rc.dim == 1 {
        let n = terms.ok_or_else(|| anyhow!("1-D generation needs --terms"))?;
        let initials = rc
            .initials
            .iter()
            .map(|t| match t.as_slice() {
                &[x] if x > 0 => Ok(x as u64),
                _ => Err(anyhow!("1-D initial terms must be positive integers")),
            })
            .collect::<Result<Vec<_>>>()?;
        let seq = ulam_sequence(&initials, n)?;
        match format {
            Format::Json => json(output::sequence_json(&seq), &mut *sink)?,
            _ => output::write_sequence_csv(&seq, &mut sink)?,
        }
    } else if let Some(n) = rc.modulus {
        let points = rc
            .initials
            .iter()
            .map(|t| match t.as_slice() {
                &[x, r] if x >= 0 && r >= 0 => Ok(CyclicPoint::new(x as u64, r as u64)),
                _ => Err(anyhow!("cyclic initial vectors are pairs (x, r) of nonnegative integers")),
            })
            .collect::<Result<Vec<_>>>()?;
        let x_bound = match rc.require_bound()? {
            Bound::Box(l) if l.len() == 1 => l[0],
            Bound::Level(l) => *l,
            _ => bail!("cyclic sets take a single x bound, e.g. --box 92"),
        };
        let size = match order {
            CyclicOrder::X => CyclicSize::X,
            CyclicOrder::Linear => CyclicSize::Linear,
        };
        let set = generate_cyclic_with(&points, n, x_bound, size)?;
        match format {
            Format::Json => {
                let cert = finiteness_certificate(&set).ok();
                json(output::cyclic_json(&set, cert), &mut *sink)?
            }
            _ => output::write_cyclic_csv(&set, &mut sink)?,
        }
    } else {
        let set = args.lattice_set()?;
        match format {
            Format::Json => json(output::set_json(&set), &mut *sink)?,
            _ => output::write_set_csv(&set, &mut sink)?,
        }
    }
    sink.flush()?;
    Ok(Outcome::Success)
}

fn parse_u64_initials(s: &str) -> Result<Vec<u64>> {
    input::parse_int_tuples(s)?
        .into_iter()
        .map(|t| match t.as_slice() {
            &[x] if x >= 0 => Ok(x as u64),
            _ => Err(anyhow!("initial terms must be nonnegative integers, as in \"1,2\"")),
        })
        .collect()
}

fn lattice_string(basis: &[Vec<num_bigint::BigInt>]) -> String {
    if basis.is_empty() {
        return "trivial".to_string();
    }
    basis
        .iter()
        .map(|r| format!("({})", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn points_string<'a>(pts: impl Iterator<Item = &'a [u64]>) -> String {
    pts.map(|c| format!("({})", c.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(",")
}
