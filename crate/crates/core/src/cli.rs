//! The `kvol` command line.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage, 3 `c` mismatch with
//! `--c-mode paper`, 4 wall weights, 5 wrong stability class, 6 empty grid.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arrangements::{ArrangementError, WeightVector, fixed_point_count, wall_check, StabilityClass};
use crate::blowupring::ring_trace;
use crate::closedform::{dp4_volume, vol_arrangement, ArrangementOptions, CMode, DP4Input, Method, VolumeReport};
use crate::error::VolumeError;
use crate::exactmath::{format_rational, parse_rational, Rational};
use crate::residues::dump_hf;
use crate::verify::{run_suite, Suite, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_C_MISMATCH: i32 = 3;
pub const EXIT_WALL: i32 = 4;
pub const EXIT_STABILITY: i32 = 5;
pub const EXIT_EMPTY_GRID: i32 = 6;

/// Largest fixed-point set the `--dump-hf` mode will print.
const DUMP_LIMIT: u64 = 1 << 16;
/// Largest sweep grid.
const GRID_LIMIT: usize = 1_000_000;
/// Offending fixed points printed for a wall.
const WALL_PRINT_LIMIT: usize = 50;

#[derive(Parser, Debug)]
#[command(name = "kvol", version, about = "Exact CM/GIT volumes of K-moduli spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Quartic del Pezzo moduli S^m P^1 // SL(2).
    Dp4(Dp4Args),
    /// Weighted points on P^1 (n = 1) or lines in P^2 (n = 2).
    Arr(ArrArgs),
    /// Volumes over a grid of weight vectors.
    Sweep(SweepArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Inspection dumps.
    Dump(DumpArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    Json,
    Csv,
    #[default]
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Closed,
    Residue,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Closed => Method::Closed,
            MethodArg::Residue => Method::Residue,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CModeArg {
    Paper,
    Ring,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Identities,
    Arr1,
    Arr2,
    Dp4,
    Ring,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Arr1 => Suite::Arr1,
            SuiteArg::Arr2 => Suite::Arr2,
            SuiteArg::Dp4 => Suite::Dp4,
            SuiteArg::Ring => Suite::Ring,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads; 0 uses every available core. Never changes results.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl Output {
    fn threads(&self) -> usize {
        if self.threads == 0 {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        } else {
            self.threads
        }
    }
}

#[derive(Args, Debug)]
struct Dp4Args {
    /// Number of pencil roots (points on P^1).
    #[arg(long)]
    m: usize,
    /// Dimension of the del Pezzo; must equal m-2 when given.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = CModeArg::Ring, conflicts_with = "c")]
    c_mode: CModeArg,
    /// Explicit intersection number c.
    #[arg(long, value_parser = parse_rational_arg)]
    c: Option<Rational>,
    #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
    method: MethodArg,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ArrArgs {
    #[arg(long)]
    n: usize,
    /// Weights "d1,...,dm", each p/q or an exact decimal.
    #[arg(long, allow_hyphen_values = true)]
    d: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
    method: MethodArg,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    n: usize,
    /// One entry per weight, comma-separated: a value or start:stop:step.
    #[arg(long)]
    grid: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
    method: MethodArg,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    trials: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct DumpArgs {
    /// Emit the meromorphic datum of every fixed point (needs --n and --d).
    #[arg(long, requires_all = ["n", "d"])]
    dump_hf: bool,
    /// Emit the blow-up ring reduction trace for this n.
    #[arg(long, value_name = "N")]
    dump_ring: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Parses the CLI arguments (program name first), runs, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Dp4(a) => run_dp4(a, out, err),
        Command::Arr(a) => run_arr(a, out, err),
        Command::Sweep(a) => run_sweep(a, out, err),
        Command::Verify(a) => run_verify(a, out),
        Command::Dump(a) => run_dump(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(Failure::Volume(e)) => report_error(&e, err),
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

enum Failure {
    Io(std::io::Error),
    Volume(VolumeError),
    Usage(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<VolumeError> for Failure {
    fn from(e: VolumeError) -> Self {
        Failure::Volume(e)
    }
}

impl From<ArrangementError> for Failure {
    fn from(e: ArrangementError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(std::io::Error::other(e))
    }
}

fn report_error(e: &VolumeError, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "error: {e}");
    match e {
        VolumeError::NonGeneric { points } => {
            let _ = writeln!(err, "offending fixed points:");
            for p in points.iter().take(WALL_PRINT_LIMIT) {
                let _ = writeln!(err, "  {p}");
            }
            if points.len() > WALL_PRINT_LIMIT {
                let _ = writeln!(err, "  ... and {} more", points.len() - WALL_PRINT_LIMIT);
            }
            EXIT_WALL
        }
        VolumeError::NotLogFano(_) => EXIT_STABILITY,
        VolumeError::Inconsistent { .. } => EXIT_VERIFY,
        _ => EXIT_USAGE,
    }
}

fn run_dp4(a: Dp4Args, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let c_mode = match (a.c, a.c_mode) {
        (Some(c), _) => CMode::Explicit(c),
        (None, CModeArg::Paper) => CMode::Paper,
        (None, CModeArg::Ring) => CMode::Ring,
    };
    let paper_mode = c_mode == CMode::Paper;
    let report = dp4_volume(&DP4Input {
        m: a.m,
        n: a.n,
        c_mode,
        method: a.method.into(),
    })?;
    emit_report(&report, a.output.format, out, err)?;
    let mismatch = report.c_reconciliation.as_ref().is_some_and(|r| !r.agree);
    Ok(if paper_mode && mismatch { EXIT_C_MISMATCH } else { EXIT_OK })
}

fn run_arr(a: ArrArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let w = WeightVector::parse(a.n, &a.d)?;
    let opts = ArrangementOptions {
        method: a.method.into(),
        threads: a.output.threads(),
    };
    let report = vol_arrangement(&w, &opts)?;
    emit_report(&report, a.output.format, out, err)?;
    Ok(EXIT_OK)
}

fn emit_report(r: &VolumeReport, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match format {
        Format::Json => {
            for w in &r.warnings {
                writeln!(err, "warning: {w}")?;
            }
            serde_json::to_writer_pretty(&mut *out, r).map_err(std::io::Error::other)?;
            writeln!(out)?;
        }
        Format::Csv => {
            for w in &r.warnings {
                writeln!(err, "warning: {w}")?;
            }
            let mut wtr = csv_writer(out);
            wtr.write_record(CSV_HEADER)?;
            wtr.write_record(csv_row(r))?;
            wtr.flush()?;
        }
        Format::Table => {
            for w in &r.warnings {
                writeln!(out, "warning: {w}")?;
            }
            write_table(r, out)?;
        }
    }
    Ok(())
}

const CSV_HEADER: [&str; 18] = [
    "subject",
    "n",
    "m",
    "weights",
    "gitVolume",
    "cmScale",
    "cmVolume",
    "dimension",
    "method",
    "c",
    "cPaper",
    "cRing",
    "census_A",
    "census_B",
    "census_FPlus",
    "census_Outside",
    "gitVolume_approx",
    "cmVolume_approx",
];

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::Always)
        .from_writer(out)
}

fn opt_rational(r: Option<&Rational>) -> String {
    r.map(format_rational).unwrap_or_default()
}

fn csv_row(r: &VolumeReport) -> Vec<String> {
    let census = r.chamber_census.clone().unwrap_or_default();
    let has_census = r.chamber_census.is_some();
    let count = |v: u64| if has_census { v.to_string() } else { String::new() };
    vec![
        json!(r.subject).as_str().unwrap_or_default().to_string(),
        r.n.map(|n| n.to_string()).unwrap_or_default(),
        r.m.to_string(),
        r.weights.iter().map(format_rational).collect::<Vec<_>>().join(";"),
        format_rational(&r.git_volume),
        format_rational(&r.cm_scale),
        format_rational(&r.cm_volume),
        r.dimension.to_string(),
        json!(r.method).as_str().unwrap_or_default().to_string(),
        opt_rational(r.c.as_ref()),
        opt_rational(r.c_reconciliation.as_ref().map(|c| &c.c_paper)),
        opt_rational(r.c_reconciliation.as_ref().map(|c| &c.c_ring)),
        count(census.a),
        count(census.b),
        count(census.f_plus),
        count(census.outside),
        r.git_volume_approx.clone(),
        r.cm_volume_approx.clone(),
    ]
}

fn write_table(r: &VolumeReport, out: &mut dyn Write) -> std::io::Result<()> {
    let mut rows: Vec<(String, String)> = vec![
        ("subject".into(), json!(r.subject).as_str().unwrap_or_default().into()),
    ];
    if let Some(n) = r.n {
        rows.push(("n".into(), n.to_string()));
    }
    rows.push(("m".into(), r.m.to_string()));
    if !r.weights.is_empty() {
        rows.push((
            "weights".into(),
            r.weights.iter().map(format_rational).collect::<Vec<_>>().join(","),
        ));
    }
    rows.push(("method".into(), json!(r.method).as_str().unwrap_or_default().into()));
    rows.push(("dimension".into(), r.dimension.to_string()));
    if let Some(c) = &r.c {
        rows.push(("c".into(), format_rational(c)));
    }
    if let Some(rec) = &r.c_reconciliation {
        rows.push(("c (printed formula)".into(), format_rational(&rec.c_paper)));
        rows.push(("c (ring reduction)".into(), format_rational(&rec.c_ring)));
    }
    rows.push(("gitVolume".into(), format_rational(&r.git_volume)));
    rows.push(("cmScale".into(), format_rational(&r.cm_scale)));
    rows.push(("cmVolume".into(), format_rational(&r.cm_volume)));
    if let Some(c) = &r.chamber_census {
        rows.push((
            "census".into(),
            format!("A={} B={} F+={} outside={}", c.a, c.b, c.f_plus, c.outside),
        ));
    }
    rows.push(("gitVolume_approx".into(), r.git_volume_approx.clone()));
    rows.push(("cmVolume_approx".into(), r.cm_volume_approx.clone()));
    for d in &r.wall_diagnostics {
        rows.push(("diagnostic".into(), d.clone()));
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        writeln!(out, "{k:<width$}  {v}")?;
    }
    Ok(())
}

/// Expands one grid entry: `v` or `start:stop:step` (inclusive stop).
fn grid_axis(entry: &str) -> Result<Vec<Rational>, String> {
    let parts: Vec<&str> = entry.split(':').collect();
    let parse = |s: &str| parse_rational(s).map_err(|e| e.to_string());
    match parts.as_slice() {
        [v] => Ok(vec![parse(v)?]),
        [start, stop, step] => {
            let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
            if step <= Rational::from_integer(0.into()) {
                return Err(format!("grid step must be positive in {entry:?}"));
            }
            let mut axis = Vec::new();
            let mut v = start;
            while v <= stop {
                axis.push(v.clone());
                v += &step;
                if axis.len() > GRID_LIMIT {
                    return Err(format!("grid axis {entry:?} is too long"));
                }
            }
            Ok(axis)
        }
        _ => Err(format!("grid entry {entry:?} is neither a value nor start:stop:step")),
    }
}

fn grid_points(spec: &str) -> Result<Vec<Vec<Rational>>, String> {
    let axes: Vec<Vec<Rational>> = spec.split(',').map(|e| grid_axis(e.trim())).collect::<Result<_, _>>()?;
    let size = axes.iter().try_fold(1usize, |acc, a| acc.checked_mul(a.len()));
    match size {
        Some(s) if s <= GRID_LIMIT => {}
        _ => return Err(format!("grid has more than {GRID_LIMIT} points")),
    }
    let mut points = vec![Vec::new()];
    for axis in &axes {
        points = points
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v.clone());
                    q
                })
            })
            .collect();
    }
    Ok(points)
}

fn run_sweep(a: SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let points = grid_points(&a.grid).map_err(Failure::Usage)?;
    let opts = ArrangementOptions {
        method: a.method.into(),
        threads: a.output.threads(),
    };
    let (mut invalid, mut walls, mut wrong_class) = (0usize, 0usize, 0usize);
    let mut reports = Vec::new();
    for d in points {
        let Ok(w) = WeightVector::new(a.n, d) else {
            invalid += 1;
            continue;
        };
        if w.stability_class() != StabilityClass::LogFano {
            wrong_class += 1;
            continue;
        }
        if !wall_check(&w)?.is_empty() {
            walls += 1;
            continue;
        }
        reports.push(vol_arrangement(&w, &opts)?);
    }
    writeln!(
        err,
        "sweep: {} rows, skipped {walls} wall, {wrong_class} non-log-Fano, {invalid} out-of-range",
        reports.len()
    )?;
    if reports.is_empty() {
        writeln!(err, "error: empty effective grid")?;
        return Ok(EXIT_EMPTY_GRID);
    }
    match a.output.format {
        Format::Json => {
            for r in &reports {
                serde_json::to_writer(&mut *out, r).map_err(std::io::Error::other)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut wtr = csv_writer(out);
            wtr.write_record(CSV_HEADER)?;
            for r in &reports {
                wtr.write_record(csv_row(r))?;
            }
            wtr.flush()?;
        }
        Format::Table => {
            for r in &reports {
                writeln!(
                    out,
                    "{}  git={}  cm={}",
                    r.weights.iter().map(format_rational).collect::<Vec<_>>().join(","),
                    format_rational(&r.git_volume),
                    format_rational(&r.cm_volume)
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn run_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = VerifyConfig {
        seed: a.seed,
        trials: a.trials,
        threads: a.output.threads(),
    };
    let reports = run_suite(a.suite.into(), &cfg);
    match a.output.format {
        Format::Json => {
            let v: Vec<_> = reports
                .iter()
                .map(|r| {
                    json!({
                        "suite": r.name,
                        "checks": r.checks,
                        "passed": r.passed(),
                        "failure": r.failure,
                        "notes": r.notes,
                    })
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &v).map_err(std::io::Error::other)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut wtr = csv_writer(out);
            wtr.write_record(["suite", "checks", "passed", "failure"])?;
            for r in &reports {
                wtr.write_record([
                    r.name.to_string(),
                    r.checks.to_string(),
                    r.passed().to_string(),
                    r.failure.clone().unwrap_or_default(),
                ])?;
            }
            wtr.flush()?;
        }
        Format::Table => {
            for r in &reports {
                writeln!(out, "{r}")?;
            }
        }
    }
    Ok(if reports.iter().all(|r| r.passed()) { EXIT_OK } else { EXIT_VERIFY })
}

fn run_dump(a: DumpArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if let Some(n) = a.dump_ring {
        if n < 2 {
            return Err(Failure::Usage("--dump-ring needs n >= 2".into()));
        }
        serde_json::to_writer_pretty(&mut *out, &ring_trace(n)).map_err(std::io::Error::other)?;
        writeln!(out)?;
        return Ok(EXIT_OK);
    }
    if a.dump_hf {
        let (n, d) = (a.n.expect("required by clap"), a.d.expect("required by clap"));
        let w = WeightVector::parse(n, &d)?;
        match fixed_point_count(n, w.m()) {
            Some(c) if c <= DUMP_LIMIT => {}
            _ => return Err(Failure::Usage(format!("more than {DUMP_LIMIT} fixed points"))),
        }
        serde_json::to_writer_pretty(&mut *out, &dump_hf(&w)?).map_err(std::io::Error::other)?;
        writeln!(out)?;
        return Ok(EXIT_OK);
    }
    Err(Failure::Usage("dump needs --dump-hf or --dump-ring".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("kvol").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn arr_pinned() {
        let (code, out, _) = run_capture(&["arr", "--n", "1", "--d", "3/10,3/10,3/10,2/5", "--method", "both", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["gitVolume"], "1/2");
        let (_, decimal, _) = run_capture(&["arr", "--n", "1", "--d", "0.3,0.3,0.3,0.4", "--method", "both", "--format", "json"]);
        assert_eq!(decimal, out);
    }

    #[test]
    fn arr_error_codes() {
        let (code, _, err) = run_capture(&["arr", "--n", "1", "--d", "2/5,2/5,2/5,2/5"]);
        assert_eq!(code, EXIT_WALL);
        assert!(err.contains("(1,1,2,2)"));
        let (code, _, _) = run_capture(&["arr", "--n", "2", "--d", "3/4,3/4,3/4,3/4"]);
        assert_eq!(code, EXIT_STABILITY);
        let (code, _, _) = run_capture(&["arr", "--n", "2", "--d", "3/2,1/2,1/2,1/2"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = run_capture(&["arr", "--n", "1"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn dp4_outputs() {
        let (code, out, _) = run_capture(&["dp4", "--m", "5", "--c", "120", "--format", "table"]);
        assert_eq!(code, 0);
        assert!(out.lines().any(|l| l.starts_with("cmVolume") && l.ends_with(" 24")), "{out}");
        let (code, out, _) = run_capture(&["dp4", "--m", "5", "--c-mode", "paper", "--format", "json"]);
        assert_eq!(code, EXIT_C_MISMATCH);
        assert!(out.contains("\"cmVolume\": \"0\""));
        let (code, out, _) = run_capture(&["dp4", "--m", "6"]);
        assert_eq!(code, 0);
        assert!(out.lines().next().unwrap().contains("even"));
        let (code, _, _) = run_capture(&["dp4", "--m", "5", "--n", "2"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn csv_quotes_rationals() {
        let (code, out, _) = run_capture(&["arr", "--n", "1", "--d", "3/10,3/10,3/10,2/5", "--format", "csv"]);
        assert_eq!(code, 0);
        let mut lines = out.lines();
        assert!(lines.next().unwrap().starts_with("\"subject\""));
        assert!(lines.next().unwrap().contains("\"1/2\""));
    }

    #[test]
    fn sweep_rows_and_empty_grid() {
        let grid = "1/10:1/2:1/10,1/5,1/5,1/5:1/4:1/20";
        let points = grid_points(grid).unwrap();
        assert_eq!(points.len(), 10);
        let generic = points
            .into_iter()
            .filter(|d| {
                let w = WeightVector::new(1, d.clone()).unwrap();
                w.stability_class() == StabilityClass::LogFano && wall_check(&w).unwrap().is_empty()
            })
            .count();
        assert!(generic > 0 && generic < 10);
        let (code, out, err) = run_capture(&["sweep", "--n", "1", "--grid", grid, "--format", "csv"]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(out.lines().count(), 1 + generic);
        let (code, _, _) = run_capture(&["sweep", "--n", "1", "--grid", "1/2,1/2,1/2,1/2"]);
        assert_eq!(code, EXIT_EMPTY_GRID);
        let (code, _, _) = run_capture(&["sweep", "--n", "1", "--grid", "1/2:1/4:-1"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn sweep_is_thread_independent() {
        let args = ["sweep", "--n", "2", "--grid", "1/3:2/3:1/6,2/5,3/7,1/2,5/9", "--format", "json"];
        let (c1, o1, _) = run_capture(&args);
        let mut threaded = args.to_vec();
        threaded.extend(["--threads", "3"]);
        let (c2, o2, _) = run_capture(&threaded);
        assert_eq!((c1, &o1), (c2, &o2));
    }

    #[test]
    fn dumps() {
        let (code, out, _) = run_capture(&["dump", "--dump-ring", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"cRing\": \"101\""));
        let (code, out, _) = run_capture(&["dump", "--dump-hf", "--n", "2", "--d", "1/2,1/2,1/2,1/2"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 81);
        assert!(v[0]["poleOrders"].is_array());
        let (code, _, _) = run_capture(&["dump"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn verify_ring_reports_reconciliation() {
        let (code, out, _) = run_capture(&["verify", "--suite", "ring"]);
        assert_eq!(code, 0);
        assert!(out.contains("n=3 c_paper=0"));
    }

    #[test]
    fn help_is_success() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("dp4"));
    }
}
