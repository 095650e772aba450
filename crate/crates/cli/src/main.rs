mod output;
mod svg;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lattice_succ::arith::DEFAULT_BIT_BUDGET;
use lattice_succ::cf::verify_table;
use lattice_succ::oracle::{enumerate, naive_walk};
use lattice_succ::sequences::{verify_fg_at_convergents, verify_monotone_fractional_chains, verify_record_theorem};
use lattice_succ::successor::{next, prev, value, walk};
use lattice_succ::tiling::{large_gap_at, rectangles_in_window, verify_empty_interval, verify_partition, GapCorner};
use lattice_succ::{validate_pair, ConvergentTable, Error, GridPoint, Report};

use output::{Cell, Format, Records};

/// Successor and predecessor on the two-generator lattice {p1^i p2^j}.
#[derive(Debug, Parser)]
#[command(name = "lattice-succ", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long)]
    p1: u64,
    #[arg(long)]
    p2: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest power, in bits, any exact comparison may build.
    #[arg(long, env = "LATTICE_SUCC_BIT_BUDGET", default_value_t = DEFAULT_BIT_BUDGET)]
    bit_budget: u64,
}

impl Common {
    fn table(&self) -> lattice_succ::Result<ConvergentTable> {
        let pair = validate_pair(self.p1, self.p2)?.with_bit_budget(self.bit_budget);
        Ok(ConvergentTable::new(pair))
    }
}

#[derive(Debug, Args)]
struct PointArgs {
    #[arg(long)]
    i: u64,
    #[arg(long)]
    j: u64,
    /// Also print p1^i p2^j.
    #[arg(long)]
    value: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CornerArg {
    A,
    P,
}

#[derive(Debug, Clone, Copy)]
struct Window {
    width: u64,
    height: u64,
}

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (w, h) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("expected WIDTHxHEIGHT, got {s:?}"))?;
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
        Ok(Window { width: parse(w)?, height: parse(h)? })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Continued-fraction quotients and convergents of log p1 / log p2.
    Cf {
        #[command(flatten)]
        common: Common,
        /// Last index to compute.
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Next larger element.
    Next {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Next smaller element.
    Prev {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        point: PointArgs,
    },
    /// The smallest elements in increasing order.
    Enum {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// Rectangles meeting the window [0,W)x[0,H).
    Tile {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        width: u64,
        #[arg(long)]
        height: u64,
        /// List the translated family instead.
        #[arg(long)]
        tilde: bool,
        /// Write both families as an SVG picture.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Gap witnesses for levels 1..=L (0..=L with the P corner).
    Gaps {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        levels: usize,
        #[arg(long, value_enum, default_value = "a")]
        corner: CornerArg,
    },
    /// Run every verification suite; exit 1 on any failure.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "100x100")]
        window: Window,
        /// Elements checked against enumeration, and the record scan length.
        #[arg(long, default_value_t = 2000)]
        scan: usize,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Time the successor walk against repeated enumeration.
    Bench {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
    },
}

fn point_records(points: &[(GridPoint, Option<num_bigint::BigUint>)]) -> Records {
    let with_value = points.iter().any(|(_, v)| v.is_some());
    let mut rec = if with_value {
        Records::new(&["i", "j", "value"])
    } else {
        Records::new(&["i", "j"])
    };
    for (p, v) in points {
        let mut row = vec![Cell::from(p.i), Cell::from(p.j)];
        match v {
            Some(v) => {
                rec.text_line(format!("{p} {v}"));
                row.push(v.clone().into());
            }
            None => rec.text_line(p.to_string()),
        }
        rec.push(row);
    }
    rec
}

fn step(common: &Common, point: &PointArgs, forward: bool) -> Result<Records> {
    let table = common.table()?;
    let p = GridPoint::new(point.i, point.j);
    let q = if forward { next(&table, p)? } else { prev(&table, p)? };
    let v = if point.value { Some(value(table.pair(), q)?) } else { None };
    Ok(point_records(&[(q, v)]))
}

fn cf(common: &Common, depth: usize) -> Result<Records> {
    let c = common.table()?.extend_to(depth)?;
    let mut rec = Records::new(&["index", "a", "h", "k"]);
    let quotients: Vec<String> = c.quotients().take(depth + 1).map(|a| a.to_string()).collect();
    rec.preamble(format!("quotients {}", quotients.join(" ")));
    for (idx, row) in c.rows().iter().enumerate().take(depth + 1) {
        rec.push(vec![idx.into(), row.a.into(), row.h.into(), row.k.into()]);
    }
    Ok(rec)
}

fn enumerate_cmd(common: &Common, count: usize) -> Result<Records> {
    let table = common.table()?;
    let mut rec = Records::new(&["index", "i", "j", "value"]);
    let mut p = GridPoint::ORIGIN;
    for idx in 0..count {
        let v = value(table.pair(), p)?;
        rec.text_line(format!("{idx} {p} {v}"));
        rec.push(vec![idx.into(), p.i.into(), p.j.into(), v.into()]);
        p = next(&table, p)?;
    }
    Ok(rec)
}

fn tile(common: &Common, width: u64, height: u64, tilde: bool, svg_path: Option<&PathBuf>) -> Result<Records> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidArgument("window must be at least 1x1".into()).into());
    }
    let table = common.table()?;
    let rects = rectangles_in_window(&table, width, height, tilde)?;
    if let Some(path) = svg_path {
        let other = rectangles_in_window(&table, width, height, !tilde)?;
        let (source, translated) = if tilde { (&other, &rects) } else { (&rects, &other) };
        std::fs::write(path, svg::render(source, translated, width, height))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let mut rec = Records::new(&["family", "level", "band", "x_min", "x_max", "y_min", "y_max"]);
    for r in &rects {
        rec.push(vec![
            r.family.name().into(),
            r.level.into(),
            r.band.into(),
            r.x_min.into(),
            r.x_max.into(),
            r.y_min.into(),
            r.y_max.into(),
        ]);
    }
    Ok(rec)
}

fn gaps(common: &Common, levels: usize, corner: CornerArg) -> Result<Records> {
    let table = common.table()?;
    let (corner, first) = match corner {
        CornerArg::A => (GapCorner::A, 1),
        CornerArg::P => (GapCorner::P, 0),
    };
    let mut rec = Records::new(&["level", "i", "j", "succ_i", "succ_j", "gap"]);
    for level in first..=levels {
        let w = large_gap_at(&table, level, corner)?;
        rec.text_line(format!("level {level}: {} -> {} gap {}", w.point, w.succ, w.gap));
        rec.push(vec![
            level.into(),
            w.point.i.into(),
            w.point.j.into(),
            w.succ.i.into(),
            w.succ.j.into(),
            w.gap.into(),
        ]);
    }
    Ok(rec)
}

fn successor_suite(table: &ConvergentTable, scan: usize) -> lattice_succ::Result<Report> {
    let mut report = Report::new("successor vs enumeration");
    let elems = enumerate(table.pair(), scan + 1);
    for w in elems.windows(2) {
        let (a, b) = (w[0].0, w[1].0);
        let n = next(table, a)?;
        report.check(n == b, || format!("next{a} = {n}, expected {b}"));
        let p = prev(table, b)?;
        report.check(p == a, || format!("prev{b} = {p}, expected {a}"));
    }
    Ok(report)
}

fn gap_suite(table: &ConvergentTable, levels: usize) -> lattice_succ::Result<Report> {
    let mut report = Report::new("gap witnesses");
    for level in 1..=levels {
        let w = large_gap_at(table, level, GapCorner::A)?;
        let n = next(table, w.point)?;
        report.check(n == w.succ, || format!("level {level}: next{} = {n}, witness says {}", w.point, w.succ));
        let scan = verify_empty_interval(table.pair(), w.point, w.succ)?;
        report.check(scan.passed(), || format!("level {level}: {scan}"));
    }
    Ok(report)
}

fn verify(common: &Common, window: Window, scan: usize, depth: usize) -> Result<(Records, bool)> {
    let table = common.table()?;
    let c = table.extend_to(depth)?;
    let max_index = depth.saturating_sub(1);
    let reports = [
        verify_table(&c)?,
        successor_suite(&table, scan)?,
        verify_partition(&table, window.width, window.height, false)?,
        verify_partition(&table, window.width, window.height, true)?,
        verify_fg_at_convergents(&c, max_index)?,
        verify_monotone_fractional_chains(&c, max_index)?,
        verify_record_theorem(&table, scan as u64)?,
        gap_suite(&table, 3)?,
    ];
    let mut rec = Records::new(&["suite", "checks", "passed", "failure"]);
    let mut all = true;
    for r in &reports {
        all &= r.passed();
        rec.text_line(r.to_string());
        rec.push(vec![
            r.suite.as_str().into(),
            r.checks.into(),
            r.passed().into(),
            r.failure.clone().unwrap_or_default().into(),
        ]);
    }
    Ok((rec, all))
}

fn bench(common: &Common, count: usize) -> Result<Records> {
    let table = common.table()?;
    let started = Instant::now();
    let fast = walk(&table, GridPoint::ORIGIN, count)?;
    let fast_time = started.elapsed();
    let started = Instant::now();
    let slow = naive_walk(table.pair(), GridPoint::ORIGIN, count)?;
    let slow_time = started.elapsed();
    if fast != slow {
        return Err(Error::Inconsistent("walks disagree".into()).into());
    }
    let speedup = slow_time.as_secs_f64() / fast_time.as_secs_f64().max(1e-9);
    let mut rec = Records::new(&["steps", "walk_ms", "enumeration_ms", "speedup"]);
    rec.text_line(format!(
        "{count} steps: walk {fast_time:.2?}, enumeration {slow_time:.2?}, speedup {speedup:.1}x"
    ));
    rec.push(vec![
        count.into(),
        format!("{:.3}", fast_time.as_secs_f64() * 1e3).into(),
        format!("{:.3}", slow_time.as_secs_f64() * 1e3).into(),
        format!("{speedup:.1}").into(),
    ]);
    Ok(rec)
}

fn run(cli: Cli) -> Result<bool> {
    let (common, outcome) = match &cli.command {
        Command::Cf { common, depth } => (common, cf(common, *depth)),
        Command::Next { common, point } => (common, step(common, point, true)),
        Command::Prev { common, point } => (common, step(common, point, false)),
        Command::Enum { common, count } => (common, enumerate_cmd(common, *count)),
        Command::Tile { common, width, height, tilde, svg } => {
            (common, tile(common, *width, *height, *tilde, svg.as_ref()))
        }
        Command::Gaps { common, levels, corner } => (common, gaps(common, *levels, *corner)),
        Command::Verify { common, window, scan, depth } => {
            let (rec, ok) = verify(common, *window, *scan, *depth)?;
            write_out(&rec, common.format)?;
            return Ok(ok);
        }
        Command::Bench { common, count } => (common, bench(common, *count)),
    };
    write_out(&outcome?, common.format)?;
    Ok(true)
}

fn write_out(rec: &Records, format: Format) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    rec.write(format, &mut out)?;
    out.flush()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Inconsistent(_)) => 1,
        Some(_) => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
