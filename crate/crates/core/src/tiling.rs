//! Finite windows of the rectangle tilings, exhaustive partition checks and
//! gap witnesses.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::GeneratorPair;
use crate::cf::{ConvergentTable, Convergents};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::successor::{self, GridPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TileFamily {
    A,
    P,
    ATilde,
    PTilde,
}

impl TileFamily {
    pub fn is_tilde(self) -> bool {
        matches!(self, TileFamily::ATilde | TileFamily::PTilde)
    }

    pub fn name(self) -> &'static str {
        match self {
            TileFamily::A => "A",
            TileFamily::P => "P",
            TileFamily::ATilde => "A~",
            TileFamily::PTilde => "P~",
        }
    }
}

impl fmt::Display for TileFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One rectangle with inclusive extents; `x` is the p1-exponent axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rectangle {
    pub family: TileFamily,
    pub level: usize,
    pub band: u64,
    pub x_min: u64,
    pub x_max: u64,
    pub y_min: u64,
    pub y_max: u64,
}

impl Rectangle {
    pub fn width(&self) -> u64 {
        self.x_max - self.x_min + 1
    }

    pub fn height(&self) -> u64 {
        self.y_max - self.y_min + 1
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        (self.x_min..=self.x_max).contains(&p.i) && (self.y_min..=self.y_max).contains(&p.j)
    }

    fn sort_key(&self) -> (TileFamily, usize, u64) {
        (self.family, self.level, self.band)
    }
}

/// Builds the rectangle of `family` at `(level, band)`. The snapshot must
/// reach the quotient index governing the band.
pub fn rectangle(c: &Convergents, family: TileFamily, level: usize, band: u64) -> Rectangle {
    let (x_min, w, y_min, h) = match family {
        TileFamily::A => (
            c.k(2 * level - 1) + band * c.k(2 * level),
            c.k(2 * level),
            0,
            c.h(2 * level),
        ),
        TileFamily::P => (
            0,
            c.k(2 * level + 1),
            c.h(2 * level) + band * c.h(2 * level + 1),
            c.h(2 * level + 1),
        ),
        TileFamily::ATilde => (
            0,
            c.k(2 * level),
            c.h(2 * level - 1) + band * c.h(2 * level),
            c.h(2 * level),
        ),
        TileFamily::PTilde => (
            c.k(2 * level) + band * c.k(2 * level + 1),
            c.k(2 * level + 1),
            0,
            c.h(2 * level + 1),
        ),
    };
    Rectangle {
        family,
        level,
        band,
        x_min,
        x_max: x_min + w - 1,
        y_min,
        y_max: y_min + h - 1,
    }
}

/// Translation carrying a source rectangle onto its successor rectangle;
/// `None` for tilde families.
pub fn translation(c: &Convergents, family: TileFamily, level: usize, band: u64) -> Option<(i128, i128)> {
    let (l, t) = (level, i128::from(band));
    let k = |i: usize| i128::from(c.k(i));
    let h = |i: usize| i128::from(c.h(i));
    match family {
        TileFamily::A => Some((-k(2 * l - 1) - t * k(2 * l), h(2 * l - 1) + t * h(2 * l))),
        TileFamily::P => Some((k(2 * l) + t * k(2 * l + 1), -h(2 * l) - t * h(2 * l + 1))),
        TileFamily::ATilde | TileFamily::PTilde => None,
    }
}

pub fn tilde_partner(family: TileFamily) -> TileFamily {
    match family {
        TileFamily::A | TileFamily::ATilde => TileFamily::ATilde,
        TileFamily::P | TileFamily::PTilde => TileFamily::PTilde,
    }
}

/// Every rectangle of the source (or tilde) family set meeting `[0,W)×[0,H)`,
/// with full extents, sorted by family, level and band.
pub fn rectangles_in_window(
    table: &ConvergentTable,
    width: u64,
    height: u64,
    tilde: bool,
) -> Result<Vec<Rectangle>> {
    let c = table.bracket(width, height)?;
    let (col_family, row_family) = if tilde {
        (TileFamily::PTilde, TileFamily::ATilde)
    } else {
        (TileFamily::A, TileFamily::P)
    };
    let mut out = Vec::new();

    // Column-banded families: A from level 1, P~ from level 0.
    let first = if tilde { 0 } else { 1 };
    let mut level = first;
    loop {
        let quotient_index = if tilde { 2 * level + 2 } else { 2 * level + 1 };
        if quotient_index >= c.len() {
            break;
        }
        let start = rectangle(&c, col_family, level, 0).x_min;
        if start >= width {
            break;
        }
        for band in 0..c.a(quotient_index) {
            let r = rectangle(&c, col_family, level, band);
            if r.x_min >= width {
                break;
            }
            if r.y_min < height {
                out.push(r);
            }
        }
        level += 1;
    }

    // Row-banded families: P from level 0, A~ from level 1.
    let first = if tilde { 1 } else { 0 };
    let mut level = first;
    loop {
        let quotient_index = if tilde { 2 * level + 1 } else { 2 * level + 2 };
        if quotient_index >= c.len() {
            break;
        }
        let start = rectangle(&c, row_family, level, 0).y_min;
        if start >= height {
            break;
        }
        for band in 0..c.a(quotient_index) {
            let r = rectangle(&c, row_family, level, band);
            if r.y_min >= height {
                break;
            }
            if r.x_min < width {
                out.push(r);
            }
        }
        level += 1;
    }

    out.sort_by_key(Rectangle::sort_key);
    Ok(out)
}

/// Exhaustively checks that every cell of `[0,W)×[0,H)` lies in exactly one
/// rectangle (for the tilde family: every cell but the origin, which lies in
/// none).
pub fn verify_partition(table: &ConvergentTable, width: u64, height: u64, tilde: bool) -> Result<Report> {
    let suite = if tilde { "partition-tilde" } else { "partition" };
    let mut report = Report::new(suite);
    let rects = rectangles_in_window(table, width, height, tilde)?;
    let (w, h) = (width as usize, height as usize);
    let mut cover = vec![0u32; w * h];
    for r in &rects {
        let x_end = r.x_max.min(width - 1) as usize;
        let y_end = r.y_max.min(height - 1) as usize;
        for y in r.y_min as usize..=y_end {
            for x in r.x_min as usize..=x_end {
                cover[y * w + x] += 1;
            }
        }
    }
    for y in 0..h {
        for x in 0..w {
            let expected = if tilde && x == 0 && y == 0 { 0 } else { 1 };
            let got = cover[y * w + x];
            if !report.check(got == expected, || {
                format!("cell ({x},{y}) covered {got} times, expected {expected}")
            }) {
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// A consecutive pair `point < succ` of `S` and the integer gap between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapWitness {
    pub level: usize,
    pub point: GridPoint,
    pub succ: GridPoint,
    pub gap: BigUint,
}

/// Which rectangle corner supplies the witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GapCorner {
    /// Far corner of the last band of `A` at the level (`level ≥ 1`).
    #[default]
    A,
    /// Far corner of the last band of `P` at the level (`level ≥ 0`).
    P,
}

pub fn large_gap(table: &ConvergentTable, level: usize) -> Result<GapWitness> {
    large_gap_at(table, level, GapCorner::A)
}

pub fn large_gap_at(table: &ConvergentTable, level: usize, corner: GapCorner) -> Result<GapWitness> {
    let point = match corner {
        GapCorner::A => {
            if level == 0 {
                return Err(Error::InvalidArgument("A rectangles start at level 1".into()));
            }
            let c = table.extend_to(2 * level + 1)?;
            let r = rectangle(&c, TileFamily::A, level, c.a(2 * level + 1) - 1);
            GridPoint::new(r.x_max, r.y_max)
        }
        GapCorner::P => {
            let c = table.extend_to(2 * level + 2)?;
            let r = rectangle(&c, TileFamily::P, level, c.a(2 * level + 2) - 1);
            GridPoint::new(r.x_max, r.y_max)
        }
    };
    let succ = successor::next(table, point)?;
    let pair = table.pair();
    let gap = successor::value(pair, succ)? - successor::value(pair, point)?;
    Ok(GapWitness { level, point, succ, gap })
}

/// Confirms no element of `S` lies strictly between `lo` and `hi`, scanning
/// every p1-exponent column with exact comparisons.
pub fn verify_empty_interval(pair: &GeneratorPair, lo: GridPoint, hi: GridPoint) -> Result<Report> {
    let mut report = Report::new("empty-interval");
    let cmp = |a: (u64, u64), b: GridPoint| pair.compare_products(a, (b.i, b.j));
    report.check(cmp((hi.i, hi.j), lo)? == Ordering::Greater, || format!("{hi} is not above {lo}"));

    let ratio = (pair.p2() as f64).ln() / (pair.p1() as f64).ln();
    let mut b = 0u64;
    while cmp((b, 0), hi)? == Ordering::Less {
        // smallest a with p1^b·p2^a > lo, from a float guess then exact steps
        let guess = ((lo.i as f64 - b as f64) / ratio + lo.j as f64).floor().max(0.0) as u64;
        let mut a = guess;
        while a > 0 && cmp((b, a - 1), lo)? == Ordering::Greater {
            a -= 1;
        }
        while cmp((b, a), lo)? != Ordering::Greater {
            a += 1;
        }
        let ok = cmp((b, a), hi)? != Ordering::Less;
        if !report.check(ok, || format!("({b},{a}) lies strictly between {lo} and {hi}")) {
            break;
        }
        b += 1;
    }
    Ok(report)
}
