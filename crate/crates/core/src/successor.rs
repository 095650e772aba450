//! Successor and predecessor in sorted `S` straight from exponent coordinates.
//!
//! The exponent grid is tiled by two families of rectangles built from the
//! convergents of α:
//!
//! * `A(i, t)` for `i ≥ 1`, `0 ≤ t < a_{2i+1}`: columns
//!   `k_{2i-1} + t·k_{2i} .. + k_{2i}`, rows `0 .. h_{2i}`;
//! * `P(i, t)` for `i ≥ 0`, `0 ≤ t < a_{2i+2}`: columns `0 .. k_{2i+1}`, rows
//!   `h_{2i} + t·h_{2i+1} .. + h_{2i+1}`.
//!
//! Each rectangle is mapped onto the successors of its cells by a single
//! translation, and the translated copies tile the grid minus the origin.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::GeneratorPair;
use crate::cf::{ConvergentTable, Convergents};
use crate::error::{Error, Result};

/// Exponent coordinates of `p1^i · p2^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPoint {
    pub i: u64,
    pub j: u64,
}

impl GridPoint {
    pub const ORIGIN: GridPoint = GridPoint { i: 0, j: 0 };

    pub fn new(i: u64, j: u64) -> Self {
        GridPoint { i, j }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    P,
}

/// Position of a cell in the source partition.
///
/// `r` runs along the p1-exponent axis, `s` along the p2-exponent axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RectangleId {
    pub family: Family,
    pub level: usize,
    pub band: u64,
    pub r: u64,
    pub s: u64,
}

/// Position of a cell in the translated (successor) partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TranslatedRectangleId {
    pub family: Family,
    pub level: usize,
    pub band: u64,
    pub r: u64,
    pub s: u64,
}

fn add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

/// `base + t·step + offset`, checked.
fn affine(base: u64, t: u64, step: u64, offset: u64) -> Result<u64> {
    let scaled = t.checked_mul(step).ok_or(Error::Overflow)?;
    add(add(base, scaled)?, offset)
}

impl RectangleId {
    /// The cell this id names.
    pub fn point(&self, c: &Convergents) -> Result<GridPoint> {
        let lvl = self.level;
        match self.family {
            Family::A => Ok(GridPoint {
                i: affine(c.k(2 * lvl - 1), self.band, c.k(2 * lvl), self.r)?,
                j: self.s,
            }),
            Family::P => Ok(GridPoint {
                i: self.r,
                j: affine(c.h(2 * lvl), self.band, c.h(2 * lvl + 1), self.s)?,
            }),
        }
    }

    /// The same offsets in the translated partner rectangle.
    pub fn translated(&self) -> TranslatedRectangleId {
        TranslatedRectangleId {
            family: self.family,
            level: self.level,
            band: self.band,
            r: self.r,
            s: self.s,
        }
    }
}

impl TranslatedRectangleId {
    pub fn point(&self, c: &Convergents) -> Result<GridPoint> {
        let lvl = self.level;
        match self.family {
            Family::A => Ok(GridPoint {
                i: self.r,
                j: affine(c.h(2 * lvl - 1), self.band, c.h(2 * lvl), self.s)?,
            }),
            Family::P => Ok(GridPoint {
                i: affine(c.k(2 * lvl), self.band, c.k(2 * lvl + 1), self.r)?,
                j: self.s,
            }),
        }
    }

    pub fn source(&self) -> RectangleId {
        RectangleId {
            family: self.family,
            level: self.level,
            band: self.band,
            r: self.r,
            s: self.s,
        }
    }
}

/// Largest level `L` in `first..end` with `start(L) ≤ x`; `start` is
/// strictly increasing and `start(first) ≤ x`.
fn band_level(first: usize, end: usize, x: u64, start: impl Fn(usize) -> u64) -> usize {
    let (mut lo, mut hi) = (first, end);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if start(mid) <= x {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    debug_assert!(lo > first, "coordinate below the first band start");
    lo - 1
}

/// Places `p` in the source partition, given a bracketing snapshot.
pub fn locate_in(c: &Convergents, p: GridPoint) -> RectangleId {
    // levels L with both 2L+1 and 2L+2 present in the table
    let levels = (c.len() - 1) / 2;
    let (x, y) = (p.i, p.j);

    let lvl = band_level(0, levels, y, |l| c.h(2 * l));
    let width = c.h(2 * lvl + 1);
    let band = (y - c.h(2 * lvl)) / width;
    let s = (y - c.h(2 * lvl)) % width;
    if x < c.k(2 * lvl + 1) {
        debug_assert!(band < c.a(2 * lvl + 2));
        return RectangleId { family: Family::P, level: lvl, band, r: x, s };
    }

    let levels_a = c.len() / 2;
    let lvl = band_level(1, levels_a, x, |l| c.k(2 * l - 1));
    let width = c.k(2 * lvl);
    let band = (x - c.k(2 * lvl - 1)) / width;
    let r = (x - c.k(2 * lvl - 1)) % width;
    debug_assert!(band < c.a(2 * lvl + 1));
    debug_assert!(y < c.h(2 * lvl));
    RectangleId { family: Family::A, level: lvl, band, r, s: y }
}

/// Places `p ≠ (0,0)` in the translated partition.
pub fn locate_translated_in(c: &Convergents, p: GridPoint) -> Result<TranslatedRectangleId> {
    if p == GridPoint::ORIGIN {
        return Err(Error::NoPredecessor);
    }
    let (x, y) = (p.i, p.j);

    // Ã bands stack upward from h_1 = 1, each column strip k_{2l} wide.
    if y >= c.h(1) {
        let levels = c.len() / 2;
        let lvl = band_level(1, levels, y, |l| c.h(2 * l - 1));
        let width = c.h(2 * lvl);
        let band = (y - c.h(2 * lvl - 1)) / width;
        let s = (y - c.h(2 * lvl - 1)) % width;
        if x < c.k(2 * lvl) {
            debug_assert!(band < c.a(2 * lvl + 1));
            return Ok(TranslatedRectangleId { family: Family::A, level: lvl, band, r: x, s });
        }
    }

    // P̃ bands run rightward from k_0 = 1.
    let levels = (c.len() - 1) / 2;
    let lvl = band_level(0, levels, x, |l| c.k(2 * l));
    let width = c.k(2 * lvl + 1);
    let band = (x - c.k(2 * lvl)) / width;
    let r = (x - c.k(2 * lvl)) % width;
    debug_assert!(band < c.a(2 * lvl + 2));
    debug_assert!(y < c.h(2 * lvl + 1));
    Ok(TranslatedRectangleId { family: Family::P, level: lvl, band, r, s: y })
}

pub fn locate(table: &ConvergentTable, p: GridPoint) -> Result<RectangleId> {
    let c = table.bracket(p.i, p.j)?;
    Ok(locate_in(&c, p))
}

pub fn locate_translated(table: &ConvergentTable, p: GridPoint) -> Result<TranslatedRectangleId> {
    if p == GridPoint::ORIGIN {
        return Err(Error::NoPredecessor);
    }
    let c = table.bracket(p.i, p.j)?;
    locate_translated_in(&c, p)
}

/// Coordinates of the next element of `S` after `p1^p.i · p2^p.j`.
pub fn next(table: &ConvergentTable, p: GridPoint) -> Result<GridPoint> {
    let c = table.bracket(p.i, p.j)?;
    locate_in(&c, p).translated().point(&c)
}

/// Coordinates of the element of `S` just before `p`.
pub fn prev(table: &ConvergentTable, p: GridPoint) -> Result<GridPoint> {
    if p == GridPoint::ORIGIN {
        return Err(Error::NoPredecessor);
    }
    let c = table.bracket(p.i, p.j)?;
    locate_translated_in(&c, p)?.source().point(&c)
}

/// `p1^i · p2^j` exactly.
pub fn value(pair: &GeneratorPair, p: GridPoint) -> Result<BigUint> {
    pair.power_product(p.i, p.j)
}

/// `steps` successive successors starting after `start`.
pub fn walk(table: &ConvergentTable, start: GridPoint, steps: usize) -> Result<Vec<GridPoint>> {
    let mut out = Vec::with_capacity(steps);
    let mut cur = start;
    for _ in 0..steps {
        cur = next(table, cur)?;
        out.push(cur);
    }
    Ok(out)
}
