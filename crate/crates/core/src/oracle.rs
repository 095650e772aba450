//! Brute-force ground truth: `S` enumerated in increasing order by a k-way
//! merge over rows of constant p2-exponent.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_bigint::BigUint;

use crate::arith::GeneratorPair;
use crate::error::Result;
use crate::successor::GridPoint;

/// Sorted stream of `(coordinates, value)` pairs, starting at `(0,0) ↦ 1`.
///
/// The frontier holds one pending candidate per row `j`; row `j+1` is opened
/// when `(0, j)` is emitted, so no element is ever queued twice.
#[derive(Debug, Clone)]
pub struct SortedStream {
    p1: BigUint,
    p2: BigUint,
    frontier: BinaryHeap<Reverse<(BigUint, u64, u64)>>,
}

impl SortedStream {
    pub fn new(pair: &GeneratorPair) -> Self {
        let mut frontier = BinaryHeap::new();
        frontier.push(Reverse((BigUint::from(1u8), 0, 0)));
        SortedStream {
            p1: BigUint::from(pair.p1()),
            p2: BigUint::from(pair.p2()),
            frontier,
        }
    }
}

impl Iterator for SortedStream {
    type Item = (GridPoint, BigUint);

    fn next(&mut self) -> Option<Self::Item> {
        let Reverse((value, i, j)) = self.frontier.pop()?;
        self.frontier.push(Reverse((&value * &self.p1, i + 1, j)));
        if i == 0 {
            self.frontier.push(Reverse((&value * &self.p2, 0, j + 1)));
        }
        Some((GridPoint::new(i, j), value))
    }
}

/// The same merge ordered by exact exponent comparison, never forming the
/// elements themselves. Suited to exponents whose values would be enormous.
#[derive(Debug, Clone)]
pub struct ExponentStream {
    pair: GeneratorPair,
    frontier: Vec<GridPoint>,
}

impl ExponentStream {
    pub fn new(pair: &GeneratorPair) -> Self {
        ExponentStream {
            pair: *pair,
            frontier: vec![GridPoint::ORIGIN],
        }
    }

    fn pop_min(&mut self) -> Result<GridPoint> {
        let mut best = 0;
        for idx in 1..self.frontier.len() {
            let (a, b) = (self.frontier[idx], self.frontier[best]);
            if self.pair.compare_products((a.i, a.j), (b.i, b.j))? == Ordering::Less {
                best = idx;
            }
        }
        let p = self.frontier[best];
        self.frontier[best] = GridPoint::new(p.i + 1, p.j);
        if p.i == 0 {
            self.frontier.push(GridPoint::new(0, p.j + 1));
        }
        Ok(p)
    }
}

impl Iterator for ExponentStream {
    type Item = Result<GridPoint>;

    fn next(&mut self) -> Option<Self::Item> {
        Some(self.pop_min())
    }
}

/// First `count` elements of `S` in increasing order.
pub fn enumerate(pair: &GeneratorPair, count: usize) -> Vec<(GridPoint, BigUint)> {
    SortedStream::new(pair).take(count).collect()
}

/// Successor of `p` found by enumerating `S` from scratch.
pub fn naive_next(pair: &GeneratorPair, p: GridPoint) -> Result<GridPoint> {
    let target = pair.power_product(p.i, p.j)?;
    let found = SortedStream::new(pair)
        .find(|(_, v)| *v > target)
        .map(|(q, _)| q);
    Ok(found.expect("sorted stream is infinite"))
}

/// Predecessor of `p` by enumeration; `None` for the origin.
pub fn naive_prev(pair: &GeneratorPair, p: GridPoint) -> Result<Option<GridPoint>> {
    let target = pair.power_product(p.i, p.j)?;
    let mut last = None;
    for (q, v) in SortedStream::new(pair) {
        if v >= target {
            return Ok(last);
        }
        last = Some(q);
    }
    unreachable!("sorted stream is infinite")
}

/// `steps` successive successors of `start`, each found by a fresh enumeration.
pub fn naive_walk(pair: &GeneratorPair, start: GridPoint, steps: usize) -> Result<Vec<GridPoint>> {
    let mut out = Vec::with_capacity(steps);
    let mut cur = start;
    for _ in 0..steps {
        cur = naive_next(pair, cur)?;
        out.push(cur);
    }
    Ok(out)
}
