//! Simple continued fraction of α and its primary and secondary convergents.
//!
//! Partial quotients are discovered by Stern–Brocot descent: `a_{m+1}` is the
//! largest `t` for which the mediant `(h_{m-1} + t·h_m)/(k_{m-1} + t·k_m)`
//! stays on the same side of α as convergent `m-1`. Every probe is one exact
//! [`compare_fraction`] call.

use std::cmp::Ordering;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::arith::{compare_fraction, GeneratorPair};
use crate::error::{Error, Result};
use crate::report::Report;

/// Row `i` of the table: quotient `a_i` and convergent `h_i/k_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Convergent {
    pub a: u64,
    pub h: u64,
    pub k: u64,
}

/// Side of α on which convergent `index` lies: even below, odd above.
pub fn side_of(index: usize) -> Ordering {
    if index.is_multiple_of(2) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// An immutable snapshot of a [`ConvergentTable`].
#[derive(Debug, Clone)]
pub struct Convergents {
    pair: GeneratorPair,
    rows: Arc<Vec<Convergent>>,
}

impl Convergents {
    pub fn pair(&self) -> &GeneratorPair {
        &self.pair
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Convergent] {
        &self.rows
    }

    pub fn get(&self, index: usize) -> Option<&Convergent> {
        self.rows.get(index)
    }

    /// Like `get`, reporting how far the table would have to reach.
    pub fn require(&self, index: usize) -> Result<&Convergent> {
        self.rows.get(index).ok_or(Error::IndexBeyondTable {
            index,
            needed: index + 1,
            len: self.rows.len(),
        })
    }

    /// Partial quotient `a_i`. Panics past the end of the snapshot.
    pub fn a(&self, i: usize) -> u64 {
        self.rows[i].a
    }

    pub fn h(&self, i: usize) -> u64 {
        self.rows[i].h
    }

    pub fn k(&self, i: usize) -> u64 {
        self.rows[i].k
    }

    pub fn quotients(&self) -> impl Iterator<Item = u64> + '_ {
        self.rows.iter().map(|r| r.a)
    }
}

/// Lazily extended convergent table for one generator pair.
///
/// Extension replaces the shared row vector wholesale under a write lock, so a
/// [`Convergents`] snapshot never observes a partially written row.
#[derive(Debug)]
pub struct ConvergentTable {
    pair: GeneratorPair,
    rows: RwLock<Arc<Vec<Convergent>>>,
}

impl ConvergentTable {
    pub fn new(pair: GeneratorPair) -> Self {
        ConvergentTable {
            pair,
            rows: RwLock::new(Arc::new(vec![Convergent { a: 0, h: 0, k: 1 }])),
        }
    }

    pub fn pair(&self) -> &GeneratorPair {
        &self.pair
    }

    pub fn snapshot(&self) -> Convergents {
        let rows = self.rows.read().unwrap_or_else(|e| e.into_inner()).clone();
        Convergents {
            pair: self.pair,
            rows,
        }
    }

    /// Ensures rows `0..=index` exist.
    pub fn extend_to(&self, index: usize) -> Result<Convergents> {
        self.extend_until(|c| c.len() > index)
    }

    /// Extends one row at a time until `done` holds for the snapshot.
    pub fn extend_until(&self, mut done: impl FnMut(&Convergents) -> bool) -> Result<Convergents> {
        let current = self.snapshot();
        if done(&current) {
            return Ok(current);
        }
        let mut guard = self.rows.write().unwrap_or_else(|e| e.into_inner());
        let mut rows: Vec<Convergent> = guard.as_ref().clone();
        let outcome = loop {
            let snapshot = Convergents {
                pair: self.pair,
                rows: Arc::new(rows.clone()),
            };
            if done(&snapshot) {
                break Ok(snapshot);
            }
            match next_row(&self.pair, &rows) {
                Ok(row) => rows.push(row),
                Err(e) => break Err(e),
            }
        };
        // Keep whatever was discovered, even if the budget stopped us.
        if rows.len() > guard.len() {
            *guard = Arc::new(rows);
        }
        outcome
    }

    /// Extends until the second-to-last row has `k > i` and `h > j`, which is
    /// enough for both rectangle partitions to place `(i, j)`.
    pub fn bracket(&self, i: u64, j: u64) -> Result<Convergents> {
        self.extend_until(|c| {
            let n = c.len();
            n >= 3 && c.k(n - 2) > i && c.h(n - 2) > j
        })
    }
}

/// Convergent `m−1` with the `(1, 0)` convention for `m = 0`.
fn predecessor(rows: &[Convergent], m: usize) -> (u64, u64) {
    if m == 0 {
        (1, 0)
    } else {
        (rows[m - 1].h, rows[m - 1].k)
    }
}

fn mediant(base: (u64, u64), step: (u64, u64), t: u64) -> Result<(u64, u64)> {
    let h = step
        .0
        .checked_mul(t)
        .and_then(|x| x.checked_add(base.0))
        .ok_or(Error::Overflow)?;
    let k = step
        .1
        .checked_mul(t)
        .and_then(|x| x.checked_add(base.1))
        .ok_or(Error::Overflow)?;
    Ok((h, k))
}

fn next_row(pair: &GeneratorPair, rows: &[Convergent]) -> Result<Convergent> {
    let m = rows.len() - 1;
    let base = predecessor(rows, m);
    let step = (rows[m].h, rows[m].k);
    // convergent m−1 sits on the side of index m+1 (same parity)
    let side = side_of(m + 1);
    let same_side = |t: u64| -> Result<bool> {
        let (h, k) = mediant(base, step, t)?;
        Ok(compare_fraction(pair, h, k)? == side)
    };

    // t = 1 always qualifies since every quotient past a_0 is positive.
    let mut good = 1u64;
    let mut bad = 2u64;
    while same_side(bad)? {
        good = bad;
        bad = bad.checked_mul(2).ok_or(Error::Overflow)?;
    }
    while bad - good > 1 {
        let mid = good + (bad - good) / 2;
        if same_side(mid)? {
            good = mid;
        } else {
            bad = mid;
        }
    }
    let (h, k) = mediant(base, step, good)?;
    Ok(Convergent { a: good, h, k })
}

/// Intermediate fraction `(h_base + t·h_{base+1}) / (k_base + t·k_{base+1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SecondaryConvergent {
    pub base: usize,
    pub t: u64,
    pub h: u64,
    pub k: u64,
}

/// The mediants strictly between convergents `level` and `level + 2`,
/// for `0 < t < a_{level+2}`.
pub fn secondary_convergents(c: &Convergents, level: usize) -> Result<Vec<SecondaryConvergent>> {
    let top = c.require(level + 2)?;
    let base = c.require(level)?;
    let step = c.require(level + 1)?;
    (1..top.a)
        .map(|t| {
            let (h, k) = mediant((base.h, base.k), (step.h, step.k), t)?;
            Ok(SecondaryConvergent { base: level, t, h, k })
        })
        .collect()
}

/// Checks recurrence, unit determinant, coprimality and the parity side of
/// every row in the snapshot.
pub fn verify_table(c: &Convergents) -> Result<Report> {
    let mut report = Report::new("convergent-table");
    let rows = c.rows();
    report.check(rows[0] == Convergent { a: 0, h: 0, k: 1 }, || {
        format!("row 0 is {:?}, expected a=0 h=0 k=1", rows[0])
    });
    for (i, row) in rows.iter().enumerate() {
        if i >= 1 {
            let (ph, pk) = predecessor(rows, i - 1);
            let expect_h = u128::from(row.a) * u128::from(rows[i - 1].h) + u128::from(ph);
            let expect_k = u128::from(row.a) * u128::from(rows[i - 1].k) + u128::from(pk);
            let (h, k) = (row.h, row.k);
            report.check(
                u128::from(h) == expect_h && u128::from(k) == expect_k && row.a >= 1,
                || format!("recurrence fails at row {i}"),
            );
            let det = i128::from(rows[i - 1].h) * i128::from(k) - i128::from(rows[i - 1].k) * i128::from(h);
            report.check(det.abs() == 1, || {
                format!("determinant h_{0}·k_{i} − k_{0}·h_{i} = {det}", i - 1)
            });
        }
        report.check(num_integer::gcd(row.h, row.k) == 1, || {
            format!("gcd(h_{i}, k_{i}) ≠ 1")
        });
        let side = compare_fraction(c.pair(), row.h, row.k)?;
        report.check(side == side_of(i), || {
            format!("convergent {i} = {}/{} lies on the wrong side of α", row.h, row.k)
        });
    }
    Ok(report)
}
