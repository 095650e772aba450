//! Executable checks on the upper/lower sequences `f(n) = ⌈n/α⌉`,
//! `g(n) = ⌊n/α⌋` and their fractional parts
//! `z_n = f(n)·α − n` and `y_n = n − g(n)·α`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::arith::{compare_affine, lower, upper, AffineForm, GeneratorPair};
use crate::cf::{ConvergentTable, Convergents};
use crate::error::{Error, Result};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FracPartRecord {
    pub n: u64,
    pub fval: u64,
    pub gval: u64,
    /// `f(n)·α − n`
    pub z: AffineForm,
    /// `n − g(n)·α`
    pub y: AffineForm,
}

fn to_i64(v: u64) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow)
}

impl FracPartRecord {
    pub fn compute(pair: &GeneratorPair, n: u64) -> Result<Self> {
        let fval = upper(pair, n)?;
        let gval = lower(pair, n)?;
        let (ni, fi, gi) = (to_i64(n)?, to_i64(fval)?, to_i64(gval)?);
        Ok(FracPartRecord {
            n,
            fval,
            gval,
            z: AffineForm::new(fi, ni),
            y: AffineForm::new(-gi, -ni),
        })
    }
}

/// Indices where `z_n` and `y_n` set strict new minima, scanning `n = 1..=limit`.
///
/// `z` records are measured against `z_0 = α`, so `n = 1` always qualifies;
/// `y` records start at `m_1 = 1` by definition.
pub fn minimal_fractional_subsequences(pair: &GeneratorPair, limit: u64) -> Result<(Vec<u64>, Vec<u64>)> {
    let mut z_records = Vec::new();
    let mut y_records = Vec::new();
    let mut z_min = AffineForm::new(1, 0);
    let mut y_min: Option<AffineForm> = None;

    for n in 1..=limit {
        let rec = FracPartRecord::compute(pair, n)?;
        match compare_affine(pair, rec.z, z_min)? {
            Ordering::Less => {
                z_min = rec.z;
                z_records.push(n);
            }
            Ordering::Equal => {
                return Err(Error::Inconsistent(format!("z_{n} ties an earlier minimum {z_min}")))
            }
            Ordering::Greater => {}
        }
        let is_record = match y_min {
            None => true,
            Some(m) => match compare_affine(pair, rec.y, m)? {
                Ordering::Less => true,
                Ordering::Equal => {
                    return Err(Error::Inconsistent(format!("y_{n} ties an earlier minimum {m}")))
                }
                Ordering::Greater => false,
            },
        };
        if is_record {
            y_min = Some(rec.y);
            y_records.push(n);
        }
    }
    Ok((z_records, y_records))
}

fn extend_past(table: &ConvergentTable, limit: u64) -> Result<Convergents> {
    table.extend_until(|c| c.len() >= 3 && c.h(c.len() - 2) > limit)
}

/// The numerator chains the records should follow, truncated at `limit`:
/// `h_0+h_1, …, h_2, h_2+h_3, …, h_4, …` and `h_1, h_1+h_2, …, h_3, h_3+h_4, …`.
pub fn predicted_record_chains(table: &ConvergentTable, limit: u64) -> Result<(Vec<u64>, Vec<u64>)> {
    let c = extend_past(table, limit)?;
    let chain = |first_base: usize, seed: Vec<u64>| {
        let mut out = seed;
        let mut base = first_base;
        'levels: while base + 2 < c.len() {
            for t in 1..=c.a(base + 2) {
                let v = c.h(base) + t * c.h(base + 1);
                if v > limit {
                    break 'levels;
                }
                out.push(v);
            }
            base += 2;
        }
        out
    };
    let seed = if c.h(1) <= limit { vec![c.h(1)] } else { vec![] };
    Ok((chain(0, vec![]), chain(1, seed)))
}

/// Scans records up to `limit` and compares them to the convergent chains and
/// to the predicted difference pattern.
pub fn verify_record_theorem(table: &ConvergentTable, limit: u64) -> Result<Report> {
    let mut report = Report::new("fractional-part-records");
    let (z_rec, y_rec) = minimal_fractional_subsequences(table.pair(), limit)?;
    let (z_pred, y_pred) = predicted_record_chains(table, limit)?;
    report.check(z_rec == z_pred, || {
        format!("z records {:?} ≠ predicted {:?}", head(&z_rec), head(&z_pred))
    });
    report.check(y_rec == y_pred, || {
        format!("y records {:?} ≠ predicted {:?}", head(&y_rec), head(&y_pred))
    });

    // differences: h_1 ×a_2, h_3 ×a_4, … after prepending n_0 = 0;
    // h_2 ×a_3, h_4 ×a_5, … for the y records
    let c = extend_past(table, limit)?;
    let pattern = |first: usize| {
        let mut out = Vec::new();
        let mut idx = first;
        while idx + 1 < c.len() {
            for _ in 0..c.a(idx + 1) {
                out.push(c.h(idx));
            }
            idx += 2;
        }
        out
    };
    let diffs = |v: &[u64]| v.windows(2).map(|w| w[1] - w[0]).collect::<Vec<_>>();
    let z_diffs = diffs(&[&[0], z_rec.as_slice()].concat());
    let y_diffs = diffs(&y_rec);
    let z_pattern = pattern(1);
    let y_pattern = pattern(2);
    report.check(z_pattern.starts_with(&z_diffs), || {
        format!("z record differences {:?} do not follow {:?}", head(&z_diffs), head(&z_pattern))
    });
    report.check(y_pattern.starts_with(&y_diffs), || {
        format!("y record differences {:?} do not follow {:?}", head(&y_diffs), head(&y_pattern))
    });
    Ok(report)
}

fn head(v: &[u64]) -> &[u64] {
    &v[..v.len().min(12)]
}

/// Checks `f` and `g` at every primary and secondary convergent numerator
/// whose partial quotient index is at most `max_index`:
///
/// * `f(h_{2j} + t·h_{2j+1}) = k_{2j} + t·k_{2j+1}` and `g = f − 1`, `0 < t ≤ a_{2j+2}`;
/// * `g(h_{2l−1} + t·h_{2l}) = k_{2l−1} + t·k_{2l}` and `f = g + 1`, `0 ≤ t ≤ a_{2l+1}`.
pub fn verify_fg_at_convergents(c: &Convergents, max_index: usize) -> Result<Report> {
    let mut report = Report::new("fg-at-convergents");
    let pair = c.pair();
    let top = max_index.min(c.len().saturating_sub(1));

    let mut j = 0;
    while 2 * j + 2 <= top {
        for t in 1..=c.a(2 * j + 2) {
            let n = c.h(2 * j) + t * c.h(2 * j + 1);
            let k = c.k(2 * j) + t * c.k(2 * j + 1);
            let (f, g) = (upper(pair, n)?, lower(pair, n)?);
            report.check(f == k && g == k - 1, || {
                format!("j={j} t={t}: f({n})={f}, g({n})={g}, expected {k} and {}", k - 1)
            });
        }
        j += 1;
    }

    let mut l = 1;
    while 2 * l < top {
        for t in 0..=c.a(2 * l + 1) {
            let n = c.h(2 * l - 1) + t * c.h(2 * l);
            let k = c.k(2 * l - 1) + t * c.k(2 * l);
            let (f, g) = (upper(pair, n)?, lower(pair, n)?);
            report.check(g == k && f == k + 1, || {
                format!("l={l} t={t}: g({n})={g}, f({n})={f}, expected {k} and {}", k + 1)
            });
        }
        l += 1;
    }
    Ok(report)
}

/// Checks that `forms` is strictly decreasing; the failure names the first
/// violated link.
pub fn check_decreasing_chain(
    pair: &GeneratorPair,
    suite: &str,
    forms: &[AffineForm],
) -> Result<Report> {
    let mut report = Report::new(suite);
    for (idx, w) in forms.windows(2).enumerate() {
        let ord = compare_affine(pair, w[0], w[1])?;
        report.check(ord == Ordering::Greater, || {
            format!("link {idx}: {} is not greater than {}", w[0], w[1])
        });
    }
    Ok(report)
}

/// Numerator/denominator pairs `(h_b + t·h_{b+1}, k_b + t·k_{b+1})` along the
/// chain starting at `first`, stepping two indices per level, ending at the
/// last primary convergent whose quotient index is within `max_index`.
fn convergent_chain(c: &Convergents, first: usize, max_index: usize) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut base = first;
    while base + 2 <= max_index && base + 2 < c.len() {
        for t in 0..c.a(base + 2) {
            out.push((c.h(base) + t * c.h(base + 1), c.k(base) + t * c.k(base + 1)));
        }
        base += 2;
    }
    if base < c.len() {
        out.push((c.h(base), c.k(base)));
    }
    out.into_iter().map(|(h, k)| (h as i64, k as i64)).collect()
}

/// The two decreasing chains of fractional parts through `max_index`:
/// ceil parts `h − k·α` along `h_1, h_1+h_2, …, h_3, …` and floor parts
/// `k·α − h` along `h_0, h_0+h_1, …, h_2, …`.
pub fn fractional_chains(c: &Convergents, max_index: usize) -> (Vec<AffineForm>, Vec<AffineForm>) {
    let ceil_parts = if max_index >= 1 && c.len() > 1 {
        convergent_chain(c, 1, max_index)
            .into_iter()
            .map(|(h, k)| AffineForm::new(-k, -h))
            .collect()
    } else {
        Vec::new()
    };
    let floor_parts = convergent_chain(c, 0, max_index)
        .into_iter()
        .map(|(h, k)| AffineForm::new(k, h))
        .collect();
    (ceil_parts, floor_parts)
}

pub fn verify_monotone_fractional_chains(c: &Convergents, max_index: usize) -> Result<Report> {
    let (ceil_parts, floor_parts) = fractional_chains(c, max_index);
    let mut report = check_decreasing_chain(c.pair(), "monotone-fractional-chains", &ceil_parts)?;
    let floor = check_decreasing_chain(c.pair(), "floor", &floor_parts)?;
    report.checks += floor.checks;
    if report.failure.is_none() {
        report.failure = floor.failure.map(|f| format!("floor chain {f}"));
    } else {
        report.failure = report.failure.map(|f| format!("ceil chain {f}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(p1: u64, p2: u64) -> ConvergentTable {
        ConvergentTable::new(GeneratorPair::new(p1, p2).unwrap())
    }

    /// Record indices of an explicit list of values, compared as floats with
    /// a guard band; only used where the margins are wide.
    fn float_records(vals: impl Iterator<Item = f64>, start: f64) -> Vec<u64> {
        let mut min = start;
        let mut out = Vec::new();
        for (idx, v) in vals.enumerate() {
            if v < min {
                assert!(min - v > 1e-9);
                min = v;
                out.push(idx as u64 + 1);
            }
        }
        out
    }

    #[test]
    fn frac_record_invariants() {
        let pair = GeneratorPair::new(2, 3).unwrap();
        for n in 1..200 {
            let r = FracPartRecord::compute(&pair, n).unwrap();
            assert_eq!(compare_affine(&pair, r.z, AffineForm::ZERO).unwrap(), Ordering::Greater);
            assert_eq!(compare_affine(&pair, r.y, AffineForm::ZERO).unwrap(), Ordering::Greater);
            assert_eq!(r.z.checked_add(r.y).unwrap(), AffineForm::new(1, 0));
        }
    }

    #[test]
    fn record_examples() {
        let pair = GeneratorPair::new(2, 3).unwrap();
        let (z, y) = minimal_fractional_subsequences(&pair, 45).unwrap();
        assert_eq!(z, vec![1, 3, 5, 17, 29, 41]);
        assert_eq!(y, vec![1, 2, 7, 12]);
        assert_eq!(minimal_fractional_subsequences(&pair, 1).unwrap(), (vec![1], vec![1]));
        // z_2 = 4α − 2 ≈ 0.524 > z_1 = 2α − 1; y_2 = 2 − 3α ≈ 0.107 < y_1 = 1 − α
        assert_eq!(minimal_fractional_subsequences(&pair, 2).unwrap(), (vec![1], vec![1, 2]));
        for (p1, p2) in [(5, 7), (2, 5)] {
            let pair = GeneratorPair::new(p1, p2).unwrap();
            assert_eq!(minimal_fractional_subsequences(&pair, 1).unwrap(), (vec![1], vec![1]));
        }
    }

    #[test]
    fn records_match_float_scan_for_small_n() {
        let pair = GeneratorPair::new(2, 3).unwrap();
        let alpha = 2f64.ln() / 3f64.ln();
        let z = (1..=45u64).map(|n| (n as f64 / alpha).ceil() * alpha - n as f64);
        let y = (1..=45u64).map(|n| n as f64 - (n as f64 / alpha).floor() * alpha);
        let (zr, yr) = minimal_fractional_subsequences(&pair, 45).unwrap();
        assert_eq!(zr, float_records(z, alpha));
        assert_eq!(yr, float_records(y, f64::INFINITY));
    }

    #[test]
    fn predicted_chains() {
        let t = table(2, 3);
        let (z, y) = predicted_record_chains(&t, 45).unwrap();
        assert_eq!(z, vec![1, 3, 5, 17, 29, 41]);
        assert_eq!(y, vec![1, 2, 7, 12]);
        assert!(verify_record_theorem(&t, 45).unwrap().passed());
    }

    #[test]
    fn fg_examples() {
        let t = table(2, 3);
        let c = t.extend_to(5).unwrap();
        assert!(verify_fg_at_convergents(&c, 4).unwrap().passed());
        let upper3 = upper(t.pair(), c.h(2) + c.h(3)).unwrap();
        assert_eq!(upper3, c.k(2) + c.k(3));
        assert_eq!(upper(t.pair(), c.h(0) + c.h(1)).unwrap(), c.k(0) + c.k(1));
        let r = verify_fg_at_convergents(&c, 0).unwrap();
        assert!(r.passed());
        assert_eq!(r.checks, 0);
    }

    #[test]
    fn monotone_chain_examples() {
        let t = table(2, 3);
        let c = t.extend_to(6).unwrap();
        let r = verify_monotone_fractional_chains(&c, 5).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checks > 0);

        let single = check_decreasing_chain(t.pair(), "one", &[AffineForm::new(1, 0)]).unwrap();
        assert!(single.passed());
        assert_eq!(single.checks, 0);

        let (_, mut floor) = fractional_chains(&c, 5);
        floor.swap(1, 2);
        let bad = check_decreasing_chain(t.pair(), "swapped", &floor).unwrap();
        assert!(!bad.passed());
        assert!(bad.failure.unwrap().starts_with("link 1"));
    }
}
