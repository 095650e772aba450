//! Exact order decisions against α = log(p1)/log(p2).
//!
//! Every comparison reduces to the sign of `e1·log p1 + e2·log p2` for
//! integer exponents, i.e. to comparing `p1^e1` against `p2^-e2` (after moving
//! negative exponents across). A float estimate settles the sign when its
//! error bound certifies it; otherwise both powers are built as big integers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap, in bits, on any power built during a comparison.
pub const DEFAULT_BIT_BUDGET: u64 = 1_000_000;

/// Relative slack applied to the float estimate of `e1·log2 p1 + e2·log2 p2`.
/// `log2` is accurate to a few ulps, so 2^-40 leaves a wide margin.
const FLOAT_SLACK: f64 = 1.0 / (1u64 << 40) as f64;

/// A validated pair of multiplicatively independent generators `1 < p1 < p2`,
/// together with the bit budget used for every exact comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorPair {
    p1: u64,
    p2: u64,
    bit_budget: u64,
}

impl GeneratorPair {
    pub fn new(p1: u64, p2: u64) -> Result<Self> {
        validate_pair(p1, p2)
    }

    pub fn with_bit_budget(mut self, bits: u64) -> Self {
        self.bit_budget = bits;
        self
    }

    pub fn p1(&self) -> u64 {
        self.p1
    }

    pub fn p2(&self) -> u64 {
        self.p2
    }

    pub fn bit_budget(&self) -> u64 {
        self.bit_budget
    }

    fn log2_p1(&self) -> f64 {
        (self.p1 as f64).log2()
    }

    fn log2_p2(&self) -> f64 {
        (self.p2 as f64).log2()
    }

    /// Float approximation of α, for display only.
    pub fn alpha_approx(&self) -> f64 {
        self.log2_p1() / self.log2_p2()
    }

    /// Estimated bit length of `p1^e1 · p2^e2`; errors if it exceeds the budget.
    pub(crate) fn check_budget(&self, e1: u64, e2: u64) -> Result<()> {
        let bits = e1 as f64 * self.log2_p1() + e2 as f64 * self.log2_p2();
        if bits > self.bit_budget as f64 {
            return Err(Error::BudgetExceeded {
                bits: bits.ceil() as u64,
                budget: self.bit_budget,
            });
        }
        Ok(())
    }

    /// `p1^e1 · p2^e2` as an exact integer.
    pub fn power_product(&self, e1: u64, e2: u64) -> Result<BigUint> {
        self.check_budget(e1, e2)?;
        let e1 = u32::try_from(e1).map_err(|_| Error::Overflow)?;
        let e2 = u32::try_from(e2).map_err(|_| Error::Overflow)?;
        Ok(BigUint::from(self.p1).pow(e1) * BigUint::from(self.p2).pow(e2))
    }

    /// Sign of `e1·log p1 + e2·log p2`, i.e. the order of `p1^e1·p2^e2` against 1.
    pub fn sign_of_log_combination(&self, e1: i128, e2: i128) -> Result<Ordering> {
        match (e1.signum(), e2.signum()) {
            (0, 0) => return Ok(Ordering::Equal),
            (s1, s2) if s1 >= 0 && s2 >= 0 => return Ok(Ordering::Greater),
            (s1, s2) if s1 <= 0 && s2 <= 0 => return Ok(Ordering::Less),
            _ => {}
        }
        let lhs = (e1.max(0), e2.max(0));
        let rhs = ((-e1).max(0), (-e2).max(0));
        let to_u64 = |v: i128| u64::try_from(v).map_err(|_| Error::Overflow);
        let (l1, l2, r1, r2) = (to_u64(lhs.0)?, to_u64(lhs.1)?, to_u64(rhs.0)?, to_u64(rhs.1)?);
        self.check_budget(l1, l2)?;
        self.check_budget(r1, r2)?;

        let lhs_log = l1 as f64 * self.log2_p1() + l2 as f64 * self.log2_p2();
        let rhs_log = r1 as f64 * self.log2_p1() + r2 as f64 * self.log2_p2();
        let slack = (lhs_log + rhs_log) * FLOAT_SLACK + 1e-9;
        let diff = lhs_log - rhs_log;
        if diff > slack {
            return Ok(Ordering::Greater);
        }
        if diff < -slack {
            return Ok(Ordering::Less);
        }

        let ord = self.power_product(l1, l2)?.cmp(&self.power_product(r1, r2)?);
        if ord == Ordering::Equal {
            // Only reachable if the pair were multiplicatively dependent.
            return Err(Error::Inconsistent(format!(
                "{}^{l1}·{}^{l2} = {}^{r1}·{}^{r2}",
                self.p1, self.p2, self.p1, self.p2
            )));
        }
        Ok(ord)
    }

    /// Compares `p1^a.0 · p2^a.1` with `p1^b.0 · p2^b.1` without forming the
    /// full products unless the estimate is inconclusive.
    pub fn compare_products(&self, a: (u64, u64), b: (u64, u64)) -> Result<Ordering> {
        self.sign_of_log_combination(
            i128::from(a.0) - i128::from(b.0),
            i128::from(a.1) - i128::from(b.1),
        )
    }
}

impl fmt::Display for GeneratorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p1, self.p2)
    }
}

/// Splits `n` as `m^u` with `u` maximal, so `m` is not a perfect power.
pub fn perfect_power_base(n: u64) -> (u64, u32) {
    if n < 4 {
        return (n, 1);
    }
    let max_exp = 63 - n.leading_zeros();
    for exp in (2..=max_exp).rev() {
        let root = n.nth_root(exp);
        if root > 1 && root.checked_pow(exp) == Some(n) {
            return (root, exp);
        }
    }
    (n, 1)
}

/// Checks `1 < p1 < p2` and that log(p1)/log(p2) is irrational.
pub fn validate_pair(p1: u64, p2: u64) -> Result<GeneratorPair> {
    if p1 <= 1 || p2 <= p1 {
        return Err(Error::OrderViolation { p1, p2 });
    }
    let (base1, _) = perfect_power_base(p1);
    let (base2, _) = perfect_power_base(p2);
    if base1 == base2 {
        return Err(Error::RationalLogRatio { p1, p2, base: base1 });
    }
    Ok(GeneratorPair {
        p1,
        p2,
        bit_budget: DEFAULT_BIT_BUDGET,
    })
}

/// Order of `h/k` relative to α. Never `Equal`.
pub fn compare_fraction(pair: &GeneratorPair, h: u64, k: u64) -> Result<Ordering> {
    if k == 0 {
        return Err(Error::ZeroDenominator);
    }
    // h/k < α  ⇔  k·log p1 − h·log p2 > 0
    Ok(pair
        .sign_of_log_combination(i128::from(k), -i128::from(h))?
        .reverse())
}

/// The real number `k·α − n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AffineForm {
    pub k: i64,
    pub n: i64,
}

impl AffineForm {
    pub const ZERO: AffineForm = AffineForm { k: 0, n: 0 };

    pub fn new(k: i64, n: i64) -> Self {
        AffineForm { k, n }
    }

    pub fn checked_add(self, other: AffineForm) -> Option<AffineForm> {
        Some(AffineForm {
            k: self.k.checked_add(other.k)?,
            n: self.n.checked_add(other.n)?,
        })
    }

    pub fn checked_neg(self) -> Option<AffineForm> {
        Some(AffineForm {
            k: self.k.checked_neg()?,
            n: self.n.checked_neg()?,
        })
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}α{:+}", self.k, -i128::from(self.n))
    }
}

/// Exact order of `u.k·α − u.n` against `v.k·α − v.n`.
pub fn compare_affine(pair: &GeneratorPair, u: AffineForm, v: AffineForm) -> Result<Ordering> {
    let dk = i128::from(u.k) - i128::from(v.k);
    let dn = i128::from(u.n) - i128::from(v.n);
    // sign(dk·α − dn) = sign(dk·log p1 − dn·log p2)
    pair.sign_of_log_combination(dk, -dn)
}

/// `f(n) = ⌈n/α⌉`: the unique `k` with `(k−1)·α < n < k·α`.
pub fn upper(pair: &GeneratorPair, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroDenominator);
    }
    // n < k·α  ⇔  n/k < α; false at k = n since α < 1.
    let below = |k: u64| compare_fraction(pair, n, k).map(|o| o == Ordering::Less);
    let mut lo = n;
    let mut hi = n.checked_add(1).ok_or(Error::Overflow)?;
    while !below(hi)? {
        lo = hi;
        hi = hi.checked_mul(2).ok_or(Error::Overflow)?;
    }
    // invariant: !below(lo), below(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if below(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `g(n) = ⌊n/α⌋ = f(n) − 1`.
pub fn lower(pair: &GeneratorPair, n: u64) -> Result<u64> {
    Ok(upper(pair, n)? - 1)
}
