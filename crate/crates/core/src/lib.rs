//! Successor and predecessor queries in the sorted set
//! `S = { p1^i · p2^j : i, j ≥ 0 }` answered from the exponent coordinates
//! alone, using the continued fraction of `α = log p1 / log p2`.
//!
//! All order decisions are exact: they reduce to comparing products of
//! powers of `p1` and `p2` as big integers, with a float shortcut only where
//! its error bound certifies the result.
//!
//! ```
//! use lattice_succ::{ConvergentTable, GeneratorPair, GridPoint, successor};
//!
//! let table = ConvergentTable::new(GeneratorPair::new(2, 3)?);
//! // 72 = 2^3·3^2 is followed by 81 = 3^4
//! assert_eq!(successor::next(&table, GridPoint::new(3, 2))?, GridPoint::new(0, 4));
//! # Ok::<(), lattice_succ::Error>(())
//! ```

pub mod arith;
pub mod cf;
mod error;
pub mod oracle;
mod report;
pub mod sequences;
pub mod successor;
pub mod tiling;

pub use arith::{compare_affine, compare_fraction, validate_pair, AffineForm, GeneratorPair};
pub use cf::{ConvergentTable, Convergents};
pub use error::{Error, Result};
pub use report::Report;
pub use successor::{GridPoint, RectangleId};
