//! Matroid base-exchange algorithms over small ground sets.
//!
//! The crate provides four layers:
//!
//! * [`matroid`] — immutable independence oracles (uniform, graphic, linear
//!   over GF(2), linear over the rationals) behind one interface, with rank,
//!   base, fundamental-circuit, and restriction operations.
//! * [`exchange`] — symmetric-exchange predicates on pairs of disjoint bases,
//!   connector sets, the constructive serial exchange of any two elements of
//!   one base, full serial exchanges for ranks 3 and 4, and brute-force
//!   search used as an independent oracle.
//! * [`cobase`] — base-cobase graphs of block matroids (construction,
//!   connectivity, diameter) and cyclic base orders.
//! * [`harness`] — deterministic enumeration of small corpora and a registry
//!   of property checks producing replayable findings.
//!
//! Everything is `no_std`-compatible (with `alloc`); IO, file formats, and
//! the command-line front end live in the companion `serex-cli` crate.
//!
//! Ground sets are capped at 64 elements so element sets fit in one machine
//! word; all search loops run on bit operations. All values are immutable
//! once constructed and all operations are pure, so instances may be shared
//! freely across threads.
//!
//! ```
//! use serex_core::{BasePair, ElementId, ElementSet, Matroid};
//!
//! # fn main() -> Result<(), serex_core::Error> {
//! let m = Matroid::graphic(4, vec![(0, 1), (1, 2), (2, 3), (0, 2), (1, 3), (0, 3)])?;
//! let pair = BasePair::new(
//!     &m,
//!     ElementSet::from_bits(0b000111), // the path 0-1-2-3
//!     ElementSet::from_bits(0b111000), // the tree {02, 13, 03}
//! )?;
//! let seq = pair.pair_serial_exchange(ElementId(0), ElementId(1))?;
//! assert!(pair.verify_sequence(&seq)?);
//! # Ok(())
//! # }
//! ```

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod cobase;
pub mod error;
pub mod exchange;
pub mod harness;
mod linalg;
pub mod matroid;
pub mod set;
#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, HarnessError};
pub use exchange::{BasePair, Budget, ConnSet, ExchangeSequence, Side};
pub use matroid::{Circuit, Matroid, Restriction};
pub use set::{ElementId, ElementSet, MAX_GROUND};

#[cfg(feature = "std")]
extern crate std;
