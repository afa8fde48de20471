//! Residue constellations over the ring `Z[w]` (`w^2 = w - 1`), Mannheim-type
//! weights on them, and the `w`-cyclic single-error-correcting perfect codes
//! they support.
//!
//! The crate is organised bottom-up:
//!
//! - [`eisenstein`]: exact arithmetic in `Z[w]`.
//! - [`field`]: the residue field `A_p[w] = Z[w]/<pi>` with its labeling,
//!   canonical minimal-norm representatives and discrete logarithms.
//! - [`metric`]: the coordinate-sum weights, the unit-step graph distance,
//!   and an exhaustive or sampled metric-axiom auditor.
//! - [`codec`]: parity-check and generator construction, encoding, `w`-shift,
//!   syndrome decoding, perfectness verification and a unit-error channel.
//! - [`cli`]: the `mannheim` command-line front end.

pub mod cli;
pub mod codec;
pub mod eisenstein;
pub mod error;
pub mod field;
pub mod metric;

/// An element of `GF(p)` naming a residue class of `A_p[w]`.
pub type Label = usize;

pub use codec::{ChannelStats, Code, DecodeResult, DecodeStatus, PerfectnessReport, Word};
pub use eisenstein::{unit_set, EisensteinInt, UnitSet, UNITS};
pub use error::{Error, Result};
pub use field::{label_ratio, split_prime, ResidueField, P_MAX};
pub use metric::{MetricAuditReport, WeightComparisonReport, WeightKind, WeightTable};
