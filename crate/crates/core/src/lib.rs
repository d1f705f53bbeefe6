//! Construction, verification and bounding of binary erasure codes with
//! locality `r` and availability `t`.

pub mod bounds;
pub mod code;
pub mod combinatorics;
pub mod constructions;
pub mod error;
pub mod field;
pub mod gf2;
pub mod lp;
pub mod report;
pub mod verification;
pub mod weights;

pub use code::{AvailabilityCode, CodeKind, CodeSidecar};
pub use error::{Error, ParseError, Result};
pub use field::FiniteField;
pub use gf2::BitMatrix;
pub use weights::WeightDistribution;
