//! Property checks and exhaustive oracles for parity-check matrices.

mod availability;
mod distance;
mod ghw;
mod greedy;
mod strict;

pub use availability::{check_availability, AvailabilityReport};
pub use distance::{min_distance_bruteforce, Distance};
pub use ghw::{dual_ghw_bruteforce, GhwResult, DUAL_DIMENSION_LIMIT, MAX_GHW_ORDER};
pub use greedy::{greedy_cover, GreedyTrace, TieBreak};
pub use strict::{check_strict_availability, StrictCheckReport};
