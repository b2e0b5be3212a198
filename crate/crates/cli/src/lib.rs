//! Command-line front end of the n-cycle census: group sources, data files,
//! parallel census and density runs, and verification suites.

pub mod data;
pub mod family;
pub mod parallel;
pub mod suites;

/// Exit status for a run whose output contradicts a proven bound.
pub const EXIT_VIOLATION: u8 = 2;
/// Exit status for usage, data and capacity errors.
pub const EXIT_ERROR: u8 = 1;
