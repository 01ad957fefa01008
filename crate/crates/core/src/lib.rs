//! Exact combinatorics of secant trees.
//!
//! Three independent routes to the joint distribution `f_2n(m,k)` of the
//! statistics `eoc` (end of minimal chain) and `pom` (parent of maximum leaf):
//!
//! - [`distributions`]: brute-force enumeration over all trees,
//! - [`recurrence`]: partial difference equations plus boundary identities,
//! - [`series`]: coefficient extraction from exact multivariate generating functions.
//!
//! [`bijections`] holds the constructive maps behind the boundary identities
//! and [`verify`] cross-checks everything.

pub mod distributions;
pub mod trees;
pub mod recurrence;
pub mod report;
pub mod series;
pub mod bijections;
pub mod golden;
pub mod format;
pub mod verify;
