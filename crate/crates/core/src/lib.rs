//! Visible perimeter of stacked unit-disk arrangements.
//!
//! A collection of opaque unit disks is viewed from one side; a stacking
//! order decides which disk lies in front. This crate computes
//!
//! - the exact visible perimeter of an arrangement under a stacking order
//!   ([`visibility::visible_perimeter`]),
//! - its limit as the centers contract toward a point, which equals a sum of
//!   external angles of incrementally grown convex hulls
//!   ([`visibility::limit_visible_perimeter`]),
//! - stacking-order strategies ([`orders`]) and the extremal point-set
//!   families they are studied on ([`generators`]),
//! - independent Monte-Carlo and scale-schedule oracles ([`oracle`]),
//! - scaling experiments, log-log exponent fits, file formats and SVG output
//!   ([`harness`]).

pub mod error;
pub mod generators;
pub mod geometry;
pub mod harness;
pub mod oracle;
pub mod orders;
pub mod visibility;

pub use error::{Error, Result};
pub use geometry::{ArcIntervalSet, HullState, Location, Point, PointSet, StackingOrder};
