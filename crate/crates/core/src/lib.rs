//! Integer generalized splines on edge-labeled cycles.
//!
//! A spline assigns an integer to every vertex so that the two ends of each
//! edge agree modulo the edge label. On an `n`-cycle the splines form a free
//! Z-module of rank `n`; this crate builds explicit flow-up bases for it
//! (triangulation, King and smallest classes), decomposes splines in them and
//! computes multiplication tables, all in exact arbitrary-precision integers.
//!
//! ```
//! use cycle_splines::{bases, spline::EdgeLabeledCycle};
//!
//! let cycle = EdgeLabeledCycle::new([3, 4, 8, 2, 5]).unwrap();
//! let king = bases::king_basis(&cycle).unwrap();
//! assert_eq!(king.element(3).to_string(), "(0,0,0,8,40)");
//! ```

pub mod algebra;
pub mod bases;
pub mod cli;
pub mod error;
pub mod numtheory;
pub mod oracle;
pub mod spline;

pub use error::{Result, SplineError};
