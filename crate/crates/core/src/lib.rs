//! Exact integer homology of precubical sets, trace monoids, monoid-sets and
//! asynchronous transition systems.

#![allow(clippy::needless_range_loop)]

pub mod asts;
pub mod cubical;
pub mod error;
pub mod intlinalg;
pub mod msets;
pub mod precubical;
pub mod schema;
pub mod trace;

pub use error::{Error, Result};
