pub mod arith;
pub mod classify;
pub mod curve;
pub mod error;
pub mod lfunc;
pub mod nt;
pub mod registry;
pub mod report;
pub mod torsion;
pub mod zpoly;

pub use error::{Error, Result};
