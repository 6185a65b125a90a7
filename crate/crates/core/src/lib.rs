//! Exact finite-scale engine for wrapped Floer-type A∞ constructions.

pub mod error;
pub mod io;
pub mod ainf;
pub mod linalg;
pub mod loc;
pub mod poset;
pub mod setup;
pub mod wrap;

pub use error::{Error, Result};
