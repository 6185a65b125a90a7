//! JSON input and output.

pub mod schema;

pub use schema::{ClassSpec, ContinuationSpec, OracleChoice, OracleSpec, PosetSpec, SetupFile, SCHEMA};
