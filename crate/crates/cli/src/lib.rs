//! File formats, grid enumeration and the self-verification harness behind
//! the `charclass` binary.

pub mod enumerate;
pub mod error;
pub mod report;
pub mod verify;

pub use error::CliError;
