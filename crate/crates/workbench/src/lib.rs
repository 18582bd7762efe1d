//! File formats, reports, scenario runners and the command line driver for
//! `jordan-core`.

pub mod cli;
mod error;
pub mod json;
pub mod report;
pub mod scenario;

pub use error::WbError;
