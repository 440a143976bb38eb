//! File formats and command implementations behind the `hopf-twist` binary.

pub mod commands;
pub mod formats;

pub use commands::run;
