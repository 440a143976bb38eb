#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod catalog;
pub mod constructions;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod movshev;
pub mod report;
pub mod scalars;
pub mod split;
pub mod twists;

pub use error::{Error, Result};
pub use scalars::{Field, FieldSpec, Rational, Scalar};
