#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod category;
pub mod cli;
pub mod counterexample;
pub mod covers;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod graded;
pub mod idempotents;
pub mod perfectness;
pub mod radical;
pub mod scene;

pub use error::{Error, Result};
pub use field::{Field, Matrix, Scalar, Subspace};
