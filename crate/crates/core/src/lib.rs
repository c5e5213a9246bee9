// `!(a > b)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod bernstein;
pub mod capacity;
pub mod choquet;
pub mod cli;
pub mod error;
pub mod function;
pub mod operators;
pub mod properties;
pub mod sets;

pub use error::{Error, Result};
