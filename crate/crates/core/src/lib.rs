pub mod arith;
pub mod cli;
pub mod detengine;
pub mod error;
pub mod expr;
pub mod matrix;
pub mod matrixgen;
pub mod multiaffine;
pub mod quadfield;
pub mod registry;

pub use error::{Error, Result};
