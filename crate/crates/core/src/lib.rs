//! Exact arithmetic for discrete integrable maps over finite fields,
//! p-adic numbers and rational function fields.

pub mod algebra;
pub mod error;
pub mod finite_field;
pub mod maps;
pub mod padic;
pub mod ratfunc;

pub use error::{MathError, Result};
pub mod kdv;
pub mod solutions;
pub mod agr;
pub mod initial_space;
