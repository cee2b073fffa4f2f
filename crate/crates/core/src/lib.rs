pub mod algebra;
pub mod bsz;
pub mod cli;
pub mod codim;
pub mod cyclo;
pub mod error;
pub mod exponent;
pub mod group;
pub mod linalg;
pub mod poly;
pub mod spec;

pub use error::{Error, Result};
