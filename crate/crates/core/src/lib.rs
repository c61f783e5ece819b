pub mod arith;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod nets;

pub use error::{Error, Result};
pub mod diophantine;
pub mod frame;
pub mod graph;
pub mod jacobian;
pub mod verify;
