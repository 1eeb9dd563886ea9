pub mod arith;
pub mod classify;
pub mod error;
pub mod fdim;
pub mod fixtures;
pub mod fock;
pub mod graph;
pub mod lattice;
pub mod moments;
pub mod report;
pub mod selftest;
pub mod surd;
pub mod tl;

pub use error::{Error, Result};
