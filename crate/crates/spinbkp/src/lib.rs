//! Spin Hurwitz numbers, hypergeometric BKP tau-functions and the correlators
//! W_{g,n}, computed exactly by three routes: tau-function expansion, closed
//! formulas on the spectral curve, and odd topological recursion.

pub mod algebra;
pub mod check;
pub mod error;

pub use error::{Error, Result};
pub mod partitions;
pub mod schurq;
pub mod spinhurwitz;
pub mod taufn;
pub mod npoint;
pub mod closedform;
pub mod toprec;
pub mod cli;
