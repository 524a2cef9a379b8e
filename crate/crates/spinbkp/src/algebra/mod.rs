//! Exact arithmetic kernel.

pub mod mono;
pub mod mpoly;
pub mod pfaffian;
pub mod quotient;
pub mod rational;
pub mod ring;
pub mod series;
pub mod upoly;

pub use mono::Mono;
pub use mpoly::MPoly;
pub use pfaffian::{determinant, pfaffian, SkewMatrix};
pub use quotient::{quotient_trace, QuotientElem, QuotientRing};
pub use rational::{rat, rint, Rational};
pub use ring::Ring;
pub use series::{residue, series_exp, series_log, series_reversion, TruncSeries, EXACT};
pub use upoly::UPoly;
