//! Analysis toolkit for quasi-cyclic LDPC codes described by polynomial
//! parity-check matrices over `F2[x]/(x^r - 1)`.
//!
//! The crate covers:
//! - ring arithmetic ([`ring_poly`]) and polynomial/weight/scalar matrices ([`qc_matrix`]),
//! - permanents over the ring and over the integers ([`permanent`]),
//! - minimum-distance upper bounds from permanent codeword constructions ([`bounds`]),
//! - Tanner-graph girth and algebraic cycle detection ([`cycles`]),
//! - exact code parameters by exhaustive enumeration ([`distance`]),
//! - double-cover constructions ([`covers`]) and weight-matrix enumeration ([`wm_enum`]),
//! - an aggregated report used by the command-line front end ([`report`]).

pub mod bounds;
pub mod covers;
pub mod cycles;
pub mod distance;
mod error;
mod extended;
pub mod permanent;
pub mod qc_matrix;
pub mod report;
pub mod ring_poly;
pub mod wm_enum;

pub use error::{Error, Result};
pub use extended::Extended;
pub use qc_matrix::{PolyMatrix, ScalarMatrix, WeightMatrix};
pub use ring_poly::RingPoly;
