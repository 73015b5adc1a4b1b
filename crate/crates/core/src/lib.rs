//! Exact quality parameters of digital nets over finite abelian groups.
//!
//! A digital net is a subgroup `P` of `s × n` digit matrices over a finite
//! abelian group `G` of order `b`. Its character-theoretic dual `P⊥` carries
//! the Niederreiter–Rosenbloom–Tsfasman (NRT) weight, and the net is a strict
//! `(t, m, s)`-net with `t = m + 1 - minNRT(P⊥)`.
//!
//! This crate computes, in exact integer arithmetic:
//!
//! - the weight enumerator of `P⊥` by averaging per-point polynomials over the
//!   net ([`wep`]), including truncated, full, multivariate and projected
//!   variants;
//! - the t-value directly from the top coefficients of the inverse identity
//!   ([`tval`]);
//! - brute-force ground truth: dual enumeration, interval counting and
//!   generalized uniformity checks ([`oracle`]);
//! - binary generating matrices from Sobol' direction numbers ([`sobol`]).
//!
//! No floating-point arithmetic is used anywhere in the computation paths.

pub mod abelian;
mod coeff;
pub mod error;
pub mod net;
pub mod oracle;
pub mod poly;
pub mod sobol;
pub mod tval;
pub mod wep;

pub use abelian::{Digit, ExponentTally, GroupElement, GroupSpec};
pub use error::{Error, Result};
pub use net::{DigitMatrix, DigitalNet, MuProfile, Provenance};
pub use oracle::{DualSet, OracleBounds};
pub use poly::{IntPoly, MultiPoly};
pub use sobol::DirectionEntry;
pub use tval::{Method, TValueReport};
pub use wep::{Accumulator, GwPolynomial, WeightEnumerator, WorstProjection};
