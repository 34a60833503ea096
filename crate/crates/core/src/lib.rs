//! Exact finite models of measure-preserving automorphisms and their
//! extensions (skew products).
//!
//! A probability space is a power-of-two number of equal-mass cells and an
//! automorphism is a permutation of those cells. On top of that the crate
//! provides the Halmos metric over a fixed dyadic family, skew products
//! `R(x, y) = (Sx, T_x y)` with their cocycles, the recurrence sets
//! `D(m, n, R, A)`, Rokhlin–Halmos towers, fiberwise conjugation, and the
//! construction that turns any extension of an aperiodic base into a nearby
//! extension with a checked recurrence certificate.
//!
//! All measures and distances are exact rationals.

pub mod cohomology;
pub mod error;
pub mod harness;
pub mod measure;
pub mod rational;
pub mod skew;

pub use error::{Error, Result};
pub use rational::Rational;
