//! Orthogonal polynomials for the weight `exp(-x^6 - t2 x^4 - t1 x^2)` in
//! arbitrary precision: moments, recurrence coefficients, exact identity
//! checks and large-n expansions.

pub mod error;
pub mod numerics;
pub mod moments;
pub mod orthopoly;
pub mod identities;
pub mod asymptotics;
pub mod cli;
