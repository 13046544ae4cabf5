//! Exact arithmetic for the unified q-exponential function and the
//! generalized q-Bernoulli, q-Euler, and q-Genocchi numbers and polynomials
//! it generates.
//!
//! Everything is computed over the field of rational functions in `v`, where
//! `q = v^2`, so half-integer powers of `q` are representable exactly. No
//! floating point enters any identity check; the only numeric operation in
//! the crate is the radius-of-convergence estimator in [`series`].
//!
//! The crate is organized bottom-up:
//! - [`rational`]: arbitrary-precision rational scalars (the field Q).
//! - [`vpoly`]: dense polynomials in `v` over Q.
//! - [`qrat`]: the coefficient field Q(v) with substitution q -> 1/q and the
//!   classical limit q -> 1.
//! - [`qcore`]: q-integers, q-factorials, Gaussian binomials, q-Pochhammer
//!   symbols, and the Gauss q-binomial identity check.
//! - [`alpha`]: the alpha(q,n) parameter families of the unified exponential,
//!   their symmetry and inverse conditions, the recursive system solver, and
//!   the ratio analyzer.
//! - [`series`]: truncated formal power series over Q(v), the unified
//!   exponential builder, and the radius estimator.
//! - [`qpoly`]: polynomials in x (optionally x and y) over Q(v).
//! - [`qnumbers`]: the q-number tables, q-polynomials, and the verifiers for
//!   the addition theorems, odd-coefficient vanishing, derivative identities,
//!   and classical limits.
//! - [`classical`]: classical Bernoulli/Euler/Genocchi oracles, independent
//!   of all q machinery.
//! - [`report`]: structured verification reports shared by all checkers.

pub mod alpha;
pub mod classical;
pub mod parse;
pub mod qcore;
pub mod qnumbers;
pub mod qpoly;
pub mod qrat;
pub mod rational;
pub mod report;
pub mod series;
pub mod vpoly;

mod error;

pub use error::{Error, Result};
pub use qrat::QRat;
pub use rational::Rational;
