//! Exact-arithmetic verification of a family of convolution identities for
//! Bernoulli numbers and of their homotopical source, the differential on
//! the completed tensor algebra over `{alpha, beta, x}` and the gauge action
//! on Maurer-Cartan elements.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point and every check is exact.
//!
//! Module map:
//!
//! * [`rat`] - the scalar type and its canonical `p/q` string form
//! * [`arith`] - Bernoulli and harmonic numbers, binomials, factorials, the
//!   alternating finite-difference sum
//! * [`linalg`] - reduced row echelon form, rank, kernel bases and span
//!   membership over the rationals
//! * [`identities`] - the identity family `lambda(a,b,c)`, the independent
//!   gamma oracle, condensed forms, the Miki/Euler reconstructions and the
//!   rank/dimension analysis
//! * [`tensor`] - the length-truncated free tensor algebra, its
//!   differential, `D^2 = 0` checks and the gauge transport of `alpha` to
//!   `beta`
//! * [`dgl`] - finite differential graded Lie algebras from structure
//!   constants, axiom validation, gauge and flow

#![forbid(unsafe_code)]

pub mod arith;
pub mod dgl;
pub mod identities;
pub mod linalg;
pub mod rat;
pub mod tensor;

pub use rat::{frac, parse_rat, rat, rat_string, Rat};
