//! Exact symbolic algebra for a free particle constrained to the unit
//! (d-1)-sphere, with the dimension `d` kept symbolic.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure: values
//! are immutable once built and every operation returns a fresh value.
//!
//! Layers, bottom-up:
//!
//! * [`coeff`], [`poly`], [`ratfun`] - Gaussian-rational coefficients,
//!   sparse multivariate polynomials and rational functions.
//! * [`scalar`], [`covariant`], [`point`] - O(d)-invariant phase-space
//!   functions (with the algebraic root `R`), the vector/tensor layers, and
//!   exact evaluation at concrete component points.
//! * [`brackets`] - Poisson and Dirac brackets, on-shell reduction.
//! * [`bft`] - first-class constraints, physical fields and Hamiltonians.
//! * [`operator`] - normal ordering of covariant differential operators.
//! * [`graded`] - ghost-extended super-Poisson algebra and BRST charges.
//! * [`spectrum`] - energy formulas and the shift-parameter fix.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bft;
pub mod brackets;
pub mod check;
pub mod coeff;
pub mod covariant;
pub mod error;
pub mod graded;
pub mod operator;
pub mod point;
pub mod poly;
pub mod ratfun;
pub mod scalar;
pub mod spectrum;

pub use check::{Finding, Status};
pub use coeff::GaussRational;
pub use covariant::{PhaseExpr, Tensor2Expr, VectorExpr};
pub use error::AlgebraError;
pub use point::PointAssignment;
pub use poly::{Monomial, Poly, Var};
pub use ratfun::RatFun;
pub use scalar::ScalarExpr;
