//! Exact scalars, dense matrices and polynomials over the rationals.
//!
//! Nothing in here touches floating point. Matrices are dense and small
//! (ambient dimensions stay well below 50), so the algorithms favour
//! simplicity and controlled coefficient growth over asymptotics.

mod matrix;
mod multipoly;
mod rational;
mod unipoly;

pub use matrix::{Inertia, Matrix};
pub use multipoly::MultiPoly;
pub use rational::{int, parse_rational, rat, Rational};
pub(crate) use rational::{ser_rational, ser_rationals};
pub use unipoly::UniPoly;
