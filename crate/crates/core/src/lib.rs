//! Exact curvature spectral geometry on pseudo-Riemannian model spaces.
//!
//! The crate builds algebraic model spaces `(V, g, R)` and polynomial
//! coordinate metrics, evaluates the skew-symmetric curvature operator of
//! oriented 2-planes and the higher order curvature operator `Θ` of k-planes,
//! and decides by exact sampling whether their Jordan normal forms are constant
//! over spacelike or timelike Grassmannians. All arithmetic is over ℚ.

pub mod error;
pub mod exact;
pub mod grassmann;
pub mod metrics;
pub mod modelspace;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
