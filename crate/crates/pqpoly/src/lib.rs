//! Exact and numeric computation with two-parameter deformed Fibonacci and
//! Lucas polynomials: the deformed integers, binomials and shifted
//! factorials underneath them, every recursion route, terminating
//! basic-series representations, generating functions as truncated formal
//! power series, and Gaussian-windowed Fourier transform checks.
//!
//! Exact paths use arbitrary-precision rationals throughout; the Fourier
//! module is the only intrinsically floating-point surface.

pub mod error;
pub mod fourier;
pub mod generating_functions;
pub mod hypergeometric;
pub mod polynomials;
pub mod pq_arithmetic;
pub mod scalar;
pub mod verify;

pub use error::Error;
pub use polynomials::Family;
pub use pq_arithmetic::{PQParams, XPolynomial};
pub use scalar::{Rat, Scalar};
