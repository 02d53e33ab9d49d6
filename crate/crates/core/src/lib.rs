//! Exact construction and verification of Hurwitz matrices, scaled Cayley
//! transforms, the quadratic maps `R^{2(n-1)} -> R^n` they induce, and the
//! generating matrices of the Cartan-Weyl basis of `so(2^m)`.

pub mod bispherical;
pub mod cartanweyl;
pub mod cayley;
pub mod error;
pub mod exactnum;
pub mod hurwitz;
pub mod ksmap;
pub mod laplace;
pub mod linalg;
pub mod matrix;
pub mod param;
pub mod random;

pub use error::{Error, Result};
