//! Correlation kernels of the perturbed Jacobi unitary ensemble, their
//! scaling limits, and the associated Painlevé-type systems.

pub mod error;
pub mod limits;
pub mod linalg;
pub mod orthopoly;
pub mod painleve;
pub mod quadrature;
pub mod sampler;
pub mod specfun;
pub mod weight;

pub use error::{Error, Result};
