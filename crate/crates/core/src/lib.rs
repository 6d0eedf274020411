//! Spectral zeta functions, heat kernels and Casimir energies of
//! inhomogeneous strings and drums, computed perturbatively from matrix
//! elements of the density in the Laplacian eigenbasis, with independent
//! spectral oracles (exact roots, Galerkin, collocation, Bessel cross-product
//! zeros) for validation.

pub mod bases;
pub mod cli;
pub mod continuation;
pub mod densities;
pub mod error;
pub mod identities;
pub mod oracles;
pub mod pertzeta;
pub mod quad;
pub mod report;
pub mod specfun;

pub use error::{Result, SpecError};
