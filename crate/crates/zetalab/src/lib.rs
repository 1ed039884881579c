//! zetalab: a desk-scale laboratory for Dirichlet series and L-functions.
//!
//! The crate evaluates zeta, Dirichlet, Davenport-Heilbronn, Dedekind/Hecke,
//! elliptic-curve and modular-form L-functions, locates and classifies
//! critical-strip zeros, checks prime-side equivalents of the Riemann
//! hypothesis, and tracks zero trajectories under continuous deformations of
//! series coefficients.

pub mod arithmetic;
pub mod characters;
pub mod numkernel;

pub use num_complex::Complex64;
