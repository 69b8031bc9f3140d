//! Fluctuating electromagnetic fields between two planar bodies that may
//! differ in temperature and slide relative to each other.
//!
//! Everything is expressed in the mixed representation `(ω, qx, qy; z)` with
//! natural units `c = ħ = k_B = 1`. Tangential field components live in the
//! Weyl basis of s- and p-polarization, so every response function is a
//! [`WeylMatrix`].
//!
//! The layering, bottom to top:
//!
//! - [`spectral`]: spectral coordinate, branch-correct normal wave number,
//!   free-space Green function.
//! - [`materials`]: reflection matrices (rest frame and boosted) and surface
//!   admittances.
//! - [`greens`]: retarded/advanced Green functions of one or two interfaces,
//!   boundary residuals and surface source strengths.
//! - [`sources`]: photon source strengths and emission matrices.
//! - [`keldysh`]: assembly of the Keldysh-Green function in the gap.
//! - [`energy`]: energy-density spectra and reference formulas.
//! - [`quadrature`]: wave-vector integration with light-cone handling.
//! - [`units`]: SI to natural unit conversion.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod energy;
pub mod error;
pub mod greens;
pub mod keldysh;
pub mod materials;
pub mod quadrature;
pub mod sources;
pub mod spectral;
pub mod units;
pub mod weyl;

pub use error::{Error, Result};
pub use greens::{CavityConfig, CavityResponse, InterfaceSpec, Side};
pub use materials::{DrudeImpedance, Material, ReflectionMatrix};
pub use spectral::{Floors, Sector, SpectralPoint, WaveNumbers};
pub use weyl::WeylMatrix;

/// Complex double used throughout.
pub type C64 = num_complex::Complex64;

/// Crate version, recorded in output metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
