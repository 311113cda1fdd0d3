//! Quantum-mechanical scattering of charged particles on a magnetic vortex of
//! finite radius: exact partial-wave solutions, short-wavelength (Fraunhofer)
//! asymptotics, cross sections with an optical-theorem check, and the
//! fringe-visibility observables of the Aharonov-Bohm effect.
//!
//! The crate is organized around the physical pipeline:
//!
//! - [`specfun`]: real-order Bessel/Hankel functions and the ray erfc kernel;
//! - [`vortex_model`]: vortex configuration (flux, radius, boundary or
//!   penetrable core) and interior radial solutions;
//! - [`partial_wave`]: exact channel coefficients, wave function, and the
//!   r_c-dependent amplitude with certified truncation;
//! - [`asymptotics`]: closed-form short-wavelength amplitudes and kernels;
//! - [`observables`]: cross sections, optical-theorem residual, visibility,
//!   and the double-slit interference model;
//! - [`cli`]: the scenario configuration and command entry points behind the
//!   `vortexab` binary.
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod asymptotics;
pub mod cli;
pub mod dd;
mod error;
pub mod observables;
pub mod partial_wave;
pub mod quad;
pub mod specfun;
pub mod sum;
pub mod vortex_model;

pub use error::{Error, Result};
