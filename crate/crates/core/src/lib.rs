//! Recovery of the time-dependent source f(t) of a time-fractional
//! convection-diffusion-reaction equation from noisy measurements taken at a
//! single position x₀.
//!
//! The forward problem is diagonal in the Fourier variable, so recovery is a
//! pointwise division by the forward kernel. The inverse symbol grows like
//! |ξ|^α and amplifies measurement noise; three real damping filters
//! ([`regularize::FilterKind`]) with an a priori parameter rule stabilize it.
//!
//! * [`symbols`]: z, h, the inverse symbol Λ and the forward kernel.
//! * [`spectral`]: grids, DFT with continuous-norm scaling, L² and H^p norms.
//! * [`regularize`]: filters, the parameter rule, analytic constants and bounds.
//! * [`pipeline`]: data synthesis, seeded noise, naive and filtered inversion.
//! * [`cli`]: experiment presets, configuration and CSV output.

pub mod cli;
pub mod error;
pub mod pipeline;
pub mod regularize;
pub mod spectral;
pub mod symbols;

pub use error::{Error, Result};
