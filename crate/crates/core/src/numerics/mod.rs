//! Quadrature, Fresnel integrals and numerical differentiation.
//!
//! Everything here is a pure function of its arguments.

mod derivative;
mod fresnel;
mod quadrature;

pub use derivative::{derivative, DerivativeEstimate};
pub use fresnel::fresnel;
pub use quadrature::{integrate_planar, QuadratureConfig, QuadratureResult};
