//! Log-aesthetic curves, their isoptics and logarithmic curvature graphs.
//!
//! A log-aesthetic curve is given by its radius of curvature as a function
//! of tangential angle,
//!
//! ```text
//! ρ(θ) = ((α − 1) Λ θ + 1)^{1/(α−1)}     (α ≠ 1)
//! ρ(θ) = e^{Λ θ}                        (α = 1)
//! ```
//!
//! and `P(θ) = ∫₀^θ ρ(ψ) e^{iψ} dψ`.

pub mod cli;
pub mod error;
pub mod export;
pub mod isoptic;
pub mod lac;
pub mod lcg;
pub mod numerics;
pub mod point;

pub use error::{Error, Result};
pub use export::{Polyline, PlotSpec};
pub use isoptic::{Isoptic, IsopticConfig, TangentialCurve, VerificationReport};
pub use lac::{Alpha, CurveParams, Domain};
pub use lcg::{AutoisopticReport, Branch, LcgPoint, SlopeEstimate, Verdict};
pub use numerics::QuadratureConfig;
pub use point::PlanePoint;
