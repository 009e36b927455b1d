//! The log-aesthetic curve family.
//!
//! A curve is fixed by the shape parameter `alpha` (the slope of its
//! logarithmic curvature graph) and the scale `lambda`. It is normalised so
//! that at tangential angle `θ = 0` it passes through the origin with unit
//! tangent `(1, 0)` and unit radius of curvature:
//!
//! ```text
//! ρ(θ) = e^{Λθ}                         α = 1
//!        ((α-1)Λθ + 1)^{1/(α-1)}         otherwise
//! P(θ) = ∫₀^θ ρ(ψ) e^{iψ} dψ
//! ```
//!
//! `lambda = 0` or `alpha = ±∞` is the unit circle centred at `(0, 1)`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::export::Polyline;
use crate::numerics::{fresnel, integrate_planar, QuadratureConfig};
use crate::point::PlanePoint;

/// Relative distance from a bound below which evaluation is refused.
pub const EDGE_TOLERANCE: f64 = 1e-9;

/// Shape parameter, either finite or one of the two circle limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha {
    Finite(f64),
    PosInfinity,
    NegInfinity,
}

impl Alpha {
    pub fn from_f64(alpha: f64) -> Result<Self> {
        if alpha.is_nan() {
            Err(Error::InvalidParameter("alpha must not be NaN".into()))
        } else if alpha == f64::INFINITY {
            Ok(Alpha::PosInfinity)
        } else if alpha == f64::NEG_INFINITY {
            Ok(Alpha::NegInfinity)
        } else {
            Ok(Alpha::Finite(alpha))
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Alpha::Finite(a) => a,
            Alpha::PosInfinity => f64::INFINITY,
            Alpha::NegInfinity => f64::NEG_INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        !matches!(self, Alpha::Finite(_))
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Finite(a) => write!(f, "{a}"),
            Alpha::PosInfinity => f.write_str("inf"),
            Alpha::NegInfinity => f.write_str("-inf"),
        }
    }
}

/// Open interval with optional ends.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Domain {
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

pub type ThetaDomain = Domain;
pub type ArcDomain = Domain;

/// `e^z − 1` without cancellation for small `z`.
fn exp_m1(z: Complex64) -> Complex64 {
    let (s, c) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    Complex64::new(z.re.exp_m1() * c - 2.0 * half * half, z.re.exp() * s)
}

fn edge_margin(bound: f64) -> f64 {
    EDGE_TOLERANCE * bound.abs().max(1.0)
}

impl Domain {
    pub const UNBOUNDED: Domain = Domain {
        lower: None,
        upper: None,
    };

    pub fn new(lower: Option<f64>, upper: Option<f64>) -> Result<Self> {
        if let (Some(l), Some(u)) = (lower, upper) {
            if l >= u {
                return Err(Error::EmptyDomain);
            }
        }
        Ok(Domain { lower, upper })
    }

    pub fn is_unbounded(&self) -> bool {
        self.lower.is_none() && self.upper.is_none()
    }

    /// True when `value` is strictly inside and clear of both edges.
    pub fn contains(&self, value: f64) -> bool {
        if !value.is_finite() {
            return false;
        }
        let above = self.lower.is_none_or(|l| value > l + edge_margin(l));
        let below = self.upper.is_none_or(|u| value < u - edge_margin(u));
        above && below
    }

    pub fn check(&self, value: f64) -> Result<()> {
        if self.contains(value) {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                value,
                lower: self.lower,
                upper: self.upper,
            })
        }
    }

    /// The bound `value` sits on, if it is within the edge tolerance of one.
    pub fn nearby_bound(&self, value: f64) -> Option<f64> {
        [self.lower, self.upper]
            .into_iter()
            .flatten()
            .find(|&b| (value - b).abs() <= edge_margin(b))
    }

    /// Shrinks `[from, to]` into the admissible region, keeping `margin`
    /// (relative to the bound magnitude) away from each edge.
    pub fn clip(&self, from: f64, to: f64, margin: f64) -> (f64, f64) {
        let lo = self.lower.map(|l| l + margin * l.abs().max(1.0));
        let hi = self.upper.map(|u| u - margin * u.abs().max(1.0));
        let clamp = |v: f64| {
            let v = lo.map_or(v, |l| v.max(l));
            hi.map_or(v, |h| v.min(h))
        };
        (clamp(from), clamp(to))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Circle,
    /// α = 1: logarithmic spiral.
    Exponential { lambda: f64 },
    General { alpha: f64, lambda: f64 },
}

/// Shape parameter and scale of one log-aesthetic curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveParams {
    alpha: Alpha,
    lambda: f64,
}

impl CurveParams {
    /// `alpha` may be `±f64::INFINITY` for the circle. Negative `lambda` is rejected.
    pub fn new(alpha: f64, lambda: f64) -> Result<Self> {
        Self::with_alpha(Alpha::from_f64(alpha)?, lambda)
    }

    pub fn with_alpha(alpha: Alpha, lambda: f64) -> Result<Self> {
        if let Alpha::Finite(a) = alpha {
            if !a.is_finite() {
                return Err(Error::InvalidParameter(format!("alpha {a} is not finite")));
            }
        }
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be finite and non-negative, got {lambda}"
            )));
        }
        Ok(CurveParams { alpha, lambda })
    }

    pub fn circle() -> Self {
        CurveParams {
            alpha: Alpha::PosInfinity,
            lambda: 1.0,
        }
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn is_circle(&self) -> bool {
        self.lambda == 0.0 || self.alpha.is_infinite()
    }

    fn kind(&self) -> Kind {
        match self.alpha {
            _ if self.is_circle() => Kind::Circle,
            Alpha::Finite(a) if a == 1.0 => Kind::Exponential {
                lambda: self.lambda,
            },
            Alpha::Finite(a) => Kind::General {
                alpha: a,
                lambda: self.lambda,
            },
            _ => Kind::Circle,
        }
    }

    pub fn theta_bounds(&self) -> ThetaDomain {
        match self.kind() {
            Kind::Circle | Kind::Exponential { .. } => Domain::UNBOUNDED,
            Kind::General { alpha, lambda } => {
                let bound = 1.0 / (lambda * (1.0 - alpha));
                if alpha < 1.0 {
                    Domain {
                        lower: None,
                        upper: Some(bound),
                    }
                } else {
                    Domain {
                        lower: Some(bound),
                        upper: None,
                    }
                }
            }
        }
    }

    pub fn arc_bounds(&self) -> ArcDomain {
        match self.kind() {
            Kind::Circle => Domain::UNBOUNDED,
            Kind::Exponential { lambda } => Domain {
                lower: Some(-1.0 / lambda),
                upper: None,
            },
            Kind::General { alpha, .. } if alpha == 0.0 => Domain::UNBOUNDED,
            Kind::General { alpha, lambda } => {
                let bound = -1.0 / (lambda * alpha);
                if alpha < 0.0 {
                    Domain {
                        lower: None,
                        upper: Some(bound),
                    }
                } else {
                    Domain {
                        lower: Some(bound),
                        upper: None,
                    }
                }
            }
        }
    }

    fn rho_unchecked(&self, theta: f64) -> f64 {
        match self.kind() {
            Kind::Circle => 1.0,
            Kind::Exponential { lambda } => (lambda * theta).exp(),
            Kind::General { alpha, lambda } => {
                ((alpha - 1.0) * lambda * theta + 1.0).powf(1.0 / (alpha - 1.0))
            }
        }
    }

    /// Radius of curvature as a function of tangential angle.
    pub fn rho_of_theta(&self, theta: f64) -> Result<f64> {
        self.theta_bounds().check(theta)?;
        Ok(self.rho_unchecked(theta))
    }

    fn rho_derivatives_unchecked(&self, theta: f64) -> [f64; 4] {
        let rho = self.rho_unchecked(theta);
        match self.kind() {
            Kind::Circle => [1.0, 0.0, 0.0, 0.0],
            Kind::Exponential { lambda } => [rho, lambda * rho, lambda.powi(2) * rho, lambda.powi(3) * rho],
            Kind::General { alpha, lambda } => {
                // ρ^(k) = Λ^k ∏_{j<k} (j+1 - jα) ρ^{k+1-kα}
                let d1 = lambda * rho.powf(2.0 - alpha);
                let d2 = lambda.powi(2) * (2.0 - alpha) * rho.powf(3.0 - 2.0 * alpha);
                let d3 = lambda.powi(3)
                    * (2.0 - alpha)
                    * (3.0 - 2.0 * alpha)
                    * rho.powf(4.0 - 3.0 * alpha);
                [rho, d1, d2, d3]
            }
        }
    }

    /// `[ρ, dρ/dθ, d²ρ/dθ², d³ρ/dθ³]` in closed form.
    pub fn rho_derivatives(&self, theta: f64) -> Result<[f64; 4]> {
        self.theta_bounds().check(theta)?;
        Ok(self.rho_derivatives_unchecked(theta))
    }

    /// Radius of curvature as a function of arc length.
    pub fn rho_of_s(&self, s: f64) -> Result<f64> {
        self.arc_bounds().check(s)?;
        Ok(match self.kind() {
            Kind::Circle => 1.0,
            Kind::Exponential { lambda } => lambda * s + 1.0,
            Kind::General { alpha, lambda } if alpha == 0.0 => (lambda * s).exp(),
            Kind::General { alpha, lambda } => ((lambda * alpha * s).ln_1p() / alpha).exp(),
        })
    }

    /// `dρ/ds`, which satisfies `dρ/ds = Λ ρ^{1-α}`.
    pub fn drho_ds(&self, s: f64) -> Result<f64> {
        let rho = self.rho_of_s(s)?;
        Ok(match self.kind() {
            Kind::Circle => 0.0,
            Kind::Exponential { lambda } => lambda,
            Kind::General { alpha, lambda } => lambda * rho.powf(1.0 - alpha),
        })
    }

    pub fn theta_of_s(&self, s: f64) -> Result<f64> {
        self.arc_bounds().check(s)?;
        Ok(self.theta_of_s_unchecked(s))
    }

    fn theta_of_s_unchecked(&self, s: f64) -> f64 {
        match self.kind() {
            Kind::Circle => s,
            Kind::Exponential { lambda } => (lambda * s).ln_1p() / lambda,
            Kind::General { alpha, lambda } if alpha == 0.0 => -(-lambda * s).exp_m1() / lambda,
            Kind::General { alpha, lambda } => {
                ((1.0 - 1.0 / alpha) * (lambda * alpha * s).ln_1p()).exp_m1()
                    / (lambda * (alpha - 1.0))
            }
        }
    }

    pub fn s_of_theta(&self, theta: f64) -> Result<f64> {
        self.theta_bounds().check(theta)?;
        Ok(match self.kind() {
            Kind::Circle => theta,
            Kind::Exponential { lambda } => (lambda * theta).exp_m1() / lambda,
            Kind::General { alpha, lambda } if alpha == 0.0 => -(-lambda * theta).ln_1p() / lambda,
            Kind::General { alpha, lambda } => {
                (alpha / (alpha - 1.0) * ((alpha - 1.0) * lambda * theta).ln_1p()).exp_m1()
                    / (lambda * alpha)
            }
        })
    }

    fn integrand_unchecked(&self, psi: f64) -> PlanePoint {
        PlanePoint::from_angle(psi) * self.rho_unchecked(psi)
    }

    /// `ρ(ψ) e^{iψ}`, the derivative of `P` with respect to tangential angle.
    pub fn integrand(&self, psi: f64) -> Result<PlanePoint> {
        self.theta_bounds().check(psi)?;
        Ok(self.integrand_unchecked(psi))
    }

    /// Integral of the integrand over `[from, to]`; both ends must be admissible.
    pub fn segment(&self, from: f64, to: f64, cfg: &QuadratureConfig) -> Result<PlanePoint> {
        let domain = self.theta_bounds();
        domain.check(from)?;
        domain.check(to)?;
        Ok(integrate_planar(|psi| self.integrand_unchecked(psi), from, to, cfg)?.value)
    }

    pub fn point_of_theta(&self, theta: f64, cfg: &QuadratureConfig) -> Result<PlanePoint> {
        self.segment(0.0, theta, cfg)
    }

    /// Point at arc length `s`, integrating the unit tangent `e^{iθ(u)}`.
    pub fn point_of_s(&self, s: f64, cfg: &QuadratureConfig) -> Result<PlanePoint> {
        self.arc_bounds().check(s)?;
        let tangent = |u: f64| PlanePoint::from_angle(self.theta_of_s_unchecked(u));
        Ok(integrate_planar(tangent, 0.0, s, cfg)?.value)
    }

    /// Closed-form `d^k P / dθ^k` for `k` in 1..=3.
    pub fn point_derivative(&self, theta: f64, order: u8) -> Result<PlanePoint> {
        let [rho, d1, d2, _] = self.rho_derivatives(theta)?;
        let t = PlanePoint::from_angle(theta);
        let n = t.perp();
        match order {
            1 => Ok(t * rho),
            2 => Ok(t * d1 + n * rho),
            3 => Ok(t * (d2 - rho) + n * (2.0 * d1)),
            _ => Err(Error::InvalidParameter(format!(
                "derivative order must be 1, 2 or 3, got {order}"
            ))),
        }
    }

    /// Exact `P(θ)` where an elementary or Fresnel form exists
    /// (α ∈ {1, 2, -1, ±∞}); `None` otherwise.
    pub fn closed_form_point(&self, theta: f64) -> Result<Option<PlanePoint>> {
        self.theta_bounds().check(theta)?;
        let i = Complex64::i();
        let value = match self.kind() {
            Kind::Circle => Some(PlanePoint::new(theta.sin(), 1.0 - theta.cos())),
            Kind::Exponential { lambda } => {
                let k = Complex64::new(lambda, 1.0);
                Some((exp_m1(k * theta) / k).into())
            }
            Kind::General { alpha, lambda } if alpha == 2.0 => {
                // Circle involute: integrate (Λψ+1)e^{iψ} by parts.
                let e = Complex64::cis(theta);
                let z = -i * (lambda * theta + 1.0) * e + lambda * (e - 1.0) + i;
                Some(z.into())
            }
            Kind::General { alpha, lambda } if alpha == -1.0 => {
                // Clothoid: w = sqrt(1 - 2Λψ) turns the integral into a Fresnel one.
                let scale = (PI * lambda).sqrt();
                let u_start = 1.0 / scale;
                let u_end = (1.0 - 2.0 * lambda * theta).sqrt() / scale;
                let (c1, s1) = fresnel(u_start);
                let (c0, s0) = fresnel(u_end);
                let bracket = Complex64::new(c1 - c0, -(s1 - s0));
                let z = (PI / lambda).sqrt() * Complex64::cis(0.5 / lambda) * bracket;
                Some(z.into())
            }
            _ => None,
        };
        Ok(value)
    }

    /// Centre of curvature `P(θ) + ρ(θ) n(θ)`.
    pub fn evolute_point(&self, theta: f64, cfg: &QuadratureConfig) -> Result<PlanePoint> {
        let p = self.point_of_theta(theta, cfg)?;
        let rho = self.rho_of_theta(theta)?;
        Ok(p + PlanePoint::from_angle(theta).perp() * rho)
    }

    /// First three derivatives of the evolute with respect to θ.
    pub fn evolute_derivatives(&self, theta: f64) -> Result<[PlanePoint; 3]> {
        let [_, d1, d2, d3] = self.rho_derivatives(theta)?;
        let t = PlanePoint::from_angle(theta);
        let n = t.perp();
        Ok([n * d1, n * d2 - t * d1, n * (d3 - d1) - t * (2.0 * d2)])
    }

    /// `n` points at uniform θ spacing over `[from, to]`, accumulating one
    /// quadrature per segment.
    pub fn sample_curve(
        &self,
        from: f64,
        to: f64,
        n: usize,
        cfg: &QuadratureConfig,
    ) -> Result<Polyline> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "sample count must be at least 2, got {n}"
            )));
        }
        let domain = self.theta_bounds();
        domain.check(from)?;
        domain.check(to)?;
        let thetas = uniform_grid(from, to, n);
        let mut points = Vec::with_capacity(n);
        let mut current = self.point_of_theta(from, cfg)?;
        points.push(current);
        for pair in thetas.windows(2) {
            current += integrate_planar(|psi| self.integrand_unchecked(psi), pair[0], pair[1], cfg)?.value;
            points.push(current);
        }
        Polyline::new(thetas, points, format!("lac alpha={} lambda={}", self.alpha, self.lambda))
    }
}

impl fmt::Display for CurveParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={} lambda={}", self.alpha, self.lambda)
    }
}

/// `n` evenly spaced values from `from` to `to` inclusive.
pub fn uniform_grid(from: f64, to: f64, n: usize) -> Vec<f64> {
    let step = (to - from) / (n - 1) as f64;
    (0..n)
        .map(|k| if k + 1 == n { to } else { from + step * k as f64 })
        .collect()
}
