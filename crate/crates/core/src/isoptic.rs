//! Isoptics of curves parametrised by tangential angle.
//!
//! For such a curve the unit tangent at parameter θ is `(cos θ, sin θ)`, so
//! the tangent at `θ + δ` meets the tangent at `θ` under the angle
//! `γ = π − δ`. Writing `V = P(θ+δ) − P(θ)` for the chord, the two tangent
//! lines intersect at
//!
//! ```text
//! I(θ) = P(θ) + t(θ) (cos θ, sin θ),
//! t(θ) = csc δ · (V_x sin(θ+δ) − V_y cos(θ+δ))
//! ```
//!
//! Only the chord needs quadrature. Derivatives of `I` are assembled in the
//! moving frame `(T, N)` at θ from `V`, `ρ` and `dρ/dθ` at both ends.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::export::Polyline;
use crate::lac::{uniform_grid, CurveParams, Domain, ThetaDomain};
use crate::numerics::{integrate_planar, QuadratureConfig};
use crate::point::PlanePoint;

/// A plane curve whose parameter is its tangential angle.
///
/// Implementations must be immutable; `derivative(θ, 1)` must point along
/// `(cos θ, sin θ)`.
pub trait TangentialCurve {
    fn theta_domain(&self) -> ThetaDomain;

    /// `dP/dθ = ρ(θ) e^{iθ}`.
    fn integrand(&self, theta: f64) -> Result<PlanePoint>;

    fn point(&self, theta: f64, cfg: &QuadratureConfig) -> Result<PlanePoint>;

    /// `d^k P / dθ^k` for `k` in 1..=3.
    fn derivative(&self, theta: f64, order: u8) -> Result<PlanePoint>;

    /// `(ρ, dρ/dθ)`. The default projects the first two derivatives on the tangent.
    fn radius_and_rate(&self, theta: f64) -> Result<(f64, f64)> {
        let t = PlanePoint::from_angle(theta);
        let d1 = self.derivative(theta, 1)?;
        let d2 = self.derivative(theta, 2)?;
        Ok((d1.dot(t), d2.dot(t)))
    }
}

impl TangentialCurve for CurveParams {
    fn theta_domain(&self) -> ThetaDomain {
        self.theta_bounds()
    }

    fn integrand(&self, theta: f64) -> Result<PlanePoint> {
        CurveParams::integrand(self, theta)
    }

    fn point(&self, theta: f64, cfg: &QuadratureConfig) -> Result<PlanePoint> {
        self.point_of_theta(theta, cfg)
    }

    fn derivative(&self, theta: f64, order: u8) -> Result<PlanePoint> {
        self.point_derivative(theta, order)
    }

    fn radius_and_rate(&self, theta: f64) -> Result<(f64, f64)> {
        let [rho, rate, ..] = self.rho_derivatives(theta)?;
        Ok((rho, rate))
    }
}

/// Below this `|sin δ|` the two tangents are treated as parallel.
const MIN_SIN_DELTA: f64 = 1e-9;

/// Tangent-angle offset `δ = π − γ` between the two tangency points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsopticConfig {
    delta: f64,
}

impl IsopticConfig {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < PI) || delta.sin().abs() <= MIN_SIN_DELTA {
            return Err(Error::DegenerateAngle(delta));
        }
        Ok(IsopticConfig { delta })
    }

    /// From the viewing angle γ.
    pub fn from_gamma(gamma: f64) -> Result<Self> {
        Self::new(PI - gamma)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn gamma(&self) -> f64 {
        PI - self.delta
    }
}

/// `V = P(θ+δ) − P(θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordVector {
    pub vx: f64,
    pub vy: f64,
}

impl ChordVector {
    pub fn as_point(&self) -> PlanePoint {
        PlanePoint::new(self.vx, self.vy)
    }

    pub fn norm(&self) -> f64 {
        self.vx.hypot(self.vy)
    }

    /// Direction angle of the chord in `(−π, π]`.
    pub fn angle(&self) -> f64 {
        self.vy.atan2(self.vx)
    }
}

fn check_pair<C: TangentialCurve + ?Sized>(curve: &C, theta: f64, iso: IsopticConfig) -> Result<()> {
    let domain = curve.theta_domain();
    domain.check(theta)?;
    domain.check(theta + iso.delta)
}

pub fn chord_vector<C: TangentialCurve + ?Sized>(
    curve: &C,
    theta: f64,
    iso: IsopticConfig,
    cfg: &QuadratureConfig,
) -> Result<ChordVector> {
    check_pair(curve, theta, iso)?;
    // Nodes are strictly inside [θ, θ+δ], which lies inside the domain.
    let f = |psi: f64| {
        curve
            .integrand(psi)
            .unwrap_or(PlanePoint::new(f64::NAN, f64::NAN))
    };
    let v = integrate_planar(f, theta, theta + iso.delta, cfg)?.value;
    Ok(ChordVector { vx: v.x, vy: v.y })
}

fn t_from_chord(theta: f64, iso: IsopticConfig, v: ChordVector) -> f64 {
    let (s2, c2) = (theta + iso.delta).sin_cos();
    (v.vx * s2 - v.vy * c2) / iso.delta.sin()
}

/// Signed distance along the unit tangent at θ to the intersection with the
/// tangent at θ+δ.
pub fn t_theta<C: TangentialCurve + ?Sized>(
    curve: &C,
    theta: f64,
    iso: IsopticConfig,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let v = chord_vector(curve, theta, iso, cfg)?;
    Ok(t_from_chord(theta, iso, v))
}

/// Same quantity in amplitude–phase form `csc δ ‖V‖ sin(θ + δ − atan2(V_y, V_x))`.
///
/// Any branch of the chord angle gives the same value since the sine is
/// 2π-periodic; the conventional `(−π, π]` range is used.
pub fn t_theta_harmonic<C: TangentialCurve + ?Sized>(
    curve: &C,
    theta: f64,
    iso: IsopticConfig,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let v = chord_vector(curve, theta, iso, cfg)?;
    let norm = v.norm();
    if norm == 0.0 {
        return Err(Error::ZeroChord);
    }
    Ok(norm * (theta + iso.delta - v.angle()).sin() / iso.delta.sin())
}

pub fn isoptic_point<C: TangentialCurve + ?Sized>(
    curve: &C,
    theta: f64,
    iso: IsopticConfig,
    cfg: &QuadratureConfig,
) -> Result<PlanePoint> {
    let t = t_theta(curve, theta, iso, cfg)?;
    let p = curve.point(theta, cfg)?;
    Ok(p + PlanePoint::from_angle(theta) * t)
}

/// Parameters θ for which both θ and θ+δ are admissible.
pub fn isoptic_domain<C: TangentialCurve + ?Sized>(curve: &C, iso: IsopticConfig) -> Result<ThetaDomain> {
    let d = curve.theta_domain();
    Domain::new(d.lower, d.upper.map(|u| u - iso.delta))
}

/// First three θ-derivatives of the isoptic.
pub fn isoptic_derivatives<C: TangentialCurve + ?Sized>(
    curve: &C,
    theta: f64,
    iso: IsopticConfig,
    cfg: &QuadratureConfig,
) -> Result<[PlanePoint; 3]> {
    let v = chord_vector(curve, theta, iso, cfg)?.as_point();
    let (rho1, rate1) = curve.radius_and_rate(theta)?;
    let (rho2, rate2) = curve.radius_and_rate(theta + iso.delta)?;
    Ok(frame_derivatives(theta, iso.delta, v, (rho1, rate1), (rho2, rate2)))
}

/// Assembles `I', I'', I'''` from the chord and the radius data at both ends.
///
/// With `a = V·T₂` and `b = V×T₂` one has `I' = csc δ (a T₁ + b N₁)`,
/// `a' = ρ₂ − ρ₁ cos δ − b` and `b' = a − ρ₁ sin δ`; a frame vector
/// `A T₁ + B N₁` differentiates to `(A' − B) T₁ + (B' + A) N₁`.
fn frame_derivatives(
    theta: f64,
    delta: f64,
    v: PlanePoint,
    (rho1, rate1): (f64, f64),
    (rho2, rate2): (f64, f64),
) -> [PlanePoint; 3] {
    let (sd, cd) = delta.sin_cos();
    let csc = 1.0 / sd;
    let t2 = PlanePoint::from_angle(theta + delta);

    let a0 = v.dot(t2);
    let b0 = v.cross(t2);
    let a1 = rho2 - rho1 * cd - b0;
    let b1 = a0 - rho1 * sd;
    let a2 = rate2 - rate1 * cd - b1;
    let b2 = a1 - rate1 * sd;

    // I' = (p, q), with q derivatives supplied by (a, b) derivatives.
    let (p0, q0) = (csc * a0, csc * b0);
    let (p1, q1) = (csc * a1, csc * b1);
    let (p2, q2) = (csc * a2, csc * b2);

    let (r0, s0) = (p1 - q0, q1 + p0);
    let (r1, s1) = (p2 - q1, q2 + p1);
    let (u0, w0) = (r1 - s0, s1 + r0);

    let t1 = PlanePoint::from_angle(theta);
    let n1 = t1.perp();
    [t1 * p0 + n1 * q0, t1 * r0 + n1 * s0, t1 * u0 + n1 * w0]
}

pub fn isoptic_derivative<C: TangentialCurve + ?Sized>(
    curve: &C,
    theta: f64,
    iso: IsopticConfig,
    order: u8,
    cfg: &QuadratureConfig,
) -> Result<PlanePoint> {
    if !(1..=3).contains(&order) {
        return Err(Error::InvalidParameter(format!(
            "derivative order must be 1, 2 or 3, got {order}"
        )));
    }
    Ok(isoptic_derivatives(curve, theta, iso, cfg)?[usize::from(order) - 1])
}

/// Residuals of a candidate isoptic point against the definition: it must
/// lie on both tangent lines, which meet under the viewing angle γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerificationReport {
    /// Distance to the tangent line at θ.
    pub dist1: f64,
    /// Distance to the tangent line at θ+δ.
    pub dist2: f64,
    pub angle_error: f64,
}

impl VerificationReport {
    pub const DISTANCE_TOLERANCE: f64 = 1e-9;
    pub const ANGLE_TOLERANCE: f64 = 1e-12;

    /// Distances below `1e-9 (1 + |candidate|)` and angle error below `1e-12`.
    pub fn passes(&self, candidate: PlanePoint) -> bool {
        let scale = 1.0 + candidate.norm();
        self.dist1 < Self::DISTANCE_TOLERANCE * scale
            && self.dist2 < Self::DISTANCE_TOLERANCE * scale
            && self.angle_error < Self::ANGLE_TOLERANCE
    }
}

/// Normalised first derivative. Where ρ underflows into the subnormal range
/// the derivative no longer carries a reliable direction and the tangential
/// angle itself is used.
fn unit_tangent<C: TangentialCurve + ?Sized>(curve: &C, theta: f64) -> Result<PlanePoint> {
    let d = curve.derivative(theta, 1)?;
    let n = d.norm();
    if n > f64::MIN_POSITIVE / f64::EPSILON && n.is_finite() {
        Ok(PlanePoint::new(d.x / n, d.y / n))
    } else {
        Ok(PlanePoint::from_angle(theta))
    }
}

/// Checks `candidate` against the two tangent lines, using tangency points
/// and directions obtained independently of the isoptic formula.
///
/// Lines carry no orientation, so the angle between them is reduced to
/// `[0, π/2]` and compared with γ reduced the same way.
pub fn verify_isoptic_point<C: TangentialCurve + ?Sized>(
    curve: &C,
    theta: f64,
    iso: IsopticConfig,
    candidate: PlanePoint,
    cfg: &QuadratureConfig,
) -> Result<VerificationReport> {
    check_pair(curve, theta, iso)?;
    let p1 = curve.point(theta, cfg)?;
    let p2 = curve.point(theta + iso.delta, cfg)?;
    let u1 = unit_tangent(curve, theta)?;
    let u2 = unit_tangent(curve, theta + iso.delta)?;

    let dist1 = (candidate - p1).cross(u1).abs();
    let dist2 = (candidate - p2).cross(u2).abs();

    let between = u1.cross(u2).abs().atan2(u1.dot(u2));
    let acute = |a: f64| a.min(PI - a);
    let angle_error = (acute(between) - acute(iso.gamma())).abs();

    Ok(VerificationReport {
        dist1,
        dist2,
        angle_error,
    })
}

/// `n` isoptic points at uniform θ over `[from, to]`.
pub fn sample_isoptic<C: TangentialCurve + ?Sized>(
    curve: &C,
    from: f64,
    to: f64,
    n: usize,
    iso: IsopticConfig,
    cfg: &QuadratureConfig,
) -> Result<Polyline> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "sample count must be at least 2, got {n}"
        )));
    }
    let domain = isoptic_domain(curve, iso)?;
    domain.check(from)?;
    domain.check(to)?;
    let thetas = uniform_grid(from, to, n);
    let f = |psi: f64| {
        curve
            .integrand(psi)
            .unwrap_or(PlanePoint::new(f64::NAN, f64::NAN))
    };
    let mut base = curve.point(from, cfg)?;
    let mut points = Vec::with_capacity(n);
    for (k, &theta) in thetas.iter().enumerate() {
        if k > 0 {
            base += integrate_planar(f, thetas[k - 1], theta, cfg)?.value;
        }
        let t = t_theta(curve, theta, iso, cfg)?;
        points.push(base + PlanePoint::from_angle(theta) * t);
    }
    Polyline::new(thetas, points, format!("isoptic delta={}", iso.delta))
}

/// The isoptic of a fixed curve as a parametric curve in its own right.
#[derive(Debug, Clone, Copy)]
pub struct Isoptic<'a, C: TangentialCurve + ?Sized> {
    pub curve: &'a C,
    pub iso: IsopticConfig,
    pub cfg: QuadratureConfig,
}

impl<'a, C: TangentialCurve + ?Sized> Isoptic<'a, C> {
    pub fn new(curve: &'a C, iso: IsopticConfig, cfg: QuadratureConfig) -> Self {
        Isoptic { curve, iso, cfg }
    }

    pub fn domain(&self) -> Result<ThetaDomain> {
        isoptic_domain(self.curve, self.iso)
    }

    pub fn point(&self, theta: f64) -> Result<PlanePoint> {
        isoptic_point(self.curve, theta, self.iso, &self.cfg)
    }

    pub fn derivatives(&self, theta: f64) -> Result<[PlanePoint; 3]> {
        isoptic_derivatives(self.curve, theta, self.iso, &self.cfg)
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    use super::*;
    use crate::numerics::derivative;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn lac(alpha: f64, lambda: f64) -> CurveParams {
        CurveParams::new(alpha, lambda).unwrap()
    }

    #[test]
    fn config_bounds() {
        assert!(IsopticConfig::new(0.0).is_err());
        assert!(IsopticConfig::new(PI).is_err());
        assert!(IsopticConfig::new(3.2).is_err());
        assert!(IsopticConfig::new(-0.1).is_err());
        let iso = IsopticConfig::from_gamma(FRAC_PI_2).unwrap();
        assert!((iso.delta() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn circle_chord_is_diameter() {
        let iso = IsopticConfig::new(PI - 1e-6).unwrap();
        let v = chord_vector(&CurveParams::circle(), 0.0, iso, &cfg()).unwrap();
        assert!(v.vx.abs() < 1e-5 && (v.vy - 2.0).abs() < 1e-6);
    }

    #[test]
    fn circle_chord_length() {
        let circle = CurveParams::circle();
        for (theta, delta) in [(0.3, 1.0), (-2.0, 2.5), (4.0, 0.2)] {
            let iso = IsopticConfig::new(delta).unwrap();
            let v = chord_vector(&circle, theta, iso, &cfg()).unwrap();
            assert!((v.norm() - 2.0 * (delta / 2.0).sin()).abs() < 1e-13);
        }
    }

    #[test]
    fn chord_equals_point_difference() {
        let curve = lac(-1.0, 1.0);
        let iso = IsopticConfig::new(1.2).unwrap();
        let v = chord_vector(&curve, -2.0, iso, &cfg()).unwrap().as_point();
        let diff = curve.point_of_theta(-0.8, &cfg()).unwrap() - curve.point_of_theta(-2.0, &cfg()).unwrap();
        assert!((v - diff).norm() < 1e-10);
    }

    #[test]
    fn circle_orthoptic_offset() {
        let iso = IsopticConfig::new(FRAC_PI_2).unwrap();
        let t = t_theta(&CurveParams::circle(), 0.0, iso, &cfg()).unwrap();
        assert!((t - 1.0).abs() < 1e-13);
        let th = t_theta_harmonic(&CurveParams::circle(), 0.0, iso, &cfg()).unwrap();
        assert!((th - 1.0).abs() < 1e-13);
    }

    #[test]
    fn log_spiral_t_scales_with_rho() {
        let curve = lac(1.0, 1.0);
        let iso = IsopticConfig::new(2.0 * PI / 3.0).unwrap();
        let ratios: Vec<f64> = [0.0, 1.0, 2.0]
            .iter()
            .map(|&th| t_theta(&curve, th, iso, &cfg()).unwrap() / curve.rho_of_theta(th).unwrap())
            .collect();
        assert!((ratios[0] - ratios[1]).abs() < 1e-12 && (ratios[0] - ratios[2]).abs() < 1e-12);
        assert!(ratios[0] > 0.0);
    }

    #[test]
    fn harmonic_form_agrees() {
        let curve = lac(2.0, 1.0);
        let iso = IsopticConfig::new(2.0 * PI / 3.0).unwrap();
        let a = t_theta(&curve, 0.0, iso, &cfg()).unwrap();
        let b = t_theta_harmonic(&curve, 0.0, iso, &cfg()).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn circle_isoptic_radius() {
        let circle = CurveParams::circle();
        let centre = PlanePoint::new(0.0, 1.0);
        for delta in [FRAC_PI_4, FRAC_PI_3, 2.5] {
            let iso = IsopticConfig::new(delta).unwrap();
            for theta in [-1.0, 0.0, 2.0, 5.0] {
                let p = isoptic_point(&circle, theta, iso, &cfg()).unwrap();
                assert!((p.distance(centre) - 1.0 / (delta / 2.0).cos()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn isoptic_near_upper_bound_rejected() {
        let curve = lac(-1.0, 1.0);
        let iso = IsopticConfig::new(1.0).unwrap();
        assert!(matches!(
            isoptic_point(&curve, 0.5 - 1.0, iso, &cfg()),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(isoptic_point(&curve, 0.5 - 1.0 - 1e-3, iso, &cfg()).is_ok());
    }

    #[test]
    fn isoptic_domain_examples() {
        let delta = 2.0 * PI / 3.0;
        let iso = IsopticConfig::new(delta).unwrap();
        let d = isoptic_domain(&lac(-1.0, 1.0), iso).unwrap();
        assert_eq!(d.upper, Some(0.5 - delta));
        assert_eq!(isoptic_domain(&lac(2.0, 1.0), iso).unwrap().lower, Some(-1.0));
        assert!(isoptic_domain(&lac(1.0, 1.0), iso).unwrap().is_unbounded());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let c = cfg();
        for (alpha, theta, delta) in [(2.0, 0.4, 1.1), (-1.0, -1.5, 0.9), (0.5, -0.3, 2.0)] {
            let curve = lac(alpha, 1.0);
            let iso = IsopticConfig::new(delta).unwrap();
            let ds = isoptic_derivatives(&curve, theta, iso, &c).unwrap();
            let x = |t: f64| isoptic_point(&curve, t, iso, &c).unwrap().x;
            let y = |t: f64| isoptic_point(&curve, t, iso, &c).unwrap().y;
            for order in 1..=3u8 {
                let fx = derivative(x, theta, order, 0.05).unwrap().value;
                let fy = derivative(y, theta, order, 0.05).unwrap().value;
                let d = ds[usize::from(order) - 1];
                assert!((d.x - fx).abs() < 1e-5 && (d.y - fy).abs() < 1e-5,
                    "alpha {alpha} order {order}: {d:?} vs ({fx}, {fy})");
            }
        }
    }

    #[test]
    fn circle_isoptic_speed() {
        let iso = IsopticConfig::new(1.0).unwrap();
        for theta in [0.0, 1.3, -2.0] {
            let d = isoptic_derivative(&CurveParams::circle(), theta, iso, 1, &cfg()).unwrap();
            assert!((d.norm() - 1.0 / 0.5f64.cos()).abs() < 1e-13);
        }
    }

    #[test]
    fn log_spiral_isoptic_speed_ratio() {
        let curve = lac(1.0, 1.0);
        let iso = IsopticConfig::new(1.0).unwrap();
        let r: Vec<f64> = [-1.0, 0.0, 1.5]
            .iter()
            .map(|&th| {
                isoptic_derivative(&curve, th, iso, 1, &cfg()).unwrap().norm()
                    / curve.rho_of_theta(th).unwrap()
            })
            .collect();
        assert!((r[0] - r[1]).abs() < 1e-12 && (r[1] - r[2]).abs() < 1e-12);
    }

    /// Intersects the two tangent lines by Cramer's rule on
    /// `P₁ + u T₁ = P₂ + v T₂`.
    fn tangent_intersection(p1: PlanePoint, t1: PlanePoint, p2: PlanePoint, t2: PlanePoint) -> PlanePoint {
        let det = -t1.x * t2.y + t1.y * t2.x;
        let r = p2 - p1;
        let u = (-r.x * t2.y + r.y * t2.x) / det;
        p1 + t1 * u
    }

    #[test]
    fn linear_solve_oracle() {
        let c = cfg();
        for (alpha, theta, delta) in [(2.0, 1.0, 1.0), (-1.0, -2.0, 2.0), (0.0, -1.0, 0.7), (3.0, 0.5, 2.5)] {
            let curve = lac(alpha, 1.0);
            let iso = IsopticConfig::new(delta).unwrap();
            let want = tangent_intersection(
                curve.point_of_theta(theta, &c).unwrap(),
                PlanePoint::from_angle(theta),
                curve.point_of_theta(theta + delta, &c).unwrap(),
                PlanePoint::from_angle(theta + delta),
            );
            let got = isoptic_point(&curve, theta, iso, &c).unwrap();
            assert!((got - want).norm() < 1e-10 * (1.0 + want.norm()), "alpha {alpha}");
        }
    }

    #[test]
    fn verification_by_construction() {
        let curve = lac(2.0, 1.0);
        let iso = IsopticConfig::new(1.0).unwrap();
        let p = isoptic_point(&curve, 0.7, iso, &cfg()).unwrap();
        let rep = verify_isoptic_point(&curve, 0.7, iso, p, &cfg()).unwrap();
        assert!(rep.passes(p), "{rep:?}");
    }

    #[test]
    fn verification_flags_tangency_point() {
        let curve = lac(2.0, 1.0);
        let iso = IsopticConfig::new(1.0).unwrap();
        let p = curve.point_of_theta(0.7, &cfg()).unwrap();
        let rep = verify_isoptic_point(&curve, 0.7, iso, p, &cfg()).unwrap();
        assert!(rep.dist1 < 1e-12);
        assert!(rep.dist2 > 1e-3);
        assert!(!rep.passes(p));
    }

    #[test]
    fn verification_of_circle_closed_form() {
        let circle = CurveParams::circle();
        let delta = 1.2;
        let iso = IsopticConfig::new(delta).unwrap();
        let theta = 0.4;
        // Intersection of the tangents lies on the bisector direction θ + δ/2 − π/2 from the centre.
        let dir = PlanePoint::from_angle(theta + delta / 2.0 - FRAC_PI_2);
        let candidate = PlanePoint::new(0.0, 1.0) + dir * (1.0 / (delta / 2.0).cos());
        let rep = verify_isoptic_point(&circle, theta, iso, candidate, &cfg()).unwrap();
        assert!(rep.passes(candidate), "{rep:?}");
    }

    #[test]
    fn sample_isoptic_circle() {
        let iso = IsopticConfig::new(FRAC_PI_3).unwrap();
        let pl = sample_isoptic(&CurveParams::circle(), 0.0, 2.0 * PI, 200, iso, &cfg()).unwrap();
        let r = 1.0 / (FRAC_PI_3 / 2.0).cos();
        for p in pl.points() {
            assert!((p.distance(PlanePoint::new(0.0, 1.0)) - r).abs() < 1e-9);
        }
    }

    #[test]
    fn sample_isoptic_log_spiral_verified() {
        let curve = lac(1.0, 1.0);
        let iso = IsopticConfig::new(FRAC_PI_3).unwrap();
        let pl = sample_isoptic(&curve, -2.0 * PI, 2.0 * PI, 60, iso, &cfg()).unwrap();
        for (th, p) in pl.params().iter().zip(pl.points()) {
            let rep = verify_isoptic_point(&curve, *th, iso, *p, &cfg()).unwrap();
            assert!(rep.passes(*p), "theta {th}: {rep:?}");
        }
    }

    #[test]
    fn sample_isoptic_degenerate() {
        let curve = lac(2.0, 1.0);
        let iso = IsopticConfig::new(1.0).unwrap();
        let pl = sample_isoptic(&curve, 0.5, 0.5, 2, iso, &cfg()).unwrap();
        for p in pl.points() {
            assert!(verify_isoptic_point(&curve, 0.5, iso, *p, &cfg()).unwrap().passes(*p));
        }
    }

    #[test]
    fn default_radius_projection_matches_closed_form() {
        struct Wrapped(CurveParams);
        impl TangentialCurve for Wrapped {
            fn theta_domain(&self) -> ThetaDomain {
                self.0.theta_bounds()
            }
            fn integrand(&self, theta: f64) -> Result<PlanePoint> {
                self.0.integrand(theta)
            }
            fn point(&self, theta: f64, cfg: &QuadratureConfig) -> Result<PlanePoint> {
                self.0.point_of_theta(theta, cfg)
            }
            fn derivative(&self, theta: f64, order: u8) -> Result<PlanePoint> {
                self.0.point_derivative(theta, order)
            }
        }
        let p = lac(0.5, 1.3);
        let w = Wrapped(p);
        let (rho, rate) = w.radius_and_rate(-0.7).unwrap();
        let [r, d, ..] = p.rho_derivatives(-0.7).unwrap();
        assert!((rho - r).abs() < 1e-14 && (rate - d).abs() < 1e-14);
    }
}
