//! Logarithmic curvature graphs and slope estimates.
//!
//! The LCG of a curve plots `x = log ρ` against `y = log(ρ · ds/dρ)`. For a
//! log-aesthetic curve it is a straight line of slope α, so comparing the
//! secant slope of the isoptic's LCG with α decides whether the isoptic is
//! again the same kind of curve.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::isoptic::{chord_vector, isoptic_derivatives, isoptic_domain, IsopticConfig};
use crate::lac::{Alpha, CurveParams};
use crate::numerics::QuadratureConfig;
use crate::point::PlanePoint;

/// `|κ'|` below this multiple of `|κ|` counts as stationary curvature.
const STATIONARY_RATIO: f64 = 1e-10;
const MIN_SECANT: f64 = 1e-14;
/// Inward offset used when a slope is requested exactly at a domain bound.
pub const BOUND_OFFSET: f64 = 1e-7;
pub const DEFAULT_PHI: f64 = PI;
pub const DEFAULT_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcgPoint {
    /// `log ρ`
    pub x: f64,
    /// `log(ρ ṡ / |ρ̇|)`
    pub y: f64,
}

impl LcgPoint {
    pub fn as_point(&self) -> PlanePoint {
        PlanePoint::new(self.x, self.y)
    }
}

fn finite_alpha(params: &CurveParams) -> Result<f64> {
    match params.alpha() {
        Alpha::Finite(a) => Ok(a),
        _ => Err(Error::NoLcg),
    }
}

/// Closed-form LCG point of the curve itself.
pub fn lcg_point_lac(params: &CurveParams, theta: f64) -> Result<LcgPoint> {
    let alpha = finite_alpha(params)?;
    params.theta_bounds().check(theta)?;
    let lambda = params.lambda();
    if alpha == 1.0 {
        let x = lambda * theta;
        return Ok(LcgPoint { x, y: x - lambda.ln() });
    }
    let x = ((alpha - 1.0) * lambda * theta).ln_1p() / (alpha - 1.0);
    Ok(LcgPoint {
        x,
        y: alpha * x - lambda.ln(),
    })
}

/// LCG point from `r'`, `r''`, `r'''` of any regular parametrisation.
///
/// `theta` is only used to label errors.
pub fn lcg_point_from_derivatives(d: [PlanePoint; 3], theta: f64) -> Result<LcgPoint> {
    let [d1, d2, d3] = d;
    let speed = d1.norm();
    if !(speed > 0.0) {
        return Err(Error::ZeroSpeed(theta));
    }
    let s2 = speed * speed;
    let s3 = s2 * speed;
    let cross12 = d1.cross(d2);
    let kappa = cross12 / s3;
    if kappa == 0.0 {
        return Err(Error::Inflection(theta));
    }
    let dkappa = d1.cross(d3) / s3 - 3.0 * cross12 * d1.dot(d2) / (s3 * s2);
    if !(dkappa.abs() > STATIONARY_RATIO * kappa.abs()) {
        return Err(Error::StationaryCurvature(theta));
    }
    // ρ ṡ / |ρ̇| = |κ| ṡ / |κ̇| since ρ̇ = −κ̇/κ².
    let x = -kappa.abs().ln();
    let y = (kappa.abs() / dkappa.abs()).ln() + speed.ln();
    if !(x.is_finite() && y.is_finite()) {
        return Err(Error::StationaryCurvature(theta));
    }
    Ok(LcgPoint { x, y })
}

/// LCG point of a curve given as a map from parameter to its first three derivatives.
pub fn lcg_point_parametric<F>(derivatives: F, theta: f64) -> Result<LcgPoint>
where
    F: Fn(f64) -> Result<[PlanePoint; 3]>,
{
    lcg_point_from_derivatives(derivatives(theta)?, theta)
}

/// Exact LCG of the isoptic of a logarithmic spiral with `ρ = e^{Λθ}`.
pub fn lcg_isoptic_alpha1_closed(lambda: f64, delta: f64, theta: f64) -> Result<LcgPoint> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
    }
    let iso = IsopticConfig::new(delta)?;
    let dl = iso.delta() * lambda;
    let q = ((2.0 * dl).exp() - 2.0 * dl.exp() * delta.cos() + 1.0) / (lambda * lambda + 1.0);
    let csc = 1.0 / delta.sin();
    Ok(LcgPoint {
        x: 0.5 * q.ln() + csc.ln() + theta * lambda,
        y: (csc * q.sqrt() / lambda).ln() + theta * lambda,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Forward,
    Backward,
}

impl Branch {
    /// Steps away from the bound of the parameter domain: backward for α < 1.
    pub fn for_alpha(alpha: f64) -> Self {
        if alpha < 1.0 {
            Branch::Backward
        } else {
            Branch::Forward
        }
    }

    fn sign(self) -> f64 {
        match self {
            Branch::Forward => 1.0,
            Branch::Backward => -1.0,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Forward => "forward",
            Branch::Backward => "backward",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeEstimate {
    pub theta: f64,
    pub phi: f64,
    pub value: f64,
    pub branch: Branch,
}

/// Secant slope of an LCG between `θ` and `θ ± φ`.
pub fn slope_estimate<F>(lcg: F, theta: f64, phi: f64, branch: Branch) -> Result<SlopeEstimate>
where
    F: Fn(f64) -> Result<LcgPoint>,
{
    if phi == 0.0 || !phi.is_finite() {
        return Err(Error::InvalidParameter(format!("phi must be non-zero and finite, got {phi}")));
    }
    let a = lcg(theta)?;
    let b = lcg(theta + branch.sign() * phi)?;
    let dx = b.x - a.x;
    if dx.abs() < MIN_SECANT {
        return Err(Error::DegenerateSecant(dx));
    }
    Ok(SlopeEstimate {
        theta,
        phi,
        value: (b.y - a.y) / dx,
        branch,
    })
}

pub fn isoptic_lcg_point(
    params: &CurveParams,
    theta: f64,
    iso: IsopticConfig,
    cfg: &QuadratureConfig,
) -> Result<LcgPoint> {
    lcg_point_parametric(|t| isoptic_derivatives(params, t, iso, cfg), theta)
}

/// Slope of the isoptic's LCG at θ.
///
/// A θ on a bound of the isoptic domain is replaced by the limit
/// `2 s(h) − s(2h)` of samples taken `h = 1e-7` inside.
pub fn isoptic_slope(
    params: &CurveParams,
    theta: f64,
    iso: IsopticConfig,
    phi: f64,
    cfg: &QuadratureConfig,
) -> Result<SlopeEstimate> {
    let alpha = finite_alpha(params)?;
    let branch = Branch::for_alpha(alpha);
    let lcg = |t: f64| isoptic_lcg_point(params, t, iso, cfg);
    let domain = isoptic_domain(params, iso)?;
    match domain.nearby_bound(theta) {
        None => slope_estimate(lcg, theta, phi, branch),
        Some(bound) => {
            let inward = if domain.lower == Some(bound) { 1.0 } else { -1.0 };
            let near = slope_estimate(lcg, bound + inward * BOUND_OFFSET, phi, branch)?;
            let far = slope_estimate(lcg, bound + 2.0 * inward * BOUND_OFFSET, phi, branch)?;
            Ok(SlopeEstimate {
                theta,
                phi,
                value: 2.0 * near.value - far.value,
                branch,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Autoisoptic,
    NotAutoisoptic,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Autoisoptic => "autoisoptic",
            Verdict::NotAutoisoptic => "not_autoisoptic",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "autoisoptic" => Ok(Verdict::Autoisoptic),
            "not_autoisoptic" => Ok(Verdict::NotAutoisoptic),
            "inconclusive" => Ok(Verdict::Inconclusive),
            other => Err(Error::InvalidParameter(format!("unknown verdict '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AutoisopticReport {
    pub params: CurveParams,
    pub delta: f64,
    pub phi: f64,
    pub tolerance: f64,
    pub samples: Vec<SlopeEstimate>,
    pub limit_estimate: f64,
    pub verdict: Verdict,
}

/// Extrapolates `θ → ±∞` from the two largest-|θ| samples, assuming the
/// deviation from the limit decays like `θ⁻²`.
pub fn limit_estimate(samples: &[SlopeEstimate]) -> f64 {
    let mut by_size: Vec<&SlopeEstimate> = samples.iter().collect();
    by_size.sort_by(|a, b| a.theta.abs().total_cmp(&b.theta.abs()));
    match by_size.as_slice() {
        [] => f64::NAN,
        [only] => only.value,
        [.., a, b] => {
            let (wa, wb) = (a.theta * a.theta, b.theta * b.theta);
            if wb > wa {
                (wb * b.value - wa * a.value) / (wb - wa)
            } else {
                b.value
            }
        }
    }
}

pub fn autoisoptic_report(
    params: &CurveParams,
    delta: f64,
    thetas: &[f64],
    phi: f64,
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<AutoisopticReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let alpha = finite_alpha(params)?;
    let iso = IsopticConfig::new(delta)?;
    let samples = thetas
        .iter()
        .map(|&theta| isoptic_slope(params, theta, iso, phi, cfg))
        .collect::<Result<Vec<_>>>()?;
    let verdict = if samples.is_empty() {
        Verdict::Inconclusive
    } else if samples.iter().all(|s| (s.value - alpha).abs() <= tol) {
        Verdict::Autoisoptic
    } else {
        Verdict::NotAutoisoptic
    };
    Ok(AutoisopticReport {
        params: *params,
        delta,
        phi,
        tolerance: tol,
        limit_estimate: limit_estimate(&samples),
        samples,
        verdict,
    })
}

/// Slope the evolute's LCG should have: `−1/(α − 2)`.
pub fn evolute_target(params: &CurveParams) -> Result<f64> {
    let alpha = finite_alpha(params)?;
    if alpha == 2.0 {
        return Err(Error::SingularTarget);
    }
    Ok(-1.0 / (alpha - 2.0))
}

/// LCG slopes of the evolute at each θ. Steps follow the base curve's branch.
pub fn autoevolute_check(
    params: &CurveParams,
    thetas: &[f64],
    phi: f64,
) -> Result<Vec<SlopeEstimate>> {
    evolute_target(params)?;
    let branch = Branch::for_alpha(finite_alpha(params)?);
    let lcg = |t: f64| lcg_point_parametric(|u| params.evolute_derivatives(u), t);
    thetas
        .iter()
        .map(|&theta| slope_estimate(lcg, theta, phi, branch))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordAngleSample {
    pub theta: f64,
    /// `atan2(V_y, V_x)` in `(−π, π]`.
    pub chord_angle: f64,
    /// `θ − chord_angle` reduced to `[0, 2π)`.
    pub offset: f64,
    /// `θ / chord_angle`.
    pub ratio: f64,
}

pub fn chord_angle_diagnostic(
    params: &CurveParams,
    delta: f64,
    thetas: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Vec<ChordAngleSample>> {
    let iso = IsopticConfig::new(delta)?;
    thetas
        .iter()
        .map(|&theta| {
            let chord_angle = chord_vector(params, theta, iso, cfg)?.angle();
            Ok(ChordAngleSample {
                theta,
                chord_angle,
                offset: (theta - chord_angle).rem_euclid(TAU),
                ratio: theta / chord_angle,
            })
        })
        .collect()
}

/// Spread of the offsets on the circle: the shortest arc holding all of them.
pub fn offset_spread(samples: &[ChordAngleSample]) -> f64 {
    let mut angles: Vec<f64> = samples.iter().map(|s| s.offset).collect();
    if angles.len() < 2 {
        return 0.0;
    }
    angles.sort_by(f64::total_cmp);
    let widest_gap = angles
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(angles[0] + TAU - angles[angles.len() - 1], f64::max);
    TAU - widest_gap
}
