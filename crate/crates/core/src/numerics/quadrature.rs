//! Adaptive Gauss–Kronrod quadrature for plane-valued integrands.
//!
//! The 10-point Gauss rule is nested in the 21-point Kronrod rule; the worst
//! interval is bisected until the summed error estimate drops below the
//! requested tolerance. Nodes are strictly interior to every subinterval, so
//! integrable endpoint singularities are never evaluated and bisection
//! refines geometrically toward them.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::point::PlanePoint;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let cfg = QuadratureConfig {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "abs_tol must be positive, got {}",
                self.abs_tol
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidParameter(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: PlanePoint,
    pub error_estimate: f64,
    /// Number of bisections performed.
    pub subdivisions_used: usize,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

// Gauss weights for the odd-indexed Kronrod nodes.
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_745_703_990,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: PlanePoint,
    error: f64,
    abs_integral: f64,
    splittable: bool,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    // Unsplittable segments sink so the heap top is always refinable if anything is.
    fn cmp(&self, other: &Self) -> Ordering {
        self.splittable
            .cmp(&other.splittable)
            .then(self.error.total_cmp(&other.error))
    }
}

fn checked_eval<F>(f: &F, x: f64) -> Result<PlanePoint>
where
    F: Fn(f64) -> PlanePoint,
{
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand { at: x })
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn gauss_kronrod<F>(f: &F, a: f64, b: f64) -> Result<Segment>
where
    F: Fn(f64) -> PlanePoint,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = checked_eval(f, center)?;
    let mut kronrod = f_center * WGK[10];
    let mut gauss = PlanePoint::ORIGIN;
    let mut res_abs = WGK[10] * f_center.norm();

    let mut fv1 = [PlanePoint::ORIGIN; 10];
    let mut fv2 = [PlanePoint::ORIGIN; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        // Rounding can push outer nodes of a tiny segment onto its ends.
        let lo = checked_eval(f, (center - dx).max(a.next_up()))?;
        let hi = checked_eval(f, (center + dx).min(b.next_down()))?;
        fv1[j] = lo;
        fv2[j] = hi;
        let sum = lo + hi;
        kronrod += sum * WGK[j];
        res_abs += WGK[j] * (lo.norm() + hi.norm());
        if j % 2 == 1 {
            gauss += sum * WG[j / 2];
        }
    }

    let mean = kronrod * 0.5;
    let mut res_asc = WGK[10] * (f_center - mean).norm();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }

    let width = half.abs();
    let err = (kronrod - gauss).norm() * width;
    let res_abs = res_abs * width;
    let res_asc = res_asc * width;

    // Bisection stops once the midpoint can no longer separate the endpoints.
    let mid = 0.5 * (a + b);
    let splittable = mid > a && mid < b && (b - a) > 8.0 * f64::EPSILON * a.abs().max(b.abs());

    Ok(Segment {
        a,
        b,
        value: kronrod * half,
        error: rescale_error(err, res_abs, res_asc),
        abs_integral: res_abs,
        splittable,
    })
}

/// Integrates a plane-valued function over `[a, b]`.
///
/// `b < a` is accepted and yields the negated integral over `[b, a]`. The
/// iteration stops once the summed error estimate is at most
/// `max(abs_tol, rel_tol * |value|)`, or once it reaches the double-precision
/// roundoff floor `100 * eps * ∫|f|` that no refinement can beat.
pub fn integrate_planar<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: Fn(f64) -> PlanePoint,
{
    cfg.validate()?;
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "integration bounds must be finite, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: PlanePoint::ORIGIN,
            error_estimate: 0.0,
            subdivisions_used: 0,
        });
    }
    if b < a {
        let r = integrate_planar(f, b, a, cfg)?;
        return Ok(QuadratureResult {
            value: -r.value,
            ..r
        });
    }

    let first = gauss_kronrod(&f, a, b)?;
    let mut value = first.value;
    let mut error = first.error;
    let mut abs_integral = first.abs_integral;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut subdivisions = 0;

    loop {
        let tolerance = cfg
            .abs_tol
            .max(cfg.rel_tol * value.norm())
            .max(100.0 * f64::EPSILON * abs_integral);
        if error <= tolerance {
            break;
        }
        let worst = match heap.peek() {
            Some(s) if s.splittable => heap.pop().expect("peeked"),
            _ => break,
        };
        if subdivisions >= cfg.max_subdivisions {
            return Err(Error::ToleranceNotReached {
                value: (value.x, value.y),
                error_estimate: error,
                subdivisions,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = gauss_kronrod(&f, worst.a, mid)?;
        let right = gauss_kronrod(&f, mid, worst.b)?;
        subdivisions += 1;

        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_integral += left.abs_integral + right.abs_integral - worst.abs_integral;
        heap.push(left);
        heap.push(right);

        // Running sums drift; resynchronise occasionally.
        if subdivisions % 64 == 0 {
            value = heap.iter().fold(PlanePoint::ORIGIN, |acc, s| acc + s.value);
            error = heap.iter().map(|s| s.error).sum();
            abs_integral = heap.iter().map(|s| s.abs_integral).sum();
        }
    }

    let value = heap.iter().fold(PlanePoint::ORIGIN, |acc, s| acc + s.value);
    let error_estimate = heap.iter().map(|s| s.error).sum::<f64>();
    let tolerance = cfg
        .abs_tol
        .max(cfg.rel_tol * value.norm())
        .max(100.0 * f64::EPSILON * abs_integral);
    if error_estimate > tolerance {
        return Err(Error::ToleranceNotReached {
            value: (value.x, value.y),
            error_estimate,
            subdivisions,
        });
    }
    Ok(QuadratureResult {
        value,
        error_estimate,
        subdivisions_used: subdivisions,
    })
}
