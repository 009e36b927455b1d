//! Fresnel integrals in the normalisation
//!
//! ```text
//! C(x) = ∫₀ˣ cos(π u² / 2) du,   S(x) = ∫₀ˣ sin(π u² / 2) du
//! ```
//!
//! so that `C(∞) = S(∞) = 1/2`. Small arguments use the power series, larger
//! ones a continued fraction for the complementary error function evaluated
//! with the modified Lentz method.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

const SERIES_LIMIT: f64 = 1.5;
const MAX_ITER: usize = 200;

/// Returns `(C(x), S(x))`. Both are odd functions of `x`.
pub fn fresnel(x: f64) -> (f64, f64) {
    if x.is_nan() {
        return (f64::NAN, f64::NAN);
    }
    if x.is_infinite() {
        let v = 0.5f64.copysign(x);
        return (v, v);
    }
    let ax = x.abs();
    let (c, s) = if ax < f64::MIN_POSITIVE.sqrt() {
        (ax, 0.0)
    } else if ax <= SERIES_LIMIT {
        series(ax)
    } else {
        continued_fraction(ax)
    };
    if x < 0.0 {
        (-c, -s)
    } else {
        (c, s)
    }
}

fn series(ax: f64) -> (f64, f64) {
    // Alternating terms (πx²/2)^k / k! · x / (2k+1); even k feed C, odd k feed S.
    let fact = FRAC_PI_2 * ax * ax;
    let mut term = ax;
    let mut sum_c = ax;
    let mut sum_s = 0.0;
    let mut sign_c = 1.0;
    let mut sign_s = 1.0;
    for k in 1..MAX_ITER {
        term *= fact / k as f64;
        let contrib = term / (2 * k + 1) as f64;
        if k % 2 == 1 {
            sum_s += sign_s * contrib;
            sign_s = -sign_s;
        } else {
            sign_c = -sign_c;
            sum_c += sign_c * contrib;
        }
        if contrib < f64::EPSILON * sum_c.abs().max(sum_s.abs()) * 0.25 {
            break;
        }
    }
    (sum_c, sum_s)
}

fn continued_fraction(ax: f64) -> (f64, f64) {
    let tiny = f64::MIN_POSITIVE / f64::EPSILON;
    let pix2 = PI * ax * ax;
    let mut b = Complex64::new(1.0, -pix2);
    let mut cc = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    let mut n = -1.0;
    for _ in 1..MAX_ITER {
        n += 2.0;
        let a = -n * (n + 1.0);
        b += Complex64::new(4.0, 0.0);
        d = (d * a + b).inv();
        cc = b + cc.inv() * a;
        let del = cc * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < f64::EPSILON {
            break;
        }
    }
    h *= Complex64::new(ax, -ax);
    let phase = Complex64::from_polar(1.0, 0.5 * pix2);
    let cs = Complex64::new(0.5, 0.5) * (Complex64::new(1.0, 0.0) - phase * h);
    (cs.re, cs.im)
}
