//! Central differences with Richardson extrapolation.
//!
//! Used to audit the closed-form derivatives elsewhere in the crate.

use crate::error::{Error, Result};

const MAX_ROWS: usize = 12;
const STEP_RATIO: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeEstimate {
    pub value: f64,
    /// Difference between the chosen extrapolant and its neighbours.
    pub error: f64,
}

fn central_difference<F>(f: &F, t: f64, order: u8, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    match order {
        1 => (f(t + h) - f(t - h)) / (2.0 * h),
        2 => (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h),
        3 => (f(t + 2.0 * h) - 2.0 * f(t + h) + 2.0 * f(t - h) - f(t - 2.0 * h)) / (2.0 * h * h * h),
        _ => unreachable!("order validated by caller"),
    }
}

/// Estimates the `order`-th derivative (1 ≤ order ≤ 3) of `f` at `t`.
///
/// Steps start at `h0` and are halved; every stencil has an even error
/// expansion in `h`, so each tableau column removes one power of `h²`.
/// Iteration stops when the diagonal starts to grow (roundoff dominates).
pub fn derivative<F>(f: F, t: f64, order: u8, h0: f64) -> Result<DerivativeEstimate>
where
    F: Fn(f64) -> f64,
{
    if !(1..=3).contains(&order) {
        return Err(Error::InvalidParameter(format!(
            "derivative order must be 1, 2 or 3, got {order}"
        )));
    }
    if !(h0 > 0.0 && h0.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "initial step must be positive, got {h0}"
        )));
    }

    let mut tableau = [[0.0f64; MAX_ROWS]; MAX_ROWS];
    let mut h = h0;
    tableau[0][0] = central_difference(&f, t, order, h);
    let mut best = DerivativeEstimate {
        value: tableau[0][0],
        error: f64::INFINITY,
    };

    for i in 1..MAX_ROWS {
        h /= STEP_RATIO;
        tableau[i][0] = central_difference(&f, t, order, h);
        let mut factor = STEP_RATIO * STEP_RATIO;
        for j in 1..=i {
            tableau[i][j] =
                tableau[i][j - 1] + (tableau[i][j - 1] - tableau[i - 1][j - 1]) / (factor - 1.0);
            factor *= STEP_RATIO * STEP_RATIO;
            let err = (tableau[i][j] - tableau[i][j - 1])
                .abs()
                .max((tableau[i][j] - tableau[i - 1][j - 1]).abs());
            if err <= best.error {
                best = DerivativeEstimate {
                    value: tableau[i][j],
                    error: err,
                };
            }
        }
        if (tableau[i][i] - tableau[i - 1][i - 1]).abs() >= 2.0 * best.error {
            break;
        }
    }

    if !best.value.is_finite() || !best.error.is_finite() || best.error > 1e-3 * best.value.abs().max(1.0) {
        return Err(Error::UnstableEstimate { error: best.error });
    }
    Ok(best)
}
