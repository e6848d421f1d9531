//! Plain bisection on a sign-changing bracket.
//!
//! Endpoint values are passed in rather than evaluated, so a bracket may end
//! on a pole as long as the caller knows the sign there.

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub f: f64,
    pub iterations: u32,
}

/// Stopping rule for [`bisect`]. Zero tolerances mean "bisect until the
/// bracket cannot be split any further in double precision".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stop {
    pub x_tol: f64,
    pub f_tol: f64,
    pub max_iter: u32,
}

impl Default for Stop {
    fn default() -> Self {
        Stop { x_tol: 0.0, f_tol: 0.0, max_iter: 2000 }
    }
}

pub fn bisect<F>(mut f: F, lower: f64, upper: f64, f_lower: f64, f_upper: f64, stop: Stop) -> Result<Root>
where
    F: FnMut(f64) -> f64,
{
    let not_bracketed = || Error::RootNotBracketed { lower, upper, f_lower, f_upper };
    if !(lower < upper) || f_lower.is_nan() || f_upper.is_nan() {
        return Err(not_bracketed());
    }
    if f_lower == 0.0 {
        return Ok(Root { x: lower, f: 0.0, iterations: 0 });
    }
    if f_upper == 0.0 {
        return Ok(Root { x: upper, f: 0.0, iterations: 0 });
    }
    if f_lower.signum() == f_upper.signum() {
        return Err(not_bracketed());
    }

    let (mut lo, mut hi, mut f_lo, mut f_hi) = (lower, upper, f_lower, f_upper);
    let mut iterations = 0;
    while iterations < stop.max_iter {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        let fm = f(mid);
        if fm.is_nan() {
            return Err(Error::RootNotBracketed { lower: lo, upper: hi, f_lower: f_lo, f_upper: f_hi });
        }
        if fm == 0.0 {
            return Ok(Root { x: mid, f: 0.0, iterations });
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
        if fm.abs() <= stop.f_tol || hi - lo <= stop.x_tol {
            break;
        }
    }
    let root = if f_lo.abs() <= f_hi.abs() {
        Root { x: lo, f: f_lo, iterations }
    } else {
        Root { x: hi, f: f_hi, iterations }
    };
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, -2.0, 2.0, Stop::default()).unwrap();
        assert!((r.x - core::f64::consts::SQRT_2).abs() < 4e-16);
    }

    #[test]
    fn rejects_same_sign() {
        let err = bisect(|x| x * x + 1.0, -1.0, 1.0, 2.0, 2.0, Stop::default()).unwrap_err();
        assert!(matches!(err, Error::RootNotBracketed { .. }));
    }

    #[test]
    fn tolerates_infinite_endpoint() {
        // 1/(1 - x) - 3 on (0, 1): root at 2/3, f(1) = +inf
        let r = bisect(|x| 1.0 / (1.0 - x) - 3.0, 0.0, 1.0, -2.0, f64::INFINITY, Stop::default()).unwrap();
        assert!((r.x - 2.0 / 3.0).abs() < 1e-15);
        assert!(r.f.is_finite());
    }

    #[test]
    fn honours_x_tolerance() {
        let stop = Stop { x_tol: 1e-3, ..Stop::default() };
        let r = bisect(|x| x - 0.3, 0.0, 1.0, -0.3, 0.7, stop).unwrap();
        assert!((r.x - 0.3).abs() < 1e-3);
        assert!(r.iterations <= 10);
    }
}
