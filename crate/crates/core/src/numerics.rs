//! Small numerical helpers.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Bisection on a bracketing interval.
///
/// Stops once the interval is narrower than `x_tol` or `|f(mid)| <= f_tol`.
pub fn bisect<T, F>(mut f: F, lower: T, upper: T, x_tol: T, f_tol: T, max_iter: usize) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let (mut lo, mut hi) = (lower, upper);
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo.abs() <= f_tol {
        return Ok(lo);
    }
    if f_hi.abs() <= f_tol {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::Bracket {
            lower: lo.as_f64(),
            upper: hi.as_f64(),
            f_lower: f_lo.as_f64(),
            f_upper: f_hi.as_f64(),
        });
    }
    let two = T::one() + T::one();
    let mut mid = (lo + hi) / two;
    for _ in 0..max_iter {
        mid = (lo + hi) / two;
        let f_mid = f(mid);
        if f_mid.abs() <= f_tol || (hi - lo) <= x_tol {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(mid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let root = bisect(|x: f64| x * x - 2.0, 0.0, 2.0, 1e-14, 0.0, 200).unwrap();
        assert!((root - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rejects_unbracketed() {
        let err = bisect(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12, 0.0, 100).unwrap_err();
        assert!(matches!(err, Error::Bracket { .. }));
    }

    #[test]
    fn works_in_single_precision() {
        let root = bisect(|x: f32| x - 0.25, 0.0, 1.0, 1e-6, 0.0, 100).unwrap();
        assert!((root - 0.25).abs() < 1e-5);
    }
}
