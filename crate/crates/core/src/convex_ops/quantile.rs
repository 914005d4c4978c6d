use crate::error::{Error, Result};
use crate::geom::{area_below, ConvexPolygon};
use crate::scalar::Scalar;

/// The height `y` at which the area of `K` below `y` is `alpha * area(K)`.
///
/// Bisection on the clipped area; stops once the bracket is below
/// `1e-12` of the height of `K` or stops shrinking.
pub fn quantile_height<T: Scalar>(k: &ConvexPolygon<T>, alpha: T) -> Result<T> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::domain("alpha", format!("{alpha} is not in (0, 1)")));
    }
    if k.area() <= T::zero() {
        return Err(Error::domain("K", "convex body is degenerate"));
    }
    let (mut lo, mut hi) = k.y_range();
    let tol = (hi - lo) * T::lit(1e-12);
    let target = alpha * k.area();
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if area_below(k, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * T::lit(0.5))
}

/// `(y1 - y_{4/5}, y_{4/5} - y_{1/5}, y_{1/5} - y0)` for a convex body.
pub fn levels_gap_check<T: Scalar>(k: &ConvexPolygon<T>) -> Result<(T, T, T)> {
    let (y0, y1) = k.y_range();
    let lo = quantile_height(k, T::lit(0.2))?;
    let hi = quantile_height(k, T::lit(0.8))?;
    Ok((y1 - hi, hi - lo, lo - y0))
}
