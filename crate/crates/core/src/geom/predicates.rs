//! Orientation and incidence predicates.
//!
//! The orientation sign comes from Shewchuk's adaptive `orient2d` (via the
//! `robust` crate): a floating-point filter with a forward error bound, and an
//! exact expansion-arithmetic fallback when the filter cannot certify the sign.

use serde::{Deserialize, Serialize};

use super::point::{Bbox, Point2};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Counterclockwise turn.
    Left,
    /// Clockwise turn.
    Right,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
            Orientation::Collinear => Orientation::Collinear,
        }
    }

    /// Sign as an integer: +1 left, -1 right, 0 collinear.
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Left => 1,
            Orientation::Right => -1,
            Orientation::Collinear => 0,
        }
    }
}

#[inline]
fn coord<T: Scalar>(p: Point2<T>) -> robust::Coord<f64> {
    robust::Coord {
        x: p.x.as_f64(),
        y: p.y.as_f64(),
    }
}

/// Sign of `(q - p) x (r - p)`; exact for all finite inputs.
#[inline]
pub fn orientation<T: Scalar>(p: Point2<T>, q: Point2<T>, r: Point2<T>) -> Orientation {
    let det = robust::orient2d(coord(p), coord(q), coord(r));
    if det > 0.0 {
        Orientation::Left
    } else if det < 0.0 {
        Orientation::Right
    } else {
        Orientation::Collinear
    }
}

/// Twice the signed area of triangle `pqr` (plain floating point).
#[inline]
pub fn cross3<T: Scalar>(p: Point2<T>, q: Point2<T>, r: Point2<T>) -> T {
    (q - p).cross(r - p)
}

/// Unsigned area of a triangle.
#[inline]
pub fn triangle_area<T: Scalar>(p: Point2<T>, q: Point2<T>, r: Point2<T>) -> T {
    cross3(p, q, r).abs() * T::lit(0.5)
}

/// True if `p` lies on the closed segment `ab`.
pub fn on_segment<T: Scalar>(a: Point2<T>, b: Point2<T>, p: Point2<T>) -> bool {
    Bbox::of_segment(a, b).contains(p) && orientation(a, b, p) == Orientation::Collinear
}

/// True if the closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect<T: Scalar>(
    a: Point2<T>,
    b: Point2<T>,
    c: Point2<T>,
    d: Point2<T>,
) -> bool {
    if !Bbox::of_segment(a, b).overlaps(&Bbox::of_segment(c, d)) {
        return false;
    }
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != Orientation::Collinear && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear && o4 != Orientation::Collinear
    {
        return true;
    }
    (o1 == Orientation::Collinear && on_segment(a, b, c))
        || (o2 == Orientation::Collinear && on_segment(a, b, d))
        || (o3 == Orientation::Collinear && on_segment(c, d, a))
        || (o4 == Orientation::Collinear && on_segment(c, d, b))
}

/// True if `ab` and `cd` cross at a single point interior to both.
#[inline]
pub fn segments_cross_properly<T: Scalar>(
    a: Point2<T>,
    b: Point2<T>,
    c: Point2<T>,
    d: Point2<T>,
) -> bool {
    let o1 = orientation(a, b, c).sign();
    let o2 = orientation(a, b, d).sign();
    if o1 * o2 >= 0 {
        return false;
    }
    let o3 = orientation(c, d, a).sign();
    let o4 = orientation(c, d, b).sign();
    o3 * o4 < 0
}
