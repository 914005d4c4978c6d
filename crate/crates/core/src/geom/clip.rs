use super::convex::{shoelace, ConvexPolygon};
use super::point::Point2;
use super::predicates::{orientation, Orientation};
use crate::scalar::Scalar;

/// Keeps the part of a convex ring on the closed left side of the directed
/// line through `a` and `b`.
pub fn clip_halfplane<T: Scalar>(ring: &[Point2<T>], a: Point2<T>, b: Point2<T>) -> Vec<Point2<T>> {
    let n = ring.len();
    let mut out = Vec::with_capacity(n + 1);
    if n == 0 {
        return out;
    }
    let d = b - a;
    let side: Vec<Orientation> = ring.iter().map(|&p| orientation(a, b, p)).collect();
    for i in 0..n {
        let j = (i + 1) % n;
        let (p, q) = (ring[i], ring[j]);
        if side[i] != Orientation::Right {
            out.push(p);
        }
        let crosses = matches!(
            (side[i], side[j]),
            (Orientation::Left, Orientation::Right) | (Orientation::Right, Orientation::Left)
        );
        if crosses {
            let fp = d.cross(p - a);
            let fq = d.cross(q - a);
            let t = fp / (fp - fq);
            out.push(p.lerp(q, t));
        }
    }
    out
}

/// Area of the part of a convex polygon below the horizontal line `y = t`.
pub fn area_below<T: Scalar>(k: &ConvexPolygon<T>, t: T) -> T {
    let (lo, hi) = k.y_range();
    if t <= lo {
        return T::zero();
    }
    if t >= hi {
        return k.area();
    }
    let ring = clip_halfplane(
        k.vertices(),
        Point2::new(T::one(), t),
        Point2::new(T::zero(), t),
    );
    shoelace(&ring).max(T::zero())
}

/// Intersection of two convex polygons (Sutherland-Hodgman).
pub fn clip_convex<T: Scalar>(subject: &ConvexPolygon<T>, clipper: &[Point2<T>]) -> ConvexPolygon<T> {
    let mut ring = subject.vertices().to_vec();
    let m = clipper.len();
    for i in 0..m {
        if ring.is_empty() {
            break;
        }
        ring = clip_halfplane(&ring, clipper[i], clipper[(i + 1) % m]);
    }
    ring.dedup();
    while ring.len() > 1 && ring.first() == ring.last() {
        ring.pop();
    }
    ConvexPolygon::from_ccw_unchecked(ring)
}
