use serde::{Deserialize, Serialize};

use super::point::Point2;
use super::predicates::{on_segment, orientation, Orientation};
use crate::scalar::Scalar;

/// A convex polygon with counterclockwise vertices.
///
/// Fewer than three vertices denote a degenerate hull (a point or a segment)
/// with zero area.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ConvexPolygon<T> {
    vertices: Vec<Point2<T>>,
    area: T,
}

impl<T: Scalar> ConvexPolygon<T> {
    /// Wraps vertices already known to be in convex position (CCW).
    pub fn from_ccw_unchecked(vertices: Vec<Point2<T>>) -> Self {
        let area = if vertices.len() < 3 {
            T::zero()
        } else {
            shoelace(&vertices).max(T::zero())
        };
        ConvexPolygon { vertices, area }
    }

    pub fn empty() -> Self {
        ConvexPolygon {
            vertices: Vec::new(),
            area: T::zero(),
        }
    }

    pub fn vertices(&self) -> &[Point2<T>] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point2<T>> {
        self.vertices
    }

    pub fn area(&self) -> T {
        self.area
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    /// Consecutive vertex pairs, closing back to the first vertex.
    pub fn edges(&self) -> impl Iterator<Item = (Point2<T>, Point2<T>)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Closed containment.
    pub fn contains(&self, p: Point2<T>) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => self.vertices[0] == p,
            2 => on_segment(self.vertices[0], self.vertices[1], p),
            _ => self
                .edges()
                .all(|(a, b)| orientation(a, b, p) != Orientation::Right),
        }
    }

    /// Every consecutive triple turns left or goes straight.
    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        n < 3
            || (0..n).all(|i| {
                orientation(
                    self.vertices[i],
                    self.vertices[(i + 1) % n],
                    self.vertices[(i + 2) % n],
                ) != Orientation::Right
            })
    }

    pub fn map(&self, f: impl Fn(Point2<T>) -> Point2<T>) -> Self {
        ConvexPolygon::from_ccw_unchecked(self.vertices.iter().map(|&p| f(p)).collect())
    }

    pub fn y_range(&self) -> (T, T) {
        let lo = self.vertices.iter().map(|p| p.y).fold(T::infinity(), T::min);
        let hi = self.vertices.iter().map(|p| p.y).fold(T::neg_infinity(), T::max);
        (lo, hi)
    }
}

/// Signed shoelace area (positive for counterclockwise rings).
pub fn shoelace<T: Scalar>(ring: &[Point2<T>]) -> T {
    let n = ring.len();
    if n < 3 {
        return T::zero();
    }
    // Centering on the first vertex keeps cancellation small.
    let o = ring[0];
    let mut sum = T::zero();
    for i in 1..n - 1 {
        sum = sum + (ring[i] - o).cross(ring[i + 1] - o);
    }
    sum * T::lit(0.5)
}

/// Convex hull by Andrew's monotone chain with exact orientation.
///
/// Returns the hull in counterclockwise order starting from the lowest-x
/// vertex; collinear boundary points are dropped. Fewer than three
/// non-collinear inputs give a degenerate hull of one or two points.
pub fn convex_hull<T: Scalar>(points: &[Point2<T>]) -> ConvexPolygon<T> {
    let mut pts: Vec<Point2<T>> = if points.len() > 32 {
        discard_interior(points)
    } else {
        points.to_vec()
    };
    pts.sort_unstable_by(|a, b| a.xy_cmp(b));
    pts.dedup();
    if pts.len() <= 2 {
        return ConvexPolygon::from_ccw_unchecked(pts);
    }
    let mut hull: Vec<Point2<T>> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2
            && orientation(hull[hull.len() - 2], hull[hull.len() - 1], p) != Orientation::Left
        {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && orientation(hull[hull.len() - 2], hull[hull.len() - 1], p) != Orientation::Left
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.len() < 3 {
        // All points collinear: keep the two extremes.
        let first = pts[0];
        let last = pts[pts.len() - 1];
        return ConvexPolygon::from_ccw_unchecked(vec![first, last]);
    }
    ConvexPolygon::from_ccw_unchecked(hull)
}

/// Drops points strictly inside the octagon spanned by the extreme points in
/// eight directions; none of them can be a hull vertex.
fn discard_interior<T: Scalar>(points: &[Point2<T>]) -> Vec<Point2<T>> {
    let dirs: [(f64, f64); 8] = [
        (0.0, -1.0),
        (1.0, -1.0),
        (1.0, 0.0),
        (1.0, 1.0),
        (0.0, 1.0),
        (-1.0, 1.0),
        (-1.0, 0.0),
        (-1.0, -1.0),
    ];
    let mut ext = [points[0]; 8];
    let mut best = [f64::NEG_INFINITY; 8];
    for &p in points {
        let (x, y) = (p.x.as_f64(), p.y.as_f64());
        for (k, &(dx, dy)) in dirs.iter().enumerate() {
            let v = dx * x + dy * y;
            if v > best[k] {
                best[k] = v;
                ext[k] = p;
            }
        }
    }
    let mut ring: Vec<Point2<T>> = ext.to_vec();
    ring.dedup();
    while ring.len() > 1 && ring.first() == ring.last() {
        ring.pop();
    }
    if ring.len() < 3 {
        return points.to_vec();
    }
    let m = ring.len();
    points
        .iter()
        .copied()
        .filter(|&p| !(0..m).all(|k| orientation(ring[k], ring[(k + 1) % m], p) == Orientation::Left))
        .collect()
}

/// True if every point lies on the boundary of the convex hull of the set
/// (convex position, collinear boundary points allowed).
pub fn in_convex_position<T: Scalar>(points: &[Point2<T>]) -> bool {
    if points.len() <= 3 {
        return true;
    }
    let hull = convex_hull(points);
    if hull.is_degenerate() {
        // All on one segment: the set is its own (flat) boundary.
        return true;
    }
    points
        .iter()
        .all(|&p| hull.edges().any(|(a, b)| on_segment(a, b, p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(x: f64, y: f64) -> Point2<f64> {
        Point2::new(x, y)
    }

    #[test]
    fn hull_drops_interior_point() {
        let h = convex_hull(&[p(0., 0.), p(1., 0.), p(0., 1.), p(0.1, 0.1)]);
        assert_eq!(h.vertices(), &[p(0., 0.), p(1., 0.), p(0., 1.)]);
        assert_relative_eq!(h.area(), 0.5);
    }

    #[test]
    fn hull_of_two_points_is_degenerate() {
        let h = convex_hull(&[p(0., 0.), p(1., 1.)]);
        assert!(h.is_degenerate());
        assert_eq!(h.area(), 0.0);
    }

    #[test]
    fn hull_of_collinear_points() {
        let h = convex_hull(&[p(0., 0.), p(2., 2.), p(1., 1.), p(3., 3.)]);
        assert_eq!(h.vertices(), &[p(0., 0.), p(3., 3.)]);
        assert_eq!(h.area(), 0.0);
    }

    #[test]
    fn hull_drops_collinear_boundary_points() {
        let h = convex_hull(&[p(0., 0.), p(1., 0.), p(2., 0.), p(2., 2.), p(0., 2.)]);
        assert_eq!(h.len(), 4);
    }

    #[test]
    fn hull_of_circle_points_matches_regular_polygon_area() {
        let n = 100;
        let pts: Vec<_> = (0..n)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                p(t.cos(), t.sin())
            })
            .collect();
        let h = convex_hull(&pts);
        // Closed form for an inscribed regular n-gon: (n/2) sin(2 pi / n).
        let expected = 50.0 * (2.0 * std::f64::consts::PI / 100.0).sin();
        assert_relative_eq!(h.area(), expected, max_relative = 1e-12);
        assert_relative_eq!(h.area(), 3.1395, epsilon = 1e-4);
    }

    #[test]
    fn containment_is_closed() {
        let h = convex_hull(&[p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]);
        assert!(h.contains(p(0.5, 0.5)));
        assert!(h.contains(p(1.0, 0.5)));
        assert!(h.contains(p(1.0, 1.0)));
        assert!(!h.contains(p(1.0 + 1e-12, 0.5)));
    }

    #[test]
    fn convex_position() {
        assert!(in_convex_position(&[p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)]));
        assert!(in_convex_position(&[p(0., 0.), p(1., 0.), p(2., 0.), p(1., 1.)]));
        assert!(!in_convex_position(&[p(0., 0.), p(2., 0.), p(0., 2.), p(0.5, 0.5)]));
    }
}
