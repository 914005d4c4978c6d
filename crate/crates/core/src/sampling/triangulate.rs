use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{orientation, triangle_area, Orientation, Point2, SimplePolygon};
use crate::scalar::Scalar;

use super::rng::RandomSource;
use super::sample::triangle_point;

/// Triangles of a polygon with running area sums for area-weighted choice.
#[derive(Debug, Clone, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct Triangulation<T> {
    triangles: Vec<[Point2<T>; 3]>,
    prefix_areas: Vec<T>,
}

impl<T: Scalar> Triangulation<T> {
    /// Builds from arbitrary triangles; zero-area triangles are dropped.
    pub fn from_triangles(triangles: Vec<[Point2<T>; 3]>) -> Self {
        let triangles: Vec<[Point2<T>; 3]> = triangles
            .into_iter()
            .filter(|t| triangle_area(t[0], t[1], t[2]) > T::zero())
            .collect();
        let mut acc = T::zero();
        let prefix_areas = triangles
            .iter()
            .map(|t| {
                acc = acc + triangle_area(t[0], t[1], t[2]);
                acc
            })
            .collect();
        Triangulation {
            triangles,
            prefix_areas,
        }
    }

    pub fn triangles(&self) -> &[[Point2<T>; 3]] {
        &self.triangles
    }

    pub fn prefix_areas(&self) -> &[T] {
        &self.prefix_areas
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn total_area(&self) -> T {
        self.prefix_areas.last().copied().unwrap_or_else(T::zero)
    }

    pub fn largest_triangle(&self) -> Option<[Point2<T>; 3]> {
        self.triangles.iter().copied().max_by(|a, b| {
            triangle_area(a[0], a[1], a[2])
                .partial_cmp(&triangle_area(b[0], b[1], b[2]))
                .unwrap()
        })
    }

    /// Index of the triangle whose prefix interval contains `x`: the
    /// smallest `j` with `x <= prefix_areas[j]`.
    pub fn locate(&self, x: T) -> usize {
        let j = self.prefix_areas.partition_point(|&s| s < x);
        j.min(self.triangles.len() - 1)
    }

    /// One uniform point: a binary search on the prefix sums chooses the
    /// triangle, two more uniforms place the point inside it.
    pub fn sample_point(&self, rng: &mut RandomSource) -> Point2<T> {
        let x = T::lit(rng.unit()) * self.total_area();
        let t = self.triangles[self.locate(x)];
        triangle_point(t, T::lit(rng.unit()), T::lit(rng.unit()))
    }

    /// `count` independent uniform points.
    pub fn sample(&self, count: usize, rng: &mut RandomSource) -> Vec<Point2<T>> {
        (0..count).map(|_| self.sample_point(rng)).collect()
    }
}

/// Ear-clipping triangulation: `n - 2` triangles for an `n`-vertex polygon.
pub fn triangulate<T: Scalar>(polygon: &SimplePolygon<T>) -> Result<Triangulation<T>> {
    let v = polygon.vertices();
    let mut ring: Vec<usize> = (0..v.len()).collect();
    let mut triangles = Vec::with_capacity(v.len().saturating_sub(2));
    let mut i = 0usize;
    let mut stalled = 0usize;
    while ring.len() > 3 {
        let m = ring.len();
        let (a, b, c) = (ring[(i + m - 1) % m], ring[i % m], ring[(i + 1) % m]);
        match orientation(v[a], v[b], v[c]) {
            Orientation::Collinear => {
                // A straight vertex left over by earlier clips: drop it.
                ring.remove(i % m);
                stalled = 0;
                continue;
            }
            Orientation::Left if is_ear(v, &ring, a, b, c) => {
                triangles.push([v[a], v[b], v[c]]);
                ring.remove(i % m);
                stalled = 0;
                continue;
            }
            _ => {}
        }
        i = (i + 1) % m;
        stalled += 1;
        if stalled > m {
            return Err(Error::Triangulation);
        }
    }
    if ring.len() == 3 {
        triangles.push([v[ring[0]], v[ring[1]], v[ring[2]]]);
    }
    let tri = Triangulation::from_triangles(triangles);
    let (got, want) = (tri.total_area(), polygon.area());
    if ((got - want) / want).abs() > T::lit(1e-6) {
        return Err(Error::Triangulation);
    }
    Ok(tri)
}

fn is_ear<T: Scalar>(v: &[Point2<T>], ring: &[usize], a: usize, b: usize, c: usize) -> bool {
    let (pa, pb, pc) = (v[a], v[b], v[c]);
    let m = ring.len();
    for k in 0..m {
        let q = ring[k];
        if q == a || q == b || q == c {
            continue;
        }
        // Only reflex vertices of the remaining ring can poke into an ear.
        let prev = v[ring[(k + m - 1) % m]];
        let next = v[ring[(k + 1) % m]];
        if orientation(prev, v[q], next) == Orientation::Left {
            continue;
        }
        let p = v[q];
        if orientation(pa, pb, p) != Orientation::Right
            && orientation(pb, pc, p) != Orientation::Right
            && orientation(pc, pa, p) != Orientation::Right
        {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn poly(v: &[(f64, f64)]) -> SimplePolygon<f64> {
        SimplePolygon::new(v.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn square_two_halves() {
        let t = triangulate(&poly(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)])).unwrap();
        assert_eq!(t.len(), 2);
        for tri in t.triangles() {
            assert_relative_eq!(triangle_area(tri[0], tri[1], tri[2]), 0.5);
        }
    }

    #[test]
    fn convex_ngon() {
        let n = 17;
        let pts: Vec<Point2<f64>> = (0..n)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / n as f64;
                Point2::new(a.cos(), a.sin())
            })
            .collect();
        let p = SimplePolygon::new(pts).unwrap();
        let t = triangulate(&p).unwrap();
        assert_eq!(t.len(), n - 2);
        assert_relative_eq!(t.total_area(), p.area(), max_relative = 1e-12);
    }

    #[test]
    fn l_shape() {
        let p = poly(&[(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)]);
        let t = triangulate(&p).unwrap();
        assert_eq!(t.len(), 4);
        assert_relative_eq!(t.total_area(), 3.0, max_relative = 1e-12);
        let p = t.prefix_areas();
        assert!(p.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn locate_is_smallest_covering_index() {
        let t = Triangulation::from_triangles(vec![
            [Point2::new(0., 0.), Point2::new(1., 0.), Point2::new(0., 1.)],
            [Point2::new(0., 0.), Point2::new(2., 0.), Point2::new(0., 1.)],
        ]);
        assert_eq!(t.prefix_areas(), &[0.5, 1.5]);
        assert_eq!(t.locate(0.0), 0);
        assert_eq!(t.locate(0.5), 0);
        assert_eq!(t.locate(0.5000001), 1);
        assert_eq!(t.locate(1.5), 1);
    }
}
