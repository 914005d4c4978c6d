use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::geom::{orientation, ConvexPolygon, Orientation, Point2, Vector2};
use crate::scalar::Scalar;

use super::rng::RandomSource;
use super::triangulate::Triangulation;

/// Maps two unit uniforms to a point of the triangle `t`.
///
/// `(u1, u2)` addresses the parallelogram spanned by the two edges at
/// `t[0]`; points of the far half are reflected into the triangle.
pub fn triangle_point<T: Scalar>(t: [Point2<T>; 3], u1: T, u2: T) -> Point2<T> {
    let (u1, u2) = if u1 + u2 > T::one() {
        (T::one() - u1, T::one() - u2)
    } else {
        (u1, u2)
    };
    t[0] + (t[1] - t[0]) * u1 + (t[2] - t[0]) * u2
}

pub fn sample_in_triangle<T: Scalar>(t: [Point2<T>; 3], rng: &mut RandomSource) -> Point2<T> {
    triangle_point(t, T::lit(rng.unit()), T::lit(rng.unit()))
}

/// `count` uniform points in the triangulated polygon.
pub fn sample_in_polygon<T: Scalar>(
    tri: &Triangulation<T>,
    count: usize,
    rng: &mut RandomSource,
) -> Vec<Point2<T>> {
    tri.sample(count, rng)
}

/// The set `anchor + u * edge_u + v * edge_v` for `u, v` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Parallelogram<T> {
    pub anchor: Point2<T>,
    pub edge_u: Vector2<T>,
    pub edge_v: Vector2<T>,
}

impl<T: Scalar> Parallelogram<T> {
    pub fn point_at(&self, u: T, v: T) -> Point2<T> {
        self.anchor + self.edge_u * u + self.edge_v * v
    }

    pub fn area(&self) -> T {
        self.edge_u.cross(self.edge_v).abs()
    }

    pub fn center(&self) -> Point2<T> {
        self.point_at(T::lit(0.5), T::lit(0.5))
    }

    /// Corners in counterclockwise order.
    pub fn corners(&self) -> [Point2<T>; 4] {
        let a = self.anchor;
        let (u, v) = (self.edge_u, self.edge_v);
        if u.cross(v) >= T::zero() {
            [a, a + u, a + u + v, a + v]
        } else {
            [a, a + v, a + u + v, a + u]
        }
    }

    pub fn as_convex(&self) -> ConvexPolygon<T> {
        ConvexPolygon::from_ccw_unchecked(self.corners().to_vec())
    }

    /// Closed membership.
    pub fn contains(&self, p: Point2<T>) -> bool {
        let c = self.corners();
        (0..4).all(|i| orientation(c[i], c[(i + 1) % 4], p) != Orientation::Right)
    }
}

pub fn sample_in_parallelogram<T: Scalar>(
    g: &Parallelogram<T>,
    count: usize,
    rng: &mut RandomSource,
) -> Vec<Point2<T>> {
    (0..count)
        .map(|_| g.point_at(T::lit(rng.unit()), T::lit(rng.unit())))
        .collect()
}

/// Uniform sampler for a convex polygon (fan triangulation).
#[derive(Debug, Clone)]
pub struct ConvexSampler<T> {
    fan: Option<Triangulation<T>>,
    area: T,
}

impl<T: Scalar> ConvexSampler<T> {
    pub fn new(k: &ConvexPolygon<T>) -> Self {
        let v = k.vertices();
        let fan = (k.area() > T::zero()).then(|| {
            Triangulation::from_triangles((1..v.len() - 1).map(|i| [v[0], v[i], v[i + 1]]).collect())
        });
        ConvexSampler { fan, area: k.area() }
    }

    pub fn sample(&self, count: usize, rng: &mut RandomSource) -> Vec<Point2<T>> {
        match &self.fan {
            Some(f) if count > 0 => f.sample(count, rng),
            _ => Vec::new(),
        }
    }

    /// Uniform points of this region of a larger container, distributed
    /// exactly like the survivors of `count` uniform draws from the
    /// container: the survivor count is binomial with success probability
    /// `area / container_area`.
    pub fn sample_thinned(&self, container_area: T, count: usize, rng: &mut RandomSource) -> Vec<Point2<T>> {
        let p = (self.area / container_area).as_f64().clamp(0.0, 1.0);
        if p <= 0.0 || count == 0 || self.fan.is_none() {
            return Vec::new();
        }
        let hits = Binomial::new(count as u64, p)
            .expect("probability in [0, 1]")
            .sample(rng) as usize;
        self.sample(hits, rng)
    }
}

/// `count` uniform points in a convex polygon.
pub fn sample_in_convex<T: Scalar>(
    k: &ConvexPolygon<T>,
    count: usize,
    rng: &mut RandomSource,
) -> Vec<Point2<T>> {
    ConvexSampler::new(k).sample(count, rng)
}

/// See [`ConvexSampler::sample_thinned`].
pub fn sample_thinned<T: Scalar>(
    k: &ConvexPolygon<T>,
    container_area: T,
    count: usize,
    rng: &mut RandomSource,
) -> Vec<Point2<T>> {
    ConvexSampler::new(k).sample_thinned(container_area, count, rng)
}
