use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// A point (or free vector) in the plane.
///
/// Serialized as a two-element array `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

/// Vectors share the point representation.
pub type Vector2<T> = Point2<T>;

impl<T: Scalar> Point2<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3d cross product.
    #[inline]
    pub fn cross(self, other: Self) -> T {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, other: Self) -> T {
        (self - other).norm()
    }

    #[inline]
    pub fn midpoint(self, other: Self) -> Self {
        let half = T::lit(0.5);
        Point2::new((self.x + other.x) * half, (self.y + other.y) * half)
    }

    /// `self + t * (other - self)`.
    #[inline]
    pub fn lerp(self, other: Self, t: T) -> Self {
        self + (other - self) * t
    }

    /// Strict "is higher than" order: by y, then by x.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.y
            .partial_cmp(&other.y)
            .unwrap_or(Ordering::Equal)
            .then(self.x.partial_cmp(&other.x).unwrap_or(Ordering::Equal))
    }

    /// Order by x, then y. Used by the hull routines.
    pub fn xy_cmp(&self, other: &Self) -> Ordering {
        self.x
            .partial_cmp(&other.x)
            .unwrap_or(Ordering::Equal)
            .then(self.y.partial_cmp(&other.y).unwrap_or(Ordering::Equal))
    }

    pub fn cast<U: Scalar>(self) -> Point2<U> {
        Point2::new(U::lit(self.x.as_f64()), U::lit(self.y.as_f64()))
    }
}

impl<T: Scalar> Add for Point2<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Scalar> Sub for Point2<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Scalar> Mul<T> for Point2<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Point2::new(self.x * s, self.y * s)
    }
}

impl<T: Scalar> Neg for Point2<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Point2::new(-self.x, -self.y)
    }
}

impl<T: Scalar> From<[T; 2]> for Point2<T> {
    fn from([x, y]: [T; 2]) -> Self {
        Point2::new(x, y)
    }
}

impl<T: Scalar> From<(T, T)> for Point2<T> {
    fn from((x, y): (T, T)) -> Self {
        Point2::new(x, y)
    }
}

impl<T: Scalar> Serialize for Point2<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Point2<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[T; 2]>::deserialize(d)?;
        Ok(Point2::new(x, y))
    }
}

/// A closed segment between two points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Segment<T> {
    pub a: Point2<T>,
    pub b: Point2<T>,
}

impl<T: Scalar> Segment<T> {
    pub fn new(a: Point2<T>, b: Point2<T>) -> Self {
        Segment { a, b }
    }

    pub fn reversed(self) -> Self {
        Segment::new(self.b, self.a)
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn length(&self) -> T {
        self.a.dist(self.b)
    }

    /// Point at parameter `t` (0 at `a`, 1 at `b`).
    pub fn at(&self, t: T) -> Point2<T> {
        self.a.lerp(self.b, t)
    }
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bbox<T> {
    pub min: Point2<T>,
    pub max: Point2<T>,
}

impl<T: Scalar> Bbox<T> {
    pub fn of_points<'a, I>(points: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a Point2<T>>,
    {
        let mut it = points.into_iter();
        let first = *it.next()?;
        let mut bb = Bbox {
            min: first,
            max: first,
        };
        for p in it {
            bb.min.x = bb.min.x.min(p.x);
            bb.min.y = bb.min.y.min(p.y);
            bb.max.x = bb.max.x.max(p.x);
            bb.max.y = bb.max.y.max(p.y);
        }
        Some(bb)
    }

    pub fn of_segment(a: Point2<T>, b: Point2<T>) -> Self {
        Bbox {
            min: Point2::new(a.x.min(b.x), a.y.min(b.y)),
            max: Point2::new(a.x.max(b.x), a.y.max(b.y)),
        }
    }

    #[inline]
    pub fn contains(&self, p: Point2<T>) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    #[inline]
    pub fn overlaps(&self, o: &Self) -> bool {
        self.min.x <= o.max.x && o.min.x <= self.max.x && self.min.y <= o.max.y && o.min.y <= self.max.y
    }

    pub fn width(&self) -> T {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> T {
        self.max.y - self.min.y
    }

    pub fn diagonal(&self) -> T {
        self.min.dist(self.max)
    }

    pub fn corners(&self) -> [Point2<T>; 4] {
        [
            self.min,
            Point2::new(self.max.x, self.min.y),
            self.max,
            Point2::new(self.min.x, self.max.y),
        ]
    }
}
