use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point2, Vector2};
use crate::sampling::Parallelogram;
use crate::scalar::Scalar;

/// The parallelogram swept by the segment `a'b'` (`a' = 2a - b`,
/// `b' = 2b - a`) under horizontal translations of at most
/// `2A / |y(a) - y(b)|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct GammaParallelogram<T> {
    pub anchor: Point2<T>,
    /// `b' - a'`, three times `b - a`.
    pub edge_u: Vector2<T>,
    /// Horizontal, twice the maximal translation.
    pub edge_v: Vector2<T>,
    pub source_edge: (Point2<T>, Point2<T>),
    pub area_param: T,
}

impl<T: Scalar> GammaParallelogram<T> {
    pub fn parallelogram(&self) -> Parallelogram<T> {
        Parallelogram {
            anchor: self.anchor,
            edge_u: self.edge_u,
            edge_v: self.edge_v,
        }
    }

    pub fn area(&self) -> T {
        self.parallelogram().area()
    }

    pub fn center(&self) -> Point2<T> {
        self.parallelogram().center()
    }

    pub fn corners(&self) -> [Point2<T>; 4] {
        self.parallelogram().corners()
    }

    pub fn contains(&self, p: Point2<T>) -> bool {
        self.parallelogram().contains(p)
    }

    /// Image under `p -> scale * p + offset`.
    pub fn map(&self, scale: T, offset: Point2<T>) -> Self {
        let f = |p: Point2<T>| p * scale + offset;
        GammaParallelogram {
            anchor: f(self.anchor),
            edge_u: self.edge_u * scale,
            edge_v: self.edge_v * scale,
            source_edge: (f(self.source_edge.0), f(self.source_edge.1)),
            area_param: self.area_param * scale * scale,
        }
    }
}

/// Builds `Γ(a, b, A)`.
pub fn gamma_parallelogram<T: Scalar>(
    a: Point2<T>,
    b: Point2<T>,
    area: T,
) -> Result<GammaParallelogram<T>> {
    if !(area > T::zero()) || !area.is_finite() {
        return Err(Error::domain("area", format!("{area} must be positive")));
    }
    let dy = (a.y - b.y).abs();
    if dy <= T::lit(1e-12) * a.dist(b) || dy == T::zero() {
        return Err(Error::DegenerateEdge(dy.as_f64()));
    }
    let a2 = a * T::lit(2.0) - b;
    let b2 = b * T::lit(2.0) - a;
    let w = T::lit(2.0) * area / dy;
    Ok(GammaParallelogram {
        anchor: a2 - Point2::new(w, T::zero()),
        edge_u: b2 - a2,
        edge_v: Point2::new(w * T::lit(2.0), T::zero()),
        source_edge: (a, b),
        area_param: area,
    })
}
