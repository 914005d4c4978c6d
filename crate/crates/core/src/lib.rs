pub mod convex_ops;
pub mod error;
pub mod geom;
pub mod oracles;
pub mod peeler;
pub mod problab;
pub mod sampling;
pub mod scalar;
pub mod visibility;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Double precision instantiations.
pub type Point = geom::Point2<f64>;
pub type Polygon = geom::SimplePolygon<f64>;
pub type Convex = geom::ConvexPolygon<f64>;
pub type Graph = visibility::VisibilityGraph<f64>;
pub type Peel = peeler::PeelResult<f64>;
pub type Oracle = oracles::OracleInstance<f64>;

/// Single precision instantiations.
pub type PointF32 = geom::Point2<f32>;
pub type PolygonF32 = geom::SimplePolygon<f32>;
pub type ConvexF32 = geom::ConvexPolygon<f32>;
