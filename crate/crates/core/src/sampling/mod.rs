//! Triangulation and uniform point sampling with seeded random sources.

mod rng;
mod sample;
mod triangulate;

pub use rng::{purpose, RandomSource};
pub use sample::{
    sample_in_convex, sample_in_parallelogram, sample_in_polygon, sample_in_triangle,
    sample_thinned, triangle_point, ConvexSampler, Parallelogram,
};
pub use triangulate::{triangulate, Triangulation};
