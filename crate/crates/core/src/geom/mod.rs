//! Planar primitives: points, predicates, hulls, polygons and containment.

mod clip;
mod convex;
mod io;
mod point;
mod polygon;
mod predicates;
mod transform;

pub use clip::{area_below, clip_convex, clip_halfplane};
pub use convex::{convex_hull, in_convex_position, shoelace, ConvexPolygon};
pub use io::{polygon_from_json, polygon_to_json, read_polygon, PolygonFile};
pub use point::{Bbox, Point2, Segment, Vector2};
pub use polygon::{
    locate_in_ring, point_in_polygon, polygon_area, segment_in_polygon, Location, SimplePolygon,
};
pub use predicates::{
    cross3, on_segment, orientation, segments_cross_properly, segments_intersect, triangle_area,
    Orientation,
};
pub use transform::Similarity;
