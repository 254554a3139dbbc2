//! Points, segments, convex regions and rotated squares.

pub mod boxes;
pub mod coverage;
pub mod point;
pub mod shapes;

pub use boxes::{
    box_contains_point, box_line_intersection_length, boxes_overlap, square_contains_point_closed,
    square_in_container, ContainerSquare, Square,
};
pub use coverage::{polygons_cover_square, CoverageReport};
pub use point::{distance, orientation, ExactPoint, ExactSegment, Point, PointSpec, Segment};
pub use shapes::{point_in_polygon, ConvexPolygon};
