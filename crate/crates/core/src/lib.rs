//! Exact discrete affine geometry of convex polygons with parallel opposite sides.
//!
//! All constructions run over [`kernel::Rational`]; incidence predicates such as
//! "this junction lies on the central symmetry set" are decided exactly.

pub mod check;
pub mod chords;
pub mod edit;
pub mod equidistant;
pub mod evolute;
pub mod io;
pub mod kernel;
pub mod parallels;
pub mod pd;
pub mod polygon;
pub mod scene;
pub mod svg;

pub use evolute::{area_evolute, central_symmetry_set, diagonal_frames, PolyChain};
pub use kernel::{
    cross, line_intersect, polygon_area, segment_param, Line, Point, Rational, Segment, Vector,
};
pub use polygon::{random_cpos, validate, CposPolygon, EdgeIndex};
