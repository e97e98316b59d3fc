//! Planar convex-body representations and geometric primitives.

pub mod body;
pub mod halfplane;
pub mod point;
pub mod polygon;
pub mod smooth;

pub use body::{directional_intersection, BoundarySample, ConvexBody, COMPARE_GRID};
pub use halfplane::{Constraint, Halfplane};
pub use point::{AffineMap2, Point2};
pub use polygon::Polygon;
pub use smooth::{PolygonMode, SmoothBody, TrigSeries, DEFAULT_GRID};
