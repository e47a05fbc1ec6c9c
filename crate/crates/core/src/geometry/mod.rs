//! Polygons, directions and reflex-vertex cones.

mod cone;
mod polygon;
mod validate;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::predicates::{self, Span};

pub use cone::{cone_contains, cone_of, is_reflex, reflex_cones, reflex_vertices, DoubleCone};
pub use polygon::{load_polygon, Polygon, PolygonError, Ring};
pub(crate) use validate::find_conflict;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("direction ({dx}, {dy}) is zero or not finite")]
    InvalidDirection { dx: f64, dy: f64 },
    #[error("vertex {0} does not exist")]
    NoSuchVertex(VertexRef),
    #[error("vertex {0} is not reflex")]
    NotReflex(VertexRef),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Lexicographic order by `x`, then `y`. Total on finite points.
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        self.x.total_cmp(&other.x).then(self.y.total_cmp(&other.y))
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

/// A vertex of a polygon: ring 0 is the outer boundary, rings `1..` are holes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexRef {
    pub ring: usize,
    pub index: usize,
}

impl VertexRef {
    pub fn new(ring: usize, index: usize) -> Self {
        VertexRef { ring, index }
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.ring, self.index)
    }
}

/// A sweep direction, identified with its negation.
///
/// The vector is kept as an exact difference of two float points, so normals
/// of polygon edges are represented without rounding. All comparisons go
/// through exact predicates.
#[derive(Clone, Copy, Debug)]
pub struct Direction {
    span: Span,
}

impl Direction {
    pub fn new(dx: f64, dy: f64) -> Result<Self, GeometryError> {
        if !(dx.is_finite() && dy.is_finite()) || (dx == 0.0 && dy == 0.0) {
            return Err(GeometryError::InvalidDirection { dx, dy });
        }
        Ok(Direction {
            span: Span::new(Point::ORIGIN, Point::new(dx, dy)),
        })
    }

    /// The direction of `to - from`, which must be nonzero.
    pub fn between(from: Point, to: Point) -> Result<Self, GeometryError> {
        if from == to || !from.is_finite() || !to.is_finite() {
            let (dx, dy) = (to.x - from.x, to.y - from.y);
            return Err(GeometryError::InvalidDirection { dx, dy });
        }
        Ok(Direction {
            span: Span::new(from, to),
        })
    }

    pub(crate) fn from_span(span: Span) -> Self {
        Direction { span }
    }

    pub(crate) fn span(&self) -> &Span {
        &self.span
    }

    /// `self + other` to roughly twice `f64` precision, after scaling `other`
    /// by a power of two to a comparable length. Each vector splits exactly
    /// into a rounded part and a remainder; the result is stored as their
    /// difference, so no exact arithmetic is needed to build it.
    pub(crate) fn fine_sum(&self, other: &Direction) -> Option<Direction> {
        let exponent = |d: &Direction| {
            let (x, y) = d.components();
            x.abs().max(y.abs()).log2().floor() as i32
        };
        let scale = 2f64.powi(exponent(self) - exponent(other));
        let split = |s: &Span, k: f64| {
            let (xh, xl) = predicates::two_sum(k * s.to.x, -k * s.from.x);
            let (yh, yl) = predicates::two_sum(k * s.to.y, -k * s.from.y);
            ((xh, yh), (xl, yl))
        };
        let (ah, al) = split(&self.span, 1.0);
        let (bh, bl) = split(other.span(), scale);
        let (xh, xe) = predicates::two_sum(ah.0, bh.0);
        let (yh, ye) = predicates::two_sum(ah.1, bh.1);
        let lo = Point::new(-(al.0 + bl.0 + xe), -(al.1 + bl.1 + ye));
        let hi = Point::new(xh, yh);
        (hi.is_finite() && lo.is_finite() && hi != lo).then(|| Direction {
            span: Span::new(lo, hi),
        })
    }

    /// The vector components, rounded to `f64`.
    pub fn components(&self) -> (f64, f64) {
        self.span.approx()
    }

    pub fn unit(&self) -> (f64, f64) {
        let (dx, dy) = self.components();
        let norm = dx.hypot(dy);
        (dx / norm, dy / norm)
    }

    /// Canonical angle in `[0, 180)` degrees. For display; never used to decide order.
    pub fn angle_degrees(&self) -> f64 {
        let (dx, dy) = self.components();
        let mut angle = dy.atan2(dx).to_degrees();
        if angle < 0.0 {
            angle += 180.0;
        }
        if angle >= 180.0 {
            angle -= 180.0;
        }
        angle
    }

    pub fn reversed(&self) -> Self {
        Direction {
            span: self.span.negated(),
        }
    }

    pub fn rotated_ccw(&self) -> Self {
        Direction {
            span: self.span.rotated_ccw(),
        }
    }

    pub fn rotated_cw(&self) -> Self {
        Direction {
            span: self.span.rotated_cw(),
        }
    }

    /// Sign of the cross product of the two underlying vectors.
    pub fn cross_sign(&self, other: &Direction) -> Ordering {
        predicates::cross(&self.span, &other.span)
    }

    pub fn dot_sign(&self, other: &Direction) -> Ordering {
        predicates::dot(&self.span, &other.span)
    }

    /// Compares the heights `<v, a>` and `<v, b>` exactly.
    pub fn height_cmp(&self, a: Point, b: Point) -> Ordering {
        predicates::dot(&self.span, &Span::new(b, a))
    }

    /// The height `<v, p>` in `f64`, with `v` not normalized.
    pub fn height(&self, p: Point) -> f64 {
        let (dx, dy) = self.components();
        dx * p.x + dy * p.y
    }

    /// Representative in the half-open half-plane that starts at `(0, -1)` and
    /// turns counterclockwise: `x > 0`, or `x == 0` and `y < 0`.
    pub fn canonical(&self) -> Self {
        let flip = match self.span.sign_x() {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => self.span.sign_y() == Ordering::Greater,
        };
        if flip {
            self.reversed()
        } else {
            *self
        }
    }

    /// Order of first appearance when a vector starting at `(0, -1)` turns
    /// counterclockwise through half a revolution.
    pub fn sweep_cmp(&self, other: &Direction) -> Ordering {
        // a precedes b  <=>  cross(a, b) > 0, for a, b in the canonical half-plane
        other.canonical().cross_sign(&self.canonical())
    }

    pub fn is_parallel(&self, other: &Direction) -> bool {
        self.cross_sign(other) == Ordering::Equal
    }
}

impl PartialEq for Direction {
    fn eq(&self, other: &Self) -> bool {
        self.is_parallel(other)
    }
}

impl Eq for Direction {}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (dx, dy) = self.components();
        write!(f, "({dx}, {dy})")
    }
}

impl Serialize for Direction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (dx, dy) = self.components();
        [dx, dy].serialize(serializer)
    }
}
