use std::cmp::Ordering;

use super::{Direction, GeometryError, Point, Polygon, VertexRef};
use crate::predicates::{orient, Span};

/// Interior angle strictly above 180 degrees.
///
/// Every ring keeps the interior on its left, so a vertex is reflex exactly
/// when the boundary turns right there; on a clockwise hole ring this picks
/// out the convex corners of the hole.
pub fn is_reflex(polygon: &Polygon, v: VertexRef) -> Result<bool, GeometryError> {
    if !polygon.contains_vertex(v) {
        return Err(GeometryError::NoSuchVertex(v));
    }
    let (prev, next) = polygon.neighbors(v);
    Ok(orient(prev, polygon.vertex(v), next) == Ordering::Less)
}

/// All reflex vertices, in ring order.
pub fn reflex_vertices(polygon: &Polygon) -> Vec<VertexRef> {
    polygon
        .vertex_refs()
        .filter(|&v| is_reflex(polygon, v).expect("vertex from the polygon itself"))
        .collect()
}

/// The closed double cone of sweep directions for which a reflex vertex is
/// not a critical point of the height function.
///
/// With incoming edge `d1 = p - prev` and outgoing edge `d2 = next - p`, a
/// direction `v` lies in the cone iff `<v, d1>` and `<v, d2>` do not have
/// strictly opposite signs, i.e. the two neighbours are not strictly on the
/// same side of the level line through `p`. The boundary directions are the
/// outward edge normals `n1 = rot_cw(d1)` and `n2 = rot_cw(d2)`, and since
/// `<v, d> = cross(rot_cw(d), v)` the test is a pair of cross-product signs.
///
/// Turning counterclockwise (mod 180 degrees) the cone runs from `n1` to `n2`.
#[derive(Clone, Copy, Debug)]
pub struct DoubleCone {
    vertex: VertexRef,
    apex: Point,
    normal_in: Direction,
    normal_out: Direction,
}

impl DoubleCone {
    pub fn vertex(&self) -> VertexRef {
        self.vertex
    }

    pub fn apex(&self) -> Point {
        self.apex
    }

    /// Outward normal of the incoming edge; the counterclockwise-first boundary.
    pub fn boundary1(&self) -> Direction {
        self.normal_in
    }

    /// Outward normal of the outgoing edge.
    pub fn boundary2(&self) -> Direction {
        self.normal_out
    }

    /// Normalized mean of the two outward normals. Approximate.
    pub fn mean_normal(&self) -> Direction {
        let (a, b) = (self.normal_in.unit(), self.normal_out.unit());
        Direction::new(a.0 + b.0, a.1 + b.1).expect("normals of a reflex vertex are not opposite")
    }

    pub fn contains(&self, v: &Direction) -> bool {
        let s1 = self.normal_in.cross_sign(v);
        let s2 = self.normal_out.cross_sign(v);
        !matches!(
            (s1, s2),
            (Ordering::Greater, Ordering::Less) | (Ordering::Less, Ordering::Greater)
        )
    }

    /// Whether the cone contains the sweep start direction `(0, -1)` without
    /// entering there: its counterclockwise interval wraps past the start.
    pub fn wraps_sweep_start(&self) -> bool {
        self.normal_in.sweep_cmp(&self.normal_out) == Ordering::Greater
    }

    /// Angular extent in degrees, in `(0, 180)`. Approximate.
    pub fn width_degrees(&self) -> f64 {
        let mut width = self.normal_out.angle_degrees() - self.normal_in.angle_degrees();
        if width <= 0.0 {
            width += 180.0;
        }
        width
    }

    /// `(start, end)` in degrees with `start` in `[0, 180)` and `end = start + width`.
    pub fn interval_degrees(&self) -> (f64, f64) {
        let start = self.normal_in.angle_degrees();
        (start, start + self.width_degrees())
    }
}

/// Builds the cone of a reflex vertex.
pub fn cone_of(polygon: &Polygon, v: VertexRef) -> Result<DoubleCone, GeometryError> {
    if !is_reflex(polygon, v)? {
        return Err(GeometryError::NotReflex(v));
    }
    let (prev, next) = polygon.neighbors(v);
    let apex = polygon.vertex(v);
    Ok(DoubleCone {
        vertex: v,
        apex,
        normal_in: Direction::from_span(Span::new(prev, apex).rotated_cw()),
        normal_out: Direction::from_span(Span::new(apex, next).rotated_cw()),
    })
}

pub fn cone_contains(cone: &DoubleCone, v: &Direction) -> bool {
    cone.contains(v)
}

/// Cones of all reflex vertices, in ring order.
pub fn reflex_cones(polygon: &Polygon) -> Vec<DoubleCone> {
    reflex_vertices(polygon)
        .into_iter()
        .map(|v| cone_of(polygon, v).expect("vertex is reflex"))
        .collect()
}
