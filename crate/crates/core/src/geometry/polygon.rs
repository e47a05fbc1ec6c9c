use std::cmp::Ordering;
use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::validate::{self, Cleaned};
use super::{Point, VertexRef};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolygonError {
    #[error("cannot parse polygon file: {0}")]
    Parse(String),
    #[error("ring {ring} vertex {index} is not finite")]
    NonFinite { ring: usize, index: usize },
    #[error("ring {ring} has {count} distinct corners, at least 3 are required")]
    TooFewVertices { ring: usize, count: usize },
    #[error("ring {ring} intersects itself")]
    SelfIntersection { ring: usize },
    #[error("rings {first} and {second} touch or cross")]
    RingsIntersect { first: usize, second: usize },
    #[error("hole {hole} is not inside the outer ring")]
    HoleOutside { hole: usize },
    #[error("hole {inner} lies inside hole {outer}")]
    NestedHoles { outer: usize, inner: usize },
}

/// A simple closed boundary curve. Vertices are corners: no repeats, no
/// straight angles.
#[derive(Clone, Debug, PartialEq)]
pub struct Ring {
    vertices: Vec<Point>,
}

impl Ring {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn prev_index(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    pub fn next_index(&self, i: usize) -> usize {
        (i + 1) % self.len()
    }

    /// Edges `(vertices[i], vertices[i + 1])`, wrapping around.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        (0..self.len()).map(move |i| (self.vertices[i], self.vertices[self.next_index(i)]))
    }
}

/// A polygon with holes. The interior always lies to the left of every ring:
/// the outer ring runs counterclockwise and every hole clockwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    rings: Vec<Ring>,
}

#[derive(Deserialize)]
struct PolygonFile {
    outer: Vec<[f64; 2]>,
    #[serde(default)]
    holes: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize)]
struct PolygonFileRef<'a> {
    outer: &'a [Point],
    holes: Vec<&'a [Point]>,
}

impl Polygon {
    /// Validates and normalizes a polygon. Either winding is accepted.
    pub fn new(outer: Vec<Point>, holes: Vec<Vec<Point>>) -> Result<Self, PolygonError> {
        let mut rings = Vec::with_capacity(holes.len() + 1);
        for (ring, points) in std::iter::once(outer).chain(holes).enumerate() {
            if let Some(index) = points.iter().position(|p| !p.is_finite()) {
                return Err(PolygonError::NonFinite { ring, index });
            }
            let mut points = match validate::clean_ring(&points) {
                Cleaned::Ring(points) => points,
                Cleaned::TooFew(count) => return Err(PolygonError::TooFewVertices { ring, count }),
                Cleaned::FoldBack => return Err(PolygonError::SelfIntersection { ring }),
            };
            let wanted = if ring == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            };
            if validate::ring_orientation(&points) != wanted {
                points[1..].reverse();
            }
            rings.push(points);
        }

        if let Some(conflict) = validate::find_conflict(&rings) {
            let (first, second) = (conflict.first.ring, conflict.second.ring);
            return Err(if first == second {
                PolygonError::SelfIntersection { ring: first }
            } else {
                PolygonError::RingsIntersect {
                    first: first.min(second),
                    second: first.max(second),
                }
            });
        }

        // Boundaries are pairwise disjoint now, so one vertex decides containment.
        for hole in 1..rings.len() {
            if !validate::point_in_ring(rings[hole][0], &rings[0]) {
                return Err(PolygonError::HoleOutside { hole });
            }
        }
        for inner in 1..rings.len() {
            for outer in 1..rings.len() {
                if inner != outer && validate::point_in_ring(rings[inner][0], &rings[outer]) {
                    return Err(PolygonError::NestedHoles { outer, inner });
                }
            }
        }

        Ok(Polygon {
            rings: rings
                .into_iter()
                .map(|vertices| Ring { vertices })
                .collect(),
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self, PolygonError> {
        let file: PolygonFile =
            serde_json::from_str(text).map_err(|e| PolygonError::Parse(e.to_string()))?;
        let to_points = |ring: Vec<[f64; 2]>| ring.into_iter().map(Point::from).collect::<Vec<_>>();
        Polygon::new(
            to_points(file.outer),
            file.holes.into_iter().map(to_points).collect(),
        )
    }

    /// The polygon file format: `{"outer": [[x, y], ...], "holes": [[[x, y], ...], ...]}`
    /// on one line, followed by a newline. Numbers use the shortest decimal
    /// form that reads back to the same `f64`.
    pub fn to_json_string(&self) -> String {
        let file = PolygonFileRef {
            outer: self.outer().vertices(),
            holes: self.holes().iter().map(|r| r.vertices()).collect(),
        };
        let mut text = serde_json::to_string(&file).expect("finite coordinates serialize");
        text.push('\n');
        text
    }

    pub fn outer(&self) -> &Ring {
        &self.rings[0]
    }

    pub fn holes(&self) -> &[Ring] {
        &self.rings[1..]
    }

    /// Outer ring first, then the holes.
    pub fn rings(&self) -> &[Ring] {
        &self.rings
    }

    /// Total number of vertices over all rings.
    pub fn n(&self) -> usize {
        self.rings.iter().map(Ring::len).sum()
    }

    /// Number of holes.
    pub fn h(&self) -> usize {
        self.rings.len() - 1
    }

    pub fn contains_vertex(&self, v: VertexRef) -> bool {
        v.ring < self.rings.len() && v.index < self.rings[v.ring].len()
    }

    /// Panics if `v` is out of range.
    pub fn vertex(&self, v: VertexRef) -> Point {
        self.rings[v.ring].vertices[v.index]
    }

    /// The previous and next vertex along the ring.
    pub fn neighbors(&self, v: VertexRef) -> (Point, Point) {
        let ring = &self.rings[v.ring];
        (
            ring.vertices[ring.prev_index(v.index)],
            ring.vertices[ring.next_index(v.index)],
        )
    }

    pub fn vertex_refs(&self) -> impl Iterator<Item = VertexRef> + '_ {
        self.rings
            .iter()
            .enumerate()
            .flat_map(|(r, ring)| (0..ring.len()).map(move |i| VertexRef::new(r, i)))
    }

    /// Applies a map to every vertex and validates the result again.
    pub fn map_points(&self, f: impl Fn(Point) -> Point) -> Result<Polygon, PolygonError> {
        let mut rings = self
            .rings
            .iter()
            .map(|r| r.vertices.iter().copied().map(&f).collect());
        let outer = rings.next().expect("outer ring");
        Polygon::new(outer, rings.collect())
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bounds(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in self.outer().vertices() {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }

    /// Whether `q` lies strictly inside the polygon; `q` must not be on the boundary.
    pub fn contains_point(&self, q: Point) -> bool {
        validate::point_in_ring(q, self.outer().vertices())
            && !self
                .holes()
                .iter()
                .any(|h| validate::point_in_ring(q, h.vertices()))
    }
}

/// Reads and validates a polygon file.
pub fn load_polygon(mut source: impl Read) -> Result<Polygon, PolygonError> {
    let mut text = String::new();
    source
        .read_to_string(&mut text)
        .map_err(|e| PolygonError::Parse(e.to_string()))?;
    Polygon::from_json_str(&text)
}
