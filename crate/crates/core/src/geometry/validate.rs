//! Ring cleanup, simplicity testing and containment.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::ops::Bound;

use super::Point;
use crate::predicates::{self, orient, Span};

/// Result of cleaning a ring: straight vertices and repeated points removed.
#[derive(Debug, PartialEq)]
pub(crate) enum Cleaned {
    Ring(Vec<Point>),
    TooFew(usize),
    /// The ring doubles back on itself along a line.
    FoldBack,
}

/// Merges collinear runs and drops repeated consecutive points.
pub(crate) fn clean_ring(points: &[Point]) -> Cleaned {
    let n = points.len();
    if n < 3 {
        return Cleaned::TooFew(n);
    }
    let mut prev: Vec<usize> = (0..n).map(|i| (i + n - 1) % n).collect();
    let mut next: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut work: Vec<usize> = (0..n).rev().collect();
    while let Some(i) = work.pop() {
        if !alive[i] {
            continue;
        }
        if remaining < 3 {
            return Cleaned::TooFew(remaining);
        }
        let (a, b, c) = (points[prev[i]], points[i], points[next[i]]);
        let remove = if b == a || b == c {
            true
        } else if orient(a, b, c) == Ordering::Equal {
            if predicates::dot(&Span::new(a, b), &Span::new(b, c)) == Ordering::Less {
                return Cleaned::FoldBack;
            }
            true
        } else {
            false
        };
        if remove {
            alive[i] = false;
            remaining -= 1;
            let (p, q) = (prev[i], next[i]);
            next[p] = q;
            prev[q] = p;
            work.push(p);
            work.push(q);
        }
    }
    if remaining < 3 {
        return Cleaned::TooFew(remaining);
    }
    Cleaned::Ring((0..n).filter(|&i| alive[i]).map(|i| points[i]).collect())
}

/// Orientation of a simple ring without collinear vertices: `Greater` for
/// counterclockwise. Decided at the lexicographically smallest vertex, which
/// is a strictly convex hull vertex.
pub(crate) fn ring_orientation(points: &[Point]) -> Ordering {
    let n = points.len();
    let lowest = (0..n)
        .min_by(|&i, &j| points[i].lex_cmp(&points[j]))
        .expect("nonempty ring");
    orient(
        points[(lowest + n - 1) % n],
        points[lowest],
        points[(lowest + 1) % n],
    )
}

/// Point strictly inside a ring, by crossing parity. The point must not lie
/// on the ring.
pub(crate) fn point_in_ring(q: Point, ring: &[Point]) -> bool {
    let n = ring.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (ring[i], ring[(i + 1) % n]);
        if (a.y > q.y) != (b.y > q.y) {
            let side = orient(a, b, q);
            let upward = b.y > a.y;
            if (upward && side == Ordering::Greater) || (!upward && side == Ordering::Less) {
                inside = !inside;
            }
        }
    }
    inside
}

fn on_segment_box(a: Point, b: Point, p: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed segment intersection test, exact.
pub(crate) fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2
        && o3 != o4
        && o1 != Ordering::Equal
        && o2 != Ordering::Equal
        && o3 != Ordering::Equal
        && o4 != Ordering::Equal
    {
        return true;
    }
    (o1 == Ordering::Equal && on_segment_box(a, b, c))
        || (o2 == Ordering::Equal && on_segment_box(a, b, d))
        || (o3 == Ordering::Equal && on_segment_box(c, d, a))
        || (o4 == Ordering::Equal && on_segment_box(c, d, b))
}

/// An edge of a ring: vertex `index` to vertex `index + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct EdgeRef {
    pub ring: usize,
    pub index: usize,
}

/// Two boundary pieces that touch or cross.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Conflict {
    pub first: EdgeRef,
    pub second: EdgeRef,
}

struct Edges<'a> {
    rings: &'a [Vec<Point>],
    refs: Vec<EdgeRef>,
}

impl<'a> Edges<'a> {
    fn new(rings: &'a [Vec<Point>]) -> Self {
        let refs = rings
            .iter()
            .enumerate()
            .flat_map(|(ring, pts)| (0..pts.len()).map(move |index| EdgeRef { ring, index }))
            .collect();
        Edges { rings, refs }
    }

    fn endpoints(&self, e: EdgeRef) -> (Point, Point) {
        let ring = &self.rings[e.ring];
        (ring[e.index], ring[(e.index + 1) % ring.len()])
    }

    fn adjacent(&self, e: EdgeRef, f: EdgeRef) -> bool {
        if e.ring != f.ring {
            return false;
        }
        let n = self.rings[e.ring].len();
        (e.index + 1) % n == f.index || (f.index + 1) % n == e.index
    }

    fn conflict(&self, e: EdgeRef, f: EdgeRef) -> bool {
        if e == f || self.adjacent(e, f) {
            return false;
        }
        let (a, b) = self.endpoints(e);
        let (c, d) = self.endpoints(f);
        segments_intersect(a, b, c, d)
    }
}

/// Sweep-status key: an edge with its lexicographically smaller endpoint first.
#[derive(Clone, Copy, Debug)]
struct StatusKey {
    left: Point,
    right: Point,
    id: usize,
}

impl StatusKey {
    // Valid for edges that are simultaneously crossed by the sweep and do not
    // cross each other, which holds up to the first reported conflict.
    fn order(&self, other: &StatusKey) -> Ordering {
        if self.id == other.id {
            return Ordering::Equal;
        }
        if self.left.lex_cmp(&other.left) == Ordering::Greater {
            return other.order(self).reverse();
        }
        let side = match orient(self.left, self.right, other.left) {
            Ordering::Equal => orient(self.left, self.right, other.right),
            s => s,
        };
        match side {
            // `other` lies to the left of (above) `self`
            Ordering::Greater => Ordering::Less,
            Ordering::Less => Ordering::Greater,
            Ordering::Equal => self.id.cmp(&other.id),
        }
    }
}

impl PartialEq for StatusKey {
    fn eq(&self, other: &Self) -> bool {
        self.order(other) == Ordering::Equal
    }
}
impl Eq for StatusKey {}
impl PartialOrd for StatusKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for StatusKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order(other)
    }
}

/// Finds a pair of non-adjacent edges (over all rings) that touch or cross,
/// or two distinct vertices at the same location. Shamos-Hoey sweep,
/// `O(n log n)`.
pub(crate) fn find_conflict(rings: &[Vec<Point>]) -> Option<Conflict> {
    let edges = Edges::new(rings);
    let mut vertices: Vec<(usize, usize)> = rings
        .iter()
        .enumerate()
        .flat_map(|(r, pts)| (0..pts.len()).map(move |i| (r, i)))
        .collect();
    vertices.sort_by(|&(r, i), &(s, j)| rings[r][i].lex_cmp(&rings[s][j]));
    for w in vertices.windows(2) {
        let ((r, i), (s, j)) = (w[0], w[1]);
        if rings[r][i] == rings[s][j] {
            return Some(Conflict {
                first: EdgeRef { ring: r, index: i },
                second: EdgeRef { ring: s, index: j },
            });
        }
    }

    let mut offsets = Vec::with_capacity(rings.len());
    let mut total = 0;
    for ring in rings {
        offsets.push(total);
        total += ring.len();
    }
    let key_of = |e: EdgeRef| {
        let (a, b) = edges.endpoints(e);
        let (left, right) = if a.lex_cmp(&b) == Ordering::Less {
            (a, b)
        } else {
            (b, a)
        };
        StatusKey {
            left,
            right,
            id: offsets[e.ring] + e.index,
        }
    };
    let edge_of = |id: usize| edges.refs[id];

    let mut status: BTreeSet<StatusKey> = BTreeSet::new();
    for &(r, i) in &vertices {
        let n = rings[r].len();
        let here = rings[r][i];
        let incident = [
            EdgeRef {
                ring: r,
                index: (i + n - 1) % n,
            },
            EdgeRef { ring: r, index: i },
        ];
        let (mut starting, mut ending) = (Vec::new(), Vec::new());
        for e in incident {
            let key = key_of(e);
            if key.left == here {
                starting.push(key);
            } else {
                ending.push(key);
            }
        }
        for key in starting {
            status.insert(key);
            let below = status.range(..key).next_back().copied();
            let above = status
                .range((Bound::Excluded(key), Bound::Unbounded))
                .next()
                .copied();
            for other in [below, above].into_iter().flatten() {
                if edges.conflict(edge_of(key.id), edge_of(other.id)) {
                    return Some(Conflict {
                        first: edge_of(key.id),
                        second: edge_of(other.id),
                    });
                }
            }
        }
        for key in ending {
            let below = status.range(..key).next_back().copied();
            let above = status
                .range((Bound::Excluded(key), Bound::Unbounded))
                .next()
                .copied();
            status.remove(&key);
            if let (Some(b), Some(a)) = (below, above) {
                if edges.conflict(edge_of(b.id), edge_of(a.id)) {
                    return Some(Conflict {
                        first: edge_of(b.id),
                        second: edge_of(a.id),
                    });
                }
            }
        }
    }
    None
}

/// Quadratic reference for [`find_conflict`].
#[cfg(test)]
pub(crate) fn find_conflict_brute(rings: &[Vec<Point>]) -> Option<Conflict> {
    let edges = Edges::new(rings);
    for (k, &e) in edges.refs.iter().enumerate() {
        for &f in &edges.refs[k + 1..] {
            let (a, _) = edges.endpoints(e);
            let (c, _) = edges.endpoints(f);
            if a == c || edges.conflict(e, f) {
                return Some(Conflict {
                    first: e,
                    second: f,
                });
            }
        }
    }
    None
}
