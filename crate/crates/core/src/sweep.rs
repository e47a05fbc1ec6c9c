//! Minimum leaf count over all parallel rulings, by a rotational sweep.
//!
//! A direction `v` removes reflex vertex `p` from the Reeb graph exactly when
//! `v` lies in the closed cone of `p`. For a generic `v` every remaining
//! reflex vertex is a degree-3 branch node, so the leaf count is
//! `k - c(v) + 2 - 2h` where `c(v)` is the number of cones containing `v`.
//! Minimizing leaves is maximizing cone coverage: rotate `v` through half a
//! turn starting at `(0, -1)`, counting cone entries and exits.

use std::cmp::Ordering;
use std::collections::VecDeque;

use serde::Serialize;

use crate::geometry::{reflex_cones, Direction, DoubleCone, Polygon};
use crate::reeb::is_generic;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Entry,
    Exit,
}

/// A cone boundary met by the rotating direction.
#[derive(Clone, Copy, Debug)]
pub struct AngularEvent {
    /// Representative in the sweep half-plane (see [`Direction::canonical`]).
    pub angle: Direction,
    pub kind: EventKind,
    /// Index into the cone slice the event was built from.
    pub cone: usize,
}

/// The start of the rotation.
pub fn sweep_start() -> Direction {
    Direction::new(0.0, -1.0).expect("nonzero")
}

/// Two events per cone, in sweep order; at equal angles entries come first
/// so closed intervals sharing an endpoint overlap there.
pub fn angular_events(cones: &[DoubleCone]) -> Vec<AngularEvent> {
    let mut events: Vec<AngularEvent> = cones
        .iter()
        .enumerate()
        .flat_map(|(cone, c)| {
            [
                AngularEvent {
                    angle: c.boundary1().canonical(),
                    kind: EventKind::Entry,
                    cone,
                },
                AngularEvent {
                    angle: c.boundary2().canonical(),
                    kind: EventKind::Exit,
                    cone,
                },
            ]
        })
        .collect();
    events.sort_by(|a, b| {
        b.angle
            .cross_sign(&a.angle)
            .then_with(|| match (a.kind, b.kind) {
                (EventKind::Entry, EventKind::Exit) => Ordering::Less,
                (EventKind::Exit, EventKind::Entry) => Ordering::Greater,
                _ => Ordering::Equal,
            })
    });
    events
}

/// Open arc of directions turning counterclockwise from `start` to `end`,
/// spanning more than 0 and at most 180 degrees.
#[derive(Clone, Copy, Debug)]
pub struct OpenArc {
    pub start: Direction,
    pub end: Direction,
}

impl OpenArc {
    /// The whole half-turn except the sweep start.
    pub fn half_turn() -> Self {
        let s = sweep_start();
        OpenArc {
            start: s,
            end: s.reversed(),
        }
    }

    fn is_half_turn(&self) -> bool {
        self.start.cross_sign(&self.end) == Ordering::Equal
    }

    fn strictly_contains_vector(&self, d: &Direction) -> bool {
        self.start.cross_sign(d) == Ordering::Greater
            && d.cross_sign(&self.end) == Ordering::Greater
    }

    /// Whether the direction (either sign) lies strictly inside.
    pub fn strictly_contains(&self, d: &Direction) -> bool {
        self.strictly_contains_vector(d) || self.strictly_contains_vector(&d.reversed())
    }

    /// Angular midpoint, if it can be represented strictly inside.
    pub fn midpoint(&self) -> Option<Direction> {
        let mid = if self.is_half_turn() {
            self.start.rotated_ccw()
        } else {
            let (a, b) = (self.start.unit(), self.end.unit());
            Direction::new(a.0 + b.0, a.1 + b.1).ok()?
        };
        self.strictly_contains_vector(&mid).then_some(mid)
    }

    /// The midpoint, or failing that another interior point of the arc.
    pub fn representative(&self) -> Option<Direction> {
        self.midpoint()
            .or_else(|| {
                let (a, b) = (self.start.unit(), self.end.unit());
                [0.25, 0.75, 0.1, 0.9].into_iter().find_map(|s| {
                    let m = Direction::new(s * a.0 + (1.0 - s) * b.0, s * a.1 + (1.0 - s) * b.1)
                        .ok()?;
                    self.strictly_contains_vector(&m).then_some(m)
                })
            })
            .or_else(|| {
                let m = self
                    .start
                    .fine_sum(&self.end)
                    .filter(|_| !self.is_half_turn())?;
                self.strictly_contains_vector(&m).then_some(m)
            })
    }

    fn split(&self, mid: Direction) -> (OpenArc, OpenArc) {
        (
            OpenArc {
                start: self.start,
                end: mid,
            },
            OpenArc {
                start: mid,
                end: self.end,
            },
        )
    }
}

/// Maximum closed-cone coverage over all directions.
#[derive(Clone, Copy, Debug)]
pub struct ConeCoverage {
    /// Maximum number of closed cones sharing a direction.
    pub c_max: usize,
    /// A direction covered by `c_max` cones: the midpoint of the best open
    /// arc, or the boundary angle itself when the maximum is isolated.
    pub witness: Direction,
    /// The maximum is attained only at isolated boundary angles.
    pub isolated: bool,
    /// Maximum coverage over open arcs between event angles.
    pub interior_max: usize,
    /// First open arc attaining `interior_max`.
    pub interior_arc: OpenArc,
}

/// Rotational sweep over the cone boundaries; `O(k log k)`.
pub fn max_cone_coverage(cones: &[DoubleCone]) -> ConeCoverage {
    let events = angular_events(cones);
    if events.is_empty() {
        let arc = OpenArc::half_turn();
        return ConeCoverage {
            c_max: 0,
            witness: arc.midpoint().expect("half turn has a midpoint"),
            isolated: false,
            interior_max: 0,
            interior_arc: arc,
        };
    }
    // Cones containing the start direction other than those entering exactly
    // there; the latter are counted by their entry event.
    let mut count = cones.iter().filter(|c| c.wraps_sweep_start()).count();

    let mut groups: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while i < events.len() {
        let mut j = i + 1;
        while j < events.len() && events[j].angle.is_parallel(&events[i].angle) {
            j += 1;
        }
        groups.push((i, j));
        i = j;
    }

    let mut closed: Option<(usize, usize)> = None;
    let mut interior: Option<(usize, usize)> = None;
    for (g, &(lo, hi)) in groups.iter().enumerate() {
        let entries = events[lo..hi]
            .iter()
            .filter(|e| e.kind == EventKind::Entry)
            .count();
        count += entries;
        if closed.is_none_or(|(best, _)| count > best) {
            closed = Some((count, g));
        }
        count -= (hi - lo) - entries;
        if interior.is_none_or(|(best, _)| count > best) {
            interior = Some((count, g));
        }
    }
    debug_assert_eq!(
        count,
        cones.iter().filter(|c| c.wraps_sweep_start()).count()
    );

    let (c_max, closed_group) = closed.expect("at least one group");
    let (interior_max, gap) = interior.expect("at least one group");
    let start = events[groups[gap].0].angle;
    let end = match groups.get(gap + 1) {
        Some(&(lo, _)) => events[lo].angle,
        None => events[groups[0].0].angle.reversed(),
    };
    let interior_arc = OpenArc { start, end };
    let isolated = c_max > interior_max;
    let witness = if isolated {
        events[groups[closed_group].0].angle
    } else {
        interior_arc.representative().unwrap_or(start)
    };
    ConeCoverage {
        c_max,
        witness,
        isolated,
        interior_max,
        interior_arc,
    }
}

/// Searches an open arc for a direction with pairwise distinct vertex
/// heights: the midpoint first, then breadth-first bisection.
pub fn generic_direction_in(polygon: &Polygon, arc: &OpenArc) -> Option<Direction> {
    const MAX_TRIES: usize = 4096;
    let mut queue = VecDeque::from([*arc]);
    let mut tries = 0;
    while let Some(a) = queue.pop_front() {
        let Some(mid) = a.representative() else {
            continue;
        };
        if is_generic(polygon, &mid) {
            return Some(mid);
        }
        tries += 1;
        if tries >= MAX_TRIES {
            return None;
        }
        let (left, right) = a.split(mid);
        queue.push_back(left);
        queue.push_back(right);
    }
    None
}

/// Parallel-ruling Reeb complexity of a polygon.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexityResult {
    /// `k - c_max + 2 - 2h`.
    pub min_leaves: i64,
    pub c_max: usize,
    pub k: usize,
    pub h: usize,
    pub witness: Direction,
    /// The maximum coverage exists only at isolated cone-boundary angles,
    /// where a ruling segment is collinear with a polygon edge.
    pub degenerate: bool,
    /// Minimum over generic directions; equals `min_leaves` unless degenerate.
    pub generic_min_leaves: i64,
    /// A generic direction attaining `generic_min_leaves`.
    pub generic_witness: Option<Direction>,
}

pub fn parallel_reeb_complexity(polygon: &Polygon) -> ComplexityResult {
    let cones = reflex_cones(polygon);
    let k = cones.len();
    let h = polygon.h();
    let coverage = max_cone_coverage(&cones);
    let formula = |c: usize| k as i64 - c as i64 + 2 - 2 * h as i64;
    let generic_witness = generic_direction_in(polygon, &coverage.interior_arc);
    let witness = match (coverage.isolated, generic_witness) {
        (false, Some(w)) => w,
        _ => coverage.witness,
    };
    ComplexityResult {
        min_leaves: formula(coverage.c_max),
        c_max: coverage.c_max,
        k,
        h,
        witness,
        degenerate: coverage.isolated,
        generic_min_leaves: formula(coverage.interior_max),
        generic_witness,
    }
}
