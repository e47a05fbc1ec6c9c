//! Reeb graphs of the height function `x -> <v, x>` on a polygon.
//!
//! The level line sweeps the polygon in order of vertex height. The set of
//! active boundary edges is kept sorted along the level line; consecutive
//! pairs bound the intervals of the level set. Each interval carries the Reeb
//! arc it is tracing. Vertices whose two neighbours lie on the same side of
//! the level line are critical: convex ones open or close an interval (a
//! leaf) and reflex ones split or merge intervals (a branch node).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{cone_contains, cone_of, is_reflex, Direction, Point, Polygon, VertexRef};
use crate::predicates::orient;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReebError {
    #[error("direction is not generic: vertices {first} and {second} have equal height")]
    NonGeneric { first: VertexRef, second: VertexRef },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Leaf,
    Branch,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReebNode {
    pub kind: NodeKind,
    /// `<v, witness>` with `v` as given, not normalized.
    pub height: f64,
    pub witness: Point,
    #[serde(skip)]
    pub vertex: VertexRef,
}

#[derive(Clone, Debug)]
pub struct ReebGraph {
    pub direction: Direction,
    pub nodes: Vec<ReebNode>,
    /// Arcs as node index pairs `(lower, upper)`; parallel arcs appear once each.
    pub edges: Vec<(usize, usize)>,
    pub leaves: usize,
    pub branches: usize,
    pub holes: usize,
    pub morse: bool,
}

impl ReebGraph {
    pub fn degree(&self, node: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == node) as usize + (b == node) as usize)
            .sum()
    }

    /// `|E| - |V| + 1`.
    pub fn cycle_rank(&self) -> i64 {
        self.edges.len() as i64 - self.nodes.len() as i64 + 1
    }

    pub fn is_connected(&self) -> bool {
        let n = self.nodes.len();
        if n == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = n;
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        components == 1
    }

    /// Vertices that produced branch nodes.
    pub fn branch_vertices(&self) -> BTreeSet<VertexRef> {
        self.nodes
            .iter()
            .filter(|n| n.kind == NodeKind::Branch)
            .map(|n| n.vertex)
            .collect()
    }
}

/// Vertices sorted by height, failing on the first tie.
fn height_order(polygon: &Polygon, v: &Direction) -> Result<Vec<VertexRef>, ReebError> {
    let mut order: Vec<VertexRef> = polygon.vertex_refs().collect();
    order.sort_by(|&a, &b| v.height_cmp(polygon.vertex(a), polygon.vertex(b)));
    for w in order.windows(2) {
        if v.height_cmp(polygon.vertex(w[0]), polygon.vertex(w[1])) == Ordering::Equal {
            return Err(ReebError::NonGeneric {
                first: w[0].min(w[1]),
                second: w[0].max(w[1]),
            });
        }
    }
    Ok(order)
}

/// All vertex heights pairwise distinct. Implies the ruling is Morse.
pub fn is_generic(polygon: &Polygon, v: &Direction) -> bool {
    height_order(polygon, v).is_ok()
}

/// An active edge, lower endpoint first. Ordered along the level line from
/// the side `rot_ccw(v)` to the side `rot_cw(v)`; the order of two edges is
/// the same at every height where both are active because edges do not cross.
#[derive(Clone, Copy, Debug)]
struct ActiveEdge {
    lo: Point,
    hi: Point,
    lo_rank: usize,
    id: usize,
}

impl ActiveEdge {
    fn probe(p: Point, rank: usize) -> Self {
        ActiveEdge {
            lo: p,
            hi: p,
            lo_rank: rank,
            id: usize::MAX,
        }
    }

    fn order(&self, other: &ActiveEdge) -> Ordering {
        if self.id == other.id {
            return Ordering::Equal;
        }
        if self.lo_rank > other.lo_rank || (self.lo_rank == other.lo_rank && self.id == usize::MAX)
        {
            return other.order(self).reverse();
        }
        // `other` starts no lower than `self`, so its lower endpoint is on the
        // level line at a height where `self` is active.
        let side = match orient(self.lo, self.hi, other.lo) {
            Ordering::Equal => orient(self.lo, self.hi, other.hi),
            s => s,
        };
        match side {
            Ordering::Greater => Ordering::Greater,
            Ordering::Less => Ordering::Less,
            Ordering::Equal => self.id.cmp(&other.id),
        }
    }
}

impl PartialEq for ActiveEdge {
    fn eq(&self, other: &Self) -> bool {
        self.order(other) == Ordering::Equal
    }
}
impl Eq for ActiveEdge {}
impl PartialOrd for ActiveEdge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ActiveEdge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order(other)
    }
}

struct Sweep<'a> {
    polygon: &'a Polygon,
    offsets: Vec<usize>,
    rank: Vec<usize>,
    /// Active edges; left boundaries of level-set intervals hold the node at
    /// which the interval's arc started.
    status: BTreeMap<ActiveEdge, Option<usize>>,
    keys: Vec<Option<ActiveEdge>>,
    nodes: Vec<ReebNode>,
    edges: Vec<(usize, usize)>,
    v: Direction,
}

impl<'a> Sweep<'a> {
    fn global(&self, v: VertexRef) -> usize {
        self.offsets[v.ring] + v.index
    }

    /// The edge from `v` to its successor on the ring.
    fn edge_from(&self, v: VertexRef) -> ActiveEdge {
        let ring = &self.polygon.rings()[v.ring];
        let w = VertexRef::new(v.ring, ring.next_index(v.index));
        let (a, b) = (self.polygon.vertex(v), self.polygon.vertex(w));
        let (ga, gb) = (self.global(v), self.global(w));
        let id = ga;
        if self.rank[ga] < self.rank[gb] {
            ActiveEdge {
                lo: a,
                hi: b,
                lo_rank: self.rank[ga],
                id,
            }
        } else {
            ActiveEdge {
                lo: b,
                hi: a,
                lo_rank: self.rank[gb],
                id,
            }
        }
    }

    fn insert(&mut self, key: ActiveEdge, arc: Option<usize>) {
        self.keys[key.id] = Some(key);
        self.status.insert(key, arc);
    }

    fn remove(&mut self, id: usize) -> Option<usize> {
        let key = self.keys[id].take().expect("edge is active");
        self.status.remove(&key).expect("edge is in the status")
    }

    fn set_arc(&mut self, id: usize, arc: Option<usize>) {
        let key = self.keys[id].expect("edge is active");
        *self.status.get_mut(&key).expect("edge is in the status") = arc;
    }

    fn left_neighbor(&self, key: &ActiveEdge) -> (usize, Option<usize>) {
        let (k, arc) = self
            .status
            .range(..*key)
            .next_back()
            .expect("point lies inside some interval");
        (k.id, *arc)
    }

    fn node(&mut self, kind: NodeKind, vertex: VertexRef) -> usize {
        let witness = self.polygon.vertex(vertex);
        self.nodes.push(ReebNode {
            kind,
            height: self.v.height(witness),
            witness,
            vertex,
        });
        self.nodes.len() - 1
    }

    fn close_arc(&mut self, arc: Option<usize>, node: usize) {
        let start = arc.expect("left boundaries carry an arc");
        self.edges.push((start, node));
    }

    fn visit(&mut self, vertex: VertexRef) {
        let ring = &self.polygon.rings()[vertex.ring];
        let prev = VertexRef::new(vertex.ring, ring.prev_index(vertex.index));
        let next = VertexRef::new(vertex.ring, ring.next_index(vertex.index));
        let me = self.rank[self.global(vertex)];
        let prev_above = self.rank[self.global(prev)] > me;
        let next_above = self.rank[self.global(next)] > me;
        let incoming = self.global(prev); // edge prev -> vertex
        let outgoing = self.global(vertex); // edge vertex -> next
        let reflex = is_reflex(self.polygon, vertex).expect("vertex of the polygon");

        // With the interior on the left of each ring, an edge is the left
        // boundary of its interval iff it runs downward.
        match (prev_above, next_above, reflex) {
            (true, true, false) => {
                let leaf = self.node(NodeKind::Leaf, vertex);
                let key_in = self.edge_from(prev);
                let key_out = self.edge_from(vertex);
                self.insert(key_in, Some(leaf));
                self.insert(key_out, None);
            }
            (true, true, true) => {
                let probe = ActiveEdge::probe(self.polygon.vertex(vertex), me);
                let (left, arc) = self.left_neighbor(&probe);
                let branch = self.node(NodeKind::Branch, vertex);
                self.close_arc(arc, branch);
                self.set_arc(left, Some(branch));
                let key_in = self.edge_from(prev);
                let key_out = self.edge_from(vertex);
                self.insert(key_out, None);
                self.insert(key_in, Some(branch));
            }
            (false, false, false) => {
                let leaf = self.node(NodeKind::Leaf, vertex);
                let arc = self.remove(outgoing);
                self.close_arc(arc, leaf);
                self.remove(incoming);
            }
            (false, false, true) => {
                let key_in = self.keys[incoming].expect("edge is active");
                let (left, left_arc) = self.left_neighbor(&key_in);
                let branch = self.node(NodeKind::Branch, vertex);
                self.close_arc(left_arc, branch);
                let right_arc = self.remove(outgoing);
                self.close_arc(right_arc, branch);
                self.remove(incoming);
                self.set_arc(left, Some(branch));
            }
            (false, true, _) => {
                let arc = self.remove(incoming);
                let key = self.edge_from(vertex);
                self.insert(key, arc);
            }
            (true, false, _) => {
                let arc = self.remove(outgoing);
                let key = self.edge_from(prev);
                self.insert(key, arc);
            }
        }
    }
}

/// Builds the Reeb graph of the parallel ruling orthogonal to `v`.
pub fn reeb_graph(polygon: &Polygon, v: &Direction) -> Result<ReebGraph, ReebError> {
    let order = height_order(polygon, v)?;
    let mut offsets = Vec::with_capacity(polygon.rings().len());
    let mut total = 0;
    for ring in polygon.rings() {
        offsets.push(total);
        total += ring.len();
    }
    let mut sweep = Sweep {
        polygon,
        offsets,
        rank: vec![0; total],
        status: BTreeMap::new(),
        keys: vec![None; total],
        nodes: Vec::new(),
        edges: Vec::new(),
        v: *v,
    };
    for (rank, &vertex) in order.iter().enumerate() {
        let g = sweep.global(vertex);
        sweep.rank[g] = rank;
    }
    for &vertex in &order {
        sweep.visit(vertex);
    }
    debug_assert!(sweep.status.is_empty());

    let leaves = sweep
        .nodes
        .iter()
        .filter(|n| n.kind == NodeKind::Leaf)
        .count();
    let branches = sweep.nodes.len() - leaves;
    Ok(ReebGraph {
        direction: *v,
        nodes: sweep.nodes,
        edges: sweep.edges,
        leaves,
        branches,
        holes: polygon.h(),
        morse: true,
    })
}

/// Reflex vertices whose cone does not contain `v`.
pub fn branch_witnesses(
    polygon: &Polygon,
    v: &Direction,
) -> Result<BTreeSet<VertexRef>, ReebError> {
    height_order(polygon, v)?;
    Ok(polygon
        .vertex_refs()
        .filter(|&p| is_reflex(polygon, p).expect("vertex of the polygon"))
        .filter(|&p| !cone_contains(&cone_of(polygon, p).expect("reflex"), v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coords: &[(f64, f64)]) -> Polygon {
        Polygon::new(
            coords.iter().map(|&(x, y)| Point::new(x, y)).collect(),
            vec![],
        )
        .unwrap()
    }

    fn d(x: f64, y: f64) -> Direction {
        Direction::new(x, y).unwrap()
    }

    fn square(lo: f64, hi: f64) -> Vec<Point> {
        vec![
            Point::new(lo, lo),
            Point::new(hi, lo),
            Point::new(hi, hi),
            Point::new(lo, hi),
        ]
    }

    fn check_structure(g: &ReebGraph) {
        assert!(g.is_connected());
        assert_eq!(g.cycle_rank(), g.holes as i64);
        for (i, n) in g.nodes.iter().enumerate() {
            match n.kind {
                NodeKind::Leaf => assert_eq!(g.degree(i), 1),
                NodeKind::Branch => assert_eq!(g.degree(i), 3),
            }
        }
        assert_eq!(g.leaves as i64, g.branches as i64 + 2 - 2 * g.holes as i64);
    }

    #[test]
    fn unit_square_is_a_path() {
        let p = Polygon::new(square(0.0, 1.0), vec![]).unwrap();
        let g = reeb_graph(&p, &d(0.3, 1.0)).unwrap();
        assert_eq!((g.leaves, g.branches), (2, 0));
        assert_eq!(g.edges, vec![(0, 1)]);
        check_structure(&g);
    }

    #[test]
    fn l_polygon_diagonal() {
        let p = poly(&[
            (0.0, 0.0),
            (2.0, 0.0),
            (2.0, 1.0),
            (1.0, 1.0),
            (1.0, 2.0),
            (0.0, 2.0),
        ]);
        let v = d(1.0, 1.0);
        assert!(!is_generic(&p, &v));
        assert!(matches!(
            reeb_graph(&p, &v),
            Err(ReebError::NonGeneric { .. })
        ));
        // Slightly tilted off (1,1): heights 0 < {2,2,2} < {3,3} break ties
        // without changing which vertices are critical.
        let v = d(1.0, 1.001);
        let g = reeb_graph(&p, &v).unwrap();
        assert_eq!((g.leaves, g.branches), (3, 1));
        let leaf_points: Vec<Point> = g
            .nodes
            .iter()
            .filter(|n| n.kind == NodeKind::Leaf)
            .map(|n| n.witness)
            .collect();
        assert!(leaf_points.contains(&Point::new(0.0, 0.0)));
        assert!(leaf_points.contains(&Point::new(2.0, 1.0)));
        assert!(leaf_points.contains(&Point::new(1.0, 2.0)));
        assert_eq!(g.branch_vertices(), BTreeSet::from([VertexRef::new(0, 3)]));
        check_structure(&g);
    }

    #[test]
    fn l_polygon_branch_witnesses() {
        let p = poly(&[
            (0.0, 0.0),
            (2.0, 0.0),
            (2.0, 1.0),
            (1.0, 1.0),
            (1.0, 2.0),
            (0.0, 2.0),
        ]);
        assert_eq!(
            branch_witnesses(&p, &d(1.0, 1.001)).unwrap(),
            BTreeSet::from([VertexRef::new(0, 3)])
        );
        assert!(branch_witnesses(&p, &d(1.0, -1.001)).unwrap().is_empty());
        let g = reeb_graph(&p, &d(1.0, -1.001)).unwrap();
        assert_eq!((g.leaves, g.branches), (2, 0));
    }

    #[test]
    fn annulus_diagonal() {
        let p = Polygon::new(square(0.0, 4.0), vec![square(1.5, 2.5)]).unwrap();
        let g = reeb_graph(&p, &d(1.0, 1.1)).unwrap();
        assert_eq!((g.leaves, g.branches, g.holes), (2, 2, 1));
        assert_eq!(g.cycle_rank(), 1);
        check_structure(&g);
    }

    #[test]
    fn genericity_examples() {
        let p = Polygon::new(square(0.0, 1.0), vec![]).unwrap();
        assert!(!is_generic(&p, &d(0.0, 1.0)));
        assert!(is_generic(&p, &d(0.3, 1.0)));
        assert_eq!(
            reeb_graph(&p, &d(0.0, 1.0)).unwrap_err(),
            ReebError::NonGeneric {
                first: VertexRef::new(0, 0),
                second: VertexRef::new(0, 1)
            }
        );
    }

    #[test]
    fn two_holes_side_by_side() {
        let hole = |x0: f64| {
            vec![
                Point::new(x0, 1.0),
                Point::new(x0 + 1.0, 1.2),
                Point::new(x0 + 0.6, 2.0),
            ]
        };
        let outer = vec![
            Point::new(0.0, 0.0),
            Point::new(6.0, 0.0),
            Point::new(6.0, 3.0),
            Point::new(0.0, 3.0),
        ];
        let p = Polygon::new(outer, vec![hole(1.0), hole(3.5)]).unwrap();
        for v in [d(0.1, 1.0), d(1.0, 0.13), d(-0.7, 1.0), d(1.0, -0.31)] {
            let g = reeb_graph(&p, &v).unwrap();
            check_structure(&g);
            assert_eq!(g.cycle_rank(), 2);
            assert_eq!(g.branch_vertices(), branch_witnesses(&p, &v).unwrap());
        }
    }

    #[test]
    fn leaves_are_convex_vertices() {
        let p = poly(&[
            (0.0, 0.0),
            (3.0, 0.0),
            (3.0, 2.0),
            (2.0, 1.0),
            (1.5, 2.5),
            (1.0, 1.0),
            (0.0, 2.0),
        ]);
        let g = reeb_graph(&p, &d(0.05, 1.0)).unwrap();
        for n in g.nodes.iter().filter(|n| n.kind == NodeKind::Leaf) {
            assert!(!is_reflex(&p, n.vertex).unwrap());
        }
        check_structure(&g);
    }
}
