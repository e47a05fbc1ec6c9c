use std::cmp::Ordering;

use proptest::prelude::*;
use reeb_ruling::oracle::random_simple_polygon_retrying;
use reeb_ruling::{
    annulus_polygon, branch_witnesses, comb_polygon, is_generic, lower_bound_polygon, reeb_graph,
    reflex_vertices, Direction, FamilyParams, NodeKind, Point, Polygon, ReebError, ReebGraph,
};

fn direction(angle: f64) -> Direction {
    Direction::new(angle.cos(), angle.sin()).unwrap()
}

fn two_holes() -> Polygon {
    let rect = |x0: f64, y0: f64, x1: f64, y1: f64| {
        vec![
            Point::new(x0, y0),
            Point::new(x1, y0),
            Point::new(x1, y1),
            Point::new(x0, y1),
        ]
    };
    Polygon::new(
        rect(0.0, 0.0, 10.0, 4.0),
        vec![rect(1.0, 1.0, 3.0, 3.0), rect(6.0, 1.5, 8.5, 2.5)],
    )
    .unwrap()
}

fn check_graph(p: &Polygon, g: &ReebGraph) {
    let (n, h, k) = (p.n() as i64, p.h() as i64, reflex_vertices(p).len() as i64);
    let (l, b) = (g.leaves as i64, g.branches as i64);
    assert!(g.morse);
    assert_eq!(l, b + 2 - 2 * h, "Euler relation");
    assert_eq!(g.cycle_rank(), h);
    assert!(g.is_connected());
    assert!(b <= n / 2 - 1 + h, "b={b} n={n} h={h}");
    assert!(l <= k + 2 - 2 * h);
    for (i, node) in g.nodes.iter().enumerate() {
        match node.kind {
            NodeKind::Leaf => {
                assert_eq!(g.degree(i), 1);
                // no reflex vertex at a leaf
                assert!(!reflex_vertices(p).contains(&node.vertex));
            }
            NodeKind::Branch => assert_eq!(g.degree(i), 3),
        }
    }
}

fn suite() -> Vec<Polygon> {
    let mut polys = vec![
        annulus_polygon(4.0, 1.0).unwrap(),
        two_holes(),
        comb_polygon(4).unwrap(),
        lower_bound_polygon(FamilyParams::new(7)).unwrap(),
        lower_bound_polygon(FamilyParams::new(12)).unwrap(),
    ];
    polys
        .extend((0..10).map(|s| random_simple_polygon_retrying(8 + s as usize, 1000 + s).unwrap()));
    polys
}

#[test]
fn euler_relation_on_fixed_suite() {
    for p in suite() {
        for i in 0..64 {
            let v = direction(0.0123 + i as f64 * std::f64::consts::PI / 64.0);
            if !is_generic(&p, &v) {
                continue;
            }
            check_graph(&p, &reeb_graph(&p, &v).unwrap());
        }
    }
}

#[test]
fn non_generic_direction_is_refused() {
    let p = annulus_polygon(4.0, 1.0).unwrap();
    let err = reeb_graph(&p, &Direction::new(0.0, 1.0).unwrap()).unwrap_err();
    assert!(matches!(err, ReebError::NonGeneric { .. }));
    assert!(branch_witnesses(&p, &Direction::new(1.0, 0.0).unwrap()).is_err());
}

#[test]
fn is_generic_matches_pairwise_heights() {
    let p = lower_bound_polygon(FamilyParams::new(7)).unwrap();
    let pts: Vec<Point> = p.vertex_refs().map(|v| p.vertex(v)).collect();
    let brute = |v: &Direction| {
        (0..pts.len())
            .all(|i| (i + 1..pts.len()).all(|j| v.height_cmp(pts[i], pts[j]) != Ordering::Equal))
    };
    let mut dirs = vec![
        Direction::new(0.0, 1.0).unwrap(),
        Direction::new(1.0, 0.0).unwrap(),
    ];
    dirs.extend((0..50).map(|i| direction(i as f64 * 0.0629)));
    for pair in [(0, 1), (2, 9), (5, 6)] {
        // directions orthogonal to a vertex pair are never generic
        let d = Direction::between(pts[pair.0], pts[pair.1])
            .unwrap()
            .rotated_ccw();
        assert!(!is_generic(&p, &d));
        dirs.push(d);
    }
    for v in &dirs {
        assert_eq!(is_generic(&p, v), brute(v), "{v}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_polygon_graphs(n in 3usize..30, seed in 0u64..10_000, angle in 0.0f64..std::f64::consts::PI) {
        let p = random_simple_polygon_retrying(n, seed).unwrap();
        let v = direction(angle);
        prop_assume!(is_generic(&p, &v));
        let g = reeb_graph(&p, &v).unwrap();
        check_graph(&p, &g);
        prop_assert_eq!(branch_witnesses(&p, &v).unwrap(), g.branch_vertices());
    }

    #[test]
    fn reversed_direction_same_graph_shape(n in 3usize..20, seed in 0u64..10_000, angle in 0.0f64..std::f64::consts::PI) {
        let p = random_simple_polygon_retrying(n, seed).unwrap();
        let v = direction(angle);
        prop_assume!(is_generic(&p, &v));
        let up = reeb_graph(&p, &v).unwrap();
        let down = reeb_graph(&p, &v.reversed()).unwrap();
        prop_assert_eq!((up.leaves, up.branches), (down.leaves, down.branches));
        prop_assert_eq!(up.branch_vertices(), down.branch_vertices());
    }
}
