//! Reeb complexity of polygons with holes under parallel rulings.
//!
//! A direction `v` sweeps a line orthogonal to it across the polygon; the
//! Reeb graph of the height function `<v, x>` has a leaf for every local
//! extremum and a branch node for every reflex vertex whose double cone does
//! not contain `v`. [`parallel_reeb_complexity`] finds the direction with the
//! fewest leaves by a rotational sweep over those cones.

pub mod export;
pub mod generators;
pub mod geometry;
pub mod oracle;
pub mod predicates;
pub mod reeb;
pub mod sweep;

pub use export::{to_json, ReebExport};
pub use generators::{
    annulus_polygon, comb_polygon, lower_bound_polygon, regular_polygon, FamilyParams,
    GeneratorError,
};
pub use geometry::{
    cone_contains, cone_of, is_reflex, load_polygon, reflex_cones, reflex_vertices, Direction,
    DoubleCone, GeometryError, Point, Polygon, PolygonError, Ring, VertexRef,
};
pub use oracle::{
    brute_force_complexity, random_simple_polygon, EventPartition, OracleError, OracleResult,
};
pub use reeb::{
    branch_witnesses, is_generic, reeb_graph, NodeKind, ReebError, ReebGraph, ReebNode,
};
pub use sweep::{
    max_cone_coverage, parallel_reeb_complexity, ComplexityResult, ConeCoverage, OpenArc,
};
