//! Static SVG of a polygon with optional cones, ruling lines and Reeb graph.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use reeb_ruling::{reeb_graph, reflex_cones, Direction, NodeKind, Point, Polygon, ReebError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error(transparent)]
    Reeb(#[from] ReebError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("ruling lines and the Reeb graph need a direction")]
    NoDirection,
}

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub polygon: Polygon,
    pub direction: Option<Direction>,
    pub show_cones: bool,
    pub show_ruling: bool,
    pub ruling_line_count: usize,
    pub show_reeb: bool,
    pub output_path: PathBuf,
}

const POLY_FILL: &str = "#dce9f5";
const POLY_STROKE: &str = "#1f4e79";
const CONE_FILL: &str = "#f0a030";
const RULING: &str = "#6a6a6a";
const LEAF: &str = "#2a9d3a";
const BRANCH: &str = "#c0392b";

/// Fixed-precision number, trailing zeros trimmed.
fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Maps polygon coordinates to SVG user units with y pointing up.
struct Frame {
    flip: f64,
}

impl Frame {
    fn pt(&self, x: f64, y: f64) -> String {
        format!("{} {}", num(x), num(self.flip - y))
    }
}

fn ring_path(frame: &Frame, ring: &[Point]) -> String {
    let mut d = String::new();
    for (i, p) in ring.iter().enumerate() {
        let _ = write!(
            d,
            "{}{} ",
            if i == 0 { "M" } else { "L" },
            frame.pt(p.x, p.y)
        );
    }
    d.push('Z');
    d
}

fn cone_wedges(frame: &Frame, polygon: &Polygon, radius: f64) -> String {
    let mut out = String::new();
    for cone in reflex_cones(polygon) {
        let apex = cone.apex();
        let (start, end) = cone.interval_degrees();
        for flip in [0.0, 180.0] {
            let mut d = format!("M{} ", frame.pt(apex.x, apex.y));
            for s in 0..=16 {
                let t = (start + flip + (end - start) * s as f64 / 16.0).to_radians();
                let _ = write!(
                    d,
                    "L{} ",
                    frame.pt(apex.x + radius * t.cos(), apex.y + radius * t.sin())
                );
            }
            d.push('Z');
            let _ = writeln!(
                out,
                r#"<path class="cone" d="{d}" fill="{CONE_FILL}" fill-opacity="0.45" stroke="none"/>"#
            );
        }
    }
    out
}

/// Segments of the line `<u, x> = t` inside the polygon, for unit `u`.
fn clipped_line(polygon: &Polygon, u: (f64, f64), t: f64) -> Vec<(Point, Point)> {
    let w = (-u.1, u.0);
    let mut hits: Vec<(f64, Point)> = Vec::new();
    for ring in polygon.rings() {
        for (a, b) in ring.edges() {
            let (ha, hb) = (u.0 * a.x + u.1 * a.y, u.0 * b.x + u.1 * b.y);
            // half-open so a vertex on the line counts once per side change
            if (ha < t) != (hb < t) {
                let s = (t - ha) / (hb - ha);
                let q = Point::new(a.x + s * (b.x - a.x), a.y + s * (b.y - a.y));
                hits.push((w.0 * q.x + w.1 * q.y, q));
            }
        }
    }
    hits.sort_by(|a, b| a.0.total_cmp(&b.0));
    hits.chunks_exact(2).map(|c| (c[0].1, c[1].1)).collect()
}

/// The SVG document as text.
pub fn render_svg(spec: &RenderSpec) -> Result<String, RenderError> {
    let p = &spec.polygon;
    let (lo, hi) = p.bounds();
    let size = (hi.x - lo.x).max(hi.y - lo.y);
    let margin = 0.1 * size;
    let stroke = 0.004 * size;
    let frame = Frame { flip: lo.y + hi.y };
    let needs_direction = (spec.show_ruling && spec.ruling_line_count > 0) || spec.show_reeb;
    let direction = match spec.direction {
        Some(d) => Some(d),
        None if needs_direction => return Err(RenderError::NoDirection),
        None => None,
    };
    let graph = match (spec.show_reeb, direction) {
        (true, Some(d)) => Some(reeb_graph(p, &d)?),
        _ => None,
    };
    let panel = 0.6 * size;
    let panel_x = hi.x + margin;
    let width = hi.x - lo.x + 2.0 * margin + if graph.is_some() { panel + margin } else { 0.0 };
    let height = hi.y - lo.y + 2.0 * margin;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        num(lo.x - margin),
        num(lo.y - margin),
        num(width),
        num(height)
    );
    let d: Vec<String> = p
        .rings()
        .iter()
        .map(|r| ring_path(&frame, r.vertices()))
        .collect();
    let _ = writeln!(
        svg,
        r#"<path class="polygon" d="{}" fill="{POLY_FILL}" fill-rule="evenodd" stroke="{POLY_STROKE}" stroke-width="{}"/>"#,
        d.join(" "),
        num(stroke)
    );
    if spec.show_cones {
        svg.push_str(&cone_wedges(&frame, p, 0.08 * size));
    }
    if let (true, Some(v)) = (spec.show_ruling, direction) {
        let u = v.unit();
        let heights = p.vertex_refs().map(|r| {
            let q = p.vertex(r);
            u.0 * q.x + u.1 * q.y
        });
        let (hmin, hmax) = heights.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), h| {
            (a.min(h), b.max(h))
        });
        let count = spec.ruling_line_count;
        for i in 1..=count {
            let t = hmin + (hmax - hmin) * i as f64 / (count + 1) as f64;
            for (a, b) in clipped_line(p, u, t) {
                let (a, b) = (frame.pt(a.x, a.y), frame.pt(b.x, b.y));
                let _ = writeln!(
                    svg,
                    r#"<path class="ruling" d="M{a} L{b}" stroke="{RULING}" stroke-width="{}"/>"#,
                    num(stroke * 0.6)
                );
            }
        }
    }
    if let Some(g) = graph {
        // node height on the vertical axis, offset along the level line horizontally
        let u = g.direction.unit();
        let w = (-u.1, u.0);
        let along: Vec<f64> = g
            .nodes
            .iter()
            .map(|n| w.0 * n.witness.x + w.1 * n.witness.y)
            .collect();
        let (amin, amax) = along
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| {
                (a.min(x), b.max(x))
            });
        let hs: Vec<f64> = g
            .nodes
            .iter()
            .map(|n| u.0 * n.witness.x + u.1 * n.witness.y)
            .collect();
        let (hmin, hmax) = hs
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| {
                (a.min(x), b.max(x))
            });
        let scale = |x: f64, lo: f64, hi: f64| if hi > lo { (x - lo) / (hi - lo) } else { 0.5 };
        let pos: Vec<(f64, f64)> = (0..g.nodes.len())
            .map(|i| {
                (
                    panel_x + panel * scale(along[i], amin, amax),
                    lo.y + (hi.y - lo.y) * scale(hs[i], hmin, hmax),
                )
            })
            .collect();
        let _ = writeln!(svg, r#"<g class="reeb">"#);
        // parallel arcs (around a hole) bow out to either side
        let mut multiplicity: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for &e in &g.edges {
            multiplicity.entry(e).or_default().0 += 1;
        }
        for &(a, b) in &g.edges {
            let slot = multiplicity.get_mut(&(a, b)).expect("counted");
            let offset = (slot.1 as f64 - (slot.0 - 1) as f64 / 2.0) * 0.15 * panel;
            slot.1 += 1;
            let (mx, my) = ((pos[a].0 + pos[b].0) / 2.0, (pos[a].1 + pos[b].1) / 2.0);
            let (dx, dy) = (pos[b].0 - pos[a].0, pos[b].1 - pos[a].1);
            let len = dx.hypot(dy).max(f64::MIN_POSITIVE);
            let _ = writeln!(
                svg,
                r#"<path class="arc" d="M{} Q{} {}" fill="none" stroke="{POLY_STROKE}" stroke-width="{}"/>"#,
                frame.pt(pos[a].0, pos[a].1),
                frame.pt(mx - offset * dy / len, my + offset * dx / len),
                frame.pt(pos[b].0, pos[b].1),
                num(stroke)
            );
        }
        let r = 0.02 * size;
        for (node, &(x, y)) in g.nodes.iter().zip(&pos) {
            let y = frame.flip - y;
            match node.kind {
                NodeKind::Leaf => {
                    let _ = writeln!(
                        svg,
                        r#"<circle class="leaf" cx="{}" cy="{}" r="{}" fill="{LEAF}"/>"#,
                        num(x),
                        num(y),
                        num(r)
                    );
                }
                NodeKind::Branch => {
                    let _ = writeln!(
                        svg,
                        r#"<rect class="branch" x="{}" y="{}" width="{}" height="{}" fill="{BRANCH}"/>"#,
                        num(x - r),
                        num(y - r),
                        num(2.0 * r),
                        num(2.0 * r)
                    );
                }
            }
        }
        let _ = writeln!(svg, "</g>");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Renders and writes to `spec.output_path`.
pub fn write_svg(spec: &RenderSpec) -> Result<(), RenderError> {
    let text = render_svg(spec)?;
    std::fs::write(&spec.output_path, text).map_err(|source| RenderError::Io {
        path: spec.output_path.clone(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(points: &[(f64, f64)]) -> RenderSpec {
        RenderSpec {
            polygon: Polygon::new(
                points.iter().map(|&(x, y)| Point::new(x, y)).collect(),
                vec![],
            )
            .unwrap(),
            direction: None,
            show_cones: false,
            show_ruling: false,
            ruling_line_count: 0,
            show_reeb: false,
            output_path: PathBuf::from("unused.svg"),
        }
    }

    const SQUARE: [(f64, f64); 4] = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
    const L: [(f64, f64); 6] = [
        (0.0, 0.0),
        (2.0, 0.0),
        (2.0, 1.0),
        (1.0, 1.0),
        (1.0, 2.0),
        (0.0, 2.0),
    ];

    #[test]
    fn square_plain() {
        let svg = render_svg(&spec(&SQUARE)).unwrap();
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains(r#"viewBox="-0.1 -0.1 1.2 1.2""#));
        assert!(svg.contains("M0 1 L1 1 L1 0 L0 0 Z"));
        assert!(svg.contains("evenodd"));
    }

    #[test]
    fn l_cones() {
        let mut s = spec(&L);
        s.show_cones = true;
        let svg = render_svg(&s).unwrap();
        assert_eq!(svg.matches(r#"class="cone""#).count(), 2);
        // wedge from (1,1) starting along (0,1) in the flipped frame
        assert!(svg.contains("M1 1 L1 0.84"));
    }

    #[test]
    fn ruling_lines_are_clipped() {
        let mut s = spec(&L);
        s.direction = Some(Direction::new(0.0, 1.0).unwrap());
        s.show_ruling = true;
        s.ruling_line_count = 3;
        let svg = render_svg(&s).unwrap();
        assert_eq!(svg.matches(r#"class="ruling""#).count(), 3);
        // the line y = 1.5 stops at the notch
        assert!(svg.contains("M1 0.5 L0 0.5"));
        let segments = clipped_line(&s.polygon, (0.0, 1.0), 1.0);
        assert_eq!(segments.len(), 1);
    }

    #[test]
    fn hole_splits_ruling() {
        let sq = |lo: f64, hi: f64| {
            vec![
                Point::new(lo, lo),
                Point::new(hi, lo),
                Point::new(hi, hi),
                Point::new(lo, hi),
            ]
        };
        let p = Polygon::new(sq(0.0, 4.0), vec![sq(1.0, 3.0)]).unwrap();
        assert_eq!(clipped_line(&p, (0.0, 1.0), 2.0).len(), 2);
    }

    #[test]
    fn reeb_panel() {
        let mut s = spec(&L);
        s.direction = Some(Direction::new(1.0, 1.001).unwrap());
        s.show_reeb = true;
        let svg = render_svg(&s).unwrap();
        assert_eq!(svg.matches(r#"class="leaf""#).count(), 3);
        assert_eq!(svg.matches(r#"class="branch""#).count(), 1);
        s.direction = Some(Direction::new(1.0, 1.0).unwrap());
        assert!(matches!(render_svg(&s), Err(RenderError::Reeb(_))));
        s.direction = None;
        assert!(matches!(render_svg(&s), Err(RenderError::NoDirection)));
    }
}
