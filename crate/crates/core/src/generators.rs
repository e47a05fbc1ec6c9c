//! Polygon families with known or bounded complexity.

use std::f64::consts::PI;

use thiserror::Error;

use crate::geometry::{Point, Polygon, PolygonError};

/// Decimal digits kept by trigonometric generators.
pub const COORD_DECIMALS: usize = 12;

#[derive(Debug, Error, PartialEq)]
pub enum GeneratorError {
    #[error("spike count {0} is below 7")]
    SpikeCount(usize),
    #[error("radii must satisfy r1 > r2 > 0, got r1={r1}, r2={r2}")]
    Radii { r1: f64, r2: f64 },
    #[error("comb needs at least 2 teeth, got {0}")]
    Teeth(usize),
    #[error("sides must satisfy 0 < hole < outer, got outer={outer}, hole={hole}")]
    Sides { outer: f64, hole: f64 },
    #[error("a polygon needs at least 3 vertices, got {0}")]
    VertexCount(usize),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
}

/// Rounds to [`COORD_DECIMALS`] places through the decimal text, so the
/// value survives a write/read cycle unchanged.
pub fn round_coord(x: f64) -> f64 {
    let r: f64 = format!("{:.*}", COORD_DECIMALS, x)
        .parse()
        .expect("formatted float");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn rounded(x: f64, y: f64) -> Point {
    Point::new(round_coord(x), round_coord(y))
}

/// Star-shaped polygon on two concentric circles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyParams {
    pub n: usize,
    pub r1: f64,
    pub r2: f64,
}

impl FamilyParams {
    pub fn new(n: usize) -> Self {
        FamilyParams {
            n,
            r1: 4.0,
            r2: 1.0,
        }
    }

    pub fn validate(&self) -> Result<(), GeneratorError> {
        if self.n < 7 {
            return Err(GeneratorError::SpikeCount(self.n));
        }
        if !(self.r2 > 0.0 && self.r1 > self.r2 && self.r1.is_finite()) {
            return Err(GeneratorError::Radii {
                r1: self.r1,
                r2: self.r2,
            });
        }
        Ok(())
    }
}

impl Default for FamilyParams {
    fn default() -> Self {
        FamilyParams::new(7)
    }
}

/// `n` spikes: outer vertex `i` at angle `2πi/n` on radius `r1`, inner
/// vertex `i` at `(2i+1)π/n` on radius `r2`, angles measured clockwise from
/// the positive y axis. All inner vertices are reflex.
pub fn lower_bound_polygon(params: FamilyParams) -> Result<Polygon, GeneratorError> {
    params.validate()?;
    let n = params.n as f64;
    let mut ring = Vec::with_capacity(2 * params.n);
    for i in 0..params.n {
        let theta = 2.0 * PI * i as f64 / n;
        let phi = (2 * i + 1) as f64 * PI / n;
        ring.push(rounded(params.r1 * theta.sin(), params.r1 * theta.cos()));
        ring.push(rounded(params.r2 * phi.sin(), params.r2 * phi.cos()));
    }
    // the placement runs clockwise
    ring.reverse();
    Ok(Polygon::new(ring, vec![])?)
}

/// Strip with `teeth` triangular prongs on top and on the bottom.
///
/// Each of the `2(teeth - 1)` notches is reflex. Sweeping along `(0, 1)`
/// every notch is a branch and every prong tip a leaf, `2 * teeth` leaves in
/// all; along `(1, 0)` no notch is critical and only the two ends are leaves.
/// Coordinates are nudged so both axis directions are generic.
pub fn comb_polygon(teeth: usize) -> Result<Polygon, GeneratorError> {
    if teeth < 2 {
        return Err(GeneratorError::Teeth(teeth));
    }
    let t = teeth as f64;
    let mut base = Vec::with_capacity(4 * teeth + 2);
    base.push((0.0, 1.0));
    for i in 0..teeth {
        base.push((i as f64 + 0.5, 0.0));
        base.push((i as f64 + 1.0, 1.0));
    }
    base.push((t, 2.0));
    for i in (0..teeth).rev() {
        base.push((i as f64 + 0.5, 3.0));
        base.push((i as f64, 2.0));
    }
    let count = base.len() as f64;
    let ring = base
        .iter()
        .enumerate()
        .map(|(j, &(x, y))| {
            let nudge = 0.1 * j as f64 / count;
            rounded(x + nudge, y + 0.7 * nudge)
        })
        .collect();
    Ok(Polygon::new(ring, vec![])?)
}

/// Square `[0, outer]^2` with a centered square hole.
pub fn annulus_polygon(outer_side: f64, hole_side: f64) -> Result<Polygon, GeneratorError> {
    if !(hole_side > 0.0 && outer_side > hole_side && outer_side.is_finite()) {
        return Err(GeneratorError::Sides {
            outer: outer_side,
            hole: hole_side,
        });
    }
    let square = |lo: f64, hi: f64| {
        vec![
            Point::new(lo, lo),
            Point::new(hi, lo),
            Point::new(hi, hi),
            Point::new(lo, hi),
        ]
    };
    let lo = (outer_side - hole_side) / 2.0;
    Ok(Polygon::new(
        square(0.0, outer_side),
        vec![square(lo, lo + hole_side)],
    )?)
}

/// Regular `n`-gon on the unit circle.
pub fn regular_polygon(n: usize) -> Result<Polygon, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::VertexCount(n));
    }
    let ring = (0..n)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / n as f64;
            rounded(t.cos(), t.sin())
        })
        .collect();
    Ok(Polygon::new(ring, vec![])?)
}
