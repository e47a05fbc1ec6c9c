//! Exact sign predicates on `f64` input.
//!
//! Every predicate here is a degree-two polynomial in the input coordinates:
//! the cross or dot product of two difference vectors `(b - a)` and `(d - c)`.
//! They are evaluated with a floating-point filter first; when the filter
//! cannot certify the sign, the polynomial is re-evaluated exactly over
//! dyadic rationals (every finite `f64` is one), so the returned sign is
//! always the sign of the real-number result on the given floats.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::geometry::Point;

const EPSILON: f64 = f64::EPSILON / 2.0;
// Same operation structure as Shewchuk's orient2d stage A (two rounded
// differences per factor, one product each, one final subtraction).
const ERRBOUND: f64 = (3.0 + 16.0 * EPSILON) * EPSILON;
// Below this the products may be subnormal and the relative bound is void.
const UNDERFLOW_GUARD: f64 = 1e-280;

/// A vector given exactly as the difference `to - from` of two float points.
///
/// The difference is never rounded: predicates consume both endpoints.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Span {
    pub from: Point,
    pub to: Point,
}

impl Span {
    pub fn new(from: Point, to: Point) -> Self {
        Span { from, to }
    }

    pub fn approx(&self) -> (f64, f64) {
        (self.to.x - self.from.x, self.to.y - self.from.y)
    }

    /// Sign of the x component, exact.
    pub fn sign_x(&self) -> Ordering {
        self.to
            .x
            .partial_cmp(&self.from.x)
            .unwrap_or(Ordering::Equal)
    }

    /// Sign of the y component, exact.
    pub fn sign_y(&self) -> Ordering {
        self.to
            .y
            .partial_cmp(&self.from.y)
            .unwrap_or(Ordering::Equal)
    }

    pub fn negated(&self) -> Self {
        Span::new(self.to, self.from)
    }

    /// Rotation by +90 degrees. Exact: coordinates are only swapped and negated.
    pub fn rotated_ccw(&self) -> Self {
        let r = |p: Point| Point::new(-p.y, p.x);
        Span::new(r(self.from), r(self.to))
    }

    /// Rotation by -90 degrees.
    pub fn rotated_cw(&self) -> Self {
        let r = |p: Point| Point::new(p.y, -p.x);
        Span::new(r(self.from), r(self.to))
    }
}

/// Sign of `cross(u, w) = u.x * w.y - u.y * w.x`.
pub(crate) fn cross(u: &Span, w: &Span) -> Ordering {
    let (ux, uy) = u.approx();
    let (wx, wy) = w.approx();
    let left = ux * wy;
    let right = uy * wx;
    if let Some(sign) = filtered(left, right) {
        return sign;
    }
    // ux*wy - uy*wx
    let (ex, ey) = exact_components(u);
    let (fx, fy) = exact_components(w);
    (&ex * &fy - &ey * &fx).sign()
}

/// Sign of `dot(u, w) = u.x * w.x + u.y * w.y`.
pub(crate) fn dot(u: &Span, w: &Span) -> Ordering {
    let (ux, uy) = u.approx();
    let (wx, wy) = w.approx();
    let left = ux * wx;
    let right = -(uy * wy);
    if let Some(sign) = filtered(left, right) {
        return sign;
    }
    let (ex, ey) = exact_components(u);
    let (fx, fy) = exact_components(w);
    (&ex * &fx + &ey * &fy).sign()
}

/// Orientation of the triangle `(a, b, c)`: `Greater` when counterclockwise.
/// Knuth's error-free sum: `hi + lo == a + b` exactly, `hi = fl(a + b)`.
pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let hi = a + b;
    let bv = hi - a;
    let av = hi - bv;
    (hi, (a - av) + (b - bv))
}

pub fn orient(a: Point, b: Point, c: Point) -> Ordering {
    cross(&Span::new(a, b), &Span::new(a, c))
}

/// Sign of `left - right` when the rounding error of both products and the
/// subtraction provably cannot flip it.
fn filtered(left: f64, right: f64) -> Option<Ordering> {
    let det = left - right;
    let magnitude = left.abs() + right.abs();
    if !det.is_finite() || !magnitude.is_finite() || magnitude < UNDERFLOW_GUARD {
        return None;
    }
    let bound = ERRBOUND * magnitude;
    if det > bound {
        Some(Ordering::Greater)
    } else if -det > bound {
        Some(Ordering::Less)
    } else {
        None
    }
}

fn exact_components(s: &Span) -> (Dyadic, Dyadic) {
    (
        Dyadic::from_f64(s.to.x) - Dyadic::from_f64(s.from.x),
        Dyadic::from_f64(s.to.y) - Dyadic::from_f64(s.from.y),
    )
}

/// `mantissa * 2^exponent`, exact.
#[derive(Clone, Debug)]
pub(crate) struct Dyadic {
    mantissa: BigInt,
    exponent: i32,
}

impl Dyadic {
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "exact arithmetic on a non-finite value");
        if x == 0.0 {
            return Dyadic {
                mantissa: BigInt::zero(),
                exponent: 0,
            };
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i32;
        let fraction = bits & ((1u64 << 52) - 1);
        let (mantissa, exponent) = if biased == 0 {
            (fraction, -1074)
        } else {
            (fraction | (1u64 << 52), biased - 1075)
        };
        let mantissa = BigInt::from(mantissa);
        Dyadic {
            mantissa: if negative { -mantissa } else { mantissa },
            exponent,
        }
    }

    pub fn sign(&self) -> Ordering {
        if self.mantissa.is_zero() {
            Ordering::Equal
        } else if self.mantissa.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn aligned(&self, exponent: i32) -> BigInt {
        debug_assert!(exponent <= self.exponent);
        &self.mantissa << ((self.exponent - exponent) as usize)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let exponent = self.exponent.min(rhs.exponent);
        Dyadic {
            mantissa: self.aligned(exponent) + rhs.aligned(exponent),
            exponent,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic {
            mantissa: &self.mantissa * &rhs.mantissa,
            exponent: self.exponent + rhs.exponent,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn dyadic_round_trips_through_sign() {
        for x in [1.0, -2.5, 1e-300, -4.9e-324, 123456789.0, 0.1] {
            let d = Dyadic::from_f64(x);
            assert_eq!(d.sign(), x.partial_cmp(&0.0).unwrap());
        }
        assert_eq!(Dyadic::from_f64(0.0).sign(), Ordering::Equal);
    }

    #[test]
    fn dyadic_difference_is_exact() {
        // 0.1 + 0.2 != 0.3 in floats, and the exact difference is nonzero.
        let d = Dyadic::from_f64(0.1) + Dyadic::from_f64(0.2) - Dyadic::from_f64(0.3);
        assert_eq!(d.sign(), Ordering::Greater);
        let z = Dyadic::from_f64(0.5) + Dyadic::from_f64(0.25) - Dyadic::from_f64(0.75);
        assert_eq!(z.sign(), Ordering::Equal);
    }

    #[test]
    fn orient_basic() {
        assert_eq!(
            orient(p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0)),
            Ordering::Greater
        );
        assert_eq!(
            orient(p(0.0, 0.0), p(0.0, 1.0), p(1.0, 0.0)),
            Ordering::Less
        );
        assert_eq!(
            orient(p(0.0, 0.0), p(1.0, 1.0), p(2.0, 2.0)),
            Ordering::Equal
        );
    }

    #[test]
    fn orient_near_degenerate_is_exact() {
        // Classic failure case for naive evaluation: points nearly on y = x.
        let a = p(0.5, 0.5);
        let b = p(12.0, 12.0);
        let c = p(24.0, 24.0);
        assert_eq!(orient(a, b, c), Ordering::Equal);
        let nudged = p(f64::from_bits(0.5f64.to_bits() + 1), 0.5);
        // nudged lies a hair to the right of the line through b and c
        assert_eq!(orient(b, c, nudged), Ordering::Less);
        assert_eq!(orient(c, b, nudged), Ordering::Greater);
    }

    #[test]
    fn orient_matches_exact_reference_on_grid_perturbations() {
        // Perturb one point by ulps around a collinear configuration; the
        // exact route must agree with a direct dyadic evaluation every time.
        let a = p(0.1, 0.1);
        let b = p(0.3, 0.3);
        for k in -8i64..=8 {
            let cx = f64::from_bits((0.7f64.to_bits() as i64 + k) as u64);
            let c = p(cx, 0.7);
            let got = orient(a, b, c);
            let (bx, by) = (
                Dyadic::from_f64(b.x) - Dyadic::from_f64(a.x),
                Dyadic::from_f64(b.y) - Dyadic::from_f64(a.y),
            );
            let (qx, qy) = (
                Dyadic::from_f64(c.x) - Dyadic::from_f64(a.x),
                Dyadic::from_f64(c.y) - Dyadic::from_f64(a.y),
            );
            let want = (&bx * &qy - &by * &qx).sign();
            assert_eq!(got, want, "k = {k}");
        }
    }

    #[test]
    fn dot_sign() {
        let u = Span::new(p(0.0, 0.0), p(1.0, 0.0));
        let w = Span::new(p(5.0, 5.0), p(5.0, 6.0));
        assert_eq!(dot(&u, &w), Ordering::Equal);
        let w = Span::new(p(5.0, 5.0), p(4.0, 6.0));
        assert_eq!(dot(&u, &w), Ordering::Less);
    }

    #[test]
    fn rotations_are_exact_quarter_turns() {
        let u = Span::new(p(0.1, 0.7), p(0.3, -0.2));
        assert_eq!(dot(&u, &u.rotated_ccw()), Ordering::Equal);
        assert_eq!(cross(&u, &u.rotated_ccw()), Ordering::Greater);
        assert_eq!(cross(&u, &u.rotated_cw()), Ordering::Less);
    }

    #[test]
    fn tiny_magnitudes_fall_back_to_exact() {
        let a = p(0.0, 0.0);
        let b = p(1e-200, 0.0);
        let c = p(0.0, 1e-200);
        assert_eq!(orient(a, b, c), Ordering::Greater);
    }

    #[test]
    fn two_sum_is_exact() {
        for (a, b) in [(1.0, 1e-20), (0.1, 0.2), (1e300, -1e284), (-3.5, 3.5)] {
            let (hi, lo) = two_sum(a, b);
            let exact = Dyadic::from_f64(a) + Dyadic::from_f64(b);
            let split = Dyadic::from_f64(hi) + Dyadic::from_f64(lo);
            assert_eq!((exact - split).sign(), Ordering::Equal);
        }
    }
}
