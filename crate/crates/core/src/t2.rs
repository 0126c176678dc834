//! Geodesic flow on the flat 2-torus.
//!
//! A closed geodesic of T² with integer direction `a` lifts to the unit
//! tangent bundle `T² × S¹ = T³` as `(x + t·a, θ_a/2π)`, where `θ_a` is the
//! angle of `a`. Two lifted collections link by
//!
//! ```text
//!     Σ_{i,j} Σ_{p ∈ γⁱ ∩ υʲ} i_p(γⁱ, υʲ) · (1 − x_{i,j}/π) / 2
//! ```
//!
//! with `x_{i,j} ∈ [0, 2π)` the oriented angle from `γⁱ` to `υʲ`. All points of
//! one pair share that angle, so each pair contributes `det₂(a, b)·(1 − x/π)/2`.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::geodesic::{require_trivial, FloatGeodesic, Geodesic, MultiGeodesic};
use crate::lattice::{primitive_orthogonal, LatticeVector};
use crate::oracle::oracle_link;
use crate::rational::{format_rational, frac, round_to_denominator, to_f64, Rational};
use crate::spectral::pair_limit;

/// Denominator used to rationalize fiber coordinates for the oracle.
pub const LIFT_DENOMINATOR: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct T2Geodesic {
    direction: [i64; 2],
    origin: [Rational; 2],
}

impl T2Geodesic {
    pub fn new(direction: [i64; 2], origin: [Rational; 2]) -> Result<Self> {
        if direction == [0, 0] {
            return Err(Error::ZeroDirection);
        }
        Ok(T2Geodesic {
            direction,
            origin: origin.map(|c| frac(&c)),
        })
    }

    pub fn direction(&self) -> [i64; 2] {
        self.direction
    }

    pub fn origin(&self) -> &[Rational; 2] {
        &self.origin
    }

    pub fn is_multiply_covered(&self) -> bool {
        self.direction[0].gcd(&self.direction[1]) != 1
    }

    /// Angle of the direction in turns, in `[0, 1)`.
    pub fn angle_turns(&self) -> f64 {
        let [a1, a2] = self.direction;
        let turns = (a2 as f64).atan2(a1 as f64) / TAU;
        if turns < 0.0 {
            turns + 1.0
        } else {
            turns
        }
    }
}

impl fmt::Display for T2Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})@({}, {})",
            self.direction[0],
            self.direction[1],
            format_rational(&self.origin[0]),
            format_rational(&self.origin[1])
        )
    }
}

pub fn warnings(curves: &[T2Geodesic], label: &str) -> Vec<String> {
    curves
        .iter()
        .enumerate()
        .filter(|(_, g)| g.is_multiply_covered())
        .map(|(i, g)| format!("{label}[{i}] direction {:?} is non-primitive (multiply covered)", g.direction))
        .collect()
}

fn direction3(g: &T2Geodesic) -> LatticeVector {
    LatticeVector::new(g.direction[0], g.direction[1], 0)
}

pub fn lift_to_t3(g: &T2Geodesic) -> FloatGeodesic {
    FloatGeodesic {
        direction: direction3(g),
        origin: [to_f64(&g.origin[0]), to_f64(&g.origin[1]), g.angle_turns()],
    }
}

/// The lift with its fiber coordinate rounded to a multiple of `1/denominator`.
pub fn rationalized_lift(g: &T2Geodesic, denominator: u64) -> Geodesic {
    let fiber = frac(&round_to_denominator(g.angle_turns(), denominator));
    Geodesic::new(direction3(g), [g.origin[0].clone(), g.origin[1].clone(), fiber]).expect("nonzero direction")
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionDatum {
    pub point: [f64; 2],
    pub sign: i32,
    /// Oriented angle from the first curve to the second, in `[0, 2π)`.
    pub angle_x: f64,
}

fn det2(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Whether `delta ≡ s·a (mod ℤ²)` for some real `s`.
fn on_common_circle(a: [i64; 2], delta: &[Rational; 2]) -> bool {
    let g = a[0].gcd(&a[1]);
    let p = [a[0] / g, a[1] / g];
    let axis = if p[0] != 0 { 0 } else { 1 };
    (0..p[axis].abs()).any(|n| {
        let s = (&delta[axis] + Rational::from_integer(n.into())) / Rational::from_integer(p[axis].into());
        (0..2).all(|i| (&delta[i] - &s * Rational::from_integer(p[i].into())).is_integer())
    })
}

/// Oriented angle from `g` to `h` in `[0, 2π)`.
pub fn intersection_angle(g: &T2Geodesic, h: &T2Geodesic) -> f64 {
    let x = (h.angle_turns() - g.angle_turns()).rem_euclid(1.0) * TAU;
    if x >= TAU {
        0.0
    } else {
        x
    }
}

pub fn intersection_data(g: &T2Geodesic, h: &T2Geodesic) -> Result<Vec<IntersectionDatum>> {
    let a = g.direction;
    let b = h.direction;
    let delta = [&h.origin[0] - &g.origin[0], &h.origin[1] - &g.origin[1]];
    let det = det2(a, b);
    if det == 0 {
        if on_common_circle(a, &delta) {
            return Err(Error::IdenticalCircles);
        }
        return Ok(Vec::new());
    }
    // t·a − s·b = delta + m with (t, s) ∈ [0,1)²; enumerate m over the box
    // swept by t·a − s·b − delta.
    let det_r = Rational::from_integer(det.into());
    let angle_x = intersection_angle(g, h);
    let sign = det.signum() as i32;
    let mut points = Vec::with_capacity(det.unsigned_abs() as usize);
    let mut ranges = [(0i64, 0i64); 2];
    for i in 0..2 {
        let lo = a[i].min(0) + (-b[i]).min(0);
        let hi = a[i].max(0) + (-b[i]).max(0);
        let lo = (Rational::from_integer(lo.into()) - &delta[i]).floor().to_integer();
        let hi = (Rational::from_integer(hi.into()) - &delta[i]).ceil().to_integer();
        ranges[i] = (lo.to_i64().unwrap_or(0), hi.to_i64().unwrap_or(0));
    }
    for m0 in ranges[0].0..=ranges[0].1 {
        for m1 in ranges[1].0..=ranges[1].1 {
            let r0 = &delta[0] + Rational::from_integer(m0.into());
            let r1 = &delta[1] + Rational::from_integer(m1.into());
            // [a | −b] (t, s)ᵀ = r, determinant −det.
            let t = (&r0 * Rational::from_integer((-b[1]).into()) - &r1 * Rational::from_integer((-b[0]).into()))
                / -&det_r;
            let s = (Rational::from_integer(a[0].into()) * &r1 - Rational::from_integer(a[1].into()) * &r0) / -&det_r;
            let unit = |v: &Rational| !v.is_negative() && v < &Rational::one();
            if unit(&t) && unit(&s) {
                let point = [0, 1].map(|i| to_f64(&frac(&(&g.origin[i] + &t * Rational::from_integer(a[i].into())))));
                points.push(IntersectionDatum { point, sign, angle_x });
            }
        }
    }
    if points.len() as u64 != det.unsigned_abs() {
        return Err(Error::Internal(format!(
            "found {} intersections of {g} and {h}, expected {}",
            points.len(),
            det.abs()
        )));
    }
    Ok(points)
}

/// The per-pair value `det₂(a, b)·(1 − x/π)/2`.
pub fn pair_corollary(g: &T2Geodesic, h: &T2Geodesic) -> f64 {
    let det = det2(g.direction, h.direction);
    if det == 0 {
        return 0.0;
    }
    det as f64 * (1.0 - intersection_angle(g, h) / PI) / 2.0
}

fn lifted_class(curves: &[T2Geodesic]) -> Result<MultiGeodesic> {
    let lifts = curves
        .iter()
        .map(|g| rationalized_lift(g, LIFT_DENOMINATOR))
        .collect::<Vec<_>>();
    MultiGeodesic::new(lifts)
}

/// Whether the lifts of `g` and `h` meet in T³. Fiber coordinates agree
/// only for equally oriented collinear directions, which then meet iff
/// their T² circles coincide.
fn lifts_intersect(g: &T2Geodesic, h: &T2Geodesic) -> bool {
    let (a, b) = (g.direction, h.direction);
    if det2(a, b) != 0 || a[0] * b[0] + a[1] * b[1] < 0 {
        return false;
    }
    let delta = [&h.origin[0] - &g.origin[0], &h.origin[1] - &g.origin[1]];
    on_common_circle(a, &delta)
}

fn check_lifts(gamma: &[T2Geodesic], upsilon: &[T2Geodesic]) -> Result<()> {
    require_trivial(&lifted_class(gamma)?)?;
    require_trivial(&lifted_class(upsilon)?)?;
    if gamma.iter().any(|g| upsilon.iter().any(|h| lifts_intersect(g, h))) {
        return Err(Error::IntersectingLifts);
    }
    Ok(())
}

/// Σ over pairs and intersection points of `sign·(1 − x/π)/2`.
pub fn corollary_link(gamma: &[T2Geodesic], upsilon: &[T2Geodesic]) -> Result<f64> {
    check_lifts(gamma, upsilon)?;
    let mut total = crate::spectral::CompensatedSum::default();
    for g in gamma {
        for h in upsilon {
            if det2(g.direction, h.direction) == 0 {
                continue;
            }
            for p in intersection_data(g, h)? {
                total.add(p.sign as f64 * (1.0 - p.angle_x / PI) / 2.0);
            }
        }
    }
    Ok(total.value())
}

/// The T³ pair formula on the binary64 lifts, summed over all pairs.
pub fn lifted_closed_form(gamma: &[T2Geodesic], upsilon: &[T2Geodesic]) -> Result<f64> {
    check_lifts(gamma, upsilon)?;
    let mut total = crate::spectral::CompensatedSum::default();
    for g in gamma {
        for h in upsilon {
            total.add(pair_limit(&lift_to_t3(g), &lift_to_t3(h))?);
        }
    }
    Ok(total.value())
}

/// The oracle on rationalized lifts. Fails if rounding the fiber
/// coordinates could move some pair across an intersection.
pub fn lifted_oracle_link(gamma: &[T2Geodesic], upsilon: &[T2Geodesic]) -> Result<i64> {
    check_lifts(gamma, upsilon)?;
    // Each fiber coordinate moves by at most 1/(2D), so μ·β moves by at most |β₃|/D.
    let bound = 1.0 / LIFT_DENOMINATOR as f64;
    for g in gamma {
        for h in upsilon {
            let (lg, lh) = (lift_to_t3(g), lift_to_t3(h));
            let Ok(beta) = primitive_orthogonal(&lg.direction, &lh.direction) else {
                continue;
            };
            let x = crate::geodesic::ClosedCurve::relative_phase(&lg, &lh, &beta);
            let slack = beta.z().abs().to_f64().unwrap_or(f64::INFINITY) * bound;
            if x.min(1.0 - x) <= 2.0 * slack {
                return Err(Error::Degenerate(format!(
                    "lifts of {g} and {h} are within the rationalization error of intersecting"
                )));
            }
        }
    }
    let lift = |curves: &[T2Geodesic]| {
        MultiGeodesic::new(curves.iter().map(|g| rationalized_lift(g, LIFT_DENOMINATOR)).collect())
    };
    oracle_link(&lift(gamma)?, &lift(upsilon)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn t2(d: [i64; 2], o: [(i64, i64); 2]) -> T2Geodesic {
        T2Geodesic::new(d, o.map(|(n, q)| rat(n, q))).unwrap()
    }

    const Z: (i64, i64) = (0, 1);

    fn hopf() -> (Vec<T2Geodesic>, Vec<T2Geodesic>) {
        (
            vec![t2([1, 0], [Z, Z]), t2([-1, 0], [Z, (1, 2)])],
            vec![t2([0, 1], [(1, 4), Z]), t2([0, -1], [(3, 4), Z])],
        )
    }

    #[test]
    fn lift_examples() {
        let l = lift_to_t3(&t2([1, 0], [Z, Z]));
        assert_eq!(l.direction, LatticeVector::new(1, 0, 0));
        assert_eq!(l.origin, [0.0, 0.0, 0.0]);
        let l = lift_to_t3(&t2([0, 1], [(1, 4), Z]));
        assert_eq!(l.origin, [0.25, 0.0, 0.25]);
        let l = lift_to_t3(&t2([1, 1], [Z, Z]));
        assert_eq!(l.direction, LatticeVector::new(1, 1, 0));
        assert_eq!(l.origin, [0.0, 0.0, 0.125]);
        assert_eq!(lift_to_t3(&t2([0, -1], [Z, Z])).origin[2], 0.75);
        assert_eq!(lift_to_t3(&t2([-1, 0], [Z, Z])).origin[2], 0.5);
    }

    #[test]
    fn intersection_examples() {
        let pts = intersection_data(&t2([1, 0], [Z, Z]), &t2([0, 1], [(1, 4), Z])).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].point, [0.25, 0.0]);
        assert_eq!(pts[0].sign, 1);
        assert!((pts[0].angle_x - PI / 2.0).abs() < 1e-15);

        let pts = intersection_data(&t2([1, 1], [Z, Z]), &t2([1, -1], [(1, 2), Z])).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().all(|p| p.sign == -1));

        assert!(intersection_data(&t2([1, 0], [Z, Z]), &t2([-2, 0], [Z, (1, 3)])).unwrap().is_empty());
        assert_eq!(
            intersection_data(&t2([1, 0], [Z, (1, 3)]), &t2([2, 0], [(1, 5), (1, 3)])),
            Err(Error::IdenticalCircles)
        );
        assert!(T2Geodesic::new([0, 0], [rat(0, 1), rat(0, 1)]).is_err());
    }

    #[test]
    fn intersection_count_law() {
        let origins = [[Z, Z], [(1, 3), (2, 7)], [(5, 8), (1, 16)]];
        for a0 in -4..=4 {
            for a1 in -4..=4 {
                for b0 in -4..=4 {
                    for b1 in -4..=4 {
                        let det = det2([a0, a1], [b0, b1]);
                        if det == 0 || [a0, a1] == [0, 0] || [b0, b1] == [0, 0] {
                            continue;
                        }
                        let o = origins[((a0 + b1 + 8) % 3) as usize];
                        let g = t2([a0, a1], [Z, Z]);
                        let h = t2([b0, b1], o);
                        let pts = intersection_data(&g, &h).unwrap();
                        assert_eq!(pts.len() as i64, det.abs());
                        let per_point: f64 = pts.iter().map(|p| p.sign as f64 * (1.0 - p.angle_x / PI) / 2.0).sum();
                        assert!((per_point - pair_corollary(&g, &h)).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn intersection_points_lie_on_both_curves() {
        let g = t2([2, 3], [(1, 5), (2, 7)]);
        let h = t2([-1, 2], [(3, 4), (1, 9)]);
        for p in intersection_data(&g, &h).unwrap() {
            for c in [&g, &h] {
                // p − origin must be a multiple of the direction modulo ℤ².
                let d = c.direction();
                let o = [to_f64(&c.origin()[0]), to_f64(&c.origin()[1])];
                let cross = (p.point[0] - o[0]) * d[1] as f64 - (p.point[1] - o[1]) * d[0] as f64;
                let nearest = cross.round();
                assert!((cross - nearest).abs() < 1e-12, "{cross}");
            }
        }
    }

    #[test]
    fn hopf_quadruple() {
        let (g, u) = hopf();
        let v = corollary_link(&g, &u).unwrap();
        assert!((v - 1.0).abs() < 1e-9, "{v}");
        assert!((corollary_link(&u, &g).unwrap() - v).abs() < 1e-9);
        assert!((lifted_closed_form(&g, &u).unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(lifted_oracle_link(&g, &u).unwrap(), 1);
    }

    #[test]
    fn parallel_collections() {
        let g = vec![t2([1, 0], [Z, Z]), t2([-1, 0], [Z, (1, 2)])];
        let u = vec![t2([1, 0], [Z, (1, 4)]), t2([-1, 0], [Z, (3, 4)])];
        assert_eq!(corollary_link(&g, &u).unwrap(), 0.0);
    }

    #[test]
    fn lift_errors() {
        let (g, u) = hopf();
        let nontrivial = vec![t2([1, 1], [Z, Z])];
        assert!(matches!(corollary_link(&nontrivial, &u), Err(Error::NotHomologicallyTrivial(_))));
        assert!(matches!(corollary_link(&g, &nontrivial), Err(Error::NotHomologicallyTrivial(_))));
        // Same circle, same orientation: the lifts coincide.
        let clash = vec![t2([1, 0], [(1, 3), Z]), t2([-1, 0], [Z, (1, 4)])];
        assert_eq!(corollary_link(&g, &clash), Err(Error::IntersectingLifts));
        // Same circle, opposite orientation: fibers differ by half a turn.
        let opposite = vec![t2([-1, 0], [Z, Z]), t2([1, 0], [Z, (1, 4)])];
        assert!(corollary_link(&g, &opposite).is_ok());
    }

    #[test]
    fn multiply_covered_warning() {
        let w = warnings(&[t2([2, 0], [Z, Z]), t2([1, 0], [Z, Z])], "gamma");
        assert_eq!(w.len(), 1);
        assert!(w[0].contains("gamma[0]"));
    }
}
