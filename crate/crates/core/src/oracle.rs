//! Linking numbers by counting intersections with an explicit bounding chain.
//!
//! For a homologically trivial Γ the chain is built from one strip per
//! component, sweeping `γⁱ` to the parallel geodesic through an apex `q`, and
//! a cone at `q` over the closed polygon of partial direction sums, which caps
//! off the parallel copies. Every predicate is exact; when Υ touches a piece
//! boundary the apex is moved along a fixed schedule.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geodesic::{are_disjoint, point_add, point_sub, reduce_point, require_trivial, Geodesic, MultiGeodesic, Point3};
use crate::rational::{common_denominator, format_rational, Rational};
use crate::ORIENTATION_SIGN;

/// Retries after the first apex before giving up.
pub const MAX_APEX_RETRIES: usize = 8;

/// The triangle `a, b, c` in ℝ³, oriented by its vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle3 {
    pub a: Point3,
    pub b: Point3,
    pub c: Point3,
}

/// The parallelogram `corner + s·edge_s + t·edge_t`, `(s, t) ∈ [0,1]²`,
/// oriented by `(edge_t, edge_s)` so that the `s = 0` edge runs along `+edge_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip3 {
    pub corner: Point3,
    pub edge_s: Point3,
    pub edge_t: Point3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain2 {
    pub strips: Vec<Strip3>,
    pub triangles: Vec<Triangle3>,
    pub apex: Point3,
}

impl Chain2 {
    pub fn empty() -> Self {
        Chain2 {
            strips: Vec::new(),
            triangles: Vec::new(),
            apex: zero_point(),
        }
    }
}

fn zero_point() -> Point3 {
    [Rational::zero(), Rational::zero(), Rational::zero()]
}

fn lattice_point(v: &crate::LatticeVector) -> Point3 {
    v.to_rational()
}

/// An oriented segment of T³: start reduced into `[0,1)³` plus displacement.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub start: Point3,
    pub displacement: Point3,
}

/// A formal integer combination of segments of T³. A segment and its reverse
/// are the same key with opposite coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cycle {
    segments: BTreeMap<Segment, i64>,
}

impl Cycle {
    pub fn new() -> Self {
        Cycle::default()
    }

    /// Adds `coeff · [from → to]`; zero-length segments are ignored.
    pub fn add_segment(&mut self, from: &Point3, to: &Point3, coeff: i64) {
        let displacement = point_sub(to, from);
        if displacement.iter().all(|c| c.is_zero()) || coeff == 0 {
            return;
        }
        let (key, coeff) = if displacement > zero_point() {
            (Segment { start: reduce_point(from), displacement }, coeff)
        } else {
            let displacement = displacement.map(|c| -c);
            (Segment { start: reduce_point(to), displacement }, -coeff)
        };
        match self.segments.entry(key) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add(&mut self, other: &Cycle, coeff: i64) {
        for (seg, c) in &other.segments {
            self.add_segment(&seg.start, &point_add(&seg.start, &seg.displacement), coeff * c);
        }
    }

    pub fn difference(&self, other: &Cycle) -> Cycle {
        let mut out = self.clone();
        out.add(other, -1);
        out
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Segment, i64)> {
        self.segments.iter().map(|(s, c)| (s, *c))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_point = |p: &Point3| p.iter().map(format_rational).collect::<Vec<_>>().join(", ");
        let parts: Vec<String> = self
            .segments
            .iter()
            .map(|(s, c)| format!("{c:+}·[({}) + ({})]", fmt_point(&s.start), fmt_point(&s.displacement)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// The 1-cycle of a collection: one segment `ν → ν + d` per component.
pub fn cycle_of(m: &MultiGeodesic) -> Cycle {
    let mut cycle = Cycle::new();
    for g in m.components() {
        cycle.add_segment(g.origin(), &point_add(g.origin(), &lattice_point(g.direction())), 1);
    }
    cycle
}

pub fn build_bounding_chain(m: &MultiGeodesic, apex: &Point3) -> Result<Chain2> {
    require_trivial(m)?;
    let mut strips = Vec::with_capacity(m.len());
    let mut triangles = Vec::with_capacity(m.len());
    let mut partial = zero_point();
    for g in m.components() {
        let d = lattice_point(g.direction());
        strips.push(Strip3 {
            corner: g.origin().clone(),
            edge_s: point_sub(apex, g.origin()),
            edge_t: d.clone(),
        });
        let next = point_add(&partial, &d);
        triangles.push(Triangle3 {
            a: apex.clone(),
            b: point_add(apex, &partial),
            c: point_add(apex, &next),
        });
        partial = next;
    }
    Ok(Chain2 {
        strips,
        triangles,
        apex: apex.clone(),
    })
}

pub fn chain_boundary(c: &Chain2) -> Cycle {
    let mut cycle = Cycle::new();
    for s in &c.strips {
        let p0 = s.corner.clone();
        let p1 = point_add(&p0, &s.edge_t);
        let p2 = point_add(&p1, &s.edge_s);
        let p3 = point_add(&p0, &s.edge_s);
        cycle.add_segment(&p0, &p1, 1);
        cycle.add_segment(&p1, &p2, 1);
        cycle.add_segment(&p2, &p3, 1);
        cycle.add_segment(&p3, &p0, 1);
    }
    for t in &c.triangles {
        cycle.add_segment(&t.a, &t.b, 1);
        cycle.add_segment(&t.b, &t.c, 1);
        cycle.add_segment(&t.c, &t.a, 1);
    }
    cycle
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Region {
    Parallelogram,
    Triangle,
}

/// A piece `corner + a·u + b·w` oriented by `(u, w)`.
struct Piece {
    corner: Point3,
    u: Point3,
    w: Point3,
    region: Region,
}

fn pieces(c: &Chain2) -> Vec<Piece> {
    let strips = c.strips.iter().map(|s| Piece {
        corner: s.corner.clone(),
        u: s.edge_t.clone(),
        w: s.edge_s.clone(),
        region: Region::Parallelogram,
    });
    let triangles = c.triangles.iter().map(|t| Piece {
        corner: t.a.clone(),
        u: point_sub(&t.b, &t.a),
        w: point_sub(&t.c, &t.a),
        region: Region::Triangle,
    });
    strips.chain(triangles).collect()
}

type IVec = [BigInt; 3];

fn idot(a: &IVec, b: &IVec) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn icross(a: &IVec, b: &IVec) -> IVec {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn scaled(p: &Point3, l: &BigInt) -> IVec {
    p.clone().map(|c| (c * Rational::from_integer(l.clone())).to_integer())
}

fn small_dot(m: [i64; 3], v: &IVec) -> BigInt {
    &v[0] * m[0] + &v[1] * m[1] + &v[2] * m[2]
}

/// Range of lattice translates `m` for which `μ + m + t·e`, `t ∈ [0,1]`,
/// can meet the bounding box of the piece.
fn translate_range(piece: &Piece, mu: &Point3, e: &Point3) -> Result<[(i64, i64); 3]> {
    let mut vertices = vec![
        piece.corner.clone(),
        point_add(&piece.corner, &piece.u),
        point_add(&piece.corner, &piece.w),
    ];
    if piece.region == Region::Parallelogram {
        vertices.push(point_add(&vertices[1], &piece.w));
    }
    let mut out = [(0, 0); 3];
    for i in 0..3 {
        let lo = vertices.iter().map(|v| &v[i]).min().expect("vertices");
        let hi = vertices.iter().map(|v| &v[i]).max().expect("vertices");
        let e_hi = e[i].clone().max(Rational::zero());
        let e_lo = e[i].clone().min(Rational::zero());
        let from = (lo - &mu[i] - e_hi).ceil().to_integer();
        let to = (hi - &mu[i] - e_lo).floor().to_integer();
        out[i] = (
            from.to_i64().ok_or_else(|| Error::Internal("translate range overflow".into()))?,
            to.to_i64().ok_or_else(|| Error::Internal("translate range overflow".into()))?,
        );
    }
    Ok(out)
}

fn for_each_translate(range: [(i64, i64); 3], mut f: impl FnMut([i64; 3]) -> Result<()>) -> Result<()> {
    for m0 in range[0].0..=range[0].1 {
        for m1 in range[1].0..=range[1].1 {
            for m2 in range[2].0..=range[2].1 {
                f([m0, m1, m2])?;
            }
        }
    }
    Ok(())
}

fn degenerate(what: &str, m: [i64; 3]) -> Error {
    Error::Degenerate(format!("{what} (lattice translate {m:?})"))
}

/// Signed count of transversal hits of `h` with one piece, right-handed.
fn piece_crossings(piece: &Piece, h: &Geodesic) -> Result<i64> {
    let e_rat = lattice_point(h.direction());
    let mu = h.origin();
    let l = common_denominator(piece.corner.iter().chain(&piece.u).chain(&piece.w).chain(mu.iter()));
    let u = scaled(&piece.u, &l);
    let w = scaled(&piece.w, &l);
    let e = scaled(&e_rat, &l);
    let r0 = scaled(&point_sub(&piece.corner, mu), &l);
    let uw = icross(&u, &w);
    if uw.iter().all(|c| c.is_zero()) {
        // Zero-area pieces bound nothing.
        return Ok(0);
    }
    let range = translate_range(piece, mu, &e_rat)?;
    let delta = idot(&e, &uw);
    if delta.is_zero() {
        return coplanar_check(piece, &u, &w, &e, &r0, &l, range).map(|_| 0);
    }

    // Solve t·e − a·u − b·w = r0 − L·m by Cramer's rule; every numerator is
    // affine in m.
    let sign: i64 = if delta.is_positive() { 1 } else { -1 };
    let d = delta.abs();
    let we = icross(&w, &e);
    let eu = icross(&e, &u);
    let base = [idot(&r0, &uw) * sign, -idot(&r0, &we) * sign, -idot(&r0, &eu) * sign];
    let slope = [
        uw.clone().map(|c| c * &l * sign),
        we.clone().map(|c| -(c * &l) * sign),
        eu.clone().map(|c| -(c * &l) * sign),
    ];
    let mut count = 0i64;
    for_each_translate(range, |m| {
        let t = &base[0] - small_dot(m, &slope[0]);
        if t.is_negative() || t >= d {
            // t = 1 is the same point as t = 0 on the next translate.
            return Ok(());
        }
        let a = &base[1] - small_dot(m, &slope[1]);
        let b = &base[2] - small_dot(m, &slope[2]);
        let inside = match piece.region {
            Region::Parallelogram => {
                if a.is_negative() || b.is_negative() || a > d || b > d {
                    return Ok(());
                }
                a.is_positive() && b.is_positive() && a < d && b < d
            }
            Region::Triangle => {
                let ab = &a + &b;
                if a.is_negative() || b.is_negative() || ab > d {
                    return Ok(());
                }
                a.is_positive() && b.is_positive() && ab < d
            }
        };
        if !inside {
            return Err(degenerate("intersection on a piece boundary", m));
        }
        count += sign;
        Ok(())
    })?;
    Ok(count)
}

/// `h` is parallel to the plane of the piece; any contact is degenerate.
fn coplanar_check(
    piece: &Piece,
    u: &IVec,
    w: &IVec,
    e: &IVec,
    r0: &IVec,
    l: &BigInt,
    range: [(i64, i64); 3],
) -> Result<()> {
    let uw = icross(u, w);
    let normal_base = idot(r0, &uw);
    let normal_slope = uw.clone().map(|c| c * l);
    let (i, j) = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .find(|&(i, j)| !(&u[i] * &w[j] - &u[j] * &w[i]).is_zero())
        .expect("non-degenerate piece has a nonzero minor");
    let minor = Rational::from_integer(&u[i] * &w[j] - &u[j] * &w[i]);
    for_each_translate(range, |m| {
        if !(&normal_base - small_dot(m, &normal_slope)).is_zero() {
            return Ok(());
        }
        // In the plane: a(t)·u + b(t)·w = t·e − (r0 − L·m).
        let r: Vec<Rational> = (0..3)
            .map(|k| Rational::from_integer(&r0[k] - l * m[k]))
            .collect();
        let ek: Vec<Rational> = e.iter().map(|c| Rational::from_integer(c.clone())).collect();
        let ui = Rational::from_integer(u[i].clone());
        let uj = Rational::from_integer(u[j].clone());
        let wi = Rational::from_integer(w[i].clone());
        let wj = Rational::from_integer(w[j].clone());
        let a0 = -(&r[i] * &wj - &r[j] * &wi) / &minor;
        let a1 = (&ek[i] * &wj - &ek[j] * &wi) / &minor;
        let b0 = -(&ui * &r[j] - &uj * &r[i]) / &minor;
        let b1 = (&ui * &ek[j] - &uj * &ek[i]) / &minor;
        // Constraints α + β·t ≥ 0 over t ∈ [0, 1].
        let mut constraints = vec![(a0.clone(), a1.clone()), (b0.clone(), b1.clone())];
        match piece.region {
            Region::Parallelogram => {
                constraints.push((Rational::one() - &a0, -a1.clone()));
                constraints.push((Rational::one() - &b0, -b1.clone()));
            }
            Region::Triangle => constraints.push((Rational::one() - &a0 - &b0, -(a1 + b1))),
        }
        let (mut lo, mut hi) = (Rational::zero(), Rational::one());
        for (alpha, beta) in constraints {
            if beta.is_zero() {
                if alpha.is_negative() {
                    return Ok(());
                }
            } else {
                let root = -alpha / &beta;
                if beta.is_positive() {
                    lo = lo.max(root);
                } else {
                    hi = hi.min(root);
                }
            }
        }
        if lo <= hi {
            Err(degenerate("curve runs inside the plane of a piece", m))
        } else {
            Ok(())
        }
    })
}

/// Signed intersection count of `h` with the chain, right-handed orientation.
pub fn signed_crossings(c: &Chain2, h: &Geodesic) -> Result<i64> {
    pieces(c).iter().map(|p| piece_crossings(p, h)).sum()
}

/// Apex `n` of the retry schedule: `(1/p_n, 1/p_{n+1}, 1/p_{n+2})` over
/// consecutive primes starting at 2.
pub fn apex_schedule(n: usize) -> Point3 {
    let primes: Vec<i64> = (2i64..).filter(|&p| is_prime(p)).skip(n).take(3).collect();
    [0, 1, 2].map(|i| Rational::new(BigInt::one(), BigInt::from(primes[i])))
}

fn is_prime(n: i64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(&d))
}

fn check_cross_disjoint(gamma: &MultiGeodesic, upsilon: &MultiGeodesic) -> Result<()> {
    for (i, g) in gamma.components().iter().enumerate() {
        for (j, h) in upsilon.components().iter().enumerate() {
            if !are_disjoint(g, h) {
                return Err(Error::IntersectingCurves(format!("gamma[{i}] meets upsilon[{j}]")));
            }
        }
    }
    Ok(())
}

/// The oracle count for one fixed apex; fails with `Degenerate` instead of retrying.
pub fn oracle_link_with_apex(gamma: &MultiGeodesic, upsilon: &MultiGeodesic, apex: &Point3) -> Result<i64> {
    require_trivial(upsilon)?;
    check_cross_disjoint(gamma, upsilon)?;
    let chain = build_bounding_chain(gamma, apex)?;
    let mut total = 0;
    for h in upsilon.components() {
        total += signed_crossings(&chain, h)?;
    }
    Ok(ORIENTATION_SIGN * total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    pub value: i64,
    pub apex: Point3,
    /// Number of apexes tried, including the successful one.
    pub attempts: usize,
}

pub fn oracle_link_traced(gamma: &MultiGeodesic, upsilon: &MultiGeodesic) -> Result<OracleOutcome> {
    for n in 0..=MAX_APEX_RETRIES {
        let apex = apex_schedule(n);
        match oracle_link_with_apex(gamma, upsilon, &apex) {
            Ok(value) => {
                return Ok(OracleOutcome {
                    value,
                    apex,
                    attempts: n + 1,
                })
            }
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::PersistentDegeneracy(MAX_APEX_RETRIES + 1))
}

pub fn oracle_link(gamma: &MultiGeodesic, upsilon: &MultiGeodesic) -> Result<i64> {
    oracle_link_traced(gamma, upsilon).map(|o| o.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn geo(d: [i64; 3], o: [(i64, i64); 3]) -> Geodesic {
        Geodesic::new(d.into(), o.map(|(n, q)| rat(n, q))).unwrap()
    }

    fn multi(gs: Vec<Geodesic>) -> MultiGeodesic {
        MultiGeodesic::new(gs).unwrap()
    }

    fn pt(c: [(i64, i64); 3]) -> Point3 {
        c.map(|(n, d)| rat(n, d))
    }

    const Z: (i64, i64) = (0, 1);

    fn hopf() -> (MultiGeodesic, MultiGeodesic) {
        (
            multi(vec![geo([1, 0, 0], [Z, Z, Z]), geo([-1, 0, 0], [Z, Z, (1, 2)])]),
            multi(vec![geo([0, 1, 0], [Z, Z, (1, 4)]), geo([0, -1, 0], [Z, Z, (3, 4)])]),
        )
    }

    #[test]
    fn apex_schedule_uses_consecutive_primes() {
        assert_eq!(apex_schedule(0), pt([(1, 2), (1, 3), (1, 5)]));
        assert_eq!(apex_schedule(1), pt([(1, 3), (1, 5), (1, 7)]));
        assert_eq!(apex_schedule(8), pt([(1, 23), (1, 29), (1, 31)]));
    }

    #[test]
    fn chain_shapes_and_boundaries() {
        let g = multi(vec![geo([1, 0, 0], [(1, 4), (1, 4), Z]), geo([-1, 0, 0], [Z, (1, 2), (1, 2)])]);
        let chain = build_bounding_chain(&g, &zero_point()).unwrap();
        assert_eq!((chain.strips.len(), chain.triangles.len()), (2, 2));
        assert!(chain_boundary(&chain).difference(&cycle_of(&g)).is_empty());

        let g = multi(vec![
            geo([1, 1, 0], [(1, 3), (1, 5), (1, 7)]),
            geo([0, -1, 1], [(2, 3), Z, (1, 2)]),
            geo([-1, 0, -1], [(1, 8), (3, 4), (5, 16)]),
        ]);
        for n in 0..4 {
            let chain = build_bounding_chain(&g, &apex_schedule(n)).unwrap();
            assert_eq!((chain.strips.len(), chain.triangles.len()), (3, 3));
            assert!(chain_boundary(&chain).difference(&cycle_of(&g)).is_empty());
        }

        let single = multi(vec![geo([2, 2, 3], [Z, Z, Z])]);
        assert!(matches!(
            build_bounding_chain(&single, &zero_point()),
            Err(Error::NotHomologicallyTrivial(_))
        ));
    }

    #[test]
    fn single_strip_sides_cancel() {
        let strip = Strip3 {
            corner: pt([(1, 4), (1, 3), Z]),
            edge_s: pt([(1, 8), (-1, 3), (1, 2)]),
            edge_t: pt([(1, 1), (2, 1), Z]),
        };
        let chain = Chain2 {
            strips: vec![strip.clone()],
            triangles: vec![],
            apex: point_add(&strip.corner, &strip.edge_s),
        };
        let boundary = chain_boundary(&chain);
        let mut expected = Cycle::new();
        let apex = &chain.apex;
        expected.add_segment(&strip.corner, &point_add(&strip.corner, &strip.edge_t), 1);
        expected.add_segment(apex, &point_add(apex, &strip.edge_t), -1);
        assert_eq!(boundary, expected);
        assert_eq!(boundary.len(), 2);
        assert!(chain_boundary(&Chain2::empty()).is_empty());
    }

    #[test]
    fn cycle_reversal_cancels() {
        let mut c = Cycle::new();
        let p = pt([(1, 2), Z, Z]);
        let q = pt([(3, 2), (1, 1), Z]);
        c.add_segment(&p, &q, 1);
        // Lattice-congruent copy, reversed.
        c.add_segment(&point_add(&q, &pt([(1, 1), Z, Z])), &point_add(&p, &pt([(1, 1), Z, Z])), 1);
        assert!(c.is_empty());
        assert_eq!(c.to_string(), "0");
    }

    #[test]
    fn hopf_quadruple_links_once() {
        let (g, u) = hopf();
        assert_eq!(oracle_link(&g, &u).unwrap(), 1);
        assert_eq!(oracle_link(&u, &g).unwrap(), 1);
        // The per-component counts of the right-handed crossing sum.
        let chain = build_bounding_chain(&g, &apex_schedule(3)).unwrap();
        let counts: Vec<i64> = u.components().iter().map(|h| signed_crossings(&chain, h).unwrap()).collect();
        assert_eq!(counts.iter().sum::<i64>(), ORIENTATION_SIGN);
    }

    #[test]
    fn parallel_fibers_do_not_link() {
        let g = multi(vec![geo([1, 0, 0], [Z, Z, Z]), geo([-1, 0, 0], [Z, (1, 2), (1, 2)])]);
        let u = multi(vec![geo([1, 0, 0], [Z, (1, 4), Z]), geo([-1, 0, 0], [Z, (3, 4), (1, 3)])]);
        assert_eq!(oracle_link(&g, &u).unwrap(), 0);
    }

    #[test]
    fn coplanar_curve_is_degenerate_and_retry_resolves_it() {
        let g = multi(vec![geo([1, 0, 0], [Z, Z, Z]), geo([-1, 0, 0], [Z, (1, 2), Z])]);
        let u = multi(vec![geo([1, 0, 0], [Z, Z, (1, 4)]), geo([-1, 0, 0], [Z, (1, 4), (1, 4)])]);
        let apex = pt([Z, Z, (1, 2)]);
        let chain = build_bounding_chain(&g, &apex).unwrap();
        assert!(matches!(signed_crossings(&chain, &u.components()[0]), Err(Error::Degenerate(_))));
        assert!(matches!(oracle_link_with_apex(&g, &u, &apex), Err(Error::Degenerate(_))));
        assert_eq!(oracle_link(&g, &u).unwrap(), 0);
    }

    #[test]
    fn boundary_hit_is_degenerate() {
        // υ passes through the apex, a vertex of every cone triangle.
        let (g, _) = hopf();
        let apex = pt([(1, 3), (1, 5), (1, 7)]);
        let chain = build_bounding_chain(&g, &apex).unwrap();
        let h = geo([0, 1, 0], [(1, 3), Z, (1, 7)]);
        assert!(matches!(signed_crossings(&chain, &h), Err(Error::Degenerate(_))));
    }

    #[test]
    fn errors_are_reported() {
        let (g, _) = hopf();
        let bad = multi(vec![geo([0, 1, 0], [Z, Z, Z]), geo([0, -1, 0], [Z, Z, (3, 4)])]);
        assert!(matches!(oracle_link(&g, &bad), Err(Error::IntersectingCurves(_))));
        let nontrivial = multi(vec![geo([0, 1, 0], [Z, Z, (1, 4)])]);
        assert!(matches!(oracle_link(&g, &nontrivial), Err(Error::NotHomologicallyTrivial(_))));
        let r = oracle_link(&nontrivial, &g);
        assert!(matches!(r, Err(Error::NotHomologicallyTrivial(_))), "{r:?}");
    }

    #[test]
    fn lift_independence() {
        let (g, u) = hopf();
        let apex = apex_schedule(2);
        let chain = build_bounding_chain(&g, &apex).unwrap();
        let mut moved = chain.clone();
        let m = pt([(1, 1), (-1, 1), (2, 1)]);
        moved.strips[0].corner = point_add(&moved.strips[0].corner, &m);
        moved.strips[0].edge_s = point_sub(&apex, &moved.strips[0].corner);
        assert!(chain_boundary(&moved).difference(&cycle_of(&g)).is_empty());
        // Per-component counts may change by a closed 2-cycle; the total may not.
        let total = |c: &Chain2| u.components().iter().map(|h| signed_crossings(c, h).unwrap()).sum::<i64>();
        assert_eq!(total(&moved), total(&chain));
    }
}
