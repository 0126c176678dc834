//! Closed geodesics of T³ = ℝ³/ℤ³ and finite collections of them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{primitive_orthogonal, LatticeVector};
use crate::rational::{frac, to_f64, Rational};

/// A point of ℝ³ with exact coordinates.
pub type Point3 = [Rational; 3];

pub fn reduce_point(p: &Point3) -> Point3 {
    p.clone().map(|c| frac(&c))
}

pub fn point_sub(a: &Point3, b: &Point3) -> Point3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub fn point_add(a: &Point3, b: &Point3) -> Point3 {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

/// The closed geodesic `t ↦ origin + t·direction mod ℤ³`, `t ∈ [0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Geodesic {
    direction: LatticeVector,
    origin: Point3,
}

impl Geodesic {
    /// Origin components are reduced into `[0, 1)`.
    pub fn new(direction: LatticeVector, origin: Point3) -> Result<Self> {
        if direction.is_zero() {
            return Err(Error::ZeroDirection);
        }
        Ok(Geodesic {
            direction,
            origin: reduce_point(&origin),
        })
    }

    pub fn direction(&self) -> &LatticeVector {
        &self.direction
    }

    pub fn origin(&self) -> &Point3 {
        &self.origin
    }

    /// A non-primitive direction traverses its circle several times.
    pub fn is_multiply_covered(&self) -> bool {
        !self.direction.is_primitive()
    }

    pub fn reversed(&self) -> Geodesic {
        Geodesic {
            direction: -&self.direction,
            origin: self.origin.clone(),
        }
    }

    pub fn translated(&self, tau: &Point3) -> Geodesic {
        Geodesic {
            direction: self.direction.clone(),
            origin: reduce_point(&point_add(&self.origin, tau)),
        }
    }

    /// The same geodesic with its origin moved to `origin + t·direction + shift`.
    pub fn reparametrized(&self, t: &Rational, shift: &LatticeVector) -> Geodesic {
        let moved = [0, 1, 2].map(|i| {
            &self.origin[i] + t * Rational::from_integer(self.direction.0[i].clone())
                + Rational::from_integer(shift.0[i].clone())
        });
        Geodesic {
            direction: self.direction.clone(),
            origin: reduce_point(&moved),
        }
    }
}

impl fmt::Display for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}@({}, {}, {})",
            self.direction, self.origin[0], self.origin[1], self.origin[2]
        )
    }
}

/// A nonempty ordered collection of geodesics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiGeodesic {
    components: Vec<Geodesic>,
}

impl MultiGeodesic {
    pub fn new(components: Vec<Geodesic>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyCollection);
        }
        Ok(MultiGeodesic { components })
    }

    pub fn components(&self) -> &[Geodesic] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Human-readable warnings: multiply covered components and components of
    /// the same collection that meet each other.
    pub fn warnings(&self, label: &str) -> Vec<String> {
        let mut out = Vec::new();
        for (i, g) in self.components.iter().enumerate() {
            if g.is_multiply_covered() {
                out.push(format!(
                    "{label}[{i}] has non-primitive direction {}; it is a multiply covered circle",
                    g.direction
                ));
            }
        }
        for (i, g) in self.components.iter().enumerate() {
            for (j, h) in self.components.iter().enumerate().skip(i + 1) {
                if !are_disjoint(g, h) {
                    out.push(format!("{label}[{i}] and {label}[{j}] intersect"));
                }
            }
        }
        out
    }
}

pub fn homology_class(m: &MultiGeodesic) -> LatticeVector {
    m.components
        .iter()
        .fold(LatticeVector::zero(), |acc, g| &acc + &g.direction)
}

pub fn is_homologically_trivial(m: &MultiGeodesic) -> bool {
    homology_class(m).is_zero()
}

pub fn require_trivial(m: &MultiGeodesic) -> Result<()> {
    let class = homology_class(m);
    if class.is_zero() {
        Ok(())
    } else {
        Err(Error::NotHomologicallyTrivial(class.to_string()))
    }
}

/// Exact disjointness test in T³.
pub fn are_disjoint(g: &Geodesic, h: &Geodesic) -> bool {
    let delta = point_sub(&h.origin, &g.origin);
    match primitive_orthogonal(&g.direction, &h.direction) {
        Ok(beta) => !frac(&beta.dot_point(&delta)).is_zero(),
        Err(_) => !on_common_circle(&g.direction, &delta),
    }
}

/// Whether `delta ≡ s·direction (mod ℤ³)` for some real `s`.
fn on_common_circle(direction: &LatticeVector, delta: &Point3) -> bool {
    let p = direction.primitive();
    let (axis, pi) = match p.0.iter().enumerate().find(|(_, c)| !c.is_zero()) {
        Some((i, c)) => (i, c.clone()),
        None => return false,
    };
    // s·p_axis ≡ delta_axis (mod 1) leaves |p_axis| candidates for s mod 1.
    let steps = pi.abs().to_u64().unwrap_or(0);
    let pi = Rational::from_integer(pi);
    (0..steps).any(|n| {
        let s = (&delta[axis] + Rational::from_integer(BigInt::from(n))) / &pi;
        (0..3).all(|i| {
            let r = &delta[i] - &s * Rational::from_integer(p.0[i].clone());
            r.is_integer()
        })
    })
}

pub fn translate(m: &MultiGeodesic, tau: &Point3) -> MultiGeodesic {
    MultiGeodesic {
        components: m.components.iter().map(|g| g.translated(tau)).collect(),
    }
}

/// A closed geodesic whose origin is only known in binary64, such as the
/// unit-tangent lift of a T² geodesic whose fiber coordinate is irrational.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatGeodesic {
    pub direction: LatticeVector,
    pub origin: [f64; 3],
}

/// What the spectral evaluators need to know about a closed geodesic.
pub trait ClosedCurve {
    fn direction(&self) -> &LatticeVector;

    /// `frac(k · origin)` in `[0, 1)`.
    fn phase(&self, k: &LatticeVector) -> f64;

    /// `frac(k · (other.origin − self.origin))` in `[0, 1)`.
    fn relative_phase(&self, other: &Self, k: &LatticeVector) -> f64;
}

impl ClosedCurve for Geodesic {
    fn direction(&self) -> &LatticeVector {
        &self.direction
    }

    fn phase(&self, k: &LatticeVector) -> f64 {
        to_f64(&frac(&k.dot_point(&self.origin)))
    }

    fn relative_phase(&self, other: &Self, k: &LatticeVector) -> f64 {
        to_f64(&frac(&k.dot_point(&point_sub(&other.origin, &self.origin))))
    }
}

fn float_phase(k: &LatticeVector, p: &[f64; 3]) -> f64 {
    let k = k.to_f64();
    let v = (k[0] * p[0] + k[1] * p[1] + k[2] * p[2]).rem_euclid(1.0);
    if v >= 1.0 {
        0.0
    } else {
        v
    }
}

impl ClosedCurve for FloatGeodesic {
    fn direction(&self) -> &LatticeVector {
        &self.direction
    }

    fn phase(&self, k: &LatticeVector) -> f64 {
        float_phase(k, &self.origin)
    }

    fn relative_phase(&self, other: &Self, k: &LatticeVector) -> f64 {
        let d = [0, 1, 2].map(|i| other.origin[i] - self.origin[i]);
        float_phase(k, &d)
    }
}
