//! Integer vectors of ℤ³: homology classes, frequencies and the
//! orthogonal generator of a pair of classes.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(pub [BigInt; 3]);

impl LatticeVector {
    pub fn new(x: i64, y: i64, z: i64) -> Self {
        LatticeVector([BigInt::from(x), BigInt::from(y), BigInt::from(z)])
    }

    pub fn zero() -> Self {
        Self::new(0, 0, 0)
    }

    pub fn x(&self) -> &BigInt {
        &self.0[0]
    }

    pub fn y(&self) -> &BigInt {
        &self.0[1]
    }

    pub fn z(&self) -> &BigInt {
        &self.0[2]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Dot product with a rational point.
    pub fn dot_point(&self, p: &[Rational; 3]) -> Rational {
        self.0
            .iter()
            .zip(p)
            .map(|(a, b)| b * a)
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    pub fn cross(&self, other: &LatticeVector) -> LatticeVector {
        let [a1, a2, a3] = &self.0;
        let [b1, b2, b3] = &other.0;
        LatticeVector([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn norm_sq(&self) -> BigInt {
        self.dot(self)
    }

    pub fn scale(&self, n: &BigInt) -> LatticeVector {
        LatticeVector(self.0.clone().map(|c| c * n))
    }

    /// Positive gcd of the absolute values of the nonzero components; 0 for the zero vector.
    pub fn gcd(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
            .abs()
    }

    /// The vector divided by its gcd. The zero vector is returned unchanged.
    pub fn primitive(&self) -> LatticeVector {
        let g = self.gcd();
        if g.is_zero() {
            return self.clone();
        }
        LatticeVector(self.0.clone().map(|c| c / &g))
    }

    pub fn is_primitive(&self) -> bool {
        self.gcd() == BigInt::from(1)
    }

    pub fn is_collinear_with(&self, other: &LatticeVector) -> bool {
        self.cross(other).is_zero()
    }

    /// Sup norm.
    pub fn max_abs(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn to_f64(&self) -> [f64; 3] {
        self.0.clone().map(|c| c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn to_rational(&self) -> [Rational; 3] {
        self.0.clone().map(Rational::from_integer)
    }

    pub fn to_i64(&self) -> Option<[i64; 3]> {
        Some([self.0[0].to_i64()?, self.0[1].to_i64()?, self.0[2].to_i64()?])
    }
}

impl From<[i64; 3]> for LatticeVector {
    fn from(v: [i64; 3]) -> Self {
        LatticeVector::new(v[0], v[1], v[2])
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector([&self.0[0] + &rhs.0[0], &self.0[1] + &rhs.0[1], &self.0[2] + &rhs.0[2]])
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector([&self.0[0] - &rhs.0[0], &self.0[1] - &rhs.0[1], &self.0[2] - &rhs.0[2]])
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.clone().map(|c| -c))
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// det(a, b, c) = (a × b) · c.
pub fn det3(a: &LatticeVector, b: &LatticeVector, c: &LatticeVector) -> BigInt {
    a.cross(b).dot(c)
}

/// The generator β of Span(u, v)^⊥ ∩ ℤ³ with det(u, v, β) > 0.
///
/// The orthogonal lattice of two independent vectors is cyclic and generated
/// by `(u × v) / gcd(u × v)`; the sign makes `det(u, v, β) = ‖u × v‖² / gcd`
/// positive, and primitivity makes β the shortest such vector.
pub fn primitive_orthogonal(u: &LatticeVector, v: &LatticeVector) -> Result<LatticeVector> {
    let w = u.cross(v);
    if w.is_zero() {
        return Err(Error::Collinear);
    }
    Ok(w.primitive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lv(x: i64, y: i64, z: i64) -> LatticeVector {
        LatticeVector::new(x, y, z)
    }

    /// Shortest nonzero integer vector orthogonal to both, by brute-force scan.
    fn brute_force_shortest_orthogonal(u: &LatticeVector, v: &LatticeVector, radius: i64) -> Option<LatticeVector> {
        let mut best: Option<LatticeVector> = None;
        for x in -radius..=radius {
            for y in -radius..=radius {
                for z in -radius..=radius {
                    let w = lv(x, y, z);
                    if w.is_zero() || !w.dot(u).is_zero() || !w.dot(v).is_zero() {
                        continue;
                    }
                    if det3(u, v, &w) <= BigInt::zero() {
                        continue;
                    }
                    if best.as_ref().is_none_or(|b| w.norm_sq() < b.norm_sq()) {
                        best = Some(w);
                    }
                }
            }
        }
        best
    }

    #[test]
    fn primitive_orthogonal_examples() {
        assert_eq!(primitive_orthogonal(&lv(1, 0, 0), &lv(0, 1, 0)).unwrap(), lv(0, 0, 1));
        assert_eq!(primitive_orthogonal(&lv(2, 2, 3), &lv(1, 1, 1)).unwrap(), lv(-1, 1, 0));
        assert_eq!(primitive_orthogonal(&lv(2, 0, 0), &lv(0, 2, 0)).unwrap(), lv(0, 0, 1));
        assert_eq!(primitive_orthogonal(&lv(1, 2, 3), &lv(2, 4, 6)), Err(Error::Collinear));
    }

    #[test]
    fn brute_force_agrees_on_examples() {
        assert_eq!(
            brute_force_shortest_orthogonal(&lv(2, 2, 3), &lv(1, 1, 1), 5),
            Some(lv(-1, 1, 0))
        );
        assert_eq!(
            brute_force_shortest_orthogonal(&lv(2, 0, 0), &lv(0, 2, 0), 5),
            Some(lv(0, 0, 1))
        );
    }

    #[test]
    fn gcd_convention() {
        assert_eq!(lv(0, -4, 6).gcd(), BigInt::from(2));
        assert_eq!(lv(0, 0, 0).gcd(), BigInt::from(0));
        assert_eq!(lv(-3, 0, 0).gcd(), BigInt::from(3));
        assert_eq!(lv(0, -4, 6).primitive(), lv(0, -2, 3));
    }

    fn small_vec() -> impl Strategy<Value = LatticeVector> {
        prop::array::uniform3(-5i64..=5).prop_map(LatticeVector::from)
    }

    proptest! {
        #[test]
        fn beta_is_orthogonal_positive_and_antisymmetric(u in small_vec(), v in small_vec()) {
            prop_assume!(!u.cross(&v).is_zero());
            let beta = primitive_orthogonal(&u, &v).unwrap();
            prop_assert!(beta.dot(&u).is_zero());
            prop_assert!(beta.dot(&v).is_zero());
            let w = u.cross(&v);
            prop_assert_eq!(det3(&u, &v, &beta), w.norm_sq() / w.gcd());
            prop_assert!(det3(&u, &v, &beta) > BigInt::zero());
            prop_assert_eq!(primitive_orthogonal(&v, &u).unwrap(), -&beta);
        }

        #[test]
        fn beta_is_minimal(u in small_vec(), v in small_vec()) {
            prop_assume!(!u.cross(&v).is_zero());
            let beta = primitive_orthogonal(&u, &v).unwrap();
            let radius = beta.max_abs().to_i64().unwrap();
            let (u, v) = (u.to_i64().unwrap(), v.to_i64().unwrap());
            let beta_sq = beta.norm_sq().to_i64().unwrap();
            for x in -radius..=radius {
                for y in -radius..=radius {
                    for z in -radius..=radius {
                        let w = [x, y, z];
                        let dot = |a: [i64; 3]| a[0] * w[0] + a[1] * w[1] + a[2] * w[2];
                        if dot(u) == 0 && dot(v) == 0 && dot(w) < beta_sq {
                            prop_assert!(w == [0, 0, 0], "shorter orthogonal vector {:?}", w);
                        }
                    }
                }
            }
        }
    }
}
