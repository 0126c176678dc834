//! Exact exterior calculus on the flat 3-torus for forms whose coefficients
//! are trigonometric polynomials `f(2π k·x)`, `f ∈ {cos, sin}`.
//!
//! Coefficients are rationals times powers of 2π, with the power carried
//! symbolically, so `d`, `★`, `δ`, `Δ` and the L² pairing are all exact and
//! eigen-relations such as `Δη = (2π)²‖k‖²η` can be checked with zero tolerance.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::rational::{rat, to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Phase {
    Cos,
    Sin,
}

impl Phase {
    pub fn eval(self, theta: f64) -> f64 {
        match self {
            Phase::Cos => theta.cos(),
            Phase::Sin => theta.sin(),
        }
    }

    /// `f'` as `(sign, phase)`: `cos' = −sin`, `sin' = cos`.
    fn derivative(self) -> (i64, Phase) {
        match self {
            Phase::Cos => (-1, Phase::Sin),
            Phase::Sin => (1, Phase::Cos),
        }
    }
}

/// A finite sum `Σ c_p (2π)^p` with rational `c_p`.
///
/// A single monomial `coeff·(2π)^power` is the common case; sums appear
/// when forms of mixed homogeneity are added.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TrigScalar {
    by_power: BTreeMap<i32, Rational>,
}

impl TrigScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coeff: Rational, two_pi_power: i32) -> Self {
        let mut s = Self::zero();
        s.add_monomial(coeff, two_pi_power);
        s
    }

    pub fn rational(coeff: Rational) -> Self {
        Self::monomial(coeff, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.by_power.is_empty()
    }

    /// `Some((coeff, power))` when the value is a single monomial (or zero,
    /// reported as `(0, 0)`).
    pub fn as_monomial(&self) -> Option<(Rational, i32)> {
        match self.by_power.len() {
            0 => Some((Rational::zero(), 0)),
            1 => self.by_power.iter().next().map(|(p, c)| (c.clone(), *p)),
            _ => None,
        }
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.by_power.iter().map(|(p, c)| (*p, c))
    }

    fn add_monomial(&mut self, coeff: Rational, power: i32) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.by_power.entry(power).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.by_power.remove(&power);
        }
    }

    pub fn add(&self, other: &TrigScalar) -> TrigScalar {
        let mut out = self.clone();
        for (p, c) in &other.by_power {
            out.add_monomial(c.clone(), *p);
        }
        out
    }

    pub fn neg(&self) -> TrigScalar {
        self.scale(&rat(-1, 1), 0)
    }

    /// Multiplies by `coeff·(2π)^power`.
    pub fn scale(&self, coeff: &Rational, power: i32) -> TrigScalar {
        let mut out = TrigScalar::zero();
        for (p, c) in &self.by_power {
            out.add_monomial(c * coeff, p + power);
        }
        out
    }

    pub fn mul(&self, other: &TrigScalar) -> TrigScalar {
        let mut out = TrigScalar::zero();
        for (p, c) in &self.by_power {
            for (q, d) in &other.by_power {
                out.add_monomial(c * d, p + q);
            }
        }
        out
    }

    pub fn to_f64(&self) -> f64 {
        self.by_power
            .iter()
            .map(|(p, c)| to_f64(c) * TAU.powi(*p))
            .sum()
    }
}

impl fmt::Display for TrigScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .by_power
            .iter()
            .map(|(p, c)| if *p == 0 { format!("{c}") } else { format!("{c}·(2π)^{p}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A wedge monomial `dx_{i₁}∧…∧dx_{i_r}` with increasing indices, as a bit set
/// (bit 0 is `dx₁`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basis(u8);

impl Basis {
    pub const ONE: Basis = Basis(0);
    pub const VOLUME: Basis = Basis(0b111);

    /// `dx_{i+1}` for `i ∈ {0, 1, 2}`.
    pub fn dx(i: usize) -> Basis {
        assert!(i < 3);
        Basis(1 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Basis {
        Basis(indices.iter().fold(0u8, |acc, &i| acc | (1 << i)))
    }

    pub fn degree(self) -> u8 {
        self.0.count_ones() as u8
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..3).filter(move |i| self.0 & (1 << i) != 0)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    /// `dx_i ∧ self` as `(sign, basis)`, or `None` when it vanishes.
    fn wedge_left(self, i: usize) -> Option<(i64, Basis)> {
        if self.contains(i) {
            return None;
        }
        let before = (self.0 & ((1u8 << i) - 1)).count_ones();
        let sign = if before.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Basis(self.0 | (1 << i))))
    }

    /// `★self = sign · complement`, with `dx_I ∧ ★dx_I = dx₁∧dx₂∧dx₃`.
    fn star(self) -> (i64, Basis) {
        let complement = Basis(!self.0 & 0b111);
        let order: Vec<usize> = self.indices().chain(complement.indices()).collect();
        let inversions = (0..order.len())
            .flat_map(|a| (a + 1..order.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| order[a] > order[b])
            .count();
        (if inversions % 2 == 0 { 1 } else { -1 }, complement)
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices().map(|i| format!("dx{}", i + 1)).collect();
        write!(f, "{}", parts.join("∧"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct TermKey {
    k: LatticeVector,
    phase: Phase,
    basis: Basis,
}

/// A differential form of degree 0..=3 on T³ with trigonometric-polynomial
/// coefficients: `Σ s · f(2π k·x) · dx_I`.
///
/// Frequencies are stored canonically (first nonzero component positive);
/// the zero frequency only carries the cosine phase (constants).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrigPolyForm {
    degree: u8,
    terms: BTreeMap<TermKey, TrigScalar>,
}

/// Canonical representative of `±k` and the sign picked up by `f`.
fn canonical_frequency(k: &LatticeVector, phase: Phase) -> (LatticeVector, i64) {
    let first = k.0.iter().find(|c| !c.is_zero());
    match first {
        Some(c) if c.is_negative() => (-k, if phase == Phase::Sin { -1 } else { 1 }),
        _ => (k.clone(), 1),
    }
}

impl TrigPolyForm {
    pub fn zero(degree: u8) -> Self {
        assert!(degree <= 3, "form degree must be at most 3");
        TrigPolyForm {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The single-mode form `coeff · f(2π k·x) · dx_I`.
    pub fn mode(k: &LatticeVector, phase: Phase, basis: Basis, coeff: TrigScalar) -> Self {
        let mut form = TrigPolyForm::zero(basis.degree());
        form.add_term(k, phase, basis, coeff);
        form
    }

    pub fn constant(basis: Basis, coeff: Rational) -> Self {
        Self::mode(&LatticeVector::zero(), Phase::Cos, basis, TrigScalar::rational(coeff))
    }

    /// Adds `coeff · f(2π k·x) · dx_I`. Panics if the basis degree differs from the form's.
    pub fn add_term(&mut self, k: &LatticeVector, phase: Phase, basis: Basis, coeff: TrigScalar) {
        assert_eq!(basis.degree(), self.degree, "basis {basis} in a {}-form", self.degree);
        if k.is_zero() && phase == Phase::Sin {
            return;
        }
        let (k, sign) = canonical_frequency(k, phase);
        let coeff = if sign < 0 { coeff.neg() } else { coeff };
        let key = TermKey { k, phase, basis };
        let merged = match self.terms.remove(&key) {
            Some(existing) => existing.add(&coeff),
            None => coeff,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    /// Terms as `(k, phase, basis, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVector, Phase, Basis, &TrigScalar)> {
        self.terms.iter().map(|(key, c)| (&key.k, key.phase, key.basis, c))
    }

    pub fn add(&self, other: &TrigPolyForm) -> Result<TrigPolyForm> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (key, c) in &other.terms {
            out.add_term(&key.k, key.phase, key.basis, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TrigPolyForm) -> Result<TrigPolyForm> {
        self.add(&other.scale(&rat(-1, 1), 0))
    }

    /// Multiplies every coefficient by `coeff·(2π)^power`.
    pub fn scale(&self, coeff: &Rational, power: i32) -> TrigPolyForm {
        let mut out = TrigPolyForm::zero(self.degree);
        for (key, c) in &self.terms {
            out.add_term(&key.k, key.phase, key.basis, c.scale(coeff, power));
        }
        out
    }

    /// Pointwise value: coefficient of each basis monomial at `x`.
    pub fn evaluate(&self, x: [f64; 3]) -> BTreeMap<Basis, f64> {
        let mut out = BTreeMap::new();
        for (key, c) in &self.terms {
            let kx: f64 = key.k.to_f64().iter().zip(x).map(|(k, x)| k * x).sum();
            *out.entry(key.basis).or_insert(0.0) += c.to_f64() * key.phase.eval(TAU * kx);
        }
        out
    }
}

impl fmt::Display for TrigPolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(key, c)| {
                let fun = match key.phase {
                    Phase::Cos => "cos",
                    Phase::Sin => "sin",
                };
                format!("({c})·{fun}(2π{}·x)·{}", key.k, key.basis)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn exterior_d(form: &TrigPolyForm) -> Result<TrigPolyForm> {
    if form.degree >= 3 {
        return Err(Error::DegreeOverflow);
    }
    let mut out = TrigPolyForm::zero(form.degree + 1);
    for (key, c) in &form.terms {
        let (dsign, dphase) = key.phase.derivative();
        for (i, ki) in key.k.0.iter().enumerate() {
            if ki.is_zero() {
                continue;
            }
            if let Some((wsign, basis)) = key.basis.wedge_left(i) {
                let factor = Rational::from_integer(ki * BigInt::from(dsign * wsign));
                out.add_term(&key.k, dphase, basis, c.scale(&factor, 1));
            }
        }
    }
    Ok(out)
}

pub fn hodge_star(form: &TrigPolyForm) -> TrigPolyForm {
    let mut out = TrigPolyForm::zero(3 - form.degree);
    for (key, c) in &form.terms {
        let (sign, basis) = key.basis.star();
        out.add_term(&key.k, key.phase, basis, c.scale(&rat(sign, 1), 0));
    }
    out
}

/// `δ = (−1)^{3(k+1)+1} ★d★` on k-forms: `−★d★` on 1- and 3-forms, `+★d★` on 2-forms.
pub fn codifferential(form: &TrigPolyForm) -> Result<TrigPolyForm> {
    if form.degree == 0 {
        return Err(Error::DegreeUnderflow);
    }
    let inner = hodge_star(&exterior_d(&hodge_star(form))?);
    let exponent = 3 * (u32::from(form.degree) + 1) + 1;
    Ok(if exponent % 2 == 0 { inner } else { inner.scale(&rat(-1, 1), 0) })
}

/// `Δ = dδ + δd`.
pub fn laplacian(form: &TrigPolyForm) -> Result<TrigPolyForm> {
    let d_delta = if form.degree > 0 {
        exterior_d(&codifferential(form)?)?
    } else {
        TrigPolyForm::zero(0)
    };
    let delta_d = if form.degree < 3 {
        codifferential(&exterior_d(form)?)?
    } else {
        TrigPolyForm::zero(3)
    };
    d_delta.add(&delta_d)
}

/// `⟨a, b⟩ = ∫_{T³} a ∧ ★b`, exact by Fourier orthogonality.
pub fn inner_product(a: &TrigPolyForm, b: &TrigPolyForm) -> Result<TrigScalar> {
    if a.degree != b.degree {
        return Err(Error::DegreeMismatch(a.degree, b.degree));
    }
    let mut total = TrigScalar::zero();
    for (key, ca) in &a.terms {
        if let Some(cb) = b.terms.get(key) {
            let mean = if key.k.is_zero() { rat(1, 1) } else { rat(1, 2) };
            total = total.add(&ca.mul(cb).scale(&mean, 0));
        }
    }
    Ok(total)
}

/// The 1-form `f(2π k·x) · (v₁dx₁ + v₂dx₂ + v₃dx₃)`, without the √2 normalization.
pub fn eigenform(k: &LatticeVector, covector: &[Rational; 3], phase: Phase) -> Result<TrigPolyForm> {
    if k.is_zero() {
        return Err(Error::ZeroFrequency);
    }
    let mut form = TrigPolyForm::zero(1);
    for (i, v) in covector.iter().enumerate() {
        form.add_term(k, phase, Basis::dx(i), TrigScalar::rational(v.clone()));
    }
    Ok(form)
}

/// Eigenvalue `(2π‖k‖)²` of the Laplacian on the mode `k`, exactly.
pub fn eigenvalue(k: &LatticeVector) -> TrigScalar {
    TrigScalar::monomial(Rational::from_integer(k.norm_sq()), 2)
}
