//! Heat-regularized spectral series for the linking number.
//!
//! The Laplacian on 1-forms of T³ has the eigenbasis `√2 f(2π k·x) e_c^*`
//! (`k ∈ ℤ³ \ {0}` up to sign, `c ∈ {1,2,3}`, `f ∈ {cos, sin}`) with eigenvalue
//! `λ = (2π‖k‖)²`. The linking number is the `t → 0` limit of
//!
//! ```text
//!     Σ_k e^{−λ_k t} ∫_Γ η_k · ∫_Υ ★(dη_k / λ_k)
//! ```
//!
//! For one pair of geodesics only the multiples `k = nβ` survive and the
//! series collapses to a heat-damped sawtooth in `frac(μ·β)`.
//!
//! Everything here is binary64. Sums run in ascending frequency order with
//! Neumaier compensation, so results are reproducible bit for bit.

use std::f64::consts::{PI, SQRT_2, TAU};

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geodesic::{ClosedCurve, MultiGeodesic};
use crate::hodge::{Basis, Phase, TrigPolyForm, TrigScalar};
use crate::lattice::{det3, primitive_orthogonal, LatticeVector};
use crate::ORIENTATION_SIGN;

/// Heat weight below which a term is treated as negligible when the number
/// of terms is chosen automatically.
pub const DEFAULT_AUTO_THRESHOLD: f64 = 1e-16;

/// Largest number of terms the automatic rule may ask for.
pub const MAX_AUTO_TERMS: u64 = 100_000_000;

/// Pairs with `frac(μ·β)` outside this window converge slowly in `t`.
pub const CONVERGENCE_WINDOW: (f64, f64) = (1.0 / 16.0, 15.0 / 16.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermCount {
    Auto,
    Fixed(u64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralParams {
    pub heat_time: f64,
    /// Number of β-multiples in the per-pair series.
    pub kmax: TermCount,
    /// Sup-norm frequency cutoff for the general series. `Auto` covers the
    /// same β-multiples as the per-pair series with automatic `kmax`.
    pub frequency_cutoff: TermCount,
    pub auto_threshold: f64,
}

impl SpectralParams {
    pub fn new(heat_time: f64) -> Self {
        SpectralParams {
            heat_time,
            kmax: TermCount::Auto,
            frequency_cutoff: TermCount::Auto,
            auto_threshold: DEFAULT_AUTO_THRESHOLD,
        }
    }

    pub fn with_kmax(mut self, kmax: TermCount) -> Self {
        self.kmax = kmax;
        self
    }

    pub fn with_frequency_cutoff(mut self, cutoff: TermCount) -> Self {
        self.frequency_cutoff = cutoff;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.heat_time.is_finite() && self.heat_time > 0.0) {
            return Err(Error::InvalidParams(format!("heat time must be positive, got {}", self.heat_time)));
        }
        if !(self.auto_threshold > 0.0 && self.auto_threshold < 1.0) {
            return Err(Error::InvalidParams(format!(
                "auto threshold must lie in (0, 1), got {}",
                self.auto_threshold
            )));
        }
        for count in [self.kmax, self.frequency_cutoff] {
            if count == TermCount::Fixed(0) {
                return Err(Error::InvalidParams("term counts must be positive".into()));
            }
        }
        Ok(())
    }

    /// Number of β-multiples summed for a pair with `‖β‖² = beta_norm_sq`.
    pub fn resolve_kmax(&self, beta_norm_sq: f64) -> Result<u64> {
        match self.kmax {
            TermCount::Fixed(n) => Ok(n),
            TermCount::Auto => auto_terms((TAU * TAU) * beta_norm_sq, self.heat_time, self.auto_threshold),
        }
    }
}

/// Smallest `K ≥ 1` with `exp(−a·t·K²) < threshold`.
fn auto_terms(a: f64, t: f64, threshold: f64) -> Result<u64> {
    if !(a > 0.0 && t > 0.0) {
        return Err(Error::InvalidParams("automatic term count needs a·t > 0".into()));
    }
    let bound = (-threshold.ln() / (a * t)).sqrt();
    if !bound.is_finite() || bound >= MAX_AUTO_TERMS as f64 {
        return Err(Error::InvalidParams(format!(
            "heat time {t} needs more than {MAX_AUTO_TERMS} terms"
        )));
    }
    let mut k = (bound.floor() as u64).max(1);
    while (-(a * t) * (k as f64) * (k as f64)).exp() >= threshold {
        k += 1;
    }
    while k > 1 && (-(a * t) * ((k - 1) as f64).powi(2)).exp() < threshold {
        k -= 1;
    }
    Ok(k)
}

/// Neumaier's compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// `sin(2π·turns)`, reduced by octant so that multiples of a quarter turn
/// come out exact.
pub fn sin_turns(turns: f64) -> f64 {
    let r = turns.rem_euclid(1.0);
    let quadrant = (r * 4.0).floor() as i64;
    let inner = r - quadrant as f64 * 0.25;
    let (s, c) = if inner == 0.0 {
        (0.0, 1.0)
    } else if inner <= 0.125 {
        let a = TAU * inner;
        (a.sin(), a.cos())
    } else {
        let a = TAU * (0.25 - inner);
        (a.cos(), a.sin())
    };
    match quadrant.rem_euclid(4) {
        0 => s,
        1 => c,
        2 => -s,
        _ => -c,
    }
}

/// `cos(2π·turns)`.
pub fn cos_turns(turns: f64) -> f64 {
    sin_turns(turns + 0.25)
}

fn phase_turns(phase: Phase, turns: f64) -> f64 {
    match phase {
        Phase::Cos => cos_turns(turns),
        Phase::Sin => sin_turns(turns),
    }
}

/// `∫₀¹ form(γ(t))(γ′) dt` for a 1-form with trigonometric coefficients.
///
/// Modes with `k·[γ] ≠ 0` integrate to zero over the closed curve; the others
/// are constant along it and contribute `f(2π k·ν)·(covector·[γ])`. The
/// covector pairing is summed exactly per mode before conversion to binary64.
pub fn line_integral<C: ClosedCurve>(form: &TrigPolyForm, curve: &C) -> Result<f64> {
    if form.degree() != 1 {
        return Err(Error::DegreeMismatch(form.degree(), 1));
    }
    let direction = curve.direction();
    let mut modes: Vec<(LatticeVector, Phase, TrigScalar)> = Vec::new();
    for (k, phase, basis, coeff) in form.terms() {
        if !k.dot(direction).is_zero() {
            continue;
        }
        let component = basis.indices().next().expect("1-form basis");
        let paired = coeff.scale(&crate::rational::Rational::from_integer(direction.0[component].clone()), 0);
        match modes.last_mut() {
            Some((lk, lp, acc)) if lk == k && *lp == phase => *acc = acc.add(&paired),
            _ => modes.push((k.clone(), phase, paired)),
        }
    }
    let mut total = CompensatedSum::default();
    for (k, phase, scalar) in modes {
        if scalar.is_zero() {
            continue;
        }
        total.add(scalar.to_f64() * phase_turns(phase, curve.phase(&k)));
    }
    Ok(total.value())
}

#[derive(Clone, Debug, PartialEq)]
pub enum Frequency {
    /// `n·β` for the pair's generator β.
    Multiple(u64),
    Vector(LatticeVector),
}

/// One term of a spectral series: `weight · ∫_Γ η · ∫_Υ ★(dη/λ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralTermRecord {
    pub k: Frequency,
    pub gamma_integral: f64,
    pub upsilon_integral: f64,
    pub weight: f64,
}

impl SpectralTermRecord {
    pub fn contribution(&self) -> f64 {
        self.weight * self.gamma_integral * self.upsilon_integral
    }
}

struct PairGeometry {
    beta_norm_sq: f64,
    det: f64,
    gamma_norm: f64,
    /// `frac(μ·β)` with `μ = origin(υ) − origin(γ)`.
    offset: f64,
}

fn pair_geometry<C: ClosedCurve>(g: &C, h: &C) -> Result<PairGeometry> {
    let beta = primitive_orthogonal(g.direction(), h.direction())?;
    Ok(PairGeometry {
        beta_norm_sq: beta.norm_sq().to_f64().unwrap_or(f64::INFINITY),
        det: det3(g.direction(), h.direction(), &beta).to_f64().unwrap_or(f64::NAN),
        gamma_norm: g.direction().norm_sq().to_f64().unwrap_or(f64::NAN).sqrt(),
        offset: g.relative_phase(h, &beta),
    })
}

/// The `k = nβ` term in the basis adapted to γ (`v¹ = [γ]/‖[γ]‖`, cosine phase):
/// `∫_γ η = √2‖[γ]‖` and `∫_υ ★dη/λ = −2√2π det([γ]/‖[γ]‖, [υ], nβ) sin(2πn μ·β) / λ`,
/// the latter in the reported orientation. The weight is 1 (no heat damping).
pub fn curve_pairing_terms<C: ClosedCurve>(g: &C, h: &C, n: u64) -> Result<SpectralTermRecord> {
    if n == 0 {
        return Err(Error::InvalidParams("multiple n must be at least 1".into()));
    }
    let geo = pair_geometry(g, h)?;
    Ok(pairing_record(&geo, n, 1.0))
}

fn pairing_record(geo: &PairGeometry, n: u64, weight: f64) -> SpectralTermRecord {
    let nf = n as f64;
    let lambda = (TAU * nf).powi(2) * geo.beta_norm_sq;
    let det_normalized = nf * geo.det / geo.gamma_norm;
    let star_d = -2.0 * SQRT_2 * PI * det_normalized * sin_turns(nf * geo.offset);
    SpectralTermRecord {
        k: Frequency::Multiple(n),
        gamma_integral: SQRT_2 * geo.gamma_norm,
        upsilon_integral: ORIENTATION_SIGN as f64 * star_d / lambda,
        weight,
    }
}

/// The per-pair series with heat weights, one record per β-multiple.
pub fn pair_series_terms<C: ClosedCurve>(g: &C, h: &C, params: &SpectralParams) -> Result<Vec<SpectralTermRecord>> {
    params.validate()?;
    let geo = match pair_geometry(g, h) {
        Ok(geo) => geo,
        Err(Error::Collinear) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let kmax = params.resolve_kmax(geo.beta_norm_sq)?;
    let a = TAU * TAU * geo.beta_norm_sq;
    Ok((1..=kmax)
        .map(|n| {
            let weight = (-a * (n as f64).powi(2) * params.heat_time).exp();
            pairing_record(&geo, n, weight)
        })
        .collect())
}

/// The heat-damped pair series
/// `Σ_{n=1}^{kmax} e^{−(2π‖β‖)²n²t} · det([γ],[υ],β) · sin(2πn μ·β) / (πn‖β‖²)`,
/// in the reported orientation. Collinear pairs give exactly 0.
pub fn pair_series<C: ClosedCurve>(g: &C, h: &C, params: &SpectralParams) -> Result<f64> {
    params.validate()?;
    let geo = match pair_geometry(g, h) {
        Ok(geo) => geo,
        Err(Error::Collinear) => return Ok(0.0),
        Err(e) => return Err(e),
    };
    let kmax = params.resolve_kmax(geo.beta_norm_sq)?;
    let a = TAU * TAU * geo.beta_norm_sq;
    // Right-handed value is −Σ(...); the reported orientation flips it.
    let scale = -(ORIENTATION_SIGN as f64) * geo.det / (PI * geo.beta_norm_sq);
    Ok(scale * damped_sawtooth(geo.offset, kmax, params.heat_time, a))
}

/// Sum of [`pair_series`] over every pair of components.
pub fn collection_pair_series(gamma: &MultiGeodesic, upsilon: &MultiGeodesic, params: &SpectralParams) -> Result<f64> {
    let mut total = CompensatedSum::default();
    for g in gamma.components() {
        for h in upsilon.components() {
            total.add(pair_series(g, h, params)?);
        }
    }
    Ok(total.value())
}

/// The pair value in the `t → 0` limit, `det/(π‖β‖²) · (π/2)(1 − 2x)`.
pub fn pair_limit<C: ClosedCurve>(g: &C, h: &C) -> Result<f64> {
    let geo = match pair_geometry(g, h) {
        Ok(geo) => geo,
        Err(Error::Collinear) => return Ok(0.0),
        Err(e) => return Err(e),
    };
    Ok(geo.det / (PI * geo.beta_norm_sq) * sawtooth_limit(geo.offset)?)
}

/// Sup-norm cutoff covering the β-multiples that the per-pair series with
/// automatic `kmax` would use, over every pair of components.
pub fn covering_cutoff<C: ClosedCurve>(gamma: &[C], upsilon: &[C], params: &SpectralParams) -> Result<u64> {
    let mut cutoff = 1;
    for g in gamma {
        for h in upsilon {
            if let Ok(beta) = primitive_orthogonal(g.direction(), h.direction()) {
                let kmax = params.resolve_kmax(beta.norm_sq().to_f64().unwrap_or(f64::INFINITY))?;
                let reach = beta.max_abs().to_u64().unwrap_or(u64::MAX).saturating_mul(kmax);
                cutoff = cutoff.max(reach);
            }
        }
    }
    Ok(cutoff)
}

fn small_direction<C: ClosedCurve>(c: &C) -> Result<[i64; 3]> {
    c.direction()
        .to_i64()
        .ok_or_else(|| Error::InvalidParams("direction too large for the frequency sweep".into()))
}

/// Integrals of one standard eigenform `√2 f(2π k·x) dx_c` against the
/// curves, mirroring [`line_integral`] on that single mode.
struct ModeIntegrals {
    /// `∫_Γ η` for `f = cos, sin`, indexed by covector `c`.
    gamma: [[f64; 3]; 2],
    /// `∫_Υ ★dη` (right-handed ★) for `f = cos, sin`.
    upsilon: [[f64; 3]; 2],
}

fn mode_integrals<C: ClosedCurve>(
    k: &LatticeVector,
    ki: [i64; 3],
    gamma: &[(C, [i64; 3])],
    upsilon: &[(C, [i64; 3])],
) -> ModeIntegrals {
    let dot = |a: [i64; 3], b: [i64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let mut out = ModeIntegrals {
        gamma: [[0.0; 3]; 2],
        upsilon: [[0.0; 3]; 2],
    };
    for (curve, d) in gamma {
        if dot(ki, *d) != 0 {
            continue;
        }
        let turns = curve.phase(k);
        let (c, s) = (cos_turns(turns), sin_turns(turns));
        for (i, &di) in d.iter().enumerate() {
            out.gamma[0][i] += SQRT_2 * c * di as f64;
            out.gamma[1][i] += SQRT_2 * s * di as f64;
        }
    }
    for (curve, d) in upsilon {
        if dot(ki, *d) != 0 {
            continue;
        }
        let turns = curve.phase(k);
        let (c, s) = (cos_turns(turns), sin_turns(turns));
        for i in 0..3 {
            // ★d(√2 f(2πk·x) dx_c) = 2√2π f'(2πk·x) (k × e_c)^*, and (k × e_c)·d = det(k, e_c, d).
            let mut e = [0i64; 3];
            e[i] = 1;
            let pairing = det3_i64(ki, e, *d) as f64;
            out.upsilon[0][i] += 2.0 * SQRT_2 * PI * (-s) * pairing;
            out.upsilon[1][i] += 2.0 * SQRT_2 * PI * c * pairing;
        }
    }
    out
}

fn det3_i64(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// The general series: every eigenform with `0 < ‖k‖∞ ≤ K`, one
/// representative per `±k`, three standard covectors and both phases.
///
/// Frequencies are visited in lexicographic order and summed with
/// compensation. Modes orthogonal to no Γ-component or to no Υ-component
/// vanish exactly and are skipped.
pub fn general_series<C: ClosedCurve + Clone>(gamma: &[C], upsilon: &[C], params: &SpectralParams) -> Result<f64> {
    params.validate()?;
    let cutoff = match params.frequency_cutoff {
        TermCount::Fixed(k) => k,
        TermCount::Auto => covering_cutoff(gamma, upsilon, params)?,
    };
    let cutoff = i64::try_from(cutoff).map_err(|_| Error::InvalidParams("frequency cutoff too large".into()))?;
    let gamma: Vec<(C, [i64; 3])> = gamma
        .iter()
        .map(|c| small_direction(c).map(|d| (c.clone(), d)))
        .collect::<Result<_>>()?;
    let upsilon: Vec<(C, [i64; 3])> = upsilon
        .iter()
        .map(|c| small_direction(c).map(|d| (c.clone(), d)))
        .collect::<Result<_>>()?;
    let dot = |a: [i64; 3], b: [i64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];

    let mut total = CompensatedSum::default();
    for k1 in 0..=cutoff {
        let k2_range = if k1 == 0 { 0..=cutoff } else { -cutoff..=cutoff };
        for k2 in k2_range {
            let k3_lo = if k1 == 0 && k2 == 0 { 1 } else { -cutoff };
            for k3 in k3_lo..=cutoff {
                let ki = [k1, k2, k3];
                if !gamma.iter().any(|(_, d)| dot(ki, *d) == 0) || !upsilon.iter().any(|(_, d)| dot(ki, *d) == 0) {
                    continue;
                }
                let k = LatticeVector::new(k1, k2, k3);
                let lambda = TAU * TAU * dot(ki, ki) as f64;
                let weight = (-lambda * params.heat_time).exp();
                if weight == 0.0 {
                    continue;
                }
                let m = mode_integrals(&k, ki, &gamma, &upsilon);
                for phase in 0..2 {
                    for c in 0..3 {
                        let a = m.gamma[phase][c];
                        let b = m.upsilon[phase][c];
                        if a != 0.0 && b != 0.0 {
                            total.add(weight * a * (ORIENTATION_SIGN as f64 * b / lambda));
                        }
                    }
                }
            }
        }
    }
    Ok(total.value())
}

/// `(π/2)(1 − 2x)` on `(0, 1)`, the sum of `Σ sin(2πkx)/k`.
pub fn sawtooth_limit(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("sawtooth limit needs 0 < x < 1, got {x}")));
    }
    Ok(PI / 2.0 * (1.0 - 2.0 * x))
}

/// `Σ_{k=1}^{K} e^{−a t k²} sin(2πkx)/k`; at `t = 0` the raw Fourier partial sum.
pub fn sawtooth_partial(x: f64, terms: u64, heat_time: f64, a: f64) -> f64 {
    damped_sawtooth(x, terms, heat_time, a)
}

/// Number of terms [`sawtooth_partial`] needs before `e^{−a t K²}` drops below `threshold`.
pub fn sawtooth_auto_terms(heat_time: f64, a: f64, threshold: f64) -> Result<u64> {
    auto_terms(a, heat_time, threshold)
}

fn damped_sawtooth(x: f64, terms: u64, heat_time: f64, a: f64) -> f64 {
    let x = x.rem_euclid(1.0);
    let mut total = CompensatedSum::default();
    for k in 1..=terms {
        let kf = k as f64;
        let weight = if heat_time == 0.0 { 1.0 } else { (-a * heat_time * kf * kf).exp() };
        if weight == 0.0 {
            break;
        }
        total.add(weight * sin_turns(kf * x) / kf);
    }
    total.value()
}

/// Heat weight of the leading term below which a pair series is still far
/// from its limit.
pub const LARGE_HEAT_TIME_WEIGHT: f64 = 0.5;

/// Warnings about slow convergence for the pairs of two collections.
pub fn convergence_warnings(gamma: &MultiGeodesic, upsilon: &MultiGeodesic, params: &SpectralParams) -> Vec<String> {
    let mut out = Vec::new();
    let mut large_t = false;
    for (i, g) in gamma.components().iter().enumerate() {
        for (j, h) in upsilon.components().iter().enumerate() {
            let Ok(geo) = pair_geometry(g, h) else { continue };
            if geo.offset < CONVERGENCE_WINDOW.0 || geo.offset > CONVERGENCE_WINDOW.1 {
                out.push(format!(
                    "pair gamma[{i}]/upsilon[{j}] has frac(mu.beta) = {} outside [1/16, 15/16]; convergence in t is slow",
                    geo.offset
                ));
            }
            if (-(TAU * TAU) * geo.beta_norm_sq * params.heat_time).exp() < LARGE_HEAT_TIME_WEIGHT {
                large_t = true;
            }
        }
    }
    if large_t {
        out.push(format!("heat time too large for convergence (t = {})", params.heat_time));
    }
    out
}

/// The single-mode 1-form `f(2π k·x)·dx_c`, for building line-integral inputs.
pub fn basis_mode(k: &LatticeVector, c: usize, phase: Phase) -> TrigPolyForm {
    TrigPolyForm::mode(k, phase, Basis::dx(c), TrigScalar::rational(crate::rational::rat(1, 1)))
}
