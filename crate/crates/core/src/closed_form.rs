//! Exact closed-form linking number of multi-geodesics in T³.
//!
//! For a pair of geodesics with non-collinear classes `[γ]`, `[υ]`, let β be
//! the positive primitive generator of `Span([γ],[υ])^⊥ ∩ ℤ³` and
//! `μ = origin(υ) − origin(γ)`. The pair contributes
//!
//! ```text
//!     det([γ], [υ], β) · (1 − 2·frac(μ·β)) / (2‖β‖²)
//! ```
//!
//! and collinear pairs contribute nothing. Summed over all pairs of two
//! homologically trivial collections, the total is an integer.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geodesic::{are_disjoint, is_homologically_trivial, point_sub, require_trivial, Geodesic, MultiGeodesic};
use crate::lattice::{det3, primitive_orthogonal, LatticeVector};
use crate::rational::{frac, Rational};

/// Global sign applied to the closed form. The closed form already uses the
/// reported orientation (see [`crate::ORIENTATION_SIGN`]), so no flip.
pub const CLOSED_FORM_SIGN: i64 = 1;

/// One summand of the closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTerm {
    pub gamma_index: usize,
    pub upsilon_index: usize,
    /// `None` for collinear directions.
    pub beta: Option<LatticeVector>,
    pub det3: BigInt,
    /// `frac(μ·β)`; zero for collinear pairs.
    pub mu_dot_beta_frac: Rational,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkReport {
    pub terms: Vec<PairTerm>,
    pub total: Rational,
    pub is_integer: bool,
    pub warnings: Vec<String>,
}

fn evaluate_pair(g: &Geodesic, h: &Geodesic) -> Result<(Option<LatticeVector>, BigInt, Rational, Rational)> {
    let beta = match primitive_orthogonal(g.direction(), h.direction()) {
        Ok(beta) => beta,
        Err(_) => {
            if !are_disjoint(g, h) {
                return Err(Error::SameCircle);
            }
            return Ok((None, BigInt::zero(), Rational::zero(), Rational::zero()));
        }
    };
    let mu = point_sub(h.origin(), g.origin());
    let x = frac(&beta.dot_point(&mu));
    if x.is_zero() {
        return Err(Error::IntersectingCurves(format!("{g} meets {h}")));
    }
    let det = det3(g.direction(), h.direction(), &beta);
    let one = Rational::one();
    let value = Rational::from_integer(&det * CLOSED_FORM_SIGN)
        * (&one - Rational::from_integer(BigInt::from(2)) * &x)
        / Rational::from_integer(BigInt::from(2) * beta.norm_sq());
    Ok((Some(beta), det, x, value))
}

/// The closed-form contribution of one pair.
pub fn pair_term(g: &Geodesic, h: &Geodesic) -> Result<Rational> {
    evaluate_pair(g, h).map(|(_, _, _, value)| value)
}

/// Sum of [`pair_term`] over every pair of components, with per-pair detail.
///
/// When both collections are homologically trivial the total must be an
/// integer; a fractional total is reported as [`Error::Internal`].
pub fn linking_number(gamma: &MultiGeodesic, upsilon: &MultiGeodesic, require_triviality: bool) -> Result<LinkReport> {
    if require_triviality {
        require_trivial(gamma)?;
        require_trivial(upsilon)?;
    }
    let mut terms = Vec::with_capacity(gamma.len() * upsilon.len());
    let mut total = Rational::zero();
    for (i, g) in gamma.components().iter().enumerate() {
        for (j, h) in upsilon.components().iter().enumerate() {
            let (beta, det3, mu_dot_beta_frac, value) = evaluate_pair(g, h).map_err(|e| match e {
                Error::SameCircle => Error::IntersectingCurves(format!("gamma[{i}] and upsilon[{j}] share a circle")),
                Error::IntersectingCurves(_) => Error::IntersectingCurves(format!("gamma[{i}] meets upsilon[{j}]")),
                other => other,
            })?;
            total += &value;
            terms.push(PairTerm {
                gamma_index: i,
                upsilon_index: j,
                beta,
                det3,
                mu_dot_beta_frac,
                value,
            });
        }
    }
    let is_integer = total.is_integer();
    if is_homologically_trivial(gamma) && is_homologically_trivial(upsilon) && !is_integer {
        return Err(Error::Internal(format!("closed-form total {total} is not an integer")));
    }
    let mut warnings = gamma.warnings("gamma");
    warnings.extend(upsilon.warnings("upsilon"));
    Ok(LinkReport {
        terms,
        total,
        is_integer,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn geo(d: [i64; 3], o: [(i64, i64); 3]) -> Geodesic {
        Geodesic::new(d.into(), o.map(|(n, q)| rat(n, q))).unwrap()
    }

    const O: [(i64, i64); 3] = [(0, 1), (0, 1), (0, 1)];

    /// Pair value with ν = origin(γ) − origin(υ) in place of μ; the two
    /// conventions differ by a global sign.
    fn pair_term_nu_convention(g: &Geodesic, h: &Geodesic) -> Rational {
        let beta = primitive_orthogonal(g.direction(), h.direction()).unwrap();
        let nu = point_sub(g.origin(), h.origin());
        let x = frac(&beta.dot_point(&nu));
        Rational::from_integer(det3(g.direction(), h.direction(), &beta)) * (int(1) - int(2) * x)
            / Rational::from_integer(BigInt::from(2) * beta.norm_sq())
    }

    #[test]
    fn pair_term_examples() {
        let g = geo([1, 0, 0], O);
        assert_eq!(pair_term(&g, &geo([0, 1, 0], [(0, 1), (0, 1), (1, 4)])).unwrap(), rat(1, 4));
        assert_eq!(pair_term(&g, &geo([0, 1, 0], [(0, 1), (0, 1), (1, 2)])).unwrap(), int(0));
        assert_eq!(
            pair_term(&geo([1, 1, 0], O), &geo([2, 2, 0], [(0, 1), (1, 3), (0, 1)])).unwrap(),
            int(0)
        );
    }

    #[test]
    fn pair_term_errors() {
        let g = geo([1, 0, 0], O);
        assert!(matches!(
            pair_term(&g, &geo([0, 1, 0], [(1, 2), (1, 2), (0, 1)])),
            Err(Error::IntersectingCurves(_))
        ));
        assert_eq!(pair_term(&g, &geo([-1, 0, 0], [(1, 3), (0, 1), (0, 1)])), Err(Error::SameCircle));
    }

    #[test]
    fn conventions_differ_by_sign() {
        let g = geo([2, 2, 3], [(1, 5), (0, 1), (1, 3)]);
        let h = geo([1, -1, 1], [(1, 2), (1, 7), (0, 1)]);
        assert_eq!(pair_term(&g, &h).unwrap(), -pair_term_nu_convention(&g, &h));
    }

    fn hopf() -> (MultiGeodesic, MultiGeodesic) {
        let gamma = MultiGeodesic::new(vec![geo([1, 0, 0], O), geo([-1, 0, 0], [(0, 1), (0, 1), (1, 2)])]).unwrap();
        let upsilon = MultiGeodesic::new(vec![
            geo([0, 1, 0], [(0, 1), (0, 1), (1, 4)]),
            geo([0, -1, 0], [(0, 1), (0, 1), (3, 4)]),
        ])
        .unwrap();
        (gamma, upsilon)
    }

    #[test]
    fn hopf_quadruple_is_one() {
        let (gamma, upsilon) = hopf();
        let report = linking_number(&gamma, &upsilon, true).unwrap();
        assert_eq!(report.total, int(1));
        assert!(report.is_integer);
        assert_eq!(report.terms.len(), 4);
        for t in &report.terms {
            assert_eq!(t.value, rat(1, 4));
            assert_eq!(t.det3, BigInt::from(1));
            assert_eq!(t.mu_dot_beta_frac, rat(1, 4));
        }
        let swapped = linking_number(&upsilon, &gamma, true).unwrap();
        assert_eq!(swapped.total, report.total);
    }

    #[test]
    fn parallel_fibers_are_unlinked() {
        let gamma = MultiGeodesic::new(vec![geo([1, 0, 0], O), geo([-1, 0, 0], [(0, 1), (1, 2), (1, 2)])]).unwrap();
        let upsilon = MultiGeodesic::new(vec![
            geo([1, 0, 0], [(0, 1), (1, 4), (0, 1)]),
            geo([-1, 0, 0], [(0, 1), (3, 4), (1, 2)]),
        ])
        .unwrap();
        let report = linking_number(&gamma, &upsilon, true).unwrap();
        assert_eq!(report.total, int(0));
        assert!(report.terms.iter().all(|t| t.beta.is_none()));
    }

    #[test]
    fn require_trivial_rejects_open_classes() {
        let gamma = MultiGeodesic::new(vec![geo([2, 2, 3], O)]).unwrap();
        let upsilon = MultiGeodesic::new(vec![geo([0, 1, 0], [(1, 3), (0, 1), (1, 4)])]).unwrap();
        assert!(matches!(
            linking_number(&gamma, &upsilon, true),
            Err(Error::NotHomologicallyTrivial(_))
        ));
        assert!(linking_number(&gamma, &upsilon, false).is_ok());
    }

    #[test]
    fn intra_collection_contact_is_a_warning() {
        let gamma = MultiGeodesic::new(vec![geo([1, 0, 0], O), geo([-1, 0, 0], O)]).unwrap();
        let upsilon = MultiGeodesic::new(vec![
            geo([0, 2, 0], [(0, 1), (0, 1), (1, 4)]),
            geo([0, -2, 0], [(0, 1), (0, 1), (3, 4)]),
        ])
        .unwrap();
        let report = linking_number(&gamma, &upsilon, true).unwrap();
        assert!(report.warnings.iter().any(|w| w.contains("intersect")));
        assert!(report.warnings.iter().any(|w| w.contains("non-primitive")));
    }
}
