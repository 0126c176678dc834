//! Linking numbers of homologically trivial multi-geodesics on the flat
//! 3-torus T³ = ℝ³/ℤ³, computed three independent ways:
//!
//! * [`closed_form`]: an exact rational formula summed over pairs of components;
//! * [`spectral`]: the heat-regularized series over Laplace eigenforms of
//!   1-forms, evaluated in binary64;
//! * [`oracle`]: the topological definition, counting signed crossings of one
//!   collection through an explicit piecewise-linear surface bounded by the other.
//!
//! [`hodge`] carries the exact exterior calculus on trigonometric forms that
//! the spectral side rests on, and [`t2`] handles closed orbits of the geodesic
//! flow of the flat 2-torus, whose unit tangent bundle is T³.
//!
//! # Orientation
//!
//! Linking numbers change sign with the orientation of the ambient manifold.
//! Reported values use the orientation in which lifts of T² geodesic-flow
//! orbits link positively. Relative to the right-handed reading of ℝ³
//! (volume form `dx₁∧dx₂∧dx₃`, Hodge star `★dx₁ = dx₂∧dx₃`, surfaces oriented
//! outward-normal-first, crossing sign `det(υ′, ∂₁S, ∂₂S)`), this is the global
//! factor [`ORIENTATION_SIGN`]. The spectral and oracle routes compute in the
//! right-handed reading and multiply by it; the closed form is written
//! directly in the reported orientation.

pub mod closed_form;
pub mod error;
pub mod geodesic;
pub mod hodge;
pub mod lattice;
pub mod oracle;
pub mod rational;
pub mod spectral;
pub mod t2;

pub use closed_form::{linking_number, pair_term, LinkReport, PairTerm};
pub use error::{Error, Result};
pub use geodesic::{
    are_disjoint, homology_class, is_homologically_trivial, translate, ClosedCurve, FloatGeodesic, Geodesic,
    MultiGeodesic, Point3,
};
pub use lattice::{det3, primitive_orthogonal, LatticeVector};
pub use oracle::{oracle_link, Chain2};
pub use rational::{frac, Rational};
pub use spectral::{general_series, pair_series, SpectralParams, TermCount};
pub use t2::{corollary_link, T2Geodesic};

/// Reported linking numbers equal this factor times the right-handed ones.
pub const ORIENTATION_SIGN: i64 = -1;
