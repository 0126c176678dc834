//! Random configurations shared by the integration tests.
#![allow(dead_code)]

use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use torus_link_core::geodesic::{are_disjoint, point_sub};
use torus_link_core::rational::{frac, rat, Rational};
use torus_link_core::t2::{corollary_link, T2Geodesic};
use torus_link_core::{primitive_orthogonal, Geodesic, LatticeVector, MultiGeodesic};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_origin(rng: &mut impl Rng, max_den: i64) -> [Rational; 3] {
    [0, 1, 2].map(|_| {
        let q = rng.gen_range(1..=max_den);
        rat(rng.gen_range(0..q), q)
    })
}

fn random_direction(rng: &mut impl Rng, bound: i64) -> LatticeVector {
    loop {
        let v = LatticeVector::new(
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
        );
        if !v.is_zero() {
            return v;
        }
    }
}

/// Nonzero directions with entries in `[-bound, bound]` summing to zero.
pub fn trivial_directions(rng: &mut impl Rng, count: usize, bound: i64) -> Vec<LatticeVector> {
    loop {
        let mut dirs: Vec<LatticeVector> = (0..count - 1).map(|_| random_direction(rng, bound)).collect();
        let sum = dirs.iter().fold(LatticeVector::zero(), |acc, d| &acc + d);
        let last = -&sum;
        let fits = last.to_i64().is_some_and(|c| c.iter().all(|x| x.abs() <= bound));
        if !last.is_zero() && fits {
            dirs.push(last);
            return dirs;
        }
    }
}

pub struct ConfigSpec {
    pub bound: i64,
    pub components: std::ops::RangeInclusive<usize>,
    pub max_den: i64,
    /// Require every non-collinear cross pair to have `frac(μ·β)` in `[w, 1 − w]`.
    pub window: Option<Rational>,
}

impl ConfigSpec {
    pub fn standard() -> Self {
        ConfigSpec {
            bound: 3,
            components: 2..=4,
            max_den: 16,
            window: Some(rat(1, 16)),
        }
    }
}

fn pair_ok(g: &Geodesic, h: &Geodesic, window: &Option<Rational>) -> bool {
    if !are_disjoint(g, h) {
        return false;
    }
    let (Some(w), Ok(beta)) = (window, primitive_orthogonal(g.direction(), h.direction())) else {
        return true;
    };
    let x = frac(&beta.dot_point(&point_sub(h.origin(), g.origin())));
    !x.is_zero() && &x >= w && x <= Rational::from_integer(1.into()) - w
}

/// A pair of homologically trivial collections with disjoint cross pairs.
pub fn random_config(rng: &mut impl Rng, spec: &ConfigSpec) -> (MultiGeodesic, MultiGeodesic) {
    let n_gamma = rng.gen_range(spec.components.clone());
    let n_upsilon = rng.gen_range(spec.components.clone());
    let gamma_dirs = trivial_directions(rng, n_gamma, spec.bound);
    let upsilon_dirs = trivial_directions(rng, n_upsilon, spec.bound);
    let gamma: Vec<Geodesic> = gamma_dirs
        .into_iter()
        .map(|d| Geodesic::new(d, random_origin(rng, spec.max_den)).unwrap())
        .collect();
    let mut upsilon = Vec::new();
    for d in upsilon_dirs {
        // Resample the origin until this component avoids all of Γ.
        let h = loop {
            let h = Geodesic::new(d.clone(), random_origin(rng, spec.max_den)).unwrap();
            if gamma.iter().all(|g| pair_ok(g, &h, &spec.window)) {
                break h;
            }
        };
        upsilon.push(h);
    }
    (MultiGeodesic::new(gamma).unwrap(), MultiGeodesic::new(upsilon).unwrap())
}

pub fn is_zero(x: &Rational) -> bool {
    x.is_zero()
}

fn random_t2_collection(rng: &mut impl Rng, n: usize, bound: i64, max_den: i64) -> Vec<T2Geodesic> {
    let dirs = loop {
        let mut dirs: Vec<[i64; 2]> = (0..n - 1)
            .map(|_| loop {
                let d = [rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)];
                if d != [0, 0] {
                    break d;
                }
            })
            .collect();
        let last = [-dirs.iter().map(|d| d[0]).sum::<i64>(), -dirs.iter().map(|d| d[1]).sum::<i64>()];
        if last != [0, 0] && last.iter().all(|c| c.abs() <= bound) {
            dirs.push(last);
            break dirs;
        }
    };
    dirs.into_iter()
        .map(|d| {
            let o = [0, 1].map(|_| {
                let q = rng.gen_range(1..=max_den);
                rat(rng.gen_range(0..q), q)
            });
            T2Geodesic::new(d, o).unwrap()
        })
        .collect()
}

/// Trivial T² collections whose lifts are disjoint.
pub fn random_t2_config(rng: &mut impl Rng, spec: &ConfigSpec) -> (Vec<T2Geodesic>, Vec<T2Geodesic>) {
    loop {
        let n_gamma = rng.gen_range(spec.components.clone());
        let n_upsilon = rng.gen_range(spec.components.clone());
        let gamma = random_t2_collection(rng, n_gamma, spec.bound, spec.max_den);
        let upsilon = random_t2_collection(rng, n_upsilon, spec.bound, spec.max_den);
        if corollary_link(&gamma, &upsilon).is_ok() {
            return (gamma, upsilon);
        }
    }
}
