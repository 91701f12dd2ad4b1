//! Seeded random generators for exact configurations.
//!
//! Everything draws from small numerators and denominators so that exact
//! coincidences (zero coordinates, antipodal normals, real invariants) show
//! up often enough to exercise the degenerate branches.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::geometry::{to_diffs, DiffConfig, LightConeVector, PointConfig};
use crate::scalar::{rat, GaussianRational, Rational};

/// Range of numerators and largest denominator for drawn rationals.
#[derive(Clone, Copy, Debug)]
pub struct Spread {
    pub max_abs_num: i64,
    pub max_den: i64,
}

impl Default for Spread {
    fn default() -> Self {
        Self {
            max_abs_num: 6,
            max_den: 4,
        }
    }
}

pub fn rational<R: Rng>(rng: &mut R, s: Spread) -> Rational {
    rat(
        rng.gen_range(-s.max_abs_num..=s.max_abs_num),
        rng.gen_range(1..=s.max_den),
    )
}

pub fn positive_rational<R: Rng>(rng: &mut R, s: Spread) -> Rational {
    rat(rng.gen_range(1..=s.max_abs_num), rng.gen_range(1..=s.max_den))
}

pub fn gaussian<R: Rng>(rng: &mut R, s: Spread) -> GaussianRational {
    GaussianRational::new(rational(rng, s), rational(rng, s))
}

pub fn nonzero_gaussian<R: Rng>(rng: &mut R, s: Spread) -> GaussianRational {
    loop {
        let z = gaussian(rng, s);
        if !z.is_zero() {
            return z;
        }
    }
}

/// Upper half-plane value.
pub fn upper_gaussian<R: Rng>(rng: &mut R, s: Spread) -> GaussianRational {
    GaussianRational::new(rational(rng, s), positive_rational(rng, s))
}

pub fn diff_config<R: Rng>(rng: &mut R, k: usize, s: Spread) -> DiffConfig {
    DiffConfig::new(
        (0..k)
            .map(|_| LightConeVector::new(gaussian(rng, s), gaussian(rng, s)))
            .collect(),
    )
}

pub fn real_diff_config<R: Rng>(rng: &mut R, k: usize, s: Spread) -> DiffConfig {
    DiffConfig::new(
        (0..k)
            .map(|_| {
                LightConeVector::new(
                    GaussianRational::real(rational(rng, s)),
                    GaussianRational::real(rational(rng, s)),
                )
            })
            .collect(),
    )
}

pub fn forward_diff_config<R: Rng>(rng: &mut R, k: usize, s: Spread) -> DiffConfig {
    DiffConfig::new(
        (0..k)
            .map(|_| LightConeVector::new(upper_gaussian(rng, s), upper_gaussian(rng, s)))
            .collect(),
    )
}

pub fn point_config<R: Rng>(rng: &mut R, m: usize, s: Spread) -> PointConfig {
    PointConfig::new(
        (0..m)
            .map(|_| LightConeVector::new(gaussian(rng, s), gaussian(rng, s)))
            .collect(),
    )
}

/// `n` distinct rationals in increasing order.
fn distinct_sorted<R: Rng>(rng: &mut R, n: usize, s: Spread) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(n);
    while out.len() < n {
        let r = rational(rng, Spread {
            max_abs_num: s.max_abs_num.max(n as i64),
            ..s
        });
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out.sort();
    out
}

/// Real configuration whose pairwise differences are all space-like:
/// ordering the points by `u` reverses their order by `v`.
pub fn totally_spacelike<R: Rng>(rng: &mut R, m: usize, s: Spread) -> PointConfig {
    let us = distinct_sorted(rng, m, s);
    let mut vs = distinct_sorted(rng, m, s);
    vs.reverse();
    let mut points: Vec<LightConeVector> = us
        .into_iter()
        .zip(vs)
        .map(|(u, v)| LightConeVector::new(GaussianRational::real(u), GaussianRational::real(v)))
        .collect();
    points.shuffle(rng);
    PointConfig::new(points)
}

/// A point configuration built to lie in some permuted extended tube: a
/// forward-tube configuration, rotated by a random `λ`, with labels shuffled.
pub fn planted_union_member<R: Rng>(rng: &mut R, m: usize, s: Spread) -> PointConfig {
    let fwd = forward_diff_config(rng, m - 1, s);
    let lambda = nonzero_gaussian(rng, s);
    let rotated = crate::geometry::lorentz_scale(&fwd, &lambda).expect("nonzero λ");
    let mut points = PointConfig::from_diffs(&rotated).points;
    let shift = LightConeVector::new(gaussian(rng, s), gaussian(rng, s));
    for p in &mut points {
        *p = p.add(&shift);
    }
    points.shuffle(rng);
    PointConfig::new(points)
}

pub fn diffs_of(cfg: &PointConfig) -> DiffConfig {
    to_diffs(cfg).expect("m >= 2")
}
