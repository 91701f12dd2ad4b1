//! Brute-force cross-checks for the exact engine.
//!
//! The membership oracle scans a fixed grid of primitive integer directions
//! (all Farey fractions of a given order, reflected into eight octants) and
//! tests each by substitution. A hit is a proof of membership. A miss only
//! means nothing was found at this resolution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::direction::Direction;
use crate::geometry::{lorentz_scale, minkowski_square, DiffConfig};
use crate::sampling::{self, Spread};
use crate::scalar::{GaussianRational, Rational};
use crate::tube::{in_extended_tube, single};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleConfig {
    /// Lower bound on the number of grid directions; at least 8.
    pub theta_steps: usize,
    /// Moduli `r` re-checked for every hit.
    pub modulus_samples: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            theta_steps: 256,
            modulus_samples: 3,
        }
    }
}

/// Number of terms in the Farey sequence of order `n`.
fn farey_len(n: i64) -> usize {
    1 + (1..=n).map(|k| (1..=k).filter(|j| j.gcd(&k) == 1).count()).sum::<usize>()
}

/// Smallest Farey order whose grid has at least `steps` directions.
pub fn grid_order(steps: usize) -> i64 {
    let steps = steps.max(8);
    (1..).find(|&n| 8 * farey_len(n) - 8 >= steps).unwrap()
}

/// Primitive `(x, y)` with `max(|x|, |y|) ≤ n`, counter-clockwise from `(1, 0)`.
pub fn direction_grid(theta_steps: usize) -> Vec<(i64, i64)> {
    let n = grid_order(theta_steps);
    // Farey sequence of order n by the next-term recurrence
    let mut octant = vec![(1i64, 0i64)];
    let (mut a, mut b, mut c, mut d) = (0i64, 1i64, 1i64, n);
    while c <= n {
        octant.push((d, c));
        let k = (n + b) / d;
        (a, b, c, d) = (c, d, k * c - a, k * d - b);
    }
    // octant: angles [0, π/4]; mirror to [π/4, π/2) and rotate by quarter turns
    let mut quadrant = octant.clone();
    quadrant.extend(octant.iter().rev().skip(1).map(|&(x, y)| (y, x)));
    quadrant.pop();
    let mut grid = Vec::with_capacity(4 * quadrant.len());
    let mut q = quadrant;
    for _ in 0..4 {
        grid.extend(q.iter().copied());
        q = q.iter().map(|&(x, y)| (-y, x)).collect();
    }
    grid
}

/// Positive rescaling of `z` to a Gaussian integer.
fn integer_scaled(z: &GaussianRational) -> (BigInt, BigInt) {
    let l = z.re.denom().lcm(z.im.denom());
    (
        z.re.numer() * (&l / z.re.denom()),
        z.im.numer() * (&l / z.im.denom()),
    )
}

/// Linear forms `(a, b)` with the condition `a·x + b·y > 0` at `w = (x, y)`:
/// `Im((x+iy)·u) > 0` and `Im((x−iy)·v) > 0`, the latter having the sign of
/// `Im(λ⁻¹v)`.
fn forms(cfg: &DiffConfig) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::with_capacity(2 * cfg.len());
    for d in &cfg.diffs {
        let (p, q) = integer_scaled(&d.u);
        out.push((q, p));
        let (p, q) = integer_scaled(&d.v);
        out.push((q, -p));
    }
    out
}

fn scan(forms: &[(BigInt, BigInt)], grid: &[(i64, i64)]) -> Option<(i64, i64)> {
    let small: Option<Vec<(i128, i128)>> = forms
        .iter()
        .map(|(a, b)| Some((a.to_i64()? as i128, b.to_i64()? as i128)))
        .collect();
    match small {
        Some(fs) => grid.iter().copied().find(|&(x, y)| {
            fs.iter().all(|&(a, b)| a * x as i128 + b * y as i128 > 0)
        }),
        None => grid.iter().copied().find(|&(x, y)| {
            let (x, y) = (BigInt::from(x), BigInt::from(y));
            forms.iter().all(|(a, b)| (a * &x + b * &y).is_positive())
        }),
    }
}

/// Direct substitution of `λ = r·(x + iy)`.
fn substitutes(cfg: &DiffConfig, x: i64, y: i64, r: &Rational) -> bool {
    let lambda = GaussianRational::new(r * Rational::from_integer(x.into()), r * Rational::from_integer(y.into()));
    let inv = lambda.inverse().expect("grid directions are nonzero");
    cfg.diffs.iter().all(|d| {
        let a = &lambda * &d.u;
        let b = &inv * &d.v;
        a.im.is_positive() && b.im.is_positive()
    })
}

fn modulus(k: usize) -> Rational {
    let n = BigInt::from(k as u64 + 1);
    if k % 2 == 0 {
        Rational::from_integer(n)
    } else {
        Rational::new(BigInt::one(), n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum OracleVerdict {
    Member {
        direction: Direction,
        grid_size: usize,
        /// Every sampled modulus also substitutes successfully.
        moduli_confirmed: bool,
    },
    NotFound {
        grid_size: usize,
    },
}

impl OracleVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, OracleVerdict::Member { .. })
    }
}

/// One-sided membership: `Member` is always correct; `NotFound` is not a proof.
pub fn oracle_extended_membership(cfg: &DiffConfig, oc: &OracleConfig) -> OracleVerdict {
    let grid = direction_grid(oc.theta_steps);
    let fs = forms(cfg);
    match scan(&fs, &grid) {
        Some((x, y)) => OracleVerdict::Member {
            direction: Direction::from_i64(x, y).unwrap(),
            grid_size: grid.len(),
            moduli_confirmed: (0..oc.modulus_samples).all(|k| substitutes(cfg, x, y, &modulus(k))),
        },
        None => OracleVerdict::NotFound {
            grid_size: grid.len(),
        },
    }
}

/// Rational approximation of `√a` for `a > 0`, exact for perfect squares.
pub fn sqrt_approx(a: &Rational, bits: u32) -> Rational {
    let nd = a.numer() * a.denom();
    let shift = BigInt::one() << (2 * bits);
    let root = (nd * &shift).sqrt();
    let r = Rational::new(root, (BigInt::one() << bits) * a.denom());
    if r.is_zero() {
        Rational::new(BigInt::one(), BigInt::one() << bits)
    } else {
        r
    }
}

/// Forward-tube pair `(u, v)` with `u·v = c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Preimage {
    pub u: GaussianRational,
    pub v: GaussianRational,
    /// Bits of precision used for `|c|`.
    pub bits: u32,
}

/// For `c` off `[0, ∞)`, `u` follows the half-angle of `c` using a rational
/// `r ≈ |c|` and `v = c/u` exactly, so the invariant is hit exactly. The
/// precision of `r` is raised until `Im v > 0`.
pub fn construct_preimage(c: &GaussianRational) -> Option<Preimage> {
    if c.on_nonnegative_real_axis() {
        return None;
    }
    if c.im.is_zero() {
        let t = sqrt_approx(&-&c.re, 16);
        let u = GaussianRational::new(Rational::zero(), t);
        let v = c.checked_div(&u).ok()?;
        return Some(Preimage { u, v, bits: 16 });
    }
    let s = if c.im.is_positive() { Rational::one() } else { -Rational::one() };
    let abs_sq = c.norm_sqr();
    for bits in (16..=1024).step_by(16) {
        let r = sqrt_approx(&abs_sq, bits);
        let u = (c + &GaussianRational::real(r)).scale(&s);
        let Ok(v) = c.checked_div(&u) else { continue };
        if u.im.is_positive() && v.im.is_positive() {
            return Some(Preimage { u, v, bits });
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutScanReport {
    pub seed: u64,
    pub samples: usize,
    /// Forward-tube points, boosted, whose invariant fell on `[0, ∞)`.
    pub cut_hits: Vec<GaussianRational>,
    /// Sampled points the exact engine failed to accept.
    pub engine_rejections: usize,
    pub targets: usize,
    /// Targets without a constructed member of exact invariant `c`.
    pub construction_failures: Vec<GaussianRational>,
    pub max_bits: u32,
}

impl CutScanReport {
    pub fn passed(&self) -> bool {
        self.cut_hits.is_empty() && self.engine_rejections == 0 && self.construction_failures.is_empty()
    }
}

pub fn oracle_cut_scan(samples: usize, targets: usize, seed: u64) -> CutScanReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = Spread::default();
    let mut cut_hits = Vec::new();
    let mut engine_rejections = 0;
    for _ in 0..samples {
        let u = sampling::upper_gaussian(&mut rng, s);
        let v = sampling::upper_gaussian(&mut rng, s);
        let lambda = sampling::nonzero_gaussian(&mut rng, s);
        let cfg = lorentz_scale(&single(u, v), &lambda).expect("nonzero λ");
        let inv = minkowski_square(&cfg.diffs[0]);
        if inv.on_nonnegative_real_axis() {
            cut_hits.push(inv);
        }
        if !in_extended_tube(&cfg).map(|c| c.is_member()).unwrap_or(false) {
            engine_rejections += 1;
        }
    }
    let mut construction_failures = Vec::new();
    let mut max_bits = 0;
    let mut drawn = 0;
    while drawn < targets {
        let c = sampling::gaussian(&mut rng, s);
        if c.on_nonnegative_real_axis() {
            continue;
        }
        drawn += 1;
        let ok = construct_preimage(&c).filter(|p| {
            max_bits = max_bits.max(p.bits);
            &p.u * &p.v == c
                && in_extended_tube(&single(p.u.clone(), p.v.clone()))
                    .map(|m| m.is_member())
                    .unwrap_or(false)
        });
        if ok.is_none() {
            construction_failures.push(c);
        }
    }
    CutScanReport {
        seed,
        samples,
        cut_hits,
        engine_rejections,
        targets,
        construction_failures,
        max_bits,
    }
}
