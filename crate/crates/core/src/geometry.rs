//! Light-cone vectors, point and difference configurations, and the complex
//! Lorentz action in two space-time dimensions.
//!
//! With `u = z⁰ + z¹` and `v = z⁰ − z¹` the Minkowski square is `u·v`. The
//! proper complex Lorentz group acts as `(u, v) → (λu, λ⁻¹v)` for nonzero
//! complex `λ`; the spatial reflection `u ↔ v` is not part of it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{rat, GaussianRational};

/// One complexified space-time vector in light-cone coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LightConeVector {
    pub u: GaussianRational,
    pub v: GaussianRational,
}

impl LightConeVector {
    pub fn new(u: GaussianRational, v: GaussianRational) -> Self {
        Self { u, v }
    }

    pub fn zero() -> Self {
        Self::new(GaussianRational::zero(), GaussianRational::zero())
    }

    pub fn from_cartesian(t: &GaussianRational, x: &GaussianRational) -> Self {
        Self::new(t + x, t - x)
    }

    /// `(z⁰, z¹) = ((u + v)/2, (u − v)/2)`.
    pub fn to_cartesian(&self) -> (GaussianRational, GaussianRational) {
        let half = rat(1, 2);
        ((&self.u + &self.v).scale(&half), (&self.u - &self.v).scale(&half))
    }

    pub fn is_real(&self) -> bool {
        self.u.is_real() && self.v.is_real()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(&self.u + &rhs.u, &self.v + &rhs.v)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(&self.u - &rhs.u, &self.v - &rhs.v)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.u, -&self.v)
    }
}

pub fn minkowski_square(vec: &LightConeVector) -> GaussianRational {
    &vec.u * &vec.v
}

/// Ordered list of `m` field points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfig {
    pub points: Vec<LightConeVector>,
}

impl PointConfig {
    pub fn new(points: Vec<LightConeVector>) -> Self {
        Self { points }
    }

    /// Number of field points.
    pub fn m(&self) -> usize {
        self.points.len()
    }

    /// Total number of complex coordinates, `n = s·m` with `s = 2`.
    pub fn coordinate_count(&self) -> usize {
        2 * self.m()
    }

    pub fn translate(&self, shift: &LightConeVector) -> Self {
        Self::new(self.points.iter().map(|p| p.add(shift)).collect())
    }

    /// Rebuilds points from differences, with the last point at the origin.
    pub fn from_diffs(cfg: &DiffConfig) -> Self {
        let mut points = vec![LightConeVector::zero()];
        for d in cfg.diffs.iter().rev() {
            let next = points.last().unwrap().add(d);
            points.push(next);
        }
        points.reverse();
        Self::new(points)
    }

    pub fn is_real(&self) -> bool {
        self.points.iter().all(LightConeVector::is_real)
    }
}

/// Consecutive differences `ζ_j = z_j − z_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiffConfig {
    pub diffs: Vec<LightConeVector>,
}

impl DiffConfig {
    pub fn new(diffs: Vec<LightConeVector>) -> Self {
        Self { diffs }
    }

    pub fn len(&self) -> usize {
        self.diffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diffs.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.diffs.iter().all(LightConeVector::is_real)
    }

    /// `z_i − z_k` for `i < k`, as the sum of the consecutive run.
    pub fn span(&self, i: usize, k: usize) -> LightConeVector {
        self.diffs[i..k]
            .iter()
            .fold(LightConeVector::zero(), |acc, d| acc.add(d))
    }
}

pub fn to_diffs(cfg: &PointConfig) -> Result<DiffConfig> {
    if cfg.m() < 2 {
        return Err(Error::TooFewPoints(cfg.m()));
    }
    Ok(DiffConfig::new(
        cfg.points.windows(2).map(|w| w[0].sub(&w[1])).collect(),
    ))
}

pub fn lorentz_scale(cfg: &DiffConfig, lambda: &GaussianRational) -> Result<DiffConfig> {
    let inv = lambda.inverse().map_err(|_| Error::ZeroLambda)?;
    Ok(DiffConfig::new(
        cfg.diffs
            .iter()
            .map(|d| LightConeVector::new(lambda * &d.u, &inv * &d.v))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    fn lc(u: GaussianRational, v: GaussianRational) -> LightConeVector {
        LightConeVector::new(u, v)
    }

    #[test]
    fn scale_by_one_is_identity() {
        let cfg = DiffConfig::new(vec![lc(g(3, -1), g(0, 2)), lc(g(1, 1), g(-5, 0))]);
        assert_eq!(lorentz_scale(&cfg, &GaussianRational::one()).unwrap(), cfg);
    }

    #[test]
    fn scale_by_minus_one() {
        let cfg = DiffConfig::new(vec![lc(g(0, 1), g(0, 1))]);
        let out = lorentz_scale(&cfg, &g(-1, 0)).unwrap();
        assert_eq!(out.diffs, vec![lc(g(0, -1), g(0, -1))]);
        assert_eq!(minkowski_square(&out.diffs[0]), g(-1, 0));
    }

    #[test]
    fn scale_by_two() {
        let cfg = DiffConfig::new(vec![lc(g(1, 1), g(0, 2))]);
        let before = minkowski_square(&cfg.diffs[0]);
        let out = lorentz_scale(&cfg, &g(2, 0)).unwrap();
        assert_eq!(out.diffs, vec![lc(g(2, 2), g(0, 1))]);
        // independent recomputation of (1+i)(2i) = 2i + 2i² = -2 + 2i
        assert_eq!(before, g(-2, 2));
        assert_eq!(minkowski_square(&out.diffs[0]), g(-2, 2));
    }

    #[test]
    fn zero_lambda_rejected() {
        let cfg = DiffConfig::new(vec![lc(g(1, 0), g(1, 0))]);
        assert_eq!(lorentz_scale(&cfg, &g(0, 0)), Err(Error::ZeroLambda));
    }

    #[test]
    fn to_diffs_examples() {
        let p = PointConfig::new(vec![LightConeVector::zero(), LightConeVector::zero()]);
        assert_eq!(to_diffs(&p).unwrap().diffs, vec![LightConeVector::zero()]);

        let p = PointConfig::new(vec![lc(g(2, 0), g(3, 0)), lc(g(1, 0), g(1, 0))]);
        assert_eq!(to_diffs(&p).unwrap().diffs, vec![lc(g(1, 0), g(2, 0))]);

        let p = PointConfig::new(vec![
            lc(g(0, 1), g(0, 0)),
            lc(g(0, 0), g(0, 1)),
            lc(g(0, -1), g(0, 0)),
        ]);
        // (i − 0, 0 − i) and (0 − (−i), i − 0)
        assert_eq!(
            to_diffs(&p).unwrap().diffs,
            vec![lc(g(0, 1), g(0, -1)), lc(g(0, 1), g(0, 1))]
        );
    }

    #[test]
    fn too_few_points() {
        let p = PointConfig::new(vec![LightConeVector::zero()]);
        assert_eq!(to_diffs(&p), Err(Error::TooFewPoints(1)));
    }

    #[test]
    fn minkowski_square_examples() {
        assert_eq!(minkowski_square(&lc(g(0, 1), g(0, 1))), g(-1, 0));
        assert_eq!(minkowski_square(&lc(g(1, 0), g(-1, 0))), g(-1, 0));
        assert_eq!(minkowski_square(&lc(g(1, 1), g(1, -1))), g(2, 0));
        // numeric cross-check of the last one
        let (a, b, c, d) = (1.0f64, 1.0, 1.0, -1.0);
        assert_eq!((a * c - b * d, a * d + b * c), (2.0, 0.0));
    }

    #[test]
    fn cartesian_round_trip() {
        let v = lc(GaussianRational::new(rat(1, 3), int(2)), g(-4, 7));
        let (t, x) = v.to_cartesian();
        assert_eq!(LightConeVector::from_cartesian(&t, &x), v);
    }

    #[test]
    fn span_and_from_diffs() {
        let p = PointConfig::new(vec![
            lc(g(5, 1), g(0, 3)),
            lc(g(1, 1), g(-2, 0)),
            lc(g(0, -4), g(9, 9)),
        ]);
        let d = to_diffs(&p).unwrap();
        assert_eq!(d.span(0, 2), p.points[0].sub(&p.points[2]));
        let rebuilt = PointConfig::from_diffs(&d);
        assert_eq!(to_diffs(&rebuilt).unwrap(), d);
    }
}
