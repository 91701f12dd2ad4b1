//! Exact membership in the forward tube and the extended tube for `s = 2`.
//!
//! `λ = r·e^{iθ}` maps difference `j` into the forward tube iff
//! `Im(λ u_j) > 0` and `Im(λ⁻¹ v_j) > 0`. Writing the direction of `λ` as
//! `w = (x, y)`, these read `(Im u_j, Re u_j)·w > 0` and
//! `(Im v_j, −Re v_j)·w > 0`. The modulus `r` never changes a sign, so
//! membership is a common-direction problem for open half-planes through the
//! origin.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::direction::{common_direction, CommonDirection, Direction};
use crate::error::{Error, Result};
use crate::geometry::{minkowski_square, DiffConfig, LightConeVector};
use crate::scalar::{GaussianRational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CondKind {
    U,
    V,
}

/// Which strict condition a half-plane came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConditionTag {
    pub kind: CondKind,
    pub index: usize,
}

impl ConditionTag {
    pub fn u(index: usize) -> Self {
        Self { kind: CondKind::U, index }
    }

    pub fn v(index: usize) -> Self {
        Self { kind: CondKind::V, index }
    }

    /// The light-cone coordinate this condition constrains.
    pub fn coordinate<'a>(&self, cfg: &'a DiffConfig) -> &'a GaussianRational {
        let d = &cfg.diffs[self.index];
        match self.kind {
            CondKind::U => &d.u,
            CondKind::V => &d.v,
        }
    }
}

impl fmt::Display for ConditionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.index)
    }
}

/// The open half-plane `{w : nx·x + ny·y > 0}` of admissible directions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfPlaneNormal {
    #[serde(with = "crate::json::rational")]
    pub nx: Rational,
    #[serde(with = "crate::json::rational")]
    pub ny: Rational,
    pub source: ConditionTag,
}

impl HalfPlaneNormal {
    pub fn for_condition(cfg: &DiffConfig, tag: ConditionTag) -> Self {
        let z = tag.coordinate(cfg);
        let (nx, ny) = match tag.kind {
            CondKind::U => (z.im.clone(), z.re.clone()),
            CondKind::V => (z.im.clone(), -&z.re),
        };
        Self { nx, ny, source: tag }
    }

    pub fn is_zero(&self) -> bool {
        self.nx.is_zero() && self.ny.is_zero()
    }

    pub fn direction(&self) -> Option<Direction> {
        Direction::from_rationals(&self.nx, &self.ny)
    }

    pub fn eval(&self, w: &Direction) -> Rational {
        let (x, y) = (Rational::from(w.x.clone()), Rational::from(w.y.clone()));
        &self.nx * x + &self.ny * y
    }
}

/// All `2(m−1)` conditions in the order U0, V0, U1, V1, …
pub fn condition_tags(cfg: &DiffConfig) -> Vec<ConditionTag> {
    (0..cfg.len())
        .flat_map(|j| [ConditionTag::u(j), ConditionTag::v(j)])
        .collect()
}

pub fn half_plane_normals(cfg: &DiffConfig) -> Vec<HalfPlaneNormal> {
    condition_tags(cfg)
        .into_iter()
        .map(|t| HalfPlaneNormal::for_condition(cfg, t))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Member,
    NonMember,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TubeKind {
    /// Fixed direction `λ = 1`.
    Forward,
    /// Any nonzero complex `λ`.
    Extended,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipCertificate {
    pub tube: TubeKind,
    pub verdict: Verdict,
    #[serde(with = "crate::json::opt_direction")]
    pub witness: Option<Direction>,
    pub infeasible_core: Option<Vec<HalfPlaneNormal>>,
    pub degenerate_condition: Option<ConditionTag>,
}

impl MembershipCertificate {
    fn member(tube: TubeKind, witness: Direction) -> Self {
        Self {
            tube,
            verdict: Verdict::Member,
            witness: Some(witness),
            infeasible_core: None,
            degenerate_condition: None,
        }
    }

    fn core(tube: TubeKind, core: Vec<HalfPlaneNormal>) -> Self {
        Self {
            tube,
            verdict: Verdict::NonMember,
            witness: None,
            infeasible_core: Some(core),
            degenerate_condition: None,
        }
    }

    fn degenerate(tag: ConditionTag) -> Self {
        Self {
            tube: TubeKind::Extended,
            verdict: Verdict::NonMember,
            witness: None,
            infeasible_core: None,
            degenerate_condition: Some(tag),
        }
    }

    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }

    /// Difference indices touched by the infeasible core, deduplicated.
    pub fn core_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = self
            .infeasible_core
            .iter()
            .flatten()
            .map(|n| n.source.index)
            .collect();
        idx.sort_unstable();
        idx.dedup();
        idx
    }

    /// Re-checks the certificate against `cfg` without using the solver
    /// that produced it.
    pub fn verify(&self, cfg: &DiffConfig) -> std::result::Result<(), CertificateFault> {
        match self.verdict {
            Verdict::Member => {
                let w = self.witness.as_ref().ok_or(CertificateFault::MissingWitness)?;
                if self.tube == TubeKind::Forward && (w.x != BigInt::from(1) || !w.y.is_zero()) {
                    return Err(CertificateFault::ForwardWitnessNotIdentity);
                }
                let lambda = direction_as_lambda(w, &Rational::from(BigInt::from(1)));
                if !maps_into_forward_tube(cfg, &lambda) {
                    return Err(CertificateFault::WitnessFails);
                }
                Ok(())
            }
            Verdict::NonMember => {
                if let Some(tag) = self.degenerate_condition {
                    if tag.index >= cfg.len() {
                        return Err(CertificateFault::UnknownSource(tag));
                    }
                    return if tag.coordinate(cfg).is_zero() {
                        Ok(())
                    } else {
                        Err(CertificateFault::NotDegenerate(tag))
                    };
                }
                let core = self
                    .infeasible_core
                    .as_ref()
                    .ok_or(CertificateFault::MissingCore)?;
                if core.is_empty() || core.len() > 3 {
                    return Err(CertificateFault::CoreSize(core.len()));
                }
                for n in core {
                    if n.source.index >= cfg.len() {
                        return Err(CertificateFault::UnknownSource(n.source));
                    }
                    if *n != HalfPlaneNormal::for_condition(cfg, n.source) {
                        return Err(CertificateFault::NormalMismatch(n.source));
                    }
                }
                let vecs: Vec<(Rational, Rational)> =
                    core.iter().map(|n| (n.nx.clone(), n.ny.clone())).collect();
                let unsat = match self.tube {
                    TubeKind::Forward => core.len() == 1 && !core[0].nx.is_positive(),
                    TubeKind::Extended => half_planes_unsatisfiable(&vecs),
                };
                if unsat {
                    Ok(())
                } else {
                    Err(CertificateFault::CoreSatisfiable)
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateFault {
    #[error("member certificate without a witness")]
    MissingWitness,
    #[error("forward-tube witness must be (1, 0)")]
    ForwardWitnessNotIdentity,
    #[error("witness direction does not map the configuration into the forward tube")]
    WitnessFails,
    #[error("non-member certificate carries neither core nor degenerate condition")]
    MissingCore,
    #[error("core has {0} conditions, expected 1 to 3")]
    CoreSize(usize),
    #[error("condition {0} does not exist in this configuration")]
    UnknownSource(ConditionTag),
    #[error("core normal for {0} does not match the configuration")]
    NormalMismatch(ConditionTag),
    #[error("condition {0} is not degenerate")]
    NotDegenerate(ConditionTag),
    #[error("core conditions are jointly satisfiable")]
    CoreSatisfiable,
}

/// Gordan-style test: open half-planes `n_k·w > 0` (k ≤ 3) have no common
/// point iff the origin lies in the convex hull of the normals.
pub fn half_planes_unsatisfiable(normals: &[(Rational, Rational)]) -> bool {
    let cross = |a: &(Rational, Rational), b: &(Rational, Rational)| &a.0 * &b.1 - &a.1 * &b.0;
    let dot = |a: &(Rational, Rational), b: &(Rational, Rational)| &a.0 * &b.0 + &a.1 * &b.1;
    let is_zero = |a: &(Rational, Rational)| a.0.is_zero() && a.1.is_zero();
    let antipodal = |a, b| cross(a, b).is_zero() && dot(a, b).is_negative();

    if normals.iter().any(is_zero) {
        return true;
    }
    match normals {
        [] | [_] => false,
        [a, b] => antipodal(a, b),
        [a, b, c] => {
            if antipodal(a, b) || antipodal(b, c) || antipodal(a, c) {
                return true;
            }
            let s = [cross(a, b), cross(b, c), cross(c, a)];
            if s.iter().all(Zero::is_zero) {
                return false;
            }
            s.iter().all(|x| !x.is_negative()) || s.iter().all(|x| !x.is_positive())
        }
        _ => panic!("at most three half-planes"),
    }
}

/// `λ = r·(x + iy)`.
pub fn direction_as_lambda(w: &Direction, modulus: &Rational) -> GaussianRational {
    GaussianRational::new(
        modulus * Rational::from(w.x.clone()),
        modulus * Rational::from(w.y.clone()),
    )
}

/// Direct substitution: do `Im(λu_j) > 0` and `Im(λ⁻¹v_j) > 0` hold for every j?
pub fn maps_into_forward_tube(cfg: &DiffConfig, lambda: &GaussianRational) -> bool {
    let Ok(inv) = lambda.inverse() else {
        return false;
    };
    cfg.diffs.iter().all(|d| {
        (lambda * &d.u).im.is_positive() && (&inv * &d.v).im.is_positive()
    })
}

pub fn in_forward_tube(cfg: &DiffConfig) -> Result<MembershipCertificate> {
    if cfg.is_empty() {
        return Err(Error::EmptyConfig);
    }
    for tag in condition_tags(cfg) {
        if !tag.coordinate(cfg).im.is_positive() {
            let n = HalfPlaneNormal::for_condition(cfg, tag);
            return Ok(MembershipCertificate::core(TubeKind::Forward, vec![n]));
        }
    }
    Ok(MembershipCertificate::member(
        TubeKind::Forward,
        Direction::from_i64(1, 0).unwrap(),
    ))
}

pub fn in_extended_tube(cfg: &DiffConfig) -> Result<MembershipCertificate> {
    if cfg.is_empty() {
        return Err(Error::EmptyConfig);
    }
    let normals = half_plane_normals(cfg);
    if let Some(n) = normals.iter().find(|n| n.is_zero()) {
        return Ok(MembershipCertificate::degenerate(n.source));
    }
    let dirs: Vec<Direction> = normals.iter().map(|n| n.direction().unwrap()).collect();
    Ok(match common_direction(&dirs) {
        CommonDirection::Feasible { witness, .. } => {
            MembershipCertificate::member(TubeKind::Extended, witness)
        }
        CommonDirection::Infeasible { core } => MembershipCertificate::core(
            TubeKind::Extended,
            core.into_iter().map(|i| normals[i].clone()).collect(),
        ),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JostVerdict {
    pub is_jost: bool,
    pub certificate: MembershipCertificate,
}

/// Real points of the extended tube: every `u_j` has one strict sign and
/// every `v_j` the opposite one.
pub fn is_jost_point(cfg: &DiffConfig) -> Result<JostVerdict> {
    if cfg.is_empty() {
        return Err(Error::EmptyConfig);
    }
    if let Some(j) = cfg.diffs.iter().position(|d| !d.is_real()) {
        return Err(Error::NotRealConfig(j));
    }
    let orient = |sign: i8| {
        cfg.diffs.iter().all(|d| {
            let (su, sv) = (signum(&d.u.re), signum(&d.v.re));
            su == sign && sv == -sign
        })
    };
    let is_jost = orient(1) || orient(-1);
    Ok(JostVerdict {
        is_jost,
        certificate: in_extended_tube(cfg)?,
    })
}

fn signum(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantImage {
    pub square: GaussianRational,
    /// `square` lies on `[0, ∞)`.
    pub on_cut: bool,
}

pub fn two_point_invariant_image(cfg: &DiffConfig) -> Result<InvariantImage> {
    if cfg.len() != 1 {
        return Err(Error::WrongArity {
            expected: 1,
            got: cfg.len(),
        });
    }
    let square = minkowski_square(&cfg.diffs[0]);
    let on_cut = square.on_nonnegative_real_axis();
    Ok(InvariantImage { square, on_cut })
}

/// Convenience for single-difference configurations.
pub fn single(u: GaussianRational, v: GaussianRational) -> DiffConfig {
    DiffConfig::new(vec![LightConeVector::new(u, v)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::lorentz_scale;
    use crate::scalar::rat;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    fn cfg(pairs: &[((i64, i64), (i64, i64))]) -> DiffConfig {
        DiffConfig::new(
            pairs
                .iter()
                .map(|&(u, v)| LightConeVector::new(g(u.0, u.1), g(v.0, v.1)))
                .collect(),
        )
    }

    fn dir(x: i64, y: i64) -> Direction {
        Direction::from_i64(x, y).unwrap()
    }

    #[test]
    fn forward_tube_examples() {
        let c = cfg(&[((0, 1), (0, 2))]);
        let cert = in_forward_tube(&c).unwrap();
        assert!(cert.is_member());
        assert_eq!(cert.witness, Some(dir(1, 0)));
        cert.verify(&c).unwrap();

        let c = cfg(&[((1, 0), (1, 0))]);
        let cert = in_forward_tube(&c).unwrap();
        assert!(!cert.is_member());
        assert_eq!(cert.infeasible_core.as_ref().unwrap()[0].source, ConditionTag::u(0));
        cert.verify(&c).unwrap();

        let c = cfg(&[((0, 1), (0, 1)), ((0, 1), (0, -1))]);
        let cert = in_forward_tube(&c).unwrap();
        assert!(!cert.is_member());
        assert_eq!(cert.infeasible_core.as_ref().unwrap()[0].source, ConditionTag::v(1));
        cert.verify(&c).unwrap();

        assert_eq!(in_forward_tube(&DiffConfig::new(vec![])), Err(Error::EmptyConfig));
    }

    #[test]
    fn extended_tube_examples() {
        let c = cfg(&[((1, 0), (-1, 0))]);
        let cert = in_extended_tube(&c).unwrap();
        assert!(cert.is_member());
        assert_eq!(cert.witness, Some(dir(0, 1)));
        // Im(i·1) = 1 and Im(conj(i)·(−1)) = 1
        assert_eq!((&g(0, 1) * &g(1, 0)).im, rat(1, 1));
        assert_eq!((&g(0, -1) * &g(-1, 0)).im, rat(1, 1));
        cert.verify(&c).unwrap();

        let c = cfg(&[((1, 0), (1, 0))]);
        let cert = in_extended_tube(&c).unwrap();
        assert!(!cert.is_member());
        let srcs: Vec<_> = cert.infeasible_core.as_ref().unwrap().iter().map(|n| n.source).collect();
        assert_eq!(srcs, vec![ConditionTag::u(0), ConditionTag::v(0)]);
        cert.verify(&c).unwrap();

        let c = cfg(&[((0, 1), (0, 1)), ((1, 0), (-1, 0))]);
        let cert = in_extended_tube(&c).unwrap();
        assert_eq!(cert.witness, Some(dir(1, 1)));
        cert.verify(&c).unwrap();

        let c = cfg(&[((0, 1), (0, 1)), ((0, -1), (0, -1))]);
        let cert = in_extended_tube(&c).unwrap();
        assert!(!cert.is_member());
        let core = cert.infeasible_core.as_ref().unwrap();
        assert_eq!(core.len(), 2);
        assert_eq!((&core[0].nx, &core[1].nx), (&rat(1, 1), &rat(-1, 1)));
        cert.verify(&c).unwrap();
    }

    #[test]
    fn degenerate_coordinate_certificate() {
        let c = cfg(&[((0, 1), (0, 1)), ((0, 0), (0, 1))]);
        let cert = in_extended_tube(&c).unwrap();
        assert_eq!(cert.degenerate_condition, Some(ConditionTag::u(1)));
        cert.verify(&c).unwrap();
    }

    #[test]
    fn tampered_certificates_fail() {
        let c = cfg(&[((1, 0), (-1, 0))]);
        let mut cert = in_extended_tube(&c).unwrap();
        cert.witness = Some(dir(0, -1));
        assert_eq!(cert.verify(&c), Err(CertificateFault::WitnessFails));

        let c = cfg(&[((1, 0), (1, 0))]);
        let mut cert = in_extended_tube(&c).unwrap();
        cert.infeasible_core.as_mut().unwrap().pop();
        assert_eq!(cert.verify(&c), Err(CertificateFault::CoreSatisfiable));

        let mut cert = in_extended_tube(&c).unwrap();
        cert.infeasible_core.as_mut().unwrap()[0].nx = rat(5, 1);
        assert!(matches!(cert.verify(&c), Err(CertificateFault::NormalMismatch(_))));
    }

    #[test]
    fn gordan_three_normals() {
        let v = |x: i64, y: i64| (rat(x, 1), rat(y, 1));
        assert!(half_planes_unsatisfiable(&[v(2, 1), v(-1, 2), v(-1, -3)]));
        assert!(half_planes_unsatisfiable(&[v(2, 1), v(-1, 2), v(1, -3)]));
        assert!(!half_planes_unsatisfiable(&[v(2, 1), v(-1, 2), v(1, -1)]));
        assert!(!half_planes_unsatisfiable(&[v(1, 0), v(2, 0), v(3, 0)]));
        assert!(half_planes_unsatisfiable(&[v(1, 0), v(2, 0), v(-3, 0)]));
        assert!(half_planes_unsatisfiable(&[v(1, 1), v(0, 0)]));
    }

    #[test]
    fn jost_examples() {
        assert!(is_jost_point(&cfg(&[((1, 0), (-1, 0))])).unwrap().is_jost);
        let j = is_jost_point(&cfg(&[((1, 0), (-1, 0)), ((2, 0), (-3, 0))])).unwrap();
        assert!(j.is_jost);
        assert_eq!(j.certificate.witness, Some(dir(0, 1)));
        assert!(!is_jost_point(&cfg(&[((1, 0), (-1, 0)), ((-1, 0), (1, 0))])).unwrap().is_jost);
        assert_eq!(
            is_jost_point(&cfg(&[((1, 0), (-1, 0)), ((1, 1), (1, 0))])),
            Err(Error::NotRealConfig(1))
        );
    }

    #[test]
    fn invariant_image_examples() {
        let img = two_point_invariant_image(&cfg(&[((0, 1), (0, 1))])).unwrap();
        assert_eq!((img.square, img.on_cut), (g(-1, 0), false));
        let img = two_point_invariant_image(&cfg(&[((1, 0), (1, 0))])).unwrap();
        assert_eq!((img.square, img.on_cut), (g(1, 0), true));
        let c = cfg(&[((1, 1), (1, -1))]);
        let img = two_point_invariant_image(&c).unwrap();
        assert_eq!((img.square, img.on_cut), (g(2, 0), true));
        assert!(!in_extended_tube(&c).unwrap().is_member());
        assert!(matches!(
            two_point_invariant_image(&cfg(&[((0, 1), (0, 1)), ((0, 1), (0, 1))])),
            Err(Error::WrongArity { .. })
        ));
    }

    #[test]
    fn witness_works_for_any_modulus() {
        let c = cfg(&[((3, -1), (2, 5)), ((1, 1), (-4, 1))]);
        let cert = in_extended_tube(&c).unwrap();
        assert!(cert.is_member());
        let w = cert.witness.unwrap();
        for r in [rat(1, 100), rat(1, 1), rat(7, 3), rat(1000, 1)] {
            let lam = direction_as_lambda(&w, &r);
            let image = lorentz_scale(&c, &lam).unwrap();
            assert!(in_forward_tube(&image).unwrap().is_member());
        }
    }
}
