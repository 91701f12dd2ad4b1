//! Union of permuted extended tubes, locality checks at totally space-like
//! points, and per-point coverage queries against that union.

use std::fmt;

use itertools::Itertools;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cells::{interior_cell_formula, CellFormula};
use crate::error::{Error, Result};
use crate::geometry::{minkowski_square, to_diffs, PointConfig};
use crate::sampling::{self, Spread};
use crate::tube::{in_extended_tube, MembershipCertificate, Verdict};

/// Largest `m` enumerated over `P_m` unless overridden.
pub const DEFAULT_MAX_M: usize = 8;

/// Bijection on point labels, stored 0-based and written 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Self((0..m).collect())
    }

    pub fn reversal(m: usize) -> Self {
        Self((0..m).rev().collect())
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Self(images))
    }

    /// From 1-based images, the external form.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation("labels start at 1".into()));
        }
        Self::from_images(images.iter().map(|i| i - 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `(self ∘ rhs)(i) = self(rhs(i))`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.len() != rhs.len() {
            return Err(Error::PermutationSize {
                expected: self.len(),
                got: rhs.len(),
            });
        }
        Ok(Self(rhs.0.iter().map(|&i| self.0[i]).collect()))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Self(inv)
    }

    /// `(σ·cfg)_i = cfg_{σ(i)}`.
    pub fn apply(&self, cfg: &PointConfig) -> Result<PointConfig> {
        if self.len() != cfg.m() {
            return Err(Error::PermutationSize {
                expected: cfg.m(),
                got: self.len(),
            });
        }
        Ok(PointConfig::new(
            self.0.iter().map(|&i| cfg.points[i].clone()).collect(),
        ))
    }

    /// All of `P_m` in lexicographic order.
    pub fn all(m: usize) -> impl Iterator<Item = Permutation> {
        (0..m).permutations(m).map(Permutation)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|i| i + 1).join(" "))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.iter().map(|i| i + 1).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        Permutation::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnionMode {
    /// Stop at the first admitting permutation.
    First,
    /// Check every permutation.
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationCertificate {
    pub permutation: Permutation,
    pub certificate: MembershipCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionVerdict {
    pub verdict: Verdict,
    pub admitting_permutations: Vec<Permutation>,
    /// Every permutation examined, in lexicographic order.
    pub per_permutation_certificates: Vec<PermutationCertificate>,
}

impl UnionVerdict {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }

    /// Re-checks each certificate against its permuted configuration.
    pub fn verify(&self, cfg: &PointConfig) -> bool {
        let member = !self.admitting_permutations.is_empty();
        if member != self.is_member() {
            return false;
        }
        if !member && self.per_permutation_certificates.len() != factorial(cfg.m()) {
            return false;
        }
        self.per_permutation_certificates.iter().all(|pc| {
            let Ok(permuted) = pc.permutation.apply(cfg) else {
                return false;
            };
            let Ok(d) = to_diffs(&permuted) else {
                return false;
            };
            pc.certificate.verify(&d).is_ok()
                && (pc.certificate.is_member() == self.admitting_permutations.contains(&pc.permutation))
        })
    }
}

pub fn factorial(m: usize) -> usize {
    (1..=m).product()
}

fn guard(m: usize, max_m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::TooFewPoints(m));
    }
    if m > max_m {
        return Err(Error::ArityGuard { m, max: max_m });
    }
    Ok(())
}

/// Is some relabeling of `cfg` in the extended tube?
pub fn union_membership(cfg: &PointConfig, mode: UnionMode, max_m: usize) -> Result<UnionVerdict> {
    guard(cfg.m(), max_m)?;
    let mut admitting = Vec::new();
    let mut certs = Vec::new();
    for sigma in Permutation::all(cfg.m()) {
        let cert = in_extended_tube(&to_diffs(&sigma.apply(cfg)?)?)?;
        let hit = cert.is_member();
        if hit {
            admitting.push(sigma.clone());
        }
        certs.push(PermutationCertificate {
            permutation: sigma,
            certificate: cert,
        });
        if hit && mode == UnionMode::First {
            break;
        }
    }
    Ok(UnionVerdict {
        verdict: if admitting.is_empty() { Verdict::NonMember } else { Verdict::Member },
        admitting_permutations: admitting,
        per_permutation_certificates: certs,
    })
}

/// Cheap yes/no form of [`union_membership`].
pub fn is_union_member(cfg: &PointConfig) -> Result<bool> {
    if cfg.m() < 2 {
        return Err(Error::TooFewPoints(cfg.m()));
    }
    for sigma in Permutation::all(cfg.m()) {
        if in_extended_tube(&to_diffs(&sigma.apply(cfg)?)?)?.is_member() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// First pair `(i, j)` whose difference is not strictly space-like.
pub fn first_non_spacelike_pair(cfg: &PointConfig) -> Option<(usize, usize)> {
    (0..cfg.m()).tuple_combinations().find(|&(i, j)| {
        let sq = minkowski_square(&cfg.points[i].sub(&cfg.points[j]));
        !sq.re.is_negative()
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalityReport {
    pub m: usize,
    pub union: UnionVerdict,
    pub random_samples: usize,
    pub seed: u64,
    /// Random totally space-like configurations that were not union members.
    pub random_failures: Vec<PointConfig>,
}

impl LocalityReport {
    pub fn passed(&self) -> bool {
        self.union.is_member() && self.random_failures.is_empty()
    }
}

/// Checks a real totally space-like configuration, then `samples` random
/// ones with the same number of points.
pub fn spacelike_locality_check(
    cfg: &PointConfig,
    samples: usize,
    seed: u64,
    max_m: usize,
) -> Result<LocalityReport> {
    guard(cfg.m(), max_m)?;
    if let Some(i) = cfg.points.iter().position(|p| !p.is_real()) {
        return Err(Error::NotRealConfig(i));
    }
    if let Some((i, j)) = first_non_spacelike_pair(cfg) {
        return Err(Error::NotTotallySpacelike(i, j));
    }
    let union = union_membership(cfg, UnionMode::All, max_m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_failures = Vec::new();
    for _ in 0..samples {
        let p = sampling::totally_spacelike(&mut rng, cfg.m(), Spread::default());
        if !is_union_member(&p)? {
            random_failures.push(p);
        }
    }
    Ok(LocalityReport {
        m: cfg.m(),
        union,
        random_samples: samples,
        seed,
        random_failures,
    })
}

/// One permuted interior disjunct that holds at a probe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageHit {
    pub permutation: Permutation,
    /// Index into the interior formula's disjunction.
    pub disjunct: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeCoverage {
    pub probe: usize,
    pub covered: bool,
    pub satisfying: Vec<CoverageHit>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub m: usize,
    pub formulation: &'static str,
    pub probes: Vec<ProbeCoverage>,
}

impl CoverageReport {
    pub fn all_covered(&self) -> bool {
        self.probes.iter().all(|p| p.covered)
    }
}

/// Per-probe truth assignment of `OR_σ interior(σ·z)` for probes that
/// satisfy `formula`.
pub fn union_coverage_query(
    formula: &CellFormula,
    m: usize,
    probes: &[PointConfig],
    max_m: usize,
) -> Result<CoverageReport> {
    guard(m, max_m)?;
    let interior = interior_cell_formula(m)?;
    let mut out = Vec::with_capacity(probes.len());
    for (idx, probe) in probes.iter().enumerate() {
        if probe.m() != m {
            return Err(Error::ProbeArity {
                index: idx,
                expected: m,
                got: probe.m(),
            });
        }
        let d = to_diffs(probe)?;
        if d.len() < formula.arity() || !formula.satisfied_by(&d)? {
            return Err(Error::ProbeOutsideFormula(idx));
        }
        let mut satisfying = Vec::new();
        for sigma in Permutation::all(m) {
            let pd = to_diffs(&sigma.apply(probe)?)?;
            if let Some(disjunct) = interior.first_satisfied(&pd)? {
                satisfying.push(CoverageHit {
                    permutation: sigma,
                    disjunct,
                });
            }
        }
        out.push(ProbeCoverage {
            probe: idx,
            covered: !satisfying.is_empty(),
            satisfying,
        });
    }
    Ok(CoverageReport {
        m,
        formulation: "disjunction over permutations of the interior cell formula, evaluated per probe",
        probes: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{DiffConfig, LightConeVector};
    use crate::poly::{Coord, Poly, Relation, SignCondition, Var};
    use crate::scalar::GaussianRational;
    use crate::tube::is_jost_point;
    use crate::cells::CellLabel;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    fn two(u: GaussianRational, v: GaussianRational) -> PointConfig {
        PointConfig::from_diffs(&DiffConfig::new(vec![LightConeVector::new(u, v)]))
    }

    #[test]
    fn algebra() {
        let s = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        assert_eq!(s.compose(&s.inverse()).unwrap(), Permutation::identity(3));
        assert_eq!(s.compose(&s).unwrap().compose(&s).unwrap(), Permutation::identity(3));
        assert_eq!(s.to_string(), "(2 3 1)");
        assert!(Permutation::from_one_based(&[1, 1]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        let all: Vec<_> = Permutation::all(3).collect();
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[2,3,1]");
        assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), s);
    }

    #[test]
    fn apply_relabels() {
        let cfg = PointConfig::new(vec![
            LightConeVector::new(g(1, 0), g(0, 0)),
            LightConeVector::new(g(2, 0), g(0, 0)),
            LightConeVector::new(g(3, 0), g(0, 0)),
        ]);
        let s = Permutation::from_one_based(&[3, 1, 2]).unwrap();
        let p = s.apply(&cfg).unwrap();
        assert_eq!(p.points[0], cfg.points[2]);
        assert_eq!(p.points[1], cfg.points[0]);
        let t = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        // σ·(τ·cfg) = (τ∘σ)·cfg
        assert_eq!(s.apply(&t.apply(&cfg).unwrap()).unwrap(), t.compose(&s).unwrap().apply(&cfg).unwrap());
    }

    #[test]
    fn jost_pair_both_orders() {
        let cfg = two(g(1, 0), g(-1, 0));
        let u = union_membership(&cfg, UnionMode::All, DEFAULT_MAX_M).unwrap();
        assert!(u.is_member());
        assert_eq!(u.admitting_permutations.len(), 2);
        for s in Permutation::all(2) {
            let d = to_diffs(&s.apply(&cfg).unwrap()).unwrap();
            assert!(is_jost_point(&d).unwrap().is_jost);
        }
        assert!(u.verify(&cfg));
    }

    #[test]
    fn forward_pair_and_its_negative() {
        // λ = −1 maps (−i, −i) back to (i, i), so the swap admits as well.
        let cfg = two(g(0, 1), g(0, 1));
        let u = union_membership(&cfg, UnionMode::All, DEFAULT_MAX_M).unwrap();
        assert_eq!(u.admitting_permutations.len(), 2);
        let first = union_membership(&cfg, UnionMode::First, DEFAULT_MAX_M).unwrap();
        assert_eq!(first.admitting_permutations, vec![Permutation::identity(2)]);
        assert_eq!(first.per_permutation_certificates.len(), 1);
    }

    #[test]
    fn timelike_pair_excluded() {
        let cfg = two(g(1, 0), g(1, 0));
        let u = union_membership(&cfg, UnionMode::First, DEFAULT_MAX_M).unwrap();
        assert!(!u.is_member());
        assert_eq!(u.per_permutation_certificates.len(), 2);
        assert!(u.verify(&cfg));
    }

    #[test]
    fn guard_applies() {
        let cfg = PointConfig::new(vec![LightConeVector::zero(); 9]);
        assert_eq!(
            union_membership(&cfg, UnionMode::First, DEFAULT_MAX_M),
            Err(Error::ArityGuard { m: 9, max: 8 })
        );
    }

    #[test]
    fn locality_examples() {
        let r = spacelike_locality_check(&two(g(1, 0), g(-1, 0)), 20, 1, DEFAULT_MAX_M).unwrap();
        assert!(r.passed());
        assert_eq!(r.union.admitting_permutations.len(), 2);

        let d = DiffConfig::new(vec![
            LightConeVector::new(g(1, 0), g(-1, 0)),
            LightConeVector::new(g(1, 0), g(-1, 0)),
        ]);
        let r = spacelike_locality_check(&PointConfig::from_diffs(&d), 20, 2, DEFAULT_MAX_M).unwrap();
        assert!(r.passed());
        assert!(r.union.admitting_permutations.contains(&Permutation::identity(3)));

        assert_eq!(
            spacelike_locality_check(&two(g(1, 0), g(1, 0)), 0, 0, DEFAULT_MAX_M).unwrap_err(),
            Error::NotTotallySpacelike(0, 1)
        );
    }

    fn cond(d: usize, c: Coord, rel: Relation) -> SignCondition {
        SignCondition::new(Poly::var(Var::new(d, c)), rel)
    }

    #[test]
    fn coverage_examples() {
        let wedge = CellFormula {
            label: CellLabel::Interior,
            conditions: vec![cond(0, Coord::ReU, Relation::Positive), cond(0, Coord::ReV, Relation::Negative)],
        };
        let probes = vec![two(g(1, 0), g(-1, 0)), two(g(3, 0), g(-1, 0))];
        let r = union_coverage_query(&wedge, 2, &probes, DEFAULT_MAX_M).unwrap();
        assert!(r.all_covered());
        assert!(r.probes.iter().all(|p| p.satisfying[0].permutation.is_identity()));

        let fwd = CellFormula {
            label: CellLabel::Interior,
            conditions: vec![cond(0, Coord::ImU, Relation::Positive), cond(0, Coord::ImV, Relation::Positive)],
        };
        let r = union_coverage_query(&fwd, 2, &[two(g(0, 1), g(2, 3))], DEFAULT_MAX_M).unwrap();
        assert!(r.probes[0].satisfying.iter().any(|h| h.permutation.is_identity()));

        // real, u·v ≥ 0
        let uv = Poly::var(Var::new(0, Coord::ReU)).mul(&Poly::var(Var::new(0, Coord::ReV)));
        let cut = CellFormula {
            label: CellLabel::Interior,
            conditions: vec![
                SignCondition::new(uv, Relation::Positive),
                cond(0, Coord::ImU, Relation::Zero),
                cond(0, Coord::ImV, Relation::Zero),
            ],
        };
        let r = union_coverage_query(&cut, 2, &[two(g(1, 0), g(1, 0)), two(g(-2, 0), g(-5, 0))], DEFAULT_MAX_M)
            .unwrap();
        assert!(r.probes.iter().all(|p| !p.covered));

        assert_eq!(
            union_coverage_query(&cut, 2, &[two(g(1, 0), g(-1, 0))], DEFAULT_MAX_M).unwrap_err(),
            Error::ProbeOutsideFormula(0)
        );
    }
}
