//! Guess-and-verify extension of the union of permuted forward tubes.
//!
//! The deterministic step is the tube theorem: per difference index, the
//! imaginary parts allowed by each permuted copy are collected and their
//! convex hull taken. Hulls of disconnected unions can overshoot the true
//! domain (two opposite quadrants span the whole plane), so such bases are
//! marked and the verifier then also requires every pairwise invariant to
//! avoid the cut `[0, ∞)`.

use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::direction::{common_direction, CommonDirection, Direction};
use crate::error::{Error, Result};
use crate::geometry::{to_diffs, DiffConfig, LightConeVector, PointConfig};
use crate::permutation::Permutation;
use crate::scalar::{rat, GaussianRational, Rational};
use crate::tube::{half_planes_unsatisfiable, in_forward_tube, ConditionTag, HalfPlaneNormal};
use crate::uniformity::{pairwise_cut_hits, CutHit};

/// Open convex cone in the plane, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConeShape {
    /// Open sector counter-clockwise from `start` to `end`, narrower than π.
    Pointed { start: Direction, end: Direction },
    /// `{y : normal·y > 0}`.
    HalfPlane { normal: Direction },
    Full,
}

fn axis(x: i64, y: i64) -> Direction {
    Direction::from_i64(x, y).unwrap()
}

fn cross_r(a: &Direction, y: &(Rational, Rational)) -> Rational {
    Rational::from(a.x.clone()) * &y.1 - Rational::from(a.y.clone()) * &y.0
}

fn dot_r(a: &Direction, y: &(Rational, Rational)) -> Rational {
    Rational::from(a.x.clone()) * &y.0 + Rational::from(a.y.clone()) * &y.1
}

impl ConeShape {
    /// Directions whose open conic hull is this cone.
    pub fn generators(&self) -> Vec<Direction> {
        match self {
            ConeShape::Pointed { start, end } => vec![start.clone(), end.clone()],
            ConeShape::HalfPlane { normal } => vec![normal.rot_cw(), normal.clone(), normal.rot_ccw()],
            ConeShape::Full => vec![axis(1, 0), axis(0, 1), axis(-1, 0), axis(0, -1)],
        }
    }

    /// Rays bounding the cone.
    pub fn boundary_rays(&self) -> Vec<Direction> {
        match self {
            ConeShape::Pointed { start, end } => vec![start.clone(), end.clone()],
            ConeShape::HalfPlane { normal } => vec![normal.rot_cw(), normal.rot_ccw()],
            ConeShape::Full => vec![],
        }
    }

    /// Inward face normals: the cone is `{y : ν·y > 0 for all ν}`.
    pub fn inward_normals(&self) -> Vec<Direction> {
        match self {
            ConeShape::Pointed { start, end } => vec![start.rot_ccw(), end.rot_cw()],
            ConeShape::HalfPlane { normal } => vec![normal.clone()],
            ConeShape::Full => vec![],
        }
    }

    pub fn contains_direction(&self, d: &Direction) -> bool {
        match self {
            ConeShape::Pointed { start, end } => d.strictly_inside(start, end),
            ConeShape::HalfPlane { normal } => normal.dot(d).is_positive(),
            ConeShape::Full => true,
        }
    }

    pub fn contains(&self, y: &(Rational, Rational)) -> bool {
        match self {
            ConeShape::Pointed { start, end } => {
                cross_r(start, y).is_positive() && cross_r(end, y).is_negative()
            }
            ConeShape::HalfPlane { normal } => dot_r(normal, y).is_positive(),
            ConeShape::Full => true,
        }
    }

    pub fn negate(&self) -> Self {
        match self {
            ConeShape::Pointed { start, end } => ConeShape::Pointed {
                start: start.neg(),
                end: end.neg(),
            },
            ConeShape::HalfPlane { normal } => ConeShape::HalfPlane { normal: normal.neg() },
            ConeShape::Full => ConeShape::Full,
        }
    }

    /// Open conic hull of `dirs`. `None` when it has empty interior.
    pub fn hull_of(dirs: &[Direction]) -> Option<Self> {
        let mut uniq: Vec<Direction> = Vec::new();
        for d in dirs {
            if !uniq.contains(d) {
                uniq.push(d.clone());
            }
        }
        uniq.sort_by(|a, b| a.angle_cmp(b));
        let k = uniq.len();
        if k < 2 {
            return None;
        }
        for i in 0..k {
            let (a, b) = (&uniq[i], &uniq[(i + 1) % k]);
            if a.cross(b).is_negative() {
                return Some(ConeShape::Pointed {
                    start: b.clone(),
                    end: a.clone(),
                });
            }
        }
        if k == 2 {
            // a line through the origin
            return None;
        }
        for i in 0..k {
            let (a, b) = (&uniq[i], &uniq[(i + 1) % k]);
            if a.cross(b).is_zero() {
                return Some(ConeShape::HalfPlane { normal: a.rot_cw() });
            }
        }
        Some(ConeShape::Full)
    }
}

/// Tube base over the imaginary parts `(Im u, Im v)` of one difference.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConeBase {
    pub shape: ConeShape,
    /// The base is a hull that covers more than the union it came from.
    pub needs_cut_back: bool,
}

impl ConeBase {
    pub fn new(generators: &[(Rational, Rational)], index: usize) -> Result<Self> {
        let dirs: Option<Vec<Direction>> = generators
            .iter()
            .map(|(x, y)| Direction::from_rationals(x, y))
            .collect();
        let shape = dirs
            .and_then(|d| ConeShape::hull_of(&d))
            .ok_or(Error::EmptyBase(index))?;
        Ok(Self {
            shape,
            needs_cut_back: false,
        })
    }

    pub fn from_shape(shape: ConeShape) -> Self {
        Self {
            shape,
            needs_cut_back: false,
        }
    }

    /// `{Im u > 0, Im v > 0}`.
    pub fn forward_quadrant() -> Self {
        Self::from_shape(ConeShape::Pointed {
            start: axis(1, 0),
            end: axis(0, 1),
        })
    }
}

/// Hull of a union of open cones, flagged when the union leaves a gap inside
/// the hull.
pub fn hull_of_union(bases: &[ConeBase], index: usize) -> Result<ConeBase> {
    let gens: Vec<Direction> = bases.iter().flat_map(|b| b.shape.generators()).collect();
    let shape = ConeShape::hull_of(&gens).ok_or(Error::EmptyBase(index))?;
    let gap = bases.iter().flat_map(|b| b.shape.boundary_rays()).any(|r| {
        shape.contains_direction(&r) && !bases.iter().any(|b| b.shape.contains_direction(&r))
    });
    Ok(ConeBase {
        shape,
        needs_cut_back: gap || bases.iter().any(|b| b.needs_cut_back),
    })
}

/// Per-index bases after closing under the given permutations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extension {
    pub m: usize,
    pub permutations: Vec<Permutation>,
    pub bases: Vec<ConeBase>,
    pub passes: usize,
}

impl Extension {
    pub fn cut_back(&self) -> bool {
        self.bases.iter().any(|b| b.needs_cut_back)
    }
}

/// Contribution of the permuted copy `σ` to difference index `j`.
fn contribution(bases: &[ConeBase], sigma: &Permutation, j: usize) -> Result<ConeBase> {
    let inv = sigma.inverse();
    let (p, q) = (inv.image(j), inv.image(j + 1));
    let (lo, hi) = if p < q { (p, q) } else { (q, p) };
    let sum = hull_of_union(&bases[lo..hi], j)?;
    // a Minkowski sum of convex cones is the hull of their union, never a gap
    let sum = ConeBase {
        shape: sum.shape,
        needs_cut_back: bases[lo..hi].iter().any(|b| b.needs_cut_back),
    };
    Ok(if p < q {
        sum
    } else {
        ConeBase {
            shape: sum.shape.negate(),
            ..sum
        }
    })
}

/// Convex hull, per difference index, of the bases contributed by every
/// permuted copy, repeated until nothing changes.
pub fn convex_tube_extension(bases: &[ConeBase], permutations: &[Permutation]) -> Result<Extension> {
    let m = bases.len() + 1;
    if bases.is_empty() {
        return Err(Error::EmptyConfig);
    }
    for s in permutations {
        if s.len() != m {
            return Err(Error::PermutationSize {
                expected: m,
                got: s.len(),
            });
        }
    }
    let mut current = bases.to_vec();
    let mut passes = 0;
    loop {
        passes += 1;
        let mut next = Vec::with_capacity(current.len());
        for j in 0..current.len() {
            let mut parts = vec![current[j].clone()];
            for s in permutations {
                parts.push(contribution(&current, s, j)?);
            }
            next.push(hull_of_union(&parts, j)?);
        }
        if next == current {
            break;
        }
        current = next;
    }
    Ok(Extension {
        m,
        permutations: permutations.to_vec(),
        bases: current,
        passes,
    })
}

/// Face condition `sign·n·w > 0`, with `n` the U or V normal of `source`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCondition {
    pub source: ConditionTag,
    pub sign: i8,
    #[serde(serialize_with = "ser_pair")]
    pub normal: (Rational, Rational),
}

fn ser_pair<S: Serializer>(p: &(Rational, Rational), s: S) -> std::result::Result<S::Ok, S::Error> {
    GaussianRational::new(p.0.clone(), p.1.clone()).serialize(s)
}

fn face_conditions(d: &DiffConfig, ext: &Extension) -> Result<Vec<FaceCondition>> {
    let mut out = Vec::new();
    for (j, base) in ext.bases.iter().enumerate() {
        for nu in base.shape.inward_normals() {
            let (tag, sign) = if nu == axis(1, 0) {
                (ConditionTag::u(j), 1)
            } else if nu == axis(-1, 0) {
                (ConditionTag::u(j), -1)
            } else if nu == axis(0, 1) {
                (ConditionTag::v(j), 1)
            } else if nu == axis(0, -1) {
                (ConditionTag::v(j), -1)
            } else {
                return Err(Error::UnalignedBase(j));
            };
            let n = HalfPlaneNormal::for_condition(d, tag);
            let normal = if sign > 0 { (n.nx, n.ny) } else { (-n.nx, -n.ny) };
            out.push(FaceCondition {
                source: tag,
                sign,
                normal,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionCertificate {
    pub member: bool,
    #[serde(with = "crate::json::opt_direction")]
    pub witness: Option<Direction>,
    pub infeasible_core: Option<Vec<FaceCondition>>,
    pub degenerate_condition: Option<FaceCondition>,
    pub cut_hit: Option<CutHit>,
    pub cut_back_applied: bool,
}

impl ExtensionCertificate {
    /// Independent re-check against the candidate.
    pub fn verify(&self, candidate: &PointConfig, ext: &Extension) -> bool {
        let Ok(d) = to_diffs(candidate) else {
            return false;
        };
        if d.len() != ext.bases.len() || self.cut_back_applied != ext.cut_back() {
            return false;
        }
        let Ok(faces) = face_conditions(&d, ext) else {
            return false;
        };
        if self.member {
            let Some(w) = &self.witness else {
                return false;
            };
            let lambda = GaussianRational::new(Rational::from(w.x.clone()), Rational::from(w.y.clone()));
            let inv = lambda.inverse().expect("nonzero direction");
            let inside = d.diffs.iter().zip(&ext.bases).all(|(z, b)| {
                let y = ((&lambda * &z.u).im, (&inv * &z.v).im);
                b.shape.contains(&y)
            });
            return inside && (!ext.cut_back() || pairwise_cut_hits(candidate).is_empty());
        }
        if let Some(hit) = &self.cut_hit {
            let (i, j) = hit.pair;
            return ext.cut_back()
                && j < candidate.m()
                && i < j
                && {
                    let inv = crate::geometry::minkowski_square(&candidate.points[i].sub(&candidate.points[j]));
                    inv == hit.invariant && inv.on_nonnegative_real_axis()
                };
        }
        if let Some(c) = &self.degenerate_condition {
            return faces.contains(c) && c.normal.0.is_zero() && c.normal.1.is_zero();
        }
        match &self.infeasible_core {
            Some(core) if core.len() <= 3 && core.iter().all(|c| faces.contains(c)) => {
                let ns: Vec<(Rational, Rational)> = core.iter().map(|c| c.normal.clone()).collect();
                half_planes_unsatisfiable(&ns)
            }
            _ => false,
        }
    }
}

/// Is there a `λ` putting every difference's imaginary parts inside the
/// extended bases? When the bases overshoot, pairwise invariants must also
/// avoid the cut.
pub fn verify_extension(candidate: &PointConfig, ext: &Extension) -> Result<ExtensionCertificate> {
    let d = to_diffs(candidate)?;
    if d.len() != ext.bases.len() {
        return Err(Error::WrongArity {
            expected: ext.bases.len(),
            got: d.len(),
        });
    }
    let faces = face_conditions(&d, ext)?;
    let cut_back = ext.cut_back();
    let reject = |core, degenerate, cut_hit| ExtensionCertificate {
        member: false,
        witness: None,
        infeasible_core: core,
        degenerate_condition: degenerate,
        cut_hit,
        cut_back_applied: cut_back,
    };
    if let Some(f) = faces.iter().find(|f| f.normal.0.is_zero() && f.normal.1.is_zero()) {
        return Ok(reject(None, Some(f.clone()), None));
    }
    let witness = if faces.is_empty() {
        axis(1, 0)
    } else {
        let dirs: Vec<Direction> = faces
            .iter()
            .map(|f| Direction::from_rationals(&f.normal.0, &f.normal.1).unwrap())
            .collect();
        match common_direction(&dirs) {
            CommonDirection::Feasible { witness, .. } => witness,
            CommonDirection::Infeasible { core } => {
                return Ok(reject(Some(core.into_iter().map(|i| faces[i].clone()).collect()), None, None));
            }
        }
    };
    if cut_back {
        if let Some(hit) = pairwise_cut_hits(candidate).into_iter().next() {
            return Ok(reject(None, None, Some(hit)));
        }
    }
    Ok(ExtensionCertificate {
        member: true,
        witness: Some(witness),
        infeasible_core: None,
        degenerate_condition: None,
        cut_hit: None,
        cut_back_applied: cut_back,
    })
}

/// The domain proposals must leave: union over `permutations` of permuted
/// forward tubes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DomainDescriptor {
    pub m: usize,
    pub permutations: Vec<Permutation>,
}

impl DomainDescriptor {
    pub fn contains(&self, cfg: &PointConfig) -> Result<bool> {
        for s in &self.permutations {
            if in_forward_tube(&to_diffs(&s.apply(cfg)?)?)?.is_member() {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Proposal {
    pub candidate: Option<PointConfig>,
    pub draws_used: usize,
    pub rejected_members: usize,
    /// Draws on the cut, each with the offending pair as its stratum certificate.
    pub rejected_on_cut: Vec<CutHit>,
}

/// Differences with small imaginary parts, so draws sit near the real
/// boundary of the domain; a quarter of them are exactly real.
fn draw_candidate<R: Rng>(rng: &mut R, m: usize) -> PointConfig {
    let real = rng.gen_ratio(1, 4);
    let coord = |rng: &mut R| {
        let re = rat(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        let im = if real {
            Rational::zero()
        } else {
            rat(rng.gen_range(-2..=2), rng.gen_range(1..=3))
        };
        GaussianRational::new(re, im)
    };
    let diffs = (0..m - 1)
        .map(|_| {
            let u = coord(rng);
            let v = coord(rng);
            LightConeVector::new(u, v)
        })
        .collect();
    PointConfig::from_diffs(&DiffConfig::new(diffs))
}

/// Draws until a candidate lands outside the current domain and off every
/// cut, or `max_draws` runs out.
pub fn propose_extension_point<R: Rng>(
    domain: &DomainDescriptor,
    rng: &mut R,
    max_draws: usize,
) -> Result<Proposal> {
    if domain.m < 2 {
        return Err(Error::TooFewPoints(domain.m));
    }
    let mut p = Proposal {
        candidate: None,
        draws_used: 0,
        rejected_members: 0,
        rejected_on_cut: Vec::new(),
    };
    while p.draws_used < max_draws {
        p.draws_used += 1;
        let cand = draw_candidate(rng, domain.m);
        if domain.contains(&cand)? {
            p.rejected_members += 1;
            continue;
        }
        if let Some(hit) = pairwise_cut_hits(&cand).into_iter().next() {
            p.rejected_on_cut.push(hit);
            continue;
        }
        p.candidate = Some(cand);
        break;
    }
    Ok(p)
}

/// One emitted candidate with its verdict against the extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StreamItem {
    pub sequence: usize,
    pub draws_used: usize,
    pub rejected_members: usize,
    pub rejected_on_cut: Vec<CutHit>,
    pub candidate: PointConfig,
    pub certificate: ExtensionCertificate,
}

/// Seeded proposal stream, each candidate verified against `ext`.
pub fn extension_stream(
    domain: &DomainDescriptor,
    ext: &Extension,
    seed: u64,
    draws: usize,
) -> Result<Vec<StreamItem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut left = draws;
    let mut out = Vec::new();
    while left > 0 {
        let p = propose_extension_point(domain, &mut rng, left)?;
        left -= p.draws_used;
        if let Some(candidate) = p.candidate {
            let certificate = verify_extension(&candidate, ext)?;
            out.push(StreamItem {
                sequence: out.len(),
                draws_used: p.draws_used,
                rejected_members: p.rejected_members,
                rejected_on_cut: p.rejected_on_cut,
                candidate,
                certificate,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn d(x: i64, y: i64) -> Direction {
        axis(x, y)
    }

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    fn two(u: GaussianRational, v: GaussianRational) -> PointConfig {
        PointConfig::from_diffs(&DiffConfig::new(vec![LightConeVector::new(u, v)]))
    }

    fn upper() -> ConeBase {
        ConeBase::from_shape(ConeShape::HalfPlane { normal: d(1, 0) })
    }

    #[test]
    fn hull_shapes() {
        assert_eq!(
            ConeShape::hull_of(&[d(0, 1), d(1, 0)]),
            Some(ConeShape::Pointed { start: d(1, 0), end: d(0, 1) })
        );
        assert_eq!(ConeShape::hull_of(&[d(1, 0), d(-1, 0)]), None);
        assert_eq!(ConeShape::hull_of(&[d(1, 1)]), None);
        assert_eq!(
            ConeShape::hull_of(&[d(1, 0), d(0, 1), d(-1, 0)]),
            Some(ConeShape::HalfPlane { normal: d(0, 1) })
        );
        assert_eq!(ConeShape::hull_of(&[d(1, 0), d(-1, 1), d(-1, -1)]), Some(ConeShape::Full));
        assert_eq!(ConeBase::new(&[(int(0), int(0))], 3), Err(Error::EmptyBase(3)));
    }

    #[test]
    fn quadrant_is_its_own_hull() {
        let q = ConeBase::forward_quadrant();
        assert_eq!(hull_of_union(&[q.clone()], 0).unwrap(), q);
        let r = convex_tube_extension(&[q.clone()], &[Permutation::identity(2)]).unwrap();
        assert_eq!(r.bases, vec![q]);
        assert!(!r.cut_back());
    }

    #[test]
    fn opposite_quadrants_overshoot() {
        let q = ConeBase::forward_quadrant();
        let perms = [Permutation::identity(2), Permutation::reversal(2)];
        let r = convex_tube_extension(&[q], &perms).unwrap();
        assert_eq!(r.bases[0].shape, ConeShape::Full);
        assert!(r.cut_back());
    }

    #[test]
    fn quadrant_and_half_plane() {
        // y_u > 0 in the (Im u, Im v) plane is the normal (1, 0)
        let h = hull_of_union(&[ConeBase::forward_quadrant(), upper()], 0).unwrap();
        assert_eq!(h.shape, ConeShape::HalfPlane { normal: d(1, 0) });
        assert!(!h.needs_cut_back);
    }

    #[test]
    fn adjacent_quadrants_leave_a_ray() {
        let q2 = ConeBase::from_shape(ConeShape::Pointed { start: d(0, 1), end: d(-1, 0) });
        let h = hull_of_union(&[ConeBase::forward_quadrant(), q2], 0).unwrap();
        assert_eq!(h.shape, ConeShape::HalfPlane { normal: d(0, 1) });
        assert!(h.needs_cut_back);
    }

    #[test]
    fn idempotent_at_three_points() {
        let q = ConeBase::forward_quadrant();
        let perms: Vec<Permutation> = vec![
            Permutation::identity(3),
            Permutation::from_one_based(&[2, 1, 3]).unwrap(),
        ];
        let once = convex_tube_extension(&[q.clone(), q], &perms).unwrap();
        let twice = convex_tube_extension(&once.bases, &perms).unwrap();
        assert_eq!(once.bases, twice.bases);
    }

    #[test]
    fn verify_examples() {
        let q = ConeBase::forward_quadrant();
        let full = convex_tube_extension(&[q.clone()], &[Permutation::identity(2), Permutation::reversal(2)]).unwrap();
        // u·v = i, off the cut
        let c = two(g(1, 0), g(0, 1));
        let cert = verify_extension(&c, &full).unwrap();
        assert!(cert.member && cert.cut_back_applied);
        assert!(cert.verify(&c, &full));
        // u·v = 2, on the cut
        let c = two(g(1, 1), g(1, -1));
        let cert = verify_extension(&c, &full).unwrap();
        assert!(!cert.member && cert.cut_hit.is_some());
        assert!(cert.verify(&c, &full));

        let prim = convex_tube_extension(&[q], &[Permutation::identity(2)]).unwrap();
        let c = two(g(1, 0), g(1, 0));
        let cert = verify_extension(&c, &prim).unwrap();
        assert!(!cert.member);
        assert!(cert.infeasible_core.as_ref().unwrap().len() <= 3);
        assert!(cert.verify(&c, &prim));
        let c = two(g(0, 1), g(2, 1));
        let cert = verify_extension(&c, &prim).unwrap();
        assert!(cert.member && cert.verify(&c, &prim));
        let c = two(g(0, 0), g(2, 1));
        let cert = verify_extension(&c, &prim).unwrap();
        assert!(cert.degenerate_condition.is_some() && cert.verify(&c, &prim));
    }

    #[test]
    fn unaligned_rejected() {
        let tilted = ConeBase::from_shape(ConeShape::Pointed { start: d(1, 0), end: d(1, 1) });
        let ext = convex_tube_extension(&[tilted], &[]).unwrap();
        assert_eq!(
            verify_extension(&two(g(0, 1), g(0, 1)), &ext),
            Err(Error::UnalignedBase(0))
        );
    }

    #[test]
    fn proposals_leave_the_domain() {
        let dom = DomainDescriptor {
            m: 2,
            permutations: vec![Permutation::identity(2), Permutation::reversal(2)],
        };
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = propose_extension_point(&dom, &mut rng, 500).unwrap();
        let c = p.candidate.unwrap();
        assert!(!dom.contains(&c).unwrap());
        assert!(pairwise_cut_hits(&c).is_empty());
    }

    #[test]
    fn streams_repeat() {
        let dom = DomainDescriptor {
            m: 3,
            permutations: Permutation::all(3).collect(),
        };
        let ext = convex_tube_extension(
            &[ConeBase::forward_quadrant(), ConeBase::forward_quadrant()],
            &dom.permutations,
        )
        .unwrap();
        let a = extension_stream(&dom, &ext, 5, 200).unwrap();
        let b = extension_stream(&dom, &ext, 5, 200).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b);
        assert!(a.iter().any(|i| !i.rejected_on_cut.is_empty()));
        for item in &a {
            assert!(item.certificate.verify(&item.candidate, &ext));
        }
    }
}
