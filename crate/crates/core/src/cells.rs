//! Arrangement of the membership half-planes on the direction circle, the
//! quantifier-free membership formula, and boundary strata.
//!
//! Direction `w` is eliminated with an extreme-pair construction. If all
//! normals share one direction, `w = n_k` is a witness. Otherwise the
//! admissible arc is bounded by `rot₋₉₀(n_last)` and `rot₊₉₀(n_first)`, and
//! `w = rot₋₉₀(n_l − n_k)` is a witness, giving `n_i·w = cross(n_i, n_l) −
//! cross(n_i, n_k)`. Membership is the disjunction of these candidate
//! conjunctions over all `k` and all ordered pairs `(k, l)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::geometry::DiffConfig;
use crate::poly::{Coord, CoordValues, Poly, Relation, SignCondition, Var};
use crate::tube::{condition_tags, half_plane_normals, in_extended_tube, CondKind, ConditionTag};

/// Boundary stratum labels. `Joint` stands in for the `S`/`F` hypersurfaces,
/// which are not split further.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StratumTag {
    C(usize),
    Joint(usize, usize),
}

impl fmt::Display for StratumTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratumTag::C(j) => write!(f, "C({j})"),
            StratumTag::Joint(j, k) => write!(f, "JOINT({j},{k})"),
        }
    }
}

impl FromStr for StratumTag {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("bad stratum tag {s:?}");
        if let Some(body) = s.strip_prefix("C(").and_then(|b| b.strip_suffix(')')) {
            return body.parse().map(StratumTag::C).map_err(|_| bad());
        }
        if let Some(body) = s.strip_prefix("JOINT(").and_then(|b| b.strip_suffix(')')) {
            let (a, b) = body.split_once(',').ok_or_else(bad)?;
            let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            if a >= b {
                return Err(bad());
            }
            return Ok(StratumTag::Joint(a, b));
        }
        Err(bad())
    }
}

impl Serialize for StratumTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for StratumTag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellLabel {
    Interior,
    Boundary(StratumTag),
}

/// Conjunction of sign conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellFormula {
    pub label: CellLabel,
    pub conditions: Vec<SignCondition>,
}

impl CellFormula {
    pub fn arity(&self) -> usize {
        self.conditions.iter().map(|c| c.poly.arity()).max().unwrap_or(0)
    }

    pub fn holds_at(&self, point: &CoordValues) -> bool {
        self.conditions.iter().all(|c| c.holds(point))
    }

    /// Evaluates on `cfg`. Fails if the formula mentions a difference the
    /// configuration does not have.
    pub fn satisfied_by(&self, cfg: &DiffConfig) -> Result<bool> {
        if self.arity() > cfg.len() {
            return Err(Error::WrongArity {
                expected: self.arity(),
                got: cfg.len(),
            });
        }
        Ok(self.holds_at(&CoordValues::of(cfg)))
    }
}

/// Finite disjunction of cells: the membership region for `m` points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainFormula {
    pub m: usize,
    #[serde(rename = "or")]
    pub disjuncts: Vec<CellFormula>,
}

impl DomainFormula {
    /// Index of the first satisfied disjunct.
    pub fn first_satisfied(&self, cfg: &DiffConfig) -> Result<Option<usize>> {
        if cfg.len() != self.m - 1 {
            return Err(Error::WrongArity {
                expected: self.m - 1,
                got: cfg.len(),
            });
        }
        let vals = CoordValues::of(cfg);
        Ok(self.disjuncts.iter().position(|c| c.holds_at(&vals)))
    }

    pub fn satisfied_by(&self, cfg: &DiffConfig) -> Result<bool> {
        Ok(self.first_satisfied(cfg)?.is_some())
    }
}

fn normal_polys(tag: ConditionTag) -> (Poly, Poly) {
    let v = |c| Poly::var(Var::new(tag.index, c));
    match tag.kind {
        CondKind::U => (v(Coord::ImU), v(Coord::ReU)),
        CondKind::V => (v(Coord::ImV), v(Coord::ReV).neg()),
    }
}

fn dot(a: &(Poly, Poly), b: &(Poly, Poly)) -> Poly {
    a.0.mul(&b.0).add(&a.1.mul(&b.1))
}

fn cross(a: &(Poly, Poly), b: &(Poly, Poly)) -> Poly {
    a.0.mul(&b.1).sub(&a.1.mul(&b.0))
}

fn positive_cell(polys: impl IntoIterator<Item = Poly>) -> CellFormula {
    let mut conditions: Vec<SignCondition> = Vec::new();
    for p in polys {
        let c = SignCondition::new(p, Relation::Positive);
        if !conditions.contains(&c) {
            conditions.push(c);
        }
    }
    CellFormula {
        label: CellLabel::Interior,
        conditions,
    }
}

/// Quantifier-free description of extended-tube membership for `m` points,
/// in the `4(m−1)` real coordinates of the differences.
pub fn interior_cell_formula(m: usize) -> Result<DomainFormula> {
    if m < 2 {
        return Err(Error::BadArity(m));
    }
    let tags: Vec<ConditionTag> = (0..m - 1)
        .flat_map(|j| [ConditionTag::u(j), ConditionTag::v(j)])
        .collect();
    let normals: Vec<(Poly, Poly)> = tags.iter().map(|&t| normal_polys(t)).collect();

    let mut disjuncts = Vec::new();
    for nk in &normals {
        disjuncts.push(positive_cell(normals.iter().map(|ni| dot(ni, nk))));
    }
    for (k, nk) in normals.iter().enumerate() {
        for (l, nl) in normals.iter().enumerate() {
            if k == l {
                continue;
            }
            disjuncts.push(positive_cell(
                normals.iter().map(|ni| cross(ni, nl).sub(&cross(ni, nk))),
            ));
        }
    }
    Ok(DomainFormula { m, disjuncts })
}

/// Distinct normal direction with every condition that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MergedNormal {
    pub direction: Direction,
    pub sources: Vec<ConditionTag>,
}

/// Open arc between consecutive critical directions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionArc {
    pub start: Direction,
    pub end: Direction,
    /// An exact direction strictly inside the arc.
    pub sample: Direction,
    pub satisfied: Vec<ConditionTag>,
    pub admissible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrangement {
    pub normals: Vec<MergedNormal>,
    /// Directions where some condition changes sign, in angular order.
    pub critical: Vec<Direction>,
    pub arcs: Vec<DirectionArc>,
}

impl Arrangement {
    pub fn admissible_arcs(&self) -> impl Iterator<Item = &DirectionArc> {
        self.arcs.iter().filter(|a| a.admissible)
    }
}

/// Exact direction strictly inside the open arc from `start` to `end`,
/// weighted `a : b` towards the two ends. Arc width must be in `(0, π]`.
pub fn arc_interior(start: &Direction, end: &Direction, a: i64, b: i64) -> Direction {
    let c = start.cross(end);
    if c.is_positive() {
        Direction::from_ints(&start.x * a + &end.x * b, &start.y * a + &end.y * b).unwrap()
    } else {
        // half-turn: tilt the perpendicular towards one end
        let mid = start.rot_ccw();
        Direction::from_ints(
            &mid.x * (a + b) + &start.x * (a - b),
            &mid.y * (a + b) + &start.y * (a - b),
        )
        .unwrap()
    }
}

pub fn build_arrangement(cfg: &DiffConfig) -> Result<Arrangement> {
    if cfg.is_empty() {
        return Err(Error::EmptyConfig);
    }
    let normals = half_plane_normals(cfg);
    if let Some(n) = normals.iter().find(|n| n.is_zero()) {
        return Err(Error::DegenerateCoordinate(n.source));
    }

    let mut merged: Vec<MergedNormal> = Vec::new();
    for n in &normals {
        let d = n.direction().unwrap();
        match merged.iter_mut().find(|m| m.direction == d) {
            Some(m) => m.sources.push(n.source),
            None => merged.push(MergedNormal {
                direction: d,
                sources: vec![n.source],
            }),
        }
    }
    merged.sort_by(|a, b| a.direction.angle_cmp(&b.direction));

    let mut critical: Vec<Direction> = Vec::new();
    for m in &merged {
        for c in [m.direction.rot_ccw(), m.direction.rot_cw()] {
            if !critical.contains(&c) {
                critical.push(c);
            }
        }
    }
    critical.sort_by(|a, b| a.angle_cmp(b));

    let total = normals.len();
    let arcs = (0..critical.len())
        .map(|i| {
            let start = critical[i].clone();
            let end = critical[(i + 1) % critical.len()].clone();
            let sample = arc_interior(&start, &end, 1, 1);
            let satisfied: Vec<ConditionTag> = normals
                .iter()
                .filter(|n| n.eval(&sample).is_positive())
                .map(|n| n.source)
                .collect();
            let admissible = satisfied.len() == total;
            DirectionArc {
                start,
                end,
                sample,
                satisfied,
                admissible,
            }
        })
        .collect();

    Ok(Arrangement {
        normals: merged,
        critical,
        arcs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryStratum {
    pub tag: StratumTag,
    pub active_conditions: Vec<SignCondition>,
}

fn coordinate_vars(tag: ConditionTag) -> (Var, Var) {
    match tag.kind {
        CondKind::U => (Var::new(tag.index, Coord::ReU), Var::new(tag.index, Coord::ImU)),
        CondKind::V => (Var::new(tag.index, Coord::ReV), Var::new(tag.index, Coord::ImV)),
    }
}

/// Degenerate strata met by a non-member: null coordinates and antipodal
/// normal pairs. A pair within one difference is a cut `C(j)`; a pair across
/// two differences is `JOINT(j, k)`.
pub fn classify_boundary(cfg: &DiffConfig) -> Result<Vec<BoundaryStratum>> {
    if in_extended_tube(cfg)?.is_member() {
        return Err(Error::NotOnBoundary);
    }
    let mut strata: BTreeMap<StratumTag, Vec<SignCondition>> = BTreeMap::new();
    let mut push = |tag: StratumTag, conds: Vec<SignCondition>| {
        let slot = strata.entry(tag).or_default();
        for c in conds {
            if !slot.contains(&c) {
                slot.push(c);
            }
        }
    };

    let normals = half_plane_normals(cfg);
    for n in normals.iter().filter(|n| n.is_zero()) {
        let (re, im) = coordinate_vars(n.source);
        push(
            StratumTag::C(n.source.index),
            vec![
                SignCondition::new(Poly::var(re), Relation::Zero),
                SignCondition::new(Poly::var(im), Relation::Zero),
            ],
        );
    }

    let live: Vec<_> = normals.iter().filter(|n| !n.is_zero()).collect();
    let tags = condition_tags(cfg);
    debug_assert_eq!(tags.len(), normals.len());
    for (i, a) in live.iter().enumerate() {
        for b in &live[i + 1..] {
            let cr = &a.nx * &b.ny - &a.ny * &b.nx;
            let dt = &a.nx * &b.nx + &a.ny * &b.ny;
            if !(cr.is_zero() && dt.is_negative()) {
                continue;
            }
            let (ja, jb) = (a.source.index, b.source.index);
            let tag = if ja == jb {
                StratumTag::C(ja)
            } else {
                StratumTag::Joint(ja.min(jb), ja.max(jb))
            };
            let (pa, pb) = (normal_polys(a.source), normal_polys(b.source));
            push(
                tag,
                vec![
                    SignCondition::new(cross(&pa, &pb), Relation::Zero),
                    SignCondition::new(dot(&pa, &pb), Relation::Negative),
                ],
            );
        }
    }

    if strata.is_empty() {
        return Err(Error::NotOnBoundary);
    }
    Ok(strata
        .into_iter()
        .map(|(tag, active_conditions)| BoundaryStratum {
            tag,
            active_conditions,
        })
        .collect())
}

/// Boundary strata as closed cell formulas, for export.
pub fn stratum_cells(strata: &[BoundaryStratum]) -> Vec<CellFormula> {
    strata
        .iter()
        .map(|s| CellFormula {
            label: CellLabel::Boundary(s.tag),
            conditions: s.active_conditions.clone(),
        })
        .collect()
}
