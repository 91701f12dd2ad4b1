//! Order classes over space-time dimension `s`, and restriction checks on
//! the permuted union domains.
//!
//! The restriction check works on the union domains themselves. It does
//! not compute envelopes of holomorphy, so it tests only the projection
//! consequence of the inclusion relation between orders.

use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{minkowski_square, PointConfig};
use crate::permutation::{is_union_member, Permutation};
use crate::scalar::GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrderClass {
    /// Lower order.
    A,
    /// Intermediate order.
    B,
    /// High order.
    C,
}

pub fn classify_order(s: u64, m: u64) -> Result<OrderClass> {
    if s < 2 {
        return Err(Error::BadDimension(s));
    }
    if m < 2 {
        return Err(Error::BadOrder(m));
    }
    Ok(if m <= s + 1 {
        OrderClass::A
    } else if m > s * (s - 1) / 2 + 2 {
        OrderClass::C
    } else {
        OrderClass::B
    })
}

/// Sub-configuration that failed to be a union member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionViolation {
    pub permutation: Permutation,
    /// 1-based positions in the permuted configuration.
    pub positions: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub m: usize,
    pub r: usize,
    pub scope: &'static str,
    /// `(σ, selection)` pairs examined.
    pub selections_checked: usize,
    /// Distinct label subsets decided.
    pub subsets_decided: usize,
    pub violations: Vec<ProjectionViolation>,
}

impl ProjectionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every `σ ∈ P_m` and every order-preserving choice of `m − r` points
/// from `σ·cfg`, checks that the sub-configuration is a union member.
///
/// Union membership is invariant under relabeling, so each label subset is
/// decided once. With `m − r < 2` there is nothing to check.
pub fn projection_inclusion_check(cfg: &PointConfig, r: usize) -> Result<ProjectionReport> {
    let m = cfg.m();
    if r == 0 || r >= m {
        return Err(Error::BadR { r, m });
    }
    if !is_union_member(cfg)? {
        return Err(Error::NotMember);
    }
    let k = m - r;
    let mut memo: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut selections_checked = 0;
    let mut violations = Vec::new();
    if k >= 2 {
        for sigma in Permutation::all(m) {
            for positions in (0..m).combinations(k) {
                selections_checked += 1;
                let mut labels: Vec<usize> = positions.iter().map(|&p| sigma.image(p)).collect();
                labels.sort_unstable();
                let ok = match memo.get(&labels) {
                    Some(&ok) => ok,
                    None => {
                        let sub = PointConfig::new(labels.iter().map(|&i| cfg.points[i].clone()).collect());
                        let ok = is_union_member(&sub)?;
                        memo.insert(labels, ok);
                        ok
                    }
                };
                if !ok {
                    violations.push(ProjectionViolation {
                        permutation: sigma.clone(),
                        positions: positions.iter().map(|p| p + 1).collect(),
                    });
                }
            }
        }
    }
    Ok(ProjectionReport {
        m,
        r,
        scope: "restriction to order-preserving sub-configurations of the permuted union; envelopes are not computed",
        selections_checked,
        subsets_decided: memo.len(),
        violations,
    })
}

/// Pair `(i, j)` with its invariant `(z_i − z_j)²` on `[0, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutHit {
    pub pair: (usize, usize),
    pub invariant: GaussianRational,
}

/// Pairs of `cfg` whose invariant lies on the cut `[0, ∞)`.
pub fn pairwise_cut_hits(cfg: &PointConfig) -> Vec<CutHit> {
    (0..cfg.m())
        .tuple_combinations()
        .filter_map(|(i, j)| {
            let inv = minkowski_square(&cfg.points[i].sub(&cfg.points[j]));
            inv.on_nonnegative_real_axis().then_some(CutHit {
                pair: (i, j),
                invariant: inv,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{DiffConfig, LightConeVector};

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    fn from_diffs(d: &[(GaussianRational, GaussianRational)]) -> PointConfig {
        PointConfig::from_diffs(&DiffConfig::new(
            d.iter().map(|(u, v)| LightConeVector::new(u.clone(), v.clone())).collect(),
        ))
    }

    #[test]
    fn class_tables() {
        use OrderClass::*;
        assert_eq!(classify_order(2, 3).unwrap(), A);
        assert_eq!(classify_order(2, 4).unwrap(), C);
        assert!((2..=100).all(|m| classify_order(2, m).unwrap() != B));
        let b3: Vec<u64> = (2..=100).filter(|&m| classify_order(3, m).unwrap() == B).collect();
        assert_eq!(b3, vec![5]);
        let b4: Vec<u64> = (2..=100).filter(|&m| classify_order(4, m).unwrap() == B).collect();
        assert_eq!(b4, vec![6, 7, 8]);
        assert_eq!(classify_order(4, 9).unwrap(), C);
        assert_eq!(classify_order(1, 3), Err(Error::BadDimension(1)));
        assert_eq!(classify_order(3, 1), Err(Error::BadOrder(1)));
    }

    #[test]
    fn forward_and_jost_restrictions() {
        let fwd = from_diffs(&[(g(0, 1), g(0, 1)), (g(0, 1), g(0, 1))]);
        let rep = projection_inclusion_check(&fwd, 1).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.selections_checked, 6 * 3);
        assert_eq!(rep.subsets_decided, 3);

        let jost = from_diffs(&[(g(1, 0), g(-1, 0)), (g(1, 0), g(-1, 0))]);
        assert!(projection_inclusion_check(&jost, 1).unwrap().passed());
    }

    #[test]
    fn vacuous_and_errors() {
        let two = from_diffs(&[(g(0, 1), g(0, 1))]);
        let rep = projection_inclusion_check(&two, 1).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.selections_checked, 0);
        assert_eq!(projection_inclusion_check(&two, 0), Err(Error::BadR { r: 0, m: 2 }));
        assert_eq!(projection_inclusion_check(&two, 2), Err(Error::BadR { r: 2, m: 2 }));
        let cut = from_diffs(&[(g(1, 0), g(1, 0)), (g(0, 1), g(0, 1))]);
        assert_eq!(projection_inclusion_check(&cut, 1), Err(Error::NotMember));
    }

    #[test]
    fn cut_hits() {
        let cfg = from_diffs(&[(g(1, 0), g(1, 0)), (g(0, 1), g(0, 1))]);
        let hits = pairwise_cut_hits(&cfg);
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].pair, (0, 1));
        assert_eq!(hits[0].invariant, g(1, 0));
    }
}
