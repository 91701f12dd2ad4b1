//! Exact directions in the plane and the common-direction problem for open
//! half-planes through the origin.
//!
//! A direction is a primitive integer vector. Angular order uses the
//! half-plane index and cross-product signs only; nothing here touches
//! trigonometry or floating point.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

/// Nonzero integer vector with `gcd(|x|, |y|) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Direction {
    pub x: BigInt,
    pub y: BigInt,
}

impl Direction {
    /// Reduces `(x, y)` to its primitive representative. `None` for the zero vector.
    pub fn from_ints(x: BigInt, y: BigInt) -> Option<Self> {
        if x.is_zero() && y.is_zero() {
            return None;
        }
        let g = x.gcd(&y);
        Some(Self { x: x / &g, y: y / &g })
    }

    pub fn from_i64(x: i64, y: i64) -> Option<Self> {
        Self::from_ints(BigInt::from(x), BigInt::from(y))
    }

    /// Positive rescaling of a rational vector to a primitive integer one.
    pub fn from_rationals(x: &Rational, y: &Rational) -> Option<Self> {
        let l = x.denom().lcm(y.denom());
        let xi = x.numer() * (&l / x.denom());
        let yi = y.numer() * (&l / y.denom());
        Self::from_ints(xi, yi)
    }

    pub fn neg(&self) -> Self {
        Self { x: -&self.x, y: -&self.y }
    }

    /// Rotation by +90°.
    pub fn rot_ccw(&self) -> Self {
        Self { x: -&self.y, y: self.x.clone() }
    }

    /// Rotation by −90°.
    pub fn rot_cw(&self) -> Self {
        Self { x: self.y.clone(), y: -&self.x }
    }

    pub fn cross(&self, o: &Self) -> BigInt {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn dot(&self, o: &Self) -> BigInt {
        &self.x * &o.x + &self.y * &o.y
    }

    /// 0 for angles in `[0, π)`, 1 for `[π, 2π)`.
    fn half(&self) -> u8 {
        if self.y.is_positive() || (self.y.is_zero() && self.x.is_positive()) {
            0
        } else {
            1
        }
    }

    /// Counter-clockwise angular order starting at the positive x axis.
    pub fn angle_cmp(&self, o: &Self) -> Ordering {
        self.half().cmp(&o.half()).then_with(|| {
            match self.cross(o).sign() {
                num_bigint::Sign::Plus => Ordering::Less,
                num_bigint::Sign::Minus => Ordering::Greater,
                num_bigint::Sign::NoSign => Ordering::Equal,
            }
        })
    }

    /// Vector sum reduced to a primitive direction.
    pub fn combine(&self, o: &Self) -> Option<Self> {
        Self::from_ints(&self.x + &o.x, &self.y + &o.y)
    }

    /// True iff `self` lies strictly inside the open arc running
    /// counter-clockwise from `start` to `end`. Arcs wider than π are not
    /// supported.
    pub fn strictly_inside(&self, start: &Self, end: &Self) -> bool {
        start.cross(self).is_positive() && self.cross(end).is_positive()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Simplest rational strictly between `lo` and `hi` (`None` means +∞),
/// assuming `0 <= lo < hi`. This is the first Stern–Brocot node to fall in
/// the interval, found by the continued-fraction shortcut.
pub fn simplest_between(lo: &Rational, hi: Option<&Rational>) -> Rational {
    debug_assert!(!lo.is_negative());
    let fl = lo.floor();
    let next = &fl + Rational::one();
    match hi {
        None => return next,
        Some(h) if next < *h => return next,
        _ => {}
    }
    let hi = hi.unwrap();
    let lo_frac = lo - &fl;
    let hi_frac = hi - &fl;
    let inner_lo = hi_frac.recip();
    let inner_hi = if lo_frac.is_zero() {
        None
    } else {
        Some(lo_frac.recip())
    };
    fl + simplest_between(&inner_lo, inner_hi.as_ref()).recip()
}

const AXES: [(i64, i64); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

/// Canonical direction strictly inside the open arc from `start` to `end`
/// (counter-clockwise, width in `(0, π]`).
///
/// An axis direction inside the arc wins, in the order +x, +y, −x, −y.
/// Otherwise the arc sits inside one open quadrant and the answer is the
/// Stern–Brocot simplest slope there.
pub fn simplest_direction_in_arc(start: &Direction, end: &Direction) -> Direction {
    for (x, y) in AXES {
        let a = Direction::from_i64(x, y).unwrap();
        if a.strictly_inside(start, end) {
            return a;
        }
    }
    // rotate clockwise until start is in [0, π/2)
    let (mut s, mut e, mut turns) = (start.clone(), end.clone(), 0);
    while !(s.x.is_positive() && !s.y.is_negative()) {
        s = s.rot_cw();
        e = e.rot_cw();
        turns += 1;
    }
    let lo = Rational::new(s.y.clone(), s.x.clone());
    let hi = if e.x.is_zero() {
        None
    } else {
        Some(Rational::new(e.y.clone(), e.x.clone()))
    };
    let slope = simplest_between(&lo, hi.as_ref());
    let mut d = Direction::from_ints(slope.denom().clone(), slope.numer().clone()).unwrap();
    for _ in 0..turns {
        d = d.rot_ccw();
    }
    d
}

/// Outcome of asking whether a family of open half-planes `{w : n·w > 0}`
/// has a common point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommonDirection {
    /// The admissible directions form the open arc `(arc_start, arc_end)`.
    Feasible {
        witness: Direction,
        arc_start: Direction,
        arc_end: Direction,
    },
    /// Indices (into the input) of at most three normals with no common
    /// admissible direction, sorted ascending.
    Infeasible { core: Vec<usize> },
}

/// Decides whether all `normals` fit strictly inside one open half-plane.
pub fn common_direction(normals: &[Direction]) -> CommonDirection {
    assert!(!normals.is_empty(), "common_direction needs at least one normal");

    // representative input index per distinct direction
    let mut rep: HashMap<&Direction, usize> = HashMap::new();
    for (i, n) in normals.iter().enumerate() {
        rep.entry(n).or_insert(i);
    }
    let mut uniq: Vec<&Direction> = rep.keys().copied().collect();
    uniq.sort_by(|a, b| a.angle_cmp(b));

    if uniq.len() == 1 {
        let d = uniq[0];
        let (arc_start, arc_end) = (d.rot_cw(), d.rot_ccw());
        return CommonDirection::Feasible {
            witness: simplest_direction_in_arc(&arc_start, &arc_end),
            arc_start,
            arc_end,
        };
    }

    for d in &uniq {
        if let Some(&j) = rep.get(&d.neg()) {
            let mut core = vec![rep[*d], j];
            core.sort_unstable();
            return CommonDirection::Infeasible { core };
        }
    }

    let k = uniq.len();
    for i in 0..k {
        let (a, b) = (uniq[i], uniq[(i + 1) % k]);
        if a.cross(b).is_negative() {
            // gap from a to b exceeds π: b is the first extreme, a the last
            let (arc_start, arc_end) = (a.rot_cw(), b.rot_ccw());
            return CommonDirection::Feasible {
                witness: simplest_direction_in_arc(&arc_start, &arc_end),
                arc_start,
                arc_end,
            };
        }
    }

    // every gap is below π: −uniq[0] sits strictly between two neighbours
    let a = uniq[0];
    let t = (1..k)
        .take_while(|&t| a.cross(uniq[t]).is_positive())
        .last()
        .expect("some normal lies within π counter-clockwise of the first");
    let mut core = vec![rep[a], rep[uniq[t]], rep[uniq[t + 1]]];
    core.sort_unstable();
    CommonDirection::Infeasible { core }
}
