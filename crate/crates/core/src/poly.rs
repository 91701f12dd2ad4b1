//! Integer polynomials over configuration coordinates and sign conditions.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::geometry::DiffConfig;
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    ReU,
    ImU,
    ReV,
    ImV,
}

/// One real coordinate of difference `diff`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub diff: usize,
    pub coord: Coord,
}

impl Var {
    pub fn new(diff: usize, coord: Coord) -> Self {
        Self { diff, coord }
    }

    fn slot(&self) -> usize {
        4 * self.diff + self.coord as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.coord {
            Coord::ReU => "re_u",
            Coord::ImU => "im_u",
            Coord::ReV => "re_v",
            Coord::ImV => "im_v",
        };
        write!(f, "{name}{}", self.diff)
    }
}

impl FromStr for Var {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let coord = match s.get(..4) {
            Some("re_u") => Coord::ReU,
            Some("im_u") => Coord::ImU,
            Some("re_v") => Coord::ReV,
            Some("im_v") => Coord::ImV,
            _ => return Err(format!("unknown variable {s:?}")),
        };
        let idx = &s[4..];
        if idx.is_empty() || (idx.len() > 1 && idx.starts_with('0')) {
            return Err(format!("bad variable index in {s:?}"));
        }
        let diff = idx.parse().map_err(|_| format!("bad variable index in {s:?}"))?;
        Ok(Var { diff, coord })
    }
}

/// Product of variables with positive exponents, sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    fn mul(&self, o: &Self) -> Self {
        let mut map: BTreeMap<Var, u32> = self.0.iter().copied().collect();
        for &(v, e) in &o.0 {
            *map.entry(v).or_default() += e;
        }
        Self(map.into_iter().collect())
    }
}

/// Graded: higher total degree first, then lexicographic on variables.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        o.degree().cmp(&self.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), BigInt::from(c));
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial(vec![(v, 1)]), BigInt::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Number of difference vectors the polynomial refers to.
    pub fn arity(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.diff + 1))
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, point: &CoordValues) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = Rational::from(c.clone());
            for &(v, e) in &m.0 {
                let x = &point.0[v.slot()];
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }
}

/// Real coordinates of a difference configuration, laid out for evaluation.
pub struct CoordValues(Vec<Rational>);

impl CoordValues {
    pub fn of(cfg: &DiffConfig) -> Self {
        Self(
            cfg.diffs
                .iter()
                .flat_map(|d| {
                    [
                        d.u.re.clone(),
                        d.u.im.clone(),
                        d.v.re.clone(),
                        d.v.im.clone(),
                    ]
                })
                .collect(),
        )
    }

    pub fn diffs(&self) -> usize {
        self.0.len() / 4
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: String,
    monomial: BTreeMap<String, u32>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr {
                coeff: c.to_string(),
                monomial: m.0.iter().map(|(v, e)| (v.to_string(), *e)).collect(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let terms: Vec<TermRepr> = Vec::deserialize(d)?;
        let mut p = Poly::zero();
        for t in terms {
            let c: BigInt = t.coeff.parse().map_err(D::Error::custom)?;
            let mut vars = Vec::new();
            for (name, e) in t.monomial {
                if e == 0 {
                    return Err(D::Error::custom("zero exponent"));
                }
                vars.push((name.parse::<Var>().map_err(D::Error::custom)?, e));
            }
            vars.sort();
            p.add_term(Monomial(vars), c);
        }
        Ok(p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || m.0.is_empty() {
                parts.push(a.to_string());
            }
            for (v, e) in &m.0 {
                parts.push(if *e == 1 { v.to_string() } else { format!("{v}^{e}") });
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">")]
    Positive,
    #[serde(rename = "=")]
    Zero,
    #[serde(rename = "<")]
    Negative,
}

impl Relation {
    pub fn holds(&self, value: &Rational) -> bool {
        match self {
            Relation::Positive => value.is_positive(),
            Relation::Zero => value.is_zero(),
            Relation::Negative => value.is_negative(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignCondition {
    pub poly: Poly,
    #[serde(rename = "rel")]
    pub relation: Relation,
}

impl SignCondition {
    pub fn new(poly: Poly, relation: Relation) -> Self {
        Self { poly, relation }
    }

    pub fn holds(&self, point: &CoordValues) -> bool {
        self.relation.holds(&self.poly.eval(point))
    }
}

impl fmt::Display for SignCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.relation {
            Relation::Positive => ">",
            Relation::Zero => "=",
            Relation::Negative => "<",
        };
        write!(f, "{} {r} 0", self.poly)
    }
}
