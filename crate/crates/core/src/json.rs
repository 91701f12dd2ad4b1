//! JSON encodings for exact values.
//!
//! Rationals travel as canonical `"p/q"` strings, complex numbers as
//! `[re, im]` pairs and directions as pairs of integer strings. JSON numbers
//! are never accepted where a rational is expected.

use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::direction::Direction;
use crate::scalar::{parse_canonical_rational, rational_to_string, GaussianRational, Rational};

pub(crate) const FLOAT_TAG: &str = "float literal rejected";
pub(crate) const NONCANONICAL_TAG: &str = "non-canonical rational";

struct RationalVisitor;

impl<'de> Visitor<'de> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a rational as a \"p/q\" string")
    }

    fn visit_str<E: de::Error>(self, s: &str) -> Result<Rational, E> {
        parse_canonical_rational(s).map_err(|e| E::custom(format!("{NONCANONICAL_TAG}: {e}")))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rational, E> {
        Err(E::custom(format!("{FLOAT_TAG}: {v}")))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Err(E::custom(format!(
            "{NONCANONICAL_TAG}: bare number {v}, write \"{v}/1\""
        )))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        self.visit_i64(v as i64)
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

struct RationalSeed;

impl<'de> de::DeserializeSeed<'de> for RationalSeed {
    type Value = Rational;
    fn deserialize<D: Deserializer<'de>>(self, d: D) -> Result<Rational, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&rational_to_string(&self.re))?;
        seq.serialize_element(&rational_to_string(&self.im))?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct PairVisitor;
        impl<'de> Visitor<'de> for PairVisitor {
            type Value = GaussianRational;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a complex number as [re, im]")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let re = seq
                    .next_element_seed(RationalSeed)?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let im = seq
                    .next_element_seed(RationalSeed)?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Ok(GaussianRational::new(re, im))
            }
        }
        d.deserialize_seq(PairVisitor)
    }
}

impl Serialize for Direction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&self.x.to_string())?;
        seq.serialize_element(&self.y.to_string())?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Direction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y]: [String; 2] = Deserialize::deserialize(d)?;
        let parse = |t: &str| t.parse::<BigInt>().map_err(de::Error::custom);
        let (x, y) = (parse(&x)?, parse(&y)?);
        let dir = Direction::from_ints(x.clone(), y.clone())
            .ok_or_else(|| de::Error::custom("zero direction"))?;
        if dir.x != x || dir.y != y {
            return Err(de::Error::custom("direction is not primitive"));
        }
        Ok(dir)
    }
}

pub mod opt_direction {
    use super::*;

    pub fn serialize<S: Serializer>(d: &Option<Direction>, s: S) -> Result<S::Ok, S::Error> {
        d.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Direction>, D::Error> {
        Option::<Direction>::deserialize(d)
    }
}

/// Canonical text form used for every report: keys sorted, two-space
/// indentation, trailing newline.
pub fn to_canonical_string<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report values serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("json value prints");
    s.push('\n');
    s
}
