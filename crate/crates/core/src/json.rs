//! Serde adapters for arbitrary-precision integers.
//!
//! Laurent coefficients travel as decimal strings. Everywhere else integers
//! are written as JSON numbers when they fit in an `i64` and as decimal
//! strings otherwise. Both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serializer};

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Signed(i64),
    Unsigned(u64),
    Text(String),
}

impl IntRepr {
    fn into_bigint<E: serde::de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntRepr::Signed(v) => Ok(BigInt::from(v)),
            IntRepr::Unsigned(v) => Ok(BigInt::from(v)),
            IntRepr::Text(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| E::custom(format!("invalid decimal integer {s:?}"))),
        }
    }
}

pub(crate) fn deserialize_bigint<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    IntRepr::deserialize(d)?.into_bigint()
}

pub(crate) fn deserialize_bigint_vec<'de, D: Deserializer<'de>>(
    d: D,
) -> Result<Vec<BigInt>, D::Error> {
    Vec::<IntRepr>::deserialize(d)?
        .into_iter()
        .map(IntRepr::into_bigint)
        .collect()
}

pub(crate) fn serialize_bigint_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub(crate) fn serialize_bigint_number<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(i) => s.serialize_i64(i),
        None => s.serialize_str(&v.to_string()),
    }
}

pub(crate) fn serialize_bigint_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(i) => seq.serialize_element(&i)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

/// Wraps a `BigInt` so it serializes as a JSON number when it fits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl serde::Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_bigint_number(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        deserialize_bigint(d).map(JsonInt)
    }
}
