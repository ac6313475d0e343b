//! Arbitrary-precision integers are written to JSON as decimal strings so
//! that no consumer silently rounds them.

use num_bigint::BigInt;
use serde::ser::SerializeSeq;
use serde::Serializer;

pub fn int<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn ints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}
