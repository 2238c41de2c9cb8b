use num_rational::BigRational;
use serde::Serializer;

/// Serializes an exact rational as the string `p/q` (or `p` when integral).
pub fn rational<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
