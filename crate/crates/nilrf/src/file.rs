//! Group definition files.
//!
//! ```json
//! { "name": "heisenberg", "m": 2, "n": 1, "matrices": [[["0", "1"], ["-1", "0"]]] }
//! ```
//!
//! Integers are written as decimal strings; plain JSON integers are accepted
//! on input.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use nilrf_core::group::GroupPresentation;
use nilrf_core::linalg::IntMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// An integer serialized as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        BigInt::from_str(v.trim()).map(Int).map_err(|_| E::custom(format!("`{v}` is not an integer")))
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

/// A rational serialized as `"p/q"`, or `"p"` when integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub BigRational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        let bad = || de::Error::custom(format!("`{s}` is not a rational number"));
        let r = match s.split_once('/') {
            Some((p, q)) => {
                let q = BigInt::from_str(q).map_err(|_| bad())?;
                if q == BigInt::from(0) {
                    return Err(bad());
                }
                BigRational::new(BigInt::from_str(p).map_err(|_| bad())?, q)
            }
            None => BigRational::from_integer(BigInt::from_str(&s).map_err(|_| bad())?),
        };
        Ok(Rat(r))
    }
}

pub fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

pub fn bigs(v: &[Int]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub m: usize,
    pub n: usize,
    pub matrices: Vec<Vec<Vec<Int>>>,
}

fn compact<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

impl GroupFile {
    pub fn from_presentation(name: Option<String>, pres: &GroupPresentation) -> Self {
        let matrices = pres.matrices().iter().map(|a| a.to_rows().iter().map(|r| ints(r)).collect()).collect();
        GroupFile { name, m: pres.m(), n: pres.n(), matrices }
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        serde_json::from_str(&text).map_err(|e| CliError::parse(path, &e))
    }

    /// Shape checks, then [`GroupPresentation::new`] (skew-symmetry and fullness).
    pub fn presentation(&self) -> CliResult<GroupPresentation> {
        if self.matrices.len() != self.n {
            return Err(CliError::Validation(format!("n = {} but {} matrices given", self.n, self.matrices.len())));
        }
        let mut mats = Vec::with_capacity(self.n);
        for (i, a) in self.matrices.iter().enumerate() {
            if a.len() != self.m || a.iter().any(|r| r.len() != self.m) {
                return Err(CliError::Validation(format!("matrix {} is not {m}x{m}", i + 1, m = self.m)));
            }
            let rows = a.iter().map(|r| bigs(r)).collect();
            mats.push(IntMatrix::from_big_rows(rows).ok_or_else(|| CliError::Validation(format!("matrix {} is ragged", i + 1)))?);
        }
        Ok(GroupPresentation::new(self.m, self.n, mats)?)
    }

    /// SHA-256 of the compact canonical JSON.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("serializable");
        hex::encode(Sha256::digest(bytes))
    }

    /// Indented JSON with one matrix row per line.
    pub fn to_pretty(&self) -> String {
        let mut s = String::from("{\n");
        if let Some(name) = &self.name {
            s += &format!("  \"name\": {},\n", compact(name));
        }
        s += &format!("  \"m\": {},\n  \"n\": {},\n  \"matrices\": [", self.m, self.n);
        for (i, a) in self.matrices.iter().enumerate() {
            s += if i == 0 { "\n    [" } else { ",\n    [" };
            for (j, row) in a.iter().enumerate() {
                s += if j == 0 { "\n      " } else { ",\n      " };
                s += &compact(row);
            }
            s += "\n    ]";
        }
        s += if self.matrices.is_empty() { "]\n}" } else { "\n  ]\n}" };
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nilrf_core::constructions::heisenberg_gaussian;

    #[test]
    fn round_trip() {
        let f = GroupFile::from_presentation(Some("gaussian".into()), &heisenberg_gaussian());
        let back: GroupFile = serde_json::from_str(&f.to_pretty()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.presentation().unwrap(), heisenberg_gaussian());
        assert_eq!(f.digest().len(), 64);
    }

    #[test]
    fn numbers_or_strings() {
        let f: GroupFile = serde_json::from_str(r#"{"m": 2, "n": 1, "matrices": [[[0, "1"], ["-1", 0]]]}"#).unwrap();
        assert!(f.presentation().is_ok());
        let big: Int = serde_json::from_str("\"123456789012345678901234567890\"").unwrap();
        assert_eq!(serde_json::to_string(&big).unwrap(), "\"123456789012345678901234567890\"");
        assert!(serde_json::from_str::<Int>("\"1.5\"").is_err());
    }

    #[test]
    fn rationals() {
        let r: Rat = serde_json::from_str("\"-3/6\"").unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"-1/2\"");
        assert!(serde_json::from_str::<Rat>("\"1/0\"").is_err());
    }

    #[test]
    fn shape_errors_are_validation_failures() {
        let f: GroupFile = serde_json::from_str(r#"{"m": 3, "n": 1, "matrices": [[[0, 1], [-1, 0]]]}"#).unwrap();
        assert_eq!(f.presentation().unwrap_err().exit_code(), 3);
        let f: GroupFile = serde_json::from_str(r#"{"m": 2, "n": 1, "matrices": [[[0, 1], [1, 0]]]}"#).unwrap();
        assert_eq!(f.presentation().unwrap_err().exit_code(), 3);
    }
}
