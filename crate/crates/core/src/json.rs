//! JSON encodings shared by the library and the command-line front end.
//!
//! Integers that fit in an `i64` are written as JSON numbers, larger ones as
//! decimal strings. Both forms are accepted on input.

use num_bigint::BigInt;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::linalg::{IntMatrix, Matrix, RealMatrix};

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Int(i64),
    Uint(u64),
    Str(String),
}

impl IntRepr {
    fn into_bigint<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntRepr::Int(x) => Ok(BigInt::from(x)),
            IntRepr::Uint(x) => Ok(BigInt::from(x)),
            IntRepr::Str(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| E::custom(format!("not an integer: {s:?}"))),
        }
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum IntOut {
    Int(i64),
    Str(String),
}

fn to_out(x: &BigInt) -> IntOut {
    i64::try_from(x).map_or_else(|_| IntOut::Str(x.to_string()), IntOut::Int)
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        to_out(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        IntRepr::deserialize(d)?.into_bigint()
    }
}

pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_out).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<IntRepr>::deserialize(d)?
            .into_iter()
            .map(IntRepr::into_bigint)
            .collect()
    }
}

/// Always a decimal string; used for determinants.
pub mod bigint_string {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        IntRepr::deserialize(d)?.into_bigint()
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr<T> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<T>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows(),
            cols: self.cols(),
            entries: self
                .row_iter()
                .map(|r| r.iter().map(to_out).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::<IntRepr>::deserialize(d)?;
        if repr.entries.len() != repr.rows || repr.entries.iter().any(|r| r.len() != repr.cols) {
            return Err(de::Error::custom(format!(
                "entries do not form a {}x{} matrix",
                repr.rows, repr.cols
            )));
        }
        let entries = repr
            .entries
            .into_iter()
            .flatten()
            .map(IntRepr::into_bigint)
            .collect::<Result<Vec<_>, D::Error>>()?;
        Matrix::new(repr.rows, repr.cols, entries).map_err(de::Error::custom)
    }
}

impl Serialize for RealMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows(),
            cols: self.cols(),
            entries: self.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::<f64>::deserialize(d)?;
        if repr.entries.len() != repr.rows {
            return Err(de::Error::custom("row count mismatch"));
        }
        Matrix::from_rows(repr.entries).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_accepts_numbers_and_strings() {
        let m: IntMatrix = serde_json::from_str(
            r#"{"rows": 2, "cols": 2, "entries": [[1, "-2"], ["123456789012345678901234567890", 0]]}"#,
        )
        .unwrap();
        assert_eq!(m[(0, 1)], BigInt::from(-2));
        assert_eq!(
            m[(1, 0)],
            "123456789012345678901234567890".parse::<BigInt>().unwrap()
        );
        let out = serde_json::to_string(&m).unwrap();
        assert_eq!(
            out,
            r#"{"rows":2,"cols":2,"entries":[[1,-2],["123456789012345678901234567890",0]]}"#
        );
    }

    #[test]
    fn shape_mismatch_rejected() {
        let r: Result<IntMatrix, _> =
            serde_json::from_str(r#"{"rows": 2, "cols": 2, "entries": [[1, 2]]}"#);
        assert!(r.is_err());
        let r: Result<IntMatrix, _> =
            serde_json::from_str(r#"{"rows": 1, "cols": 1, "entries": [["x"]]}"#);
        assert!(r.is_err());
    }
}
