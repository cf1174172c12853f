//! Per-stratum cohomology data: graded dimensions and restriction matrices.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::Rational;

/// A rational number in JSON: an integer, or a string such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonRational(pub Rational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Ok(v) = i64::try_from(self.0.numer()) {
                return s.serialize_i64(v);
            }
        }
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => {
                let text = n.to_string();
                Rational::from_str(&text)
                    .map(JsonRational)
                    .map_err(|_| de::Error::custom(format!("{text} is not an exact rational; write it as \"a/b\"")))
            }
            serde_json::Value::String(text) => Rational::from_str(text.trim())
                .map(JsonRational)
                .map_err(|_| de::Error::custom(format!("cannot parse {text:?} as a rational"))),
            other => Err(de::Error::custom(format!("expected a rational, found {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumDims {
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionDoc {
    pub from: String,
    pub to: String,
    pub q: usize,
    pub matrix: Vec<Vec<JsonRational>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalSystemDoc {
    pub strata: BTreeMap<String, StratumDims>,
    #[serde(default)]
    pub restrictions: Vec<RestrictionDoc>,
}

/// Cohomology dimensions `h^q` of each stratum and the restriction maps
/// `H^q(from) → H^q(to)` along codimension-one face inclusions `to ⊂ from`.
/// Degree-0 maps default to the identity; higher maps between nonzero spaces
/// must be given.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalSystem {
    dims: BTreeMap<String, Vec<usize>>,
    restrictions: BTreeMap<(String, String, usize), Matrix<Rational>>,
}

impl LocalSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Only `h^0 = 1` for every listed stratum.
    pub fn trivial<S: Into<String>>(strata: impl IntoIterator<Item = S>) -> Self {
        let mut l = Self::new();
        for s in strata {
            l.dims.insert(s.into(), vec![1]);
        }
        l
    }

    pub fn set_dims(&mut self, stratum: impl Into<String>, dims: Vec<usize>) -> Result<()> {
        let stratum = stratum.into();
        if dims.first() != Some(&1) {
            return Err(Error::LocalSystem(format!("stratum {stratum} must have h^0 = 1 (strata are connected)")));
        }
        self.dims.insert(stratum, dims);
        Ok(())
    }

    /// Sets the restriction `H^q(from) → H^q(to)`; the matrix has one row per
    /// basis vector of the target.
    pub fn set_restriction(
        &mut self,
        from: impl Into<String>,
        to: impl Into<String>,
        q: usize,
        matrix: Matrix<Rational>,
    ) -> Result<()> {
        let (from, to) = (from.into(), to.into());
        let (hf, ht) = (self.h(&from, q)?, self.h(&to, q)?);
        if matrix.rows() != ht || matrix.cols() != hf {
            return Err(Error::LocalSystem(format!(
                "restriction {from} -> {to} in degree {q} is {}x{}, expected {ht}x{hf}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if q == 0 && matrix != Matrix::identity(1) {
            return Err(Error::LocalSystem(format!("degree-0 restriction {from} -> {to} must be the identity")));
        }
        if self.restrictions.insert((from.clone(), to.clone(), q), matrix).is_some() {
            return Err(Error::LocalSystem(format!("restriction {from} -> {to} in degree {q} given twice")));
        }
        Ok(())
    }

    pub fn has(&self, stratum: &str) -> bool {
        self.dims.contains_key(stratum)
    }

    pub fn dims(&self, stratum: &str) -> Option<&[usize]> {
        self.dims.get(stratum).map(Vec::as_slice)
    }

    pub fn strata(&self) -> impl Iterator<Item = &str> {
        self.dims.keys().map(String::as_str)
    }

    /// `h^q` of a stratum, zero beyond the listed degrees.
    pub fn h(&self, stratum: &str, q: usize) -> Result<usize> {
        let d = self.dims.get(stratum).ok_or_else(|| Error::MissingStratumData(stratum.to_string()))?;
        Ok(d.get(q).copied().unwrap_or(0))
    }

    pub fn max_degree(&self) -> usize {
        self.dims.values().map(|d| d.len().saturating_sub(1)).max().unwrap_or(0)
    }

    /// The restriction map, with the degree-0 identity and zero-dimensional
    /// defaults filled in.
    pub fn restriction(&self, from: &str, to: &str, q: usize) -> Result<Matrix<Rational>> {
        let (hf, ht) = (self.h(from, q)?, self.h(to, q)?);
        if let Some(m) = self.restrictions.get(&(from.to_string(), to.to_string(), q)) {
            return Ok(m.clone());
        }
        if hf == 0 || ht == 0 {
            return Ok(Matrix::zeros(ht, hf));
        }
        if q == 0 {
            return Ok(Matrix::identity(1));
        }
        Err(Error::LocalSystem(format!("missing restriction {from} -> {to} in degree {q}")))
    }

    pub(crate) fn restriction_keys(&self) -> impl Iterator<Item = &(String, String, usize)> {
        self.restrictions.keys()
    }

    pub fn from_doc(doc: &LocalSystemDoc) -> Result<Self> {
        let mut l = Self::new();
        for (id, d) in &doc.strata {
            l.set_dims(id.clone(), d.dims.clone())?;
        }
        for r in &doc.restrictions {
            let cols = l.h(&r.from, r.q)?;
            if r.matrix.iter().any(|row| row.len() != cols) {
                return Err(Error::LocalSystem(format!(
                    "restriction {} -> {} in degree {} has rows of the wrong length",
                    r.from, r.to, r.q
                )));
            }
            let rows = r.matrix.iter().map(|row| row.iter().map(|x| x.0.clone()).collect()).collect();
            l.set_restriction(r.from.clone(), r.to.clone(), r.q, Matrix::from_rows(cols, rows))?;
        }
        Ok(l)
    }

    pub fn to_doc(&self) -> LocalSystemDoc {
        LocalSystemDoc {
            strata: self.dims.iter().map(|(k, v)| (k.clone(), StratumDims { dims: v.clone() })).collect(),
            restrictions: self
                .restrictions
                .iter()
                .map(|((from, to, q), m)| RestrictionDoc {
                    from: from.clone(),
                    to: to.clone(),
                    q: *q,
                    matrix: m.to_rows().into_iter().map(|row| row.into_iter().map(JsonRational).collect()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_doc(&serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("local system serializes")
    }
}

/// Integer matrix helper for building restriction maps.
pub fn rational_matrix(cols: usize, rows: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_with_fractions() {
        let text = r#"{"strata":{"A":{"dims":[1,2]},"B":{"dims":[1,1]}},"restrictions":[{"from":"A","to":"B","q":1,"matrix":[["1/2",-3]]}]}"#;
        let l = LocalSystem::from_json(text).unwrap();
        assert_eq!(l.to_json(), text);
        let m = l.restriction("A", "B", 1).unwrap();
        assert_eq!(*m.get(0, 0), Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn degree_zero_defaults_to_identity() {
        let l = LocalSystem::trivial(["A", "B"]);
        assert_eq!(l.restriction("A", "B", 0).unwrap(), Matrix::identity(1));
        assert_eq!(l.restriction("A", "B", 1).unwrap().rows(), 0);
    }

    #[test]
    fn rejected_inputs() {
        assert!(LocalSystem::from_json(r#"{"strata":{"A":{"dims":[2]}}}"#).is_err());
        assert!(LocalSystem::from_json(r#"{"strata":{"A":{"dims":[1,1]},"B":{"dims":[1,1]}},"restrictions":[{"from":"A","to":"B","q":1,"matrix":[[1,2]]}]}"#).is_err());
        assert!(LocalSystem::from_json(r#"{"strata":{"A":{"dims":[1]},"B":{"dims":[1]}},"restrictions":[{"from":"A","to":"B","q":0,"matrix":[[2]]}]}"#).is_err());
        assert!(LocalSystem::from_json(r#"{"strata":{"A":{"dims":[1,1]},"B":{"dims":[1,1]}},"restrictions":[{"from":"A","to":"B","q":1,"matrix":[[0.5]]}]}"#).is_err());
        let l = LocalSystem::from_json(r#"{"strata":{"A":{"dims":[1,1]},"B":{"dims":[1,1]}}}"#).unwrap();
        assert!(matches!(l.restriction("A", "B", 1), Err(Error::LocalSystem(_))));
        assert!(matches!(l.restriction("A", "Z", 0), Err(Error::MissingStratumData(_))));
    }
}
