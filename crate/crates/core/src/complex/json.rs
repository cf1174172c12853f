use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{QuasiComplex, Simplex, VertexId};
use crate::error::{Error, Result};

/// Serialized form of a quasicomplex. Simplices appear in canonical order and
/// `faces` holds indices into `simplices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub vertices: Vec<VertexId>,
    pub simplices: Vec<SimplexDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexDoc {
    pub vertices: Vec<VertexId>,
    #[serde(default)]
    pub tag: u32,
    /// May be omitted when every face is determined by its vertex set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<usize>>,
}

impl From<&QuasiComplex> for ComplexDoc {
    fn from(k: &QuasiComplex) -> Self {
        let index: BTreeMap<&Simplex, usize> = k.simplices().enumerate().map(|(i, s)| (s, i)).collect();
        let simplices = k
            .cells()
            .map(|(s, faces)| SimplexDoc {
                vertices: s.vertices().to_vec(),
                tag: s.tag(),
                faces: Some(faces.iter().map(|f| index[f]).collect()),
            })
            .collect();
        ComplexDoc { vertices: k.vertices(), simplices }
    }
}

impl ComplexDoc {
    /// Builds the complex without validating it. Listed vertices lacking a
    /// 0-simplex get one. Vertex lists are kept as written so the validator can
    /// report unsorted input.
    pub fn to_complex(&self) -> Result<QuasiComplex> {
        let simplices: Vec<Simplex> =
            self.simplices.iter().map(|d| Simplex::from_raw(d.vertices.clone(), d.tag)).collect();
        let mut by_vertices: BTreeMap<&[VertexId], Vec<&Simplex>> = BTreeMap::new();
        for s in &simplices {
            by_vertices.entry(s.vertices()).or_default().push(s);
        }
        let mut cells = Vec::new();
        for (doc, s) in self.simplices.iter().zip(&simplices) {
            let faces = match &doc.faces {
                Some(idx) => idx
                    .iter()
                    .map(|&i| {
                        simplices.get(i).cloned().ok_or_else(|| {
                            Error::Format(format!("simplex {} lists face index {i} out of range", s.key()))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
                None if s.vertices().len() <= 1 => Vec::new(),
                None => (0..s.vertices().len())
                    .map(|k| {
                        let verts = super::omit(s.vertices(), k);
                        match by_vertices.get(verts.as_slice()).map(Vec::as_slice) {
                            Some([only]) => Ok((*only).clone()),
                            Some(_) => Err(Error::Format(format!(
                                "face of {} on {} is ambiguous; list faces explicitly",
                                s.key(),
                                Simplex::from_raw(verts, 0).key()
                            ))),
                            // leave the dangling face for the validator to report
                            None => Ok(Simplex::from_raw(verts, 0)),
                        }
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            cells.push((s.clone(), faces));
        }
        let mut k = QuasiComplex::from_cells(cells);
        for v in &self.vertices {
            let s = Simplex::vertex(v.clone());
            if !k.contains(&s) {
                k.insert_cell(s, Vec::new());
            }
        }
        Ok(k)
    }
}

impl QuasiComplex {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ComplexDoc::from(self)).expect("complex serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&ComplexDoc::from(self)).expect("complex serializes")
    }

    /// Parses a complex document. The result is not validated.
    pub fn from_json(text: &str) -> Result<QuasiComplex> {
        let doc: ComplexDoc = serde_json::from_str(text)?;
        doc.to_complex()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate_complex;

    #[test]
    fn round_trip_is_exact() {
        let k = QuasiComplex::from_facets([vec!["a", "b", "c"], vec!["c", "d"]]);
        let text = k.to_json();
        let back = QuasiComplex::from_json(&text).unwrap();
        assert_eq!(back, k);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn canonical_layout() {
        let k = QuasiComplex::from_facets([["b", "a"]]);
        assert_eq!(
            k.to_json(),
            r#"{"vertices":["a","b"],"simplices":[{"vertices":["a"],"tag":0,"faces":[]},{"vertices":["a","b"],"tag":0,"faces":[2,0]},{"vertices":["b"],"tag":0,"faces":[]}]}"#
        );
    }

    #[test]
    fn faces_may_be_omitted_when_unambiguous() {
        let text = r#"{"vertices":["a","b","c"],"simplices":[{"vertices":["a","b"]},{"vertices":["b","c"]},{"vertices":["a","c"]}]}"#;
        let k = QuasiComplex::from_json(text).unwrap();
        assert!(validate_complex(&k).is_valid());
        assert_eq!(k, QuasiComplex::from_facets([["a", "b"], ["b", "c"], ["a", "c"]]));
    }

    #[test]
    fn ambiguous_inferred_face_is_an_error() {
        let text = r#"{"vertices":["a","b","c"],"simplices":[
            {"vertices":["a","b"],"tag":0},{"vertices":["a","b"],"tag":1},
            {"vertices":["b","c"]},{"vertices":["a","c"]},{"vertices":["a","b","c"]}]}"#;
        assert!(matches!(QuasiComplex::from_json(text), Err(Error::Format(_))));
    }

    #[test]
    fn bad_face_index_is_an_error() {
        let text = r#"{"vertices":["a"],"simplices":[{"vertices":["a","b"],"faces":[7,0]}]}"#;
        assert!(QuasiComplex::from_json(text).is_err());
    }
}
