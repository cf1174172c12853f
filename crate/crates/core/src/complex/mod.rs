//! Combinatorial quasicomplexes.
//!
//! A quasicomplex is a finite set of simplices closed under taking faces,
//! where several simplices may span the same vertex set. Simplices are told
//! apart by a small `tag`, and each simplex records its codimension-one faces
//! explicitly: `faces[k]` is the face obtained by deleting the `k`-th vertex
//! in sorted order. When all tags are zero the structure is an ordinary
//! simplicial complex.

mod json;
mod ops;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationReport};

pub use json::{ComplexDoc, SimplexDoc};
pub use ops::{euler_characteristic, join_cone, link, star, stellar_subdivide};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Self {
        VertexId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_string())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

impl From<&String> for VertexId {
    fn from(s: &String) -> Self {
        VertexId(s.clone())
    }
}

impl From<&VertexId> for VertexId {
    fn from(v: &VertexId) -> Self {
        v.clone()
    }
}

/// A simplex: a sorted vertex set plus a tag separating simplices that
/// share the same vertices. Ordering is lexicographic by vertex list, then tag.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    vertices: Vec<VertexId>,
    tag: u32,
}

impl Simplex {
    /// Sorts and deduplicates the vertices.
    pub fn new<I, V>(vertices: I, tag: u32) -> Self
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let mut vertices: Vec<VertexId> = vertices.into_iter().map(Into::into).collect();
        vertices.sort();
        vertices.dedup();
        Simplex { vertices, tag }
    }

    pub fn vertex(v: impl Into<VertexId>) -> Self {
        Simplex { vertices: vec![v.into()], tag: 0 }
    }

    /// Keeps the vertex list exactly as given; the validator reports
    /// unsorted or empty lists.
    pub fn from_raw(vertices: Vec<VertexId>, tag: u32) -> Self {
        Simplex { vertices, tag }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn tag(&self) -> u32 {
        self.tag
    }

    /// Dimension `p` of a `p`-simplex; `-1` for a (malformed) empty simplex.
    pub fn dim(&self) -> isize {
        self.vertices.len() as isize - 1
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.vertices.binary_search(v).is_ok()
    }

    pub fn position(&self, v: &VertexId) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// Canonical textual key, e.g. `{a,b}#1`.
    pub fn key(&self) -> String {
        let names: Vec<&str> = self.vertices.iter().map(VertexId::as_str).collect();
        if self.tag == 0 {
            format!("{{{}}}", names.join(","))
        } else {
            format!("{{{}}}#{}", names.join(","), self.tag)
        }
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// Finite quasicomplex with explicit face lists. Values are immutable from
/// the outside; every operation returns a new complex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuasiComplex {
    cells: BTreeMap<Simplex, Vec<Simplex>>,
}

impl QuasiComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Raw constructor: no checks are performed; call [`validate_complex`].
    pub fn from_cells(cells: impl IntoIterator<Item = (Simplex, Vec<Simplex>)>) -> Self {
        QuasiComplex { cells: cells.into_iter().collect() }
    }

    /// Simplicial complex generated by the given facets (all faces added, tags 0).
    pub fn from_facets<F, V>(facets: impl IntoIterator<Item = F>) -> Self
    where
        F: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let mut all = BTreeSet::new();
        for facet in facets {
            let s = Simplex::new(facet, 0);
            let n = s.vertices.len();
            // every nonempty subset of the facet
            for mask in 1u64..(1u64 << n) {
                let verts: Vec<VertexId> =
                    (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s.vertices[i].clone()).collect();
                all.insert(verts);
            }
        }
        let cells = all.into_iter().map(|verts| {
            let faces = if verts.len() == 1 {
                Vec::new()
            } else {
                (0..verts.len()).map(|k| Simplex::from_raw(omit(&verts, k), 0)).collect()
            };
            (Simplex::from_raw(verts, 0), faces)
        });
        QuasiComplex { cells: cells.collect() }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.cells.contains_key(s)
    }

    /// Simplices in canonical order.
    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.cells.keys()
    }

    pub fn cells(&self) -> impl Iterator<Item = (&Simplex, &[Simplex])> {
        self.cells.iter().map(|(s, f)| (s, f.as_slice()))
    }

    pub fn faces(&self, s: &Simplex) -> Option<&[Simplex]> {
        self.cells.get(s).map(Vec::as_slice)
    }

    /// The face of `s` opposite to vertex `v`.
    pub fn face_omitting(&self, s: &Simplex, v: &VertexId) -> Option<&Simplex> {
        let k = s.position(v)?;
        self.cells.get(s)?.get(k)
    }

    /// The iterated face of `s` on the given vertex subset.
    pub fn face_on(&self, s: &Simplex, subset: &[VertexId]) -> Option<Simplex> {
        let mut cur = s.clone();
        for v in s.vertices() {
            if !subset.contains(v) {
                cur = self.face_omitting(&cur, v)?.clone();
            }
        }
        Some(cur)
    }

    /// Highest simplex dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.cells.keys().map(|s| s.vertices.len().saturating_sub(1)).max()
    }

    pub fn simplices_of_dim(&self, p: usize) -> Vec<&Simplex> {
        self.cells.keys().filter(|s| s.vertices.len() == p + 1).collect()
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in self.cells.keys() {
            if let Some(p) = s.vertices.len().checked_sub(1) {
                f[p] += 1;
            }
        }
        f
    }

    /// Vertex ids that appear as 0-simplices.
    pub fn vertices(&self) -> Vec<VertexId> {
        self.cells.keys().filter(|s| s.vertices.len() == 1).map(|s| s.vertices[0].clone()).collect()
    }

    /// True when no two simplices share a vertex set (all tags zero).
    pub fn is_simplicial(&self) -> bool {
        self.cells.keys().all(|s| s.tag == 0)
    }

    /// All iterated faces of the given simplices, including themselves.
    pub fn closure<'a>(&self, set: impl IntoIterator<Item = &'a Simplex>) -> BTreeSet<Simplex> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<Simplex> = set.into_iter().cloned().collect();
        while let Some(s) = stack.pop() {
            if !out.insert(s.clone()) {
                continue;
            }
            if let Some(faces) = self.cells.get(&s) {
                stack.extend(faces.iter().cloned());
            }
        }
        out
    }

    /// Sub-quasicomplex on a face-closed subset of simplices.
    pub fn restrict(&self, keep: &BTreeSet<Simplex>) -> QuasiComplex {
        QuasiComplex {
            cells: self
                .cells
                .iter()
                .filter(|(s, _)| keep.contains(*s))
                .map(|(s, f)| (s.clone(), f.clone()))
                .collect(),
        }
    }

    /// Map from each simplex to the simplices having it as a codimension-one face.
    pub(crate) fn cofaces(&self) -> BTreeMap<&Simplex, Vec<&Simplex>> {
        let mut up: BTreeMap<&Simplex, Vec<&Simplex>> = BTreeMap::new();
        for (s, faces) in &self.cells {
            for f in faces {
                if let Some((key, _)) = self.cells.get_key_value(f) {
                    up.entry(key).or_default().push(s);
                }
            }
        }
        up
    }

    /// Renames vertices. Tags are kept; the map must be injective on the vertex set.
    pub fn relabel(&self, f: impl Fn(&VertexId) -> VertexId) -> QuasiComplex {
        let map = |s: &Simplex| Simplex::new(s.vertices.iter().map(&f), s.tag);
        let cells = self.cells.iter().map(|(s, faces)| {
            let new_s = map(s);
            // face positions follow the new sorted order
            let mut new_faces = vec![None; faces.len()];
            for (k, face) in faces.iter().enumerate() {
                let omitted = f(&s.vertices[k]);
                let pos = new_s.position(&omitted).expect("relabel must be injective");
                new_faces[pos] = Some(map(face));
            }
            (new_s, new_faces.into_iter().map(|x| x.expect("face slot")).collect())
        });
        QuasiComplex { cells: cells.collect() }
    }

    /// Disjoint union; vertex ids of `other` must not clash with ours.
    pub fn disjoint_union(&self, other: &QuasiComplex) -> Result<QuasiComplex> {
        let mine: BTreeSet<_> = self.cells.keys().flat_map(|s| s.vertices.iter()).collect();
        if let Some(v) = other.cells.keys().flat_map(|s| s.vertices.iter()).find(|v| mine.contains(v)) {
            return Err(Error::VertexCollision(v.to_string()));
        }
        let mut cells = self.cells.clone();
        cells.extend(other.cells.iter().map(|(s, f)| (s.clone(), f.clone())));
        Ok(QuasiComplex { cells })
    }

    pub(crate) fn require(&self, s: &Simplex) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::SimplexNotFound(s.key()))
        }
    }
}

pub(crate) fn omit<T: Clone>(v: &[T], k: usize) -> Vec<T> {
    v.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, x)| x.clone()).collect()
}

/// Checks every structural invariant of a quasicomplex and lists violations.
pub fn validate_complex(k: &QuasiComplex) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (s, faces) in &k.cells {
        if s.vertices.is_empty() {
            report.push("nonempty", "simplex has no vertices", vec![s.key()]);
            continue;
        }
        if s.vertices.windows(2).any(|w| w[0] >= w[1]) {
            report.push("sorted", "vertex list is not strictly sorted", vec![s.key()]);
            continue;
        }
        let p = s.vertices.len() - 1;
        let expected = if p == 0 { 0 } else { p + 1 };
        if faces.len() != expected {
            report.push(
                "face-count",
                format!("{p}-simplex lists {} faces, expected {expected}", faces.len()),
                vec![s.key()],
            );
            continue;
        }
        for (idx, face) in faces.iter().enumerate() {
            if face.vertices != omit(&s.vertices, idx) {
                report.push(
                    "face-vertices",
                    format!("face {idx} does not omit vertex {}", s.vertices[idx]),
                    vec![s.key(), face.key()],
                );
            } else if !k.contains(face) {
                report.push("face-closed", "listed face is not a member simplex", vec![s.key(), face.key()]);
            }
        }
    }
    if !report.is_valid() {
        return report;
    }
    // semi-simplicial identities: deleting i then j equals deleting j then i
    for (s, faces) in &k.cells {
        let n = s.vertices.len();
        for i in 0..n {
            for j in i + 1..n {
                if n < 3 {
                    continue;
                }
                // delete vertex j first (face j), then vertex i (still at position i)
                let a = &k.cells[&faces[j]][i];
                // delete vertex i first (face i), then vertex j (now at position j - 1)
                let b = &k.cells[&faces[i]][j - 1];
                if a != b {
                    report.push(
                        "face-consistency",
                        format!("iterated faces omitting {} and {} disagree", s.vertices[i], s.vertices[j]),
                        vec![s.key(), a.key(), b.key()],
                    );
                }
            }
        }
    }
    if !report.is_valid() {
        return report;
    }
    // Common faces of any two simplices must form a union of faces of each,
    // i.e. the common-face set is closed under taking faces.
    let closures: Vec<(&Simplex, BTreeSet<Simplex>)> =
        k.cells.keys().map(|s| (s, k.closure(std::iter::once(s)))).collect();
    for (i, (a, ca)) in closures.iter().enumerate() {
        for (b, cb) in closures.iter().skip(i + 1) {
            let common: BTreeSet<&Simplex> = ca.intersection(cb).collect();
            let closed = common
                .iter()
                .all(|c| k.cells[*c].iter().all(|f| common.contains(f)));
            if !closed {
                report.push("quasicomplex", "common faces are not a union of faces", vec![a.key(), b.key()]);
            }
        }
    }
    report
}

/// Allocates tags for new simplices so that `(vertices, tag)` stays unique.
#[derive(Default)]
pub(crate) struct TagAllocator {
    next: BTreeMap<Vec<VertexId>, u32>,
}

impl TagAllocator {
    pub(crate) fn fresh(&mut self, vertices: Vec<VertexId>) -> Simplex {
        let slot = self.next.entry(vertices.clone()).or_insert(0);
        let tag = *slot;
        *slot += 1;
        Simplex { vertices, tag }
    }
}

impl QuasiComplex {
    pub(crate) fn has_vertex(&self, v: &VertexId) -> bool {
        self.cells.keys().any(|s| s.contains_vertex(v))
    }

    pub(crate) fn insert_cell(&mut self, s: Simplex, faces: Vec<Simplex>) {
        self.cells.insert(s, faces);
    }
}
