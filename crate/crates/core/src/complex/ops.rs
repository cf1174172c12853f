use std::collections::{BTreeMap, BTreeSet};

use super::{QuasiComplex, Simplex, TagAllocator, VertexId};
use crate::error::{Error, Result};

/// All simplices having `sigma` as an iterated face, `sigma` included.
pub fn star(k: &QuasiComplex, sigma: &Simplex) -> Result<BTreeSet<Simplex>> {
    k.require(sigma)?;
    let up = k.cofaces();
    let mut out = BTreeSet::new();
    let mut stack = vec![sigma];
    while let Some(s) = stack.pop() {
        if out.insert(s.clone()) {
            if let Some(parents) = up.get(s) {
                stack.extend(parents.iter().copied());
            }
        }
    }
    Ok(out)
}

/// `closure(star(sigma)) \ star(sigma)` as a sub-quasicomplex.
pub fn link(k: &QuasiComplex, sigma: &Simplex) -> Result<QuasiComplex> {
    let st = star(k, sigma)?;
    let closed = k.closure(st.iter());
    let keep: BTreeSet<Simplex> = closed.difference(&st).cloned().collect();
    Ok(k.restrict(&keep))
}

/// Deterministic fresh vertex name for subdividing at `sigma`.
fn fresh_vertex(k: &QuasiComplex, sigma: &Simplex) -> VertexId {
    let names: Vec<&str> = sigma.vertices().iter().map(VertexId::as_str).collect();
    let mut base = format!("*{}", names.join("+"));
    if sigma.tag() > 0 {
        base.push_str(&format!("#{}", sigma.tag()));
    }
    let mut candidate = VertexId::new(base.clone());
    let mut generation = 1;
    while k.has_vertex(&candidate) {
        generation += 1;
        candidate = VertexId::new(format!("{base}.{generation}"));
    }
    candidate
}

/// Stellar subdivision at `sigma`.
///
/// The star of `sigma` is replaced by cones from a fresh vertex `v`. For each
/// star simplex `mu` and each vertex subset `w` of `mu` with
/// `w ∪ vert(sigma) = vert(mu)` and `w ⊉ vert(sigma)`, a new simplex `v * w`
/// is created inside `mu`. On simplicial complexes this is the usual
/// `(K \ St σ) ∪ v * ∂σ * Lk σ`; on quasicomplexes the per-`mu` indexing keeps
/// distinct copies of a link simplex apart. Subdividing at a vertex renames it.
pub fn stellar_subdivide(k: &QuasiComplex, sigma: &Simplex) -> Result<QuasiComplex> {
    let st = star(k, sigma)?;
    let v = fresh_vertex(k, sigma);
    let sig: BTreeSet<&VertexId> = sigma.vertices().iter().collect();

    // identity of a new cell: (star simplex mu, kept subset t of sigma's vertices)
    type CellId = (Simplex, Vec<VertexId>);
    let mut ids: Vec<CellId> = Vec::new();
    let n = sigma.vertices().len();
    for mu in &st {
        // every proper subset t of sigma's vertices, the empty one included
        for mask in 0u64..(1u64 << n) - 1 {
            let t = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| sigma.vertices()[i].clone()).collect();
            ids.push((mu.clone(), t));
        }
    }
    ids.sort();
    ids.dedup();

    let cell_vertices = |mu: &Simplex, t: &[VertexId]| -> Vec<VertexId> {
        let mut w: Vec<VertexId> = mu
            .vertices()
            .iter()
            .filter(|x| !sig.contains(x) || t.contains(x))
            .cloned()
            .collect();
        w.push(v.clone());
        w.sort();
        w
    };

    let mut tags = TagAllocator::default();
    let mut simplex_of: BTreeMap<CellId, Simplex> = BTreeMap::new();
    for id in &ids {
        let s = tags.fresh(cell_vertices(&id.0, &id.1));
        simplex_of.insert(id.clone(), s);
    }

    let mut out = QuasiComplex::empty();
    for (s, faces) in k.cells() {
        if !st.contains(s) {
            out.insert_cell(s.clone(), faces.to_vec());
        }
    }
    for (id, s) in &simplex_of {
        let (mu, t) = id;
        if s.vertices().len() == 1 {
            out.insert_cell(s.clone(), Vec::new());
            continue;
        }
        let faces = s
            .vertices()
            .iter()
            .map(|x| {
                if *x == v {
                    // drop the cone point: the face of mu on w
                    let w: Vec<VertexId> = s.vertices().iter().filter(|y| **y != v).cloned().collect();
                    k.face_on(mu, &w).expect("face of star simplex")
                } else if sig.contains(x) {
                    let t2: Vec<VertexId> = t.iter().filter(|y| *y != x).cloned().collect();
                    simplex_of[&(mu.clone(), t2)].clone()
                } else {
                    let mu2 = k.face_omitting(mu, x).expect("face of star simplex").clone();
                    simplex_of[&(mu2, t.clone())].clone()
                }
            })
            .collect();
        out.insert_cell(s.clone(), faces);
    }
    Ok(out)
}

/// Cone `v * s`. The cone over the empty complex is the single vertex `v`.
pub fn join_cone(v: impl Into<VertexId>, s: &QuasiComplex) -> Result<QuasiComplex> {
    let v = v.into();
    if s.has_vertex(&v) {
        return Err(Error::VertexCollision(v.to_string()));
    }
    let cone_of = |d: &Simplex| {
        let mut verts = d.vertices().to_vec();
        verts.push(v.clone());
        Simplex::new(verts, d.tag())
    };
    let mut out = s.clone();
    out.insert_cell(Simplex::vertex(v.clone()), Vec::new());
    for (d, _) in s.cells() {
        let c = cone_of(d);
        let faces = c
            .vertices()
            .iter()
            .map(|x| {
                if *x == v {
                    d.clone()
                } else if d.vertices().len() == 1 {
                    Simplex::vertex(v.clone())
                } else {
                    cone_of(s.face_omitting(d, x).expect("face of base simplex"))
                }
            })
            .collect();
        out.insert_cell(c, faces);
    }
    Ok(out)
}

/// Alternating count of simplices by dimension.
pub fn euler_characteristic(k: &QuasiComplex) -> i64 {
    k.f_vector()
        .iter()
        .enumerate()
        .map(|(p, &n)| if p % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}
