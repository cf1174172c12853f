//! Generators and independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use sncdual::snc::SncConfiguration;
use sncdual::weight::LocalSystem;
use sncdual::{QuasiComplex, Simplex};

pub fn fixture(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    std::fs::read_to_string(path).expect("fixture")
}

/// Random valid quasicomplex with at most `max_simplices` cells. Cells are
/// attached one at a time over existing boundaries, so repeated vertex sets
/// (non-simplicial cells) occur whenever a boundary is reused.
pub fn random_quasicomplex<R: Rng>(rng: &mut R, max_simplices: usize) -> QuasiComplex {
    let nv = rng.random_range(1..=5.min(max_simplices.max(1)));
    let names: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let mut cells: Vec<(Simplex, Vec<Simplex>)> = names.iter().map(|v| (Simplex::vertex(v.as_str()), vec![])).collect();
    let target = rng.random_range(nv..=max_simplices.max(nv));
    let mut attempts = 0;
    while cells.len() < target && attempts < 200 {
        attempts += 1;
        let d = rng.random_range(1..=3usize);
        if d + 1 > nv {
            continue;
        }
        let mut verts = names.clone();
        verts.shuffle(rng);
        verts.truncate(d + 1);
        verts.sort();
        // candidate faces for each omitted position
        let options: Vec<Vec<usize>> = (0..=d)
            .map(|k| {
                let face: Vec<&String> = verts.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, v)| v).collect();
                cells
                    .iter()
                    .enumerate()
                    .filter(|(_, (s, _))| s.vertices().iter().map(|x| x.as_str()).eq(face.iter().map(|x| x.as_str())))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        if options.iter().any(Vec::is_empty) {
            continue;
        }
        let mut found = Vec::new();
        let mut pick = vec![0usize; d + 1];
        consistent_tuples(&cells, &options, 0, &mut pick, &mut found);
        if found.is_empty() {
            continue;
        }
        let choice = &found[rng.random_range(0..found.len())];
        let tag = cells.iter().filter(|(s, _)| s.vertices().iter().map(|x| x.as_str()).eq(verts.iter().map(String::as_str))).count();
        let faces = choice.iter().map(|&i| cells[i].0.clone()).collect();
        cells.push((Simplex::new(verts.iter().map(String::as_str), tag as u32), faces));
    }
    QuasiComplex::from_cells(cells)
}

fn consistent_tuples(
    cells: &[(Simplex, Vec<Simplex>)],
    options: &[Vec<usize>],
    k: usize,
    pick: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    if found.len() > 64 {
        return;
    }
    if k == options.len() {
        found.push(pick.clone());
        return;
    }
    for &c in &options[k] {
        // face_i(face_k) must equal face_{k-1}(face_i) for i < k
        let ok = (0..k).all(|i| {
            let fk = &cells[c].1;
            let fi = &cells[pick[i]].1;
            fk.is_empty() || fk[i] == fi[k - 1]
        });
        if ok {
            pick[k] = c;
            consistent_tuples(cells, options, k + 1, pick, found);
        }
    }
}

/// Rank over the rationals by plain Gaussian elimination.
pub fn naive_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = a[r][c].clone() / a[rank][c].clone();
                for j in c..cols {
                    let v = a[rank][j].clone() * f.clone();
                    a[r][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Betti numbers from boundary matrices assembled directly from the cell
/// list, with rank by [`naive_rank`].
pub fn oracle_betti(k: &QuasiComplex) -> Vec<usize> {
    let mut by_dim: BTreeMap<usize, Vec<&Simplex>> = BTreeMap::new();
    for s in k.simplices() {
        by_dim.entry(s.vertices().len() - 1).or_default().push(s);
    }
    let top = match by_dim.keys().next_back() {
        Some(&t) => t,
        None => return vec![],
    };
    let count = |p: usize| by_dim.get(&p).map_or(0, Vec::len);
    let rank_of = |p: usize| -> usize {
        // boundary from dimension p to p - 1
        if p == 0 || count(p) == 0 {
            return 0;
        }
        let lower = &by_dim[&(p - 1)];
        let mut m = vec![vec![q(0); count(p)]; lower.len()];
        for (j, s) in by_dim[&p].iter().enumerate() {
            for (i, f) in k.faces(s).unwrap().iter().enumerate() {
                let r = lower.iter().position(|x| *x == f).unwrap();
                m[r][j] += q(if i % 2 == 0 { 1 } else { -1 });
            }
        }
        naive_rank(&m)
    };
    let ranks: Vec<usize> = (0..=top + 1).map(rank_of).collect();
    (0..=top).map(|p| count(p) - ranks[p] - ranks[p + 1]).collect()
}

pub fn trim(v: &[usize]) -> Vec<usize> {
    let end = v.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    v[..end].to_vec()
}

/// Ids of all non-free strata and components.
pub fn stratum_ids(c: &SncConfiguration) -> Vec<String> {
    c.components.iter().map(|x| x.id.clone()).chain(c.strata.iter().filter(|s| !s.is_free()).map(|s| s.id.clone())).collect()
}

pub fn all_ids(c: &SncConfiguration) -> Vec<String> {
    c.components.iter().map(|x| x.id.clone()).chain(c.strata.iter().map(|s| s.id.clone())).collect()
}

pub fn trivial_local_system(c: &SncConfiguration) -> LocalSystem {
    LocalSystem::trivial(stratum_ids(c))
}

/// Component ids of a stratum or component.
pub fn comps_of(c: &SncConfiguration, id: &str) -> Vec<String> {
    match c.strata.iter().find(|s| s.id == id) {
        Some(s) => s.components.clone(),
        None => vec![id.to_string()],
    }
}

pub fn dim_of(c: &SncConfiguration, id: &str) -> usize {
    match c.strata.iter().find(|s| s.id == id) {
        Some(s) => s.dim,
        None => c.component(id).unwrap().dim,
    }
}

/// A local system whose rank in degree `q` depends only on the number of
/// components of a stratum (non-increasing) and vanishes above twice its
/// dimension, with restrictions given by
/// coordinate projections rescaled by per-stratum weights. Such maps compose
/// consistently, so the cosimplicial identities hold.
pub fn random_local_system<R: Rng>(rng: &mut R, c: &SncConfiguration) -> (LocalSystem, Vec<(String, String)>) {
    let qmax = rng.random_range(1..=2usize);
    let max_m = c.strata.iter().map(|s| s.components.len()).max().unwrap_or(1).max(1);
    let mut ranks: Vec<Vec<usize>> = Vec::new(); // [q][m - 1]
    for _ in 0..qmax {
        let mut r = rng.random_range(0..=2usize);
        let mut by_m = Vec::new();
        for _ in 0..max_m {
            by_m.push(r);
            r = r.saturating_sub(rng.random_range(0..=1));
        }
        ranks.push(by_m);
    }
    let ids = stratum_ids(c);
    let mut weight: BTreeMap<&str, Vec<Vec<i64>>> = BTreeMap::new();
    let mut l = LocalSystem::new();
    for id in &ids {
        let m = comps_of(c, id).len();
        let dim = dim_of(c, id);
        let mut dims = vec![1];
        // no cohomology above twice the dimension
        dims.extend((0..qmax).map(|q| if q + 1 > 2 * dim { 0 } else { ranks[q][m - 1] }));
        weight.insert(id, (0..qmax).map(|q| (0..dims[q + 1]).map(|_| rng.random_range(1..=3)).collect()).collect());
        l.set_dims(id.clone(), dims).unwrap();
    }
    // immediate face pairs
    let mut pairs = Vec::new();
    for s in c.strata.iter().filter(|s| s.components.len() >= 2) {
        let faces: Vec<String> = match &s.faces {
            Some(f) => f.clone(),
            None => (0..s.components.len())
                .map(|k| {
                    let want: Vec<&String> = s.components.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, x)| x).collect();
                    if want.len() == 1 {
                        return want[0].clone();
                    }
                    c.strata.iter().find(|t| t.components.iter().eq(want.iter().copied())).unwrap().id.clone()
                })
                .collect(),
        };
        for f in faces {
            pairs.push((f, s.id.clone()));
        }
    }
    for (from, to) in &pairs {
        for q in 0..qmax {
            let (wf, wt) = (&weight[from.as_str()][q], &weight[to.as_str()][q]);
            if wf.is_empty() || wt.is_empty() {
                continue;
            }
            // x_i ↦ (wt_i / wf_i) x_i on the first wt.len() coordinates
            let mut m = sncdual::linalg::Matrix::zeros(wt.len(), wf.len());
            for i in 0..wt.len() {
                m.set(i, i, BigRational::new(BigInt::from(wt[i]), BigInt::from(wf[i])));
            }
            l.set_restriction(from.clone(), to.clone(), q + 1, m).unwrap();
        }
    }
    (l, pairs)
}

/// Total cohomology of the E₁ page regarded as rows with zero vertical maps:
/// `Σ_q H^{i-q}(row q)`, with ranks by [`naive_rank`].
pub fn oracle_total(e: &sncdual::weight::E1Page) -> Vec<usize> {
    let cols = e.columns_len();
    let rows = e.rows_len();
    let degrees = (cols + rows).saturating_sub(1);
    let rank = |p: usize, q: usize| -> usize {
        if p + 1 >= cols {
            return 0;
        }
        let m = &e.d1[p][q];
        naive_rank(&m.to_rows())
    };
    let mut total = vec![0; degrees];
    for q in 0..rows {
        for p in 0..cols {
            let h = e.term(p, q) - rank(p, q) - if p == 0 { 0 } else { rank(p - 1, q) };
            total[p + q] += h;
        }
    }
    total
}

/// `Gr_j H^k(X)` for an isolated-singularity resolution, from the exact
/// sequence of the pair `(Y ⊔ S, E)` and the Mayer–Vietoris rows of `E`,
/// assembled here from the raw restriction data. Returns `gr[j][k]`.
pub fn les_oracle(r: &sncdual::weight::IsolatedResolution) -> Vec<Vec<usize>> {
    let e = &r.exceptional;
    let l = &r.local_system;
    let qmax = l.max_degree();
    let mut levels: Vec<Vec<(String, Vec<String>)>> = Vec::new();
    for c in &e.components {
        if levels.is_empty() {
            levels.push(Vec::new());
        }
        levels[0].push((c.id.clone(), vec![c.id.clone()]));
    }
    for s in e.strata.iter().filter(|s| !s.is_free()) {
        let m = s.components.len() - 1;
        while levels.len() <= m {
            levels.push(Vec::new());
        }
        levels[m].push((s.id.clone(), s.components.clone()));
    }
    let h = |id: &str, q: usize| l.h(id, q).unwrap();
    // d1 of row q of E from column p
    let d1 = |p: usize, q: usize| -> Vec<Vec<BigRational>> {
        let src = &levels[p];
        let Some(dst) = levels.get(p + 1) else { return vec![] };
        let scol: Vec<usize> = src.iter().map(|(id, _)| h(id, q)).collect();
        let drow: Vec<usize> = dst.iter().map(|(id, _)| h(id, q)).collect();
        let mut m = vec![vec![q0(); scol.iter().sum()]; drow.iter().sum()];
        for (ti, (tid, tcomps)) in dst.iter().enumerate() {
            for k in 0..tcomps.len() {
                let want: Vec<&String> = tcomps.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, x)| x).collect();
                let si = src.iter().position(|(_, c)| c.iter().eq(want.iter().copied())).unwrap();
                let res = l.restriction(&src[si].0, tid, q).unwrap();
                let (r0, c0) = (drow[..ti].iter().sum::<usize>(), scol[..si].iter().sum::<usize>());
                for a in 0..res.rows() {
                    for b in 0..res.cols() {
                        let v = res.get(a, b).clone();
                        m[r0 + a][c0 + b] += if k % 2 == 0 { v } else { -v };
                    }
                }
            }
        }
        m
    };
    let cols = levels.len();
    let rank = |p: usize, q: usize| if p + 1 < cols { naive_rank(&d1(p, q)) } else { 0 };
    let dim_col = |p: usize, q: usize| levels[p].iter().map(|(id, _)| h(id, q)).sum::<usize>();
    // Gr_j H^k(E) = E₂^{k-j, j}
    let e2 = |j: usize, k: usize| -> usize {
        if k < j || k - j >= cols || j > qmax {
            return 0;
        }
        let p = k - j;
        dim_col(p, j) - rank(p, j) - if p == 0 { 0 } else { rank(p - 1, j) }
    };
    // rank of H^k(Y) ⊕ H^k(S) → ⊕ H^k(E_i)
    let npts = r.singular_points.len();
    let rank_in = |k: usize| -> usize {
        if cols == 0 || k > qmax {
            return 0;
        }
        let comps = &levels[0];
        let hy = h(&r.resolution, k);
        let width = hy + if k == 0 { npts } else { 0 };
        let mut m: Vec<Vec<BigRational>> = Vec::new();
        for (cid, _) in comps {
            let res = l.restriction(&r.resolution, cid, k).unwrap();
            for a in 0..res.rows() {
                let mut row = vec![q0(); width];
                for b in 0..res.cols() {
                    row[b] = res.get(a, b).clone();
                }
                if k == 0 {
                    let x = &r.over[cid];
                    let xi = r.singular_points.iter().position(|p| p == x).unwrap();
                    row[hy + xi] = q(1);
                }
                m.push(row);
            }
        }
        naive_rank(&m)
    };
    let top = qmax + cols + 1;
    let mut gr = vec![vec![0usize; top + 1]; top + 1];
    for k in 0..=top {
        let hy = h(&r.resolution, k);
        gr[k][k] = hy + if k == 0 { npts } else { 0 } - rank_in(k);
        for j in 0..k {
            gr[j][k] = e2(j, k - 1) - if j == k - 1 { rank_in(k - 1) } else { 0 };
        }
    }
    gr
}

fn q0() -> BigRational {
    BigRational::zero()
}
