//! Seeded generator of valid configurations.
//!
//! Two shapes are produced. The general shape picks components, then builds a
//! downward-closed family of strata subset by subset with parents chosen to
//! satisfy the diamond condition and dimensions inside the admissible window.
//! The pencil shape puts several components through one common stratum and
//! declares all their intersections coincident.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Component, SncConfiguration, Stratum};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomConfigParams {
    pub seed: u64,
    pub max_ambient_dim: usize,
    pub max_components: usize,
    pub max_strata: usize,
}

impl RandomConfigParams {
    pub fn new(seed: u64) -> Self {
        RandomConfigParams { seed, max_ambient_dim: 5, max_components: 6, max_strata: 12 }
    }
}

const MAX_COMPONENTS: usize = 12;

pub fn gen_random(params: &RandomConfigParams) -> Result<SncConfiguration> {
    if params.max_ambient_dim == 0 {
        return Err(Error::UnsatisfiableBounds("ambient dimension bound must be positive".into()));
    }
    if params.max_components == 0 || params.max_components > MAX_COMPONENTS {
        return Err(Error::UnsatisfiableBounds(format!(
            "component bound must lie in 1..={MAX_COMPONENTS}, got {}",
            params.max_components
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let pencil = params.max_ambient_dim >= 3 && params.max_components >= 2 && params.max_strata >= 1 && rng.random_bool(0.25);
    let mut c = if pencil { gen_pencil(params, &mut rng) } else { gen_general(params, &mut rng) };
    c.drop_inferable_faces();
    Ok(c)
}

fn component_id(i: usize) -> String {
    char::from(b'A' + i as u8).to_string()
}

struct Draft {
    comps: Vec<usize>,
    dim: usize,
    parents: Vec<usize>,
}

fn gen_general(params: &RandomConfigParams, rng: &mut ChaCha8Rng) -> SncConfiguration {
    let n = rng.random_range(1..=params.max_ambient_dim);
    let m = rng.random_range(1..=params.max_components);
    let dims: Vec<usize> = (0..m).map(|_| if rng.random_bool(0.5) { n - 1 } else { rng.random_range(0..n) }).collect();

    // nodes 0..m are the components
    let mut nodes: Vec<Draft> = (0..m).map(|i| Draft { comps: vec![i], dim: dims[i], parents: vec![] }).collect();
    let mut budget = params.max_strata;
    if budget > 0 && rng.random_bool(0.15) {
        budget -= 1;
        nodes.push(Draft { comps: vec![], dim: rng.random_range(0..n), parents: vec![] });
    }

    for size in 2..=m {
        let mut subsets = subsets_of_size(m, size);
        subsets.shuffle(rng);
        for s in subsets {
            let copies = if rng.random_bool(0.2) { 2 } else { 1 };
            for _ in 0..copies {
                if budget == 0 || !rng.random_bool(if size == 2 { 0.6 } else { 0.5 }) {
                    continue;
                }
                let Some(parents) = choose_parents(&nodes, &s, rng) else {
                    continue;
                };
                let codims: usize = s.iter().map(|&i| n - dims[i]).sum();
                let lo = n.saturating_sub(codims);
                let Some(hi) = parents.iter().map(|&p| nodes[p].dim).min().and_then(|d| d.checked_sub(1)) else {
                    continue;
                };
                let dim = if s.iter().all(|&i| dims[i] + 1 == n) {
                    match n.checked_sub(size) {
                        Some(d) if d <= hi => d,
                        _ => continue,
                    }
                } else if lo <= hi {
                    rng.random_range(lo..=hi)
                } else {
                    continue;
                };
                nodes.push(Draft { comps: s.clone(), dim, parents });
                budget -= 1;
            }
        }
    }

    let id = |i: usize| if i < m { component_id(i) } else { format!("S{}", i - m + 1) };
    let components = (0..m).map(|i| Component { id: component_id(i), dim: dims[i] }).collect();
    let strata = (m..nodes.len())
        .map(|i| {
            let d = &nodes[i];
            let mut s = Stratum::new(id(i), d.comps.iter().map(|&x| component_id(x)), d.dim);
            if d.comps.len() >= 2 {
                s.faces = Some(d.parents.iter().map(|&p| id(p)).collect());
            }
            s
        })
        .collect();
    SncConfiguration::new(n, components, strata)
}

fn subsets_of_size(m: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << m)
        .filter(|mask| mask.count_ones() as usize == size)
        .map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

/// A random parent tuple for a new stratum on `s` satisfying the diamond
/// condition, or `None` when some face subset has no stratum.
fn choose_parents(nodes: &[Draft], s: &[usize], rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    let candidates: Vec<Vec<usize>> = (0..s.len())
        .map(|k| {
            let sub: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
            (0..nodes.len()).filter(|&j| nodes[j].comps == sub).collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut consistent = Vec::new();
    let mut choice = vec![0; s.len()];
    loop {
        let tuple: Vec<usize> = choice.iter().enumerate().map(|(k, &c)| candidates[k][c]).collect();
        let ok = s.len() < 3
            || (0..s.len()).all(|i| {
                (i + 1..s.len()).all(|j| nodes[tuple[j]].parents[i] == nodes[tuple[i]].parents[j - 1])
            });
        if ok {
            consistent.push(tuple);
        }
        // odometer over the candidate lists
        let mut k = 0;
        while k < s.len() {
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == s.len() {
            break;
        }
    }
    if consistent.is_empty() {
        None
    } else {
        let i = rng.random_range(0..consistent.len());
        Some(consistent.swap_remove(i))
    }
}

fn gen_pencil(params: &RandomConfigParams, rng: &mut ChaCha8Rng) -> SncConfiguration {
    let n = rng.random_range(3..=params.max_ambient_dim);
    // k components give 2^k - k - 1 strata
    let max_k = (2..=params.max_components.min(4)).filter(|&k| (1 << k) - k - 1 <= params.max_strata).max().unwrap_or(2);
    let d = rng.random_range(0..=n - 3);
    // coordinate subspaces meeting pairwise in the same d-plane need
    // disjoint complementary directions: Σ (dim - d) ≤ n - d
    let k = rng.random_range(2..=max_k.min(n - d));
    let mut dims: Vec<usize> = (0..k).map(|_| rng.random_range(d + 1..=n - 2)).collect();
    if dims.iter().map(|&x| x - d).sum::<usize>() > n - d {
        dims = vec![d + 1; k];
    }
    let mut components: Vec<Component> = (0..k).map(|i| Component { id: component_id(i), dim: dims[i] }).collect();
    if k < params.max_components && rng.random_bool(0.3) {
        components.push(Component { id: component_id(k), dim: n - 1 });
    }
    let name = |s: &[usize]| format!("L{}", s.iter().map(|&i| component_id(i)).collect::<String>());
    let all: Vec<usize> = (0..k).collect();
    let mut strata = Vec::new();
    for size in 2..=k {
        for s in subsets_of_size(k, size) {
            let mut st = Stratum::new(name(&s), s.iter().map(|&i| component_id(i)), d);
            if size < k {
                st.coincides_with = Some(name(&all));
            }
            strata.push(st);
        }
    }
    SncConfiguration::new(n, components, strata)
}
