//! Cubical-hyperresolution style diagram of a variety `X` with isolated
//! singular points, built from a resolution `Y → X` whose exceptional set `E`
//! is an SNC divisor over the finite singular set `S`.
//!
//! Level `0` is `Y ⊔ S₀`; level `m ≥ 1` is `E^{(m)} ⊔ S_m`, where `E^{(m)}` are
//! the strata on `m` components and `S_m` the points under the strata on
//! `m + 1` components. A stratum on `m` components has the `m` inclusions that
//! drop a component (into `Y` when `m = 1`) and, last, its map to the point
//! below it in `S_{m-1}`. Points map identically to themselves.
//!
//! A point appearing up to level `N` contributes `ℚ` in even-to-odd pairs; when
//! `N` is odd it is repeated once more at level `N + 1` so that the point
//! column stays acyclic above degree `0`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::e1::{stratum_levels, Cell, Diagram, E1Page};
use super::local::{LocalSystem, LocalSystemDoc};
use crate::error::{Error, Result};
use crate::snc::{self, SncConfiguration};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsolatedResolutionDoc {
    #[serde(default = "default_resolution")]
    pub resolution: String,
    pub exceptional: SncConfiguration,
    pub local_system: LocalSystemDoc,
    pub singular_points: Vec<String>,
    /// Component of `E` → singular point below it.
    pub over: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_chain: Option<Vec<Vec<String>>>,
}

fn default_resolution() -> String {
    "Y".into()
}

#[derive(Clone, Debug)]
pub struct IsolatedResolution {
    /// Id of `Y` in the local system.
    pub resolution: String,
    pub exceptional: SncConfiguration,
    /// Cohomology of `Y` and of every stratum of `E`, with restrictions.
    pub local_system: LocalSystem,
    pub singular_points: Vec<String>,
    pub over: BTreeMap<String, String>,
    /// Expected `S₀, S₁, …` before padding; checked when present.
    pub s_chain: Option<Vec<Vec<String>>>,
}

impl IsolatedResolution {
    pub fn from_doc(doc: &IsolatedResolutionDoc) -> Result<Self> {
        Ok(IsolatedResolution {
            resolution: doc.resolution.clone(),
            exceptional: doc.exceptional.clone(),
            local_system: LocalSystem::from_doc(&doc.local_system)?,
            singular_points: doc.singular_points.clone(),
            over: doc.over.clone(),
            s_chain: doc.s_chain.clone(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_doc(&serde_json::from_str(text)?)
    }
}

/// E₁ page of the diagram; its weight table gives `Gr^W H^*(X)`.
pub fn isolated_resolution_e1(r: &IsolatedResolution) -> Result<E1Page> {
    let p = snc::checked(&r.exceptional)?;
    let bad = |msg: String| Error::InconsistentSChain(msg);

    let points: BTreeSet<&str> = r.singular_points.iter().map(String::as_str).collect();
    if points.len() != r.singular_points.len() {
        return Err(bad("duplicate singular point".into()));
    }
    if points.contains(r.resolution.as_str()) {
        return Err(bad(format!("singular point {} clashes with the resolution id", r.resolution)));
    }
    for (comp, x) in &r.over {
        if r.exceptional.component(comp).is_none() {
            return Err(bad(format!("{comp} is not a component of the exceptional divisor")));
        }
        if !points.contains(x.as_str()) {
            return Err(bad(format!("{comp} lies over unknown point {x}")));
        }
    }

    let (strata, position) = stratum_levels(&p);
    // the point under each stratum
    let mut below: BTreeMap<usize, &str> = BTreeMap::new();
    for &i in strata.iter().flatten() {
        let node = &p.nodes[i];
        let mut xs = node.comps.iter().map(|c| r.over.get(c).map(String::as_str));
        let first = xs.next().flatten().ok_or_else(|| bad(format!("{} has no point below it", node.comps[0])))?;
        if xs.any(|x| x != Some(first)) {
            return Err(bad(format!("components of {} lie over different points", node.id)));
        }
        below.insert(i, first);
    }

    // S_m = points under strata on m + 1 components; S_0 holds every point
    let mut chain: Vec<BTreeSet<&str>> = vec![points.clone()];
    for (m, level) in strata.iter().enumerate().skip(1) {
        if chain.len() <= m {
            chain.resize(m + 1, BTreeSet::new());
        }
        chain[m].extend(level.iter().map(|i| below[i]));
    }
    while chain.len() > 1 && chain.last().is_some_and(BTreeSet::is_empty) {
        chain.pop();
    }
    if let Some(expected) = &r.s_chain {
        let mut expected: Vec<BTreeSet<&str>> =
            expected.iter().map(|s| s.iter().map(String::as_str).collect()).collect();
        while expected.len() > 1 && expected.last().is_some_and(BTreeSet::is_empty) {
            expected.pop();
        }
        if expected != chain {
            return Err(bad(format!("given chain {expected:?} differs from the images {chain:?}")));
        }
    }
    for x in &points {
        let top = chain.iter().rposition(|s| s.contains(x)).unwrap_or(0);
        if top % 2 == 1 {
            if chain.len() <= top + 1 {
                chain.push(BTreeSet::new());
            }
            chain[top + 1].insert(x);
        }
    }

    let depth = chain.len().max(strata.len() + 1);
    let mut levels: Vec<Vec<Cell>> = vec![Vec::new(); depth];
    levels[0].push(Cell { id: r.resolution.clone(), faces: Vec::new(), point: false });
    // index of each point within its level
    let mut point_at: Vec<BTreeMap<&str, usize>> = vec![BTreeMap::new(); depth];
    for m in 0..depth {
        if m >= 1 {
            for &i in strata.get(m - 1).map(Vec::as_slice).unwrap_or(&[]) {
                let node = &p.nodes[i];
                let mut faces: Vec<usize> = if m == 1 {
                    vec![0]
                } else {
                    node.parents.iter().map(|f| position[f]).collect()
                };
                faces.push(point_at[m - 1][below[&i]]);
                levels[m].push(Cell { id: node.id.clone(), faces, point: false });
            }
        }
        for &x in chain.get(m).into_iter().flatten() {
            let faces = if m == 0 { Vec::new() } else { vec![point_at[m - 1][x]; m + 1] };
            point_at[m].insert(x, levels[m].len());
            levels[m].push(Cell { id: x.to_string(), faces, point: true });
        }
    }

    let mut known: BTreeSet<String> = p.nodes.iter().map(|n| n.id.clone()).collect();
    known.insert(r.resolution.clone());
    Diagram { levels }.e1(&r.local_system, &known)
}
