//! Combinatorial blow-ups.
//!
//! Blowing up the closure of a stratum `C` removes every stratum whose point
//! set lies inside `E(C)` and adds an exceptional divisor `v`. For each
//! surviving stratum `Δ` and each connected piece `Γ` of `E(Δ) ∩ E(C)` (a
//! stratum on `comps(Δ) ∪ comps(C)` over both) there is a new stratum on
//! `comps(Δ) ∪ {v}` of dimension `dim E(Δ) - 1`, a projectivized normal bundle
//! over `Γ`. When `C` lies on divisors only, the dual complex undergoes a
//! stellar subdivision at the simplex of `C`; otherwise a cone from `v` is
//! attached. A free center leaves the SNC set untouched.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::poset::union;
use super::{checked, Component, Poset, SncConfiguration, Stratum};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum BlowupCase {
    /// Center outside the SNC set: nothing changes.
    Free = 1,
    /// Center on divisors only: stellar subdivision.
    Stellar = 2,
    /// Center involving a non-divisorial component: cone attachment.
    Cone = 3,
}

impl From<BlowupCase> for u8 {
    fn from(c: BlowupCase) -> u8 {
        c as u8
    }
}

impl TryFrom<u8> for BlowupCase {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(BlowupCase::Free),
            2 => Ok(BlowupCase::Stellar),
            3 => Ok(BlowupCase::Cone),
            other => Err(format!("unknown blow-up case {other}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupStep {
    pub center: String,
    pub case: BlowupCase,
    pub new_exceptional: Option<String>,
    /// Components and strata whose point sets lay inside the center.
    pub removed: Vec<String>,
    /// Strata created on the exceptional divisor.
    pub created: Vec<String>,
    /// New strata are taken to be connected.
    pub assumes_connected: bool,
}

pub fn blowup(c: &SncConfiguration, center: &str) -> Result<(SncConfiguration, BlowupStep)> {
    let p = checked(c)?;
    let &ci = p.index.get(center).ok_or_else(|| Error::CenterNotFound(center.to_string()))?;
    Ok(blowup_at(c, &p, ci))
}

fn fresh(base: String, taken: &BTreeSet<String>) -> String {
    if !taken.contains(&base) {
        return base;
    }
    (2..).map(|k| format!("{base}~{k}")).find(|id| !taken.contains(id)).expect("unbounded")
}

pub(crate) fn blowup_at(c: &SncConfiguration, p: &Poset, ci: usize) -> (SncConfiguration, BlowupStep) {
    let center = &p.nodes[ci];
    let case = if center.is_free() {
        BlowupCase::Free
    } else if center.comps.iter().all(|x| p.divisor[x]) {
        BlowupCase::Stellar
    } else {
        BlowupCase::Cone
    };

    if case == BlowupCase::Free {
        let strata = c.strata.iter().filter(|s| s.id != center.id).cloned().collect();
        let out = SncConfiguration::new(c.ambient_dim, c.components.clone(), strata);
        let step = BlowupStep {
            center: center.id.clone(),
            case,
            new_exceptional: None,
            removed: vec![center.id.clone()],
            created: Vec::new(),
            assumes_connected: true,
        };
        return (out, step);
    }

    let removed: BTreeSet<usize> =
        (0..p.nodes.len()).filter(|&i| !p.nodes[i].is_free() && p.contained_in(i, ci)).collect();
    let mut taken: BTreeSet<String> = p.index.keys().cloned().collect();
    let v = fresh(
        (1..).map(|k| format!("X{k}")).find(|id| !taken.contains(id)).expect("unbounded"),
        &taken,
    );
    taken.insert(v.clone());

    // new strata, keyed by (Δ, Γ)
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for d in 0..p.nodes.len() {
        if removed.contains(&d) || p.nodes[d].is_free() {
            continue;
        }
        let target = union(&p.nodes[d].comps, &center.comps);
        for g in 0..p.nodes.len() {
            if p.nodes[g].comps == target && p.le(d, g) && p.le(ci, g) {
                pairs.push((d, g));
            }
        }
    }
    let mut new_id: BTreeMap<(usize, usize), String> = BTreeMap::new();
    for (k, &pair) in pairs.iter().enumerate() {
        let id = fresh(format!("{v}.{}", k + 1), &taken);
        taken.insert(id.clone());
        new_id.insert(pair, id);
    }

    let mut components: Vec<Component> =
        c.components.iter().filter(|x| !removed.contains(&p.index[&x.id])).cloned().collect();
    components.push(Component { id: v.clone(), dim: c.ambient_dim - 1 });

    let mut strata: Vec<Stratum> =
        c.strata.iter().filter(|s| !removed.contains(&p.index[&s.id])).cloned().collect();

    // first new stratum of each coincidence class is the representative
    let mut rep: BTreeMap<(usize, usize), String> = BTreeMap::new();
    let mut created = Vec::new();
    for &(d, g) in &pairs {
        let node = &p.nodes[d];
        let mut comps = node.comps.clone();
        comps.push(v.clone());
        comps.sort();
        let faces: Vec<String> = comps
            .iter()
            .map(|x| {
                if *x == v {
                    node.id.clone()
                } else if node.comps.len() == 1 {
                    v.clone()
                } else {
                    let pos = node.comps.iter().position(|y| y == x).expect("component of Δ");
                    let dx = node.parents[pos];
                    let gx = p
                        .face_on(g, &union(&p.nodes[dx].comps, &center.comps))
                        .expect("face of Γ");
                    new_id[&(dx, gx)].clone()
                }
            })
            .collect();
        let id = new_id[&(d, g)].clone();
        let class_key = (p.class[d], p.class[g]);
        let coincides_with = match rep.get(&class_key) {
            Some(r) => Some(r.clone()),
            None => {
                rep.insert(class_key, id.clone());
                None
            }
        };
        created.push(id.clone());
        strata.push(Stratum { id, components: comps, dim: node.dim - 1, coincides_with, faces: Some(faces) });
    }

    // explicit faces only where inference would be ambiguous
    let kept_faces: BTreeMap<String, Option<Vec<String>>> =
        strata.iter().filter(|s| !created.contains(&s.id)).map(|s| (s.id.clone(), s.faces.clone())).collect();
    let mut out = SncConfiguration::new(c.ambient_dim, components, strata);
    out.drop_inferable_faces();
    for s in &mut out.strata {
        if let Some(f) = kept_faces.get(&s.id) {
            s.faces = f.clone();
        }
    }
    let step = BlowupStep {
        center: center.id.clone(),
        case,
        new_exceptional: Some(v),
        removed: removed.iter().map(|&i| p.nodes[i].id.clone()).collect(),
        created,
        assumes_connected: true,
    };
    (out, step)
}

/// Blows up every original stratum and component, smallest dimension first
/// (ties by id), skipping those already removed. Needs a divisorial input.
pub fn make_simplicial(c: &SncConfiguration) -> Result<(SncConfiguration, Vec<BlowupStep>)> {
    let p = checked(c)?;
    if let Some(x) = c.components.iter().find(|x| !p.divisor[&x.id]) {
        return Err(Error::NotDivisorial(x.id.clone()));
    }
    let mut order: Vec<&super::poset::Node> = p.nodes.iter().filter(|n| !n.is_free()).collect();
    order.sort_by(|a, b| (a.dim, &a.id).cmp(&(b.dim, &b.id)));
    let mut cur = c.clone();
    let mut steps = Vec::new();
    for node in order {
        let q = checked(&cur)?;
        if let Some(&i) = q.index.get(&node.id) {
            let (next, step) = blowup_at(&cur, &q, i);
            cur = next;
            steps.push(step);
        }
    }
    Ok((cur, steps))
}

/// Turns every component into a divisor. Each round blows up a stratum of
/// smallest dimension (ties by id) among the surviving strata on original
/// components that involve a non-divisorial component.
pub fn divisorialize(c: &SncConfiguration) -> Result<(SncConfiguration, Vec<BlowupStep>)> {
    checked(c)?;
    let original: BTreeSet<String> = c.components.iter().map(|x| x.id.clone()).collect();
    let mut cur = c.clone();
    let mut steps = Vec::new();
    loop {
        let p = checked(&cur)?;
        let next = (0..p.nodes.len())
            .filter(|&i| {
                let node = &p.nodes[i];
                !node.is_free()
                    && node.comps.iter().all(|x| original.contains(x))
                    && node.comps.iter().any(|x| !p.divisor[x])
            })
            .min_by(|&a, &b| (p.nodes[a].dim, &p.nodes[a].id).cmp(&(p.nodes[b].dim, &p.nodes[b].id)));
        let Some(i) = next else {
            break;
        };
        let (out, step) = blowup_at(&cur, &p, i);
        cur = out;
        steps.push(step);
    }
    Ok((cur, steps))
}
