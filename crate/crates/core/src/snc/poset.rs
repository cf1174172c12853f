//! Checked view of a configuration: every component and stratum becomes a
//! node with resolved parents, ancestor sets and coincidence classes.

use std::collections::{BTreeMap, BTreeSet};

use super::SncConfiguration;
use crate::error::ValidationReport;

#[derive(Clone, Debug)]
pub(crate) struct Node {
    pub id: String,
    /// Component ids, sorted.
    pub comps: Vec<String>,
    pub dim: usize,
    /// `parents[k]` drops `comps[k]`; empty for components and free strata.
    pub parents: Vec<usize>,
    pub is_component: bool,
}

impl Node {
    pub fn is_free(&self) -> bool {
        self.comps.is_empty()
    }
}

/// Nodes are the components followed by the strata, each in canonical order.
#[derive(Clone, Debug)]
pub(crate) struct Poset {
    pub ambient_dim: usize,
    pub nodes: Vec<Node>,
    pub index: BTreeMap<String, usize>,
    /// Iterated faces of each node, itself included.
    pub ancestors: Vec<BTreeSet<usize>>,
    /// Coincidence class representative (smallest node index in the class).
    pub class: Vec<usize>,
    /// Which components are divisors.
    pub divisor: BTreeMap<String, bool>,
}

impl Poset {
    pub fn build(c: &SncConfiguration) -> Result<Poset, ValidationReport> {
        let mut report = ValidationReport::default();
        let n = c.ambient_dim;
        if n == 0 {
            report.push("ambient", "ambient dimension must be at least 1", vec![]);
        }

        let mut nodes = Vec::new();
        for comp in &c.components {
            if comp.dim >= n {
                report.push(
                    "component-dim",
                    format!("component dimension {} is not below the ambient dimension {n}", comp.dim),
                    vec![comp.id.clone()],
                );
            }
            nodes.push(Node {
                id: comp.id.clone(),
                comps: vec![comp.id.clone()],
                dim: comp.dim,
                parents: Vec::new(),
                is_component: true,
            });
        }
        for s in &c.strata {
            nodes.push(Node {
                id: s.id.clone(),
                comps: s.components.clone(),
                dim: s.dim,
                parents: Vec::new(),
                is_component: false,
            });
        }

        let mut index = BTreeMap::new();
        for (i, node) in nodes.iter().enumerate() {
            if node.id.is_empty() {
                report.push("empty-id", "identifier is empty", vec![]);
            }
            if index.insert(node.id.clone(), i).is_some() {
                report.push("duplicate-id", "identifier is used more than once", vec![node.id.clone()]);
            }
        }
        let is_comp = |id: &str| c.components.iter().any(|x| x.id == id);
        for s in &c.strata {
            for id in &s.components {
                if !is_comp(id) {
                    report.push("dangling-reference", format!("unknown component {id}"), vec![s.id.clone()]);
                }
            }
            if s.components.windows(2).any(|w| w[0] == w[1]) {
                report.push("duplicate-component", "component listed twice", vec![s.id.clone()]);
            }
            if s.components.len() == 1 {
                report.push(
                    "singleton-stratum",
                    "a stratum on one component is the component itself and must not be listed",
                    vec![s.id.clone(), s.components[0].clone()],
                );
            }
            if let Some(other) = &s.coincides_with {
                match index.get(other).map(|&i| &nodes[i]) {
                    None => report.push(
                        "dangling-reference",
                        format!("coincides_with names unknown stratum {other}"),
                        vec![s.id.clone()],
                    ),
                    Some(o) if o.is_component => report.push(
                        "coincidence",
                        "a stratum cannot coincide with a maximal component",
                        vec![s.id.clone(), other.clone()],
                    ),
                    Some(o) if o.is_free() || s.is_free() => report.push(
                        "coincidence",
                        "free strata cannot coincide with other strata",
                        vec![s.id.clone(), other.clone()],
                    ),
                    Some(_) if *other == s.id => {
                        report.push("coincidence", "stratum coincides with itself", vec![s.id.clone()])
                    }
                    Some(_) => {}
                }
            }
            if s.is_free() && s.faces.as_ref().is_some_and(|f| !f.is_empty()) {
                report.push("face-mismatch", "free strata have no faces", vec![s.id.clone()]);
            }
            if s.is_free() && s.dim >= n {
                report.push(
                    "dimension",
                    format!("dimension {} is not below the ambient dimension {n}", s.dim),
                    vec![s.id.clone()],
                );
            }
        }
        if !report.is_valid() {
            return Err(report);
        }

        // parents
        let mut by_comps: BTreeMap<&[String], Vec<usize>> = BTreeMap::new();
        for (i, node) in nodes.iter().enumerate() {
            by_comps.entry(node.comps.as_slice()).or_default().push(i);
        }
        let mut parents = vec![Vec::new(); nodes.len()];
        for (k, s) in c.strata.iter().enumerate() {
            let i = c.components.len() + k;
            let comps = &nodes[i].comps;
            if comps.len() < 2 {
                continue;
            }
            if let Some(faces) = &s.faces {
                if faces.len() != comps.len() {
                    report.push(
                        "face-mismatch",
                        format!("{} faces listed for a stratum on {} components", faces.len(), comps.len()),
                        vec![s.id.clone()],
                    );
                    continue;
                }
                let mut ok = true;
                let mut ps = Vec::new();
                for (pos, f) in faces.iter().enumerate() {
                    let expected = omit(comps, pos);
                    match index.get(f) {
                        Some(&j) if nodes[j].comps == expected => ps.push(j),
                        Some(_) => {
                            report.push(
                                "face-mismatch",
                                format!("face {f} does not lie on components {}", expected.join(",")),
                                vec![s.id.clone(), f.clone()],
                            );
                            ok = false;
                        }
                        None => {
                            report.push("dangling-reference", format!("unknown face {f}"), vec![s.id.clone()]);
                            ok = false;
                        }
                    }
                }
                if ok {
                    parents[i] = ps;
                }
                continue;
            }
            let mut ps = Vec::new();
            for pos in 0..comps.len() {
                let sub = omit(comps, pos);
                match by_comps.get(sub.as_slice()).map(Vec::as_slice) {
                    Some([only]) => ps.push(*only),
                    Some(many) => {
                        let mut items = vec![s.id.clone()];
                        items.extend(many.iter().map(|&j| nodes[j].id.clone()));
                        report.push(
                            "insufficient-incidence",
                            format!("several strata lie on {}; list the faces explicitly", sub.join(",")),
                            items,
                        );
                    }
                    None => report.push(
                        "missing-face",
                        format!("no stratum lies on components {}", sub.join(",")),
                        vec![s.id.clone()],
                    ),
                }
            }
            if ps.len() == comps.len() {
                parents[i] = ps;
            }
        }
        if !report.is_valid() {
            return Err(report);
        }
        for (node, ps) in nodes.iter_mut().zip(parents) {
            node.parents = ps;
        }

        // diamond condition: parents agree on their common faces
        for node in &nodes {
            let m = node.comps.len();
            if m < 3 {
                continue;
            }
            for i in 0..m {
                for j in i + 1..m {
                    let a = nodes[node.parents[j]].parents[i];
                    let b = nodes[node.parents[i]].parents[j - 1];
                    if a != b {
                        report.push(
                            "parent-consistency",
                            format!("faces through {} and {} disagree", nodes[a].id, nodes[b].id),
                            vec![node.id.clone()],
                        );
                    }
                }
            }
        }
        if !report.is_valid() {
            return Err(report);
        }

        // ancestors, in order of increasing component count
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by_key(|&i| nodes[i].comps.len());
        let mut ancestors = vec![BTreeSet::new(); nodes.len()];
        for &i in &order {
            let mut set = BTreeSet::from([i]);
            for &p in &nodes[i].parents {
                set.extend(ancestors[p].iter().copied());
            }
            ancestors[i] = set;
        }

        // coincidence classes
        let mut uf: Vec<usize> = (0..nodes.len()).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut y = x;
            while uf[y] != r {
                let next = uf[y];
                uf[y] = r;
                y = next;
            }
            r
        }
        for (k, s) in c.strata.iter().enumerate() {
            if let Some(other) = &s.coincides_with {
                let a = find(&mut uf, c.components.len() + k);
                let b = find(&mut uf, index[other]);
                uf[a.max(b)] = a.min(b);
            }
        }
        let class: Vec<usize> = (0..nodes.len()).map(|i| find(&mut uf, i)).collect();

        let divisor: BTreeMap<String, bool> = c.components.iter().map(|x| (x.id.clone(), x.dim + 1 == n)).collect();
        let poset = Poset { ambient_dim: n, nodes, index, ancestors, class, divisor };
        poset.check_dimensions(&mut report);
        poset.check_coincidences(&mut report);
        if report.is_valid() {
            Ok(poset)
        } else {
            Err(report)
        }
    }

    fn check_dimensions(&self, report: &mut ValidationReport) {
        let n = self.ambient_dim;
        for (i, node) in self.nodes.iter().enumerate() {
            if node.is_component || node.is_free() {
                continue;
            }
            for &p in &node.parents {
                let parent = &self.nodes[p];
                if self.class[p] == self.class[i] {
                    if parent.dim != node.dim {
                        report.push(
                            "dimension",
                            "coincident strata must have equal dimensions",
                            vec![node.id.clone(), parent.id.clone()],
                        );
                    }
                } else if node.dim >= parent.dim {
                    report.push(
                        "dimension",
                        format!("dimension {} is not below dimension {} of face {}", node.dim, parent.dim, parent.id),
                        vec![node.id.clone(), parent.id.clone()],
                    );
                }
            }
            let codims: usize = node.comps.iter().map(|c| n - self.component_dim(c)).sum();
            if node.dim + codims < n {
                report.push(
                    "dimension",
                    format!("dimension {} is below the expected intersection dimension {}", node.dim, n - codims),
                    vec![node.id.clone()],
                );
            }
            if node.comps.iter().all(|c| self.divisor[c]) && node.dim + node.comps.len() != n {
                report.push(
                    "dimension",
                    format!(
                        "an intersection of {} divisors has dimension {}, not {}",
                        node.comps.len(),
                        n as isize - node.comps.len() as isize,
                        node.dim
                    ),
                    vec![node.id.clone()],
                );
            }
        }
        // coincident strata with no face relation still need equal dimensions
        for (i, node) in self.nodes.iter().enumerate() {
            let r = self.class[i];
            if r != i && self.nodes[r].dim != node.dim {
                report.push(
                    "dimension",
                    "coincident strata must have equal dimensions",
                    vec![node.id.clone(), self.nodes[r].id.clone()],
                );
            }
        }
    }

    fn component_dim(&self, id: &str) -> usize {
        self.nodes[self.index[id]].dim
    }

    /// Coincident strata `a ~ b` need a stratum on the union of their
    /// components lying over both and in the same class; classes are convex.
    fn check_coincidences(&self, report: &mut ValidationReport) {
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.nodes.len() {
            classes.entry(self.class[i]).or_default().push(i);
        }
        for members in classes.values().filter(|m| m.len() > 1) {
            for (x, &a) in members.iter().enumerate() {
                for &b in &members[x + 1..] {
                    let union = union(&self.nodes[a].comps, &self.nodes[b].comps);
                    let found = members.iter().any(|&g| {
                        self.nodes[g].comps == union && self.le(a, g) && self.le(b, g)
                    });
                    if !found {
                        report.push(
                            "coincidence",
                            format!("no coincident stratum on {} lies over both", union.join(",")),
                            vec![self.nodes[a].id.clone(), self.nodes[b].id.clone()],
                        );
                    }
                    for (lo, hi) in [(a, b), (b, a)] {
                        if !self.le(lo, hi) {
                            continue;
                        }
                        for &t in &self.ancestors[hi] {
                            if self.le(lo, t) && self.class[t] != self.class[a] {
                                report.push(
                                    "coincidence",
                                    "a stratum between two coincident strata must coincide with them",
                                    vec![self.nodes[lo].id.clone(), self.nodes[t].id.clone(), self.nodes[hi].id.clone()],
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    /// `a` is an iterated face of `b`, i.e. `E(b) ⊆ E(a)` by incidence.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.ancestors[b].contains(&a)
    }

    /// `E(a) ⊆ E(b)`: some stratum coincident with `a` lies under `b`.
    pub fn contained_in(&self, a: usize, b: usize) -> bool {
        (0..self.nodes.len()).any(|g| self.class[g] == self.class[a] && self.le(b, g))
    }

    /// The iterated face of `b` on the given component set.
    pub fn face_on(&self, b: usize, comps: &[String]) -> Option<usize> {
        self.ancestors[b].iter().copied().find(|&g| self.nodes[g].comps == comps)
    }

}

pub(crate) fn omit(v: &[String], k: usize) -> Vec<String> {
    v.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, x)| x.clone()).collect()
}

pub(crate) fn union(a: &[String], b: &[String]) -> Vec<String> {
    let set: BTreeSet<&String> = a.iter().chain(b).collect();
    set.into_iter().cloned().collect()
}
