//! Abstract SNC configurations.
//!
//! A configuration lists the maximal components `E_i` of an SNC set inside a
//! smooth ambient variety, and the connected intersection strata `E(Δ)` with
//! their dimensions. A stratum on components `S` has, for every component it
//! drops, exactly one parent stratum on the smaller set; parents are inferred
//! when unique and must be listed in `faces` otherwise. Strata with an empty
//! component list are free centers lying outside the SNC set.

mod blowup;
mod dual;
mod nested;
mod poset;
mod random;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationReport};

pub use blowup::{blowup, divisorialize, make_simplicial, BlowupCase, BlowupStep};
pub use dual::{dual_complex, dual_complex_labeled, LabeledComplex};
pub use nested::{blowup_nested, nested_dual_complexes, NestedBlowup, Regime};
pub use random::{gen_random, RandomConfigParams};

pub(crate) use poset::Poset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub id: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stratum {
    pub id: String,
    pub components: Vec<String>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coincides_with: Option<String>,
    /// Parent strata, one per dropped component, in component order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<String>>,
}

impl Stratum {
    pub fn new<S: Into<String>>(id: impl Into<String>, components: impl IntoIterator<Item = S>, dim: usize) -> Self {
        let mut components: Vec<String> = components.into_iter().map(Into::into).collect();
        components.sort();
        Stratum { id: id.into(), components, dim, coincides_with: None, faces: None }
    }

    pub fn coinciding(mut self, other: impl Into<String>) -> Self {
        self.coincides_with = Some(other.into());
        self
    }

    pub fn with_faces<S: Into<String>>(mut self, faces: impl IntoIterator<Item = S>) -> Self {
        self.faces = Some(faces.into_iter().map(Into::into).collect());
        self
    }

    pub fn is_free(&self) -> bool {
        self.components.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SncConfiguration {
    pub ambient_dim: usize,
    pub components: Vec<Component>,
    pub strata: Vec<Stratum>,
}

impl SncConfiguration {
    /// Builds a configuration in canonical order. No validation is done.
    pub fn new(ambient_dim: usize, components: Vec<Component>, strata: Vec<Stratum>) -> Self {
        let mut c = SncConfiguration { ambient_dim, components, strata };
        c.canonicalize();
        c
    }

    /// Convenience constructor from `(id, dim)` pairs.
    pub fn with_components<S: Into<String>>(
        ambient_dim: usize,
        components: impl IntoIterator<Item = (S, usize)>,
        strata: Vec<Stratum>,
    ) -> Self {
        let components = components.into_iter().map(|(id, dim)| Component { id: id.into(), dim }).collect();
        Self::new(ambient_dim, components, strata)
    }

    /// Sorts components and strata by id, component lists by id, and explicit
    /// face lists by the position of the component each face drops.
    fn canonicalize(&mut self) {
        self.components.sort_by(|a, b| a.id.cmp(&b.id));
        self.strata.sort_by(|a, b| a.id.cmp(&b.id));
        for s in &mut self.strata {
            s.components.sort();
        }
        let comps_of: BTreeMap<String, Vec<String>> = self
            .components
            .iter()
            .map(|c| (c.id.clone(), vec![c.id.clone()]))
            .chain(self.strata.iter().map(|s| (s.id.clone(), s.components.clone())))
            .collect();
        for s in &mut self.strata {
            if let Some(faces) = &mut s.faces {
                let dropped = |f: &String| {
                    comps_of
                        .get(f)
                        .and_then(|fc| s.components.iter().position(|c| !fc.contains(c)))
                        .unwrap_or(usize::MAX)
                };
                faces.sort_by_key(|f| dropped(f));
            }
        }
    }

    /// Drops explicit face lists that inference would reproduce.
    pub(crate) fn drop_inferable_faces(&mut self) {
        let mut count: BTreeMap<Vec<String>, usize> = BTreeMap::new();
        for x in &self.components {
            *count.entry(vec![x.id.clone()]).or_default() += 1;
        }
        for s in &self.strata {
            *count.entry(s.components.clone()).or_default() += 1;
        }
        for s in &mut self.strata {
            let ambiguous =
                (0..s.components.len()).any(|k| count.get(&poset::omit(&s.components, k)).is_some_and(|&n| n > 1));
            if s.components.len() < 2 || !ambiguous {
                s.faces = None;
            }
        }
    }

    pub fn component(&self, id: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn stratum(&self, id: &str) -> Option<&Stratum> {
        self.strata.iter().find(|s| s.id == id)
    }

    pub fn is_divisor(&self, component: &str) -> bool {
        self.component(component).is_some_and(|c| c.dim + 1 == self.ambient_dim)
    }

    /// True when every component is a divisor.
    pub fn is_divisorial(&self) -> bool {
        self.components.iter().all(|c| c.dim + 1 == self.ambient_dim)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("configuration serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serializes")
    }

    /// Parses and canonicalizes; call [`validate_config`] before use.
    pub fn from_json(text: &str) -> Result<Self> {
        let mut c: SncConfiguration = serde_json::from_str(text)?;
        c.canonicalize();
        Ok(c)
    }
}

/// Reports poset, dimension, coincidence and reference violations.
pub fn validate_config(c: &SncConfiguration) -> ValidationReport {
    match Poset::build(c) {
        Ok(_) => ValidationReport::default(),
        Err(report) => report,
    }
}

pub(crate) fn checked(c: &SncConfiguration) -> Result<Poset> {
    Poset::build(c).map_err(|r| Error::Invalid(r.violations))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Three curves in a surface meeting pairwise in one point.
    pub fn triangle() -> SncConfiguration {
        SncConfiguration::with_components(
            2,
            [("D1", 1), ("D2", 1), ("D3", 1)],
            vec![Stratum::new("P12", ["D1", "D2"], 0), Stratum::new("P13", ["D1", "D3"], 0), Stratum::new("P23", ["D2", "D3"], 0)],
        )
    }

    /// Two curves in a surface meeting in two points.
    pub fn two_points() -> SncConfiguration {
        SncConfiguration::with_components(
            2,
            [("D1", 1), ("D2", 1)],
            vec![Stratum::new("P", ["D1", "D2"], 0), Stratum::new("Q", ["D1", "D2"], 0)],
        )
    }

    /// Two curves in a threefold meeting in a point.
    pub fn two_curves() -> SncConfiguration {
        SncConfiguration::with_components(3, [("C1", 1), ("C2", 1)], vec![Stratum::new("P", ["C1", "C2"], 0)])
    }

    /// Three planes in a fourfold whose pairwise intersections are one line.
    pub fn three_planes() -> SncConfiguration {
        SncConfiguration::with_components(
            4,
            [("E1", 2), ("E2", 2), ("E3", 2)],
            vec![
                Stratum::new("L12", ["E1", "E2"], 1).coinciding("L123"),
                Stratum::new("L13", ["E1", "E3"], 1).coinciding("L123"),
                Stratum::new("L23", ["E2", "E3"], 1).coinciding("L123"),
                Stratum::new("L123", ["E1", "E2", "E3"], 1),
            ],
        )
    }
}
