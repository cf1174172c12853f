//! Dual complexes of a filtration `E¹ ⊆ … ⊆ Eᵏ` by unions of components.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::blowup::{blowup_at, BlowupStep};
use super::dual::dual_of;
use super::{checked, Poset, SncConfiguration};
use crate::complex::QuasiComplex;
use crate::error::{Error, Result};

/// How a blow-up acts on one level of the filtration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// The center meets no component of the level.
    Unchanged,
    /// The center lies in a component of the level but is not one of its strata.
    Cone,
    /// The center is a stratum of the level.
    Stellar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedBlowup {
    pub config: SncConfiguration,
    pub filtration: Vec<Vec<String>>,
    pub step: BlowupStep,
    pub regimes: Vec<Regime>,
}

fn check_filtration(p: &Poset, filtration: &[Vec<String>]) -> Result<Vec<BTreeSet<String>>> {
    let levels: Vec<BTreeSet<String>> = filtration.iter().map(|l| l.iter().cloned().collect()).collect();
    for level in &levels {
        for id in level {
            if !p.divisor.contains_key(id) {
                return Err(Error::Filtration(format!("{id} is not a component")));
            }
        }
    }
    for (i, w) in levels.windows(2).enumerate() {
        if !w[0].is_subset(&w[1]) {
            return Err(Error::Filtration(format!("level {} is not contained in level {}", i + 1, i + 2)));
        }
    }
    Ok(levels)
}

fn within(p: &Poset, i: usize, level: &BTreeSet<String>) -> bool {
    let node = &p.nodes[i];
    !node.is_free() && node.comps.iter().all(|x| level.contains(x))
}

/// `Σⁱ` is the subcomplex of the dual complex on strata of components in
/// `Eⁱ`. Simplices keep their names, so `Σⁱ ⊆ Σⁱ⁺¹` literally.
pub fn nested_dual_complexes(c: &SncConfiguration, filtration: &[Vec<String>]) -> Result<Vec<QuasiComplex>> {
    let p = checked(c)?;
    let levels = check_filtration(&p, filtration)?;
    Ok(levels.iter().map(|level| dual_of(&p, |i| within(&p, i, level)).complex).collect())
}

/// Blows up `center` and carries the filtration along: the exceptional
/// divisor joins every level containing a component through the center.
/// Centers whose blow-up would delete strata of a level they do not touch are
/// rejected.
pub fn blowup_nested(c: &SncConfiguration, filtration: &[Vec<String>], center: &str) -> Result<NestedBlowup> {
    let p = checked(c)?;
    let levels = check_filtration(&p, filtration)?;
    let &ci = p.index.get(center).ok_or_else(|| Error::CenterNotFound(center.to_string()))?;
    let comps: BTreeSet<&String> = p.nodes[ci].comps.iter().collect();
    let (config, step) = blowup_at(c, &p, ci);

    let mut regimes = Vec::new();
    let mut new_levels = Vec::new();
    for (k, level) in levels.iter().enumerate() {
        let regime = if comps.is_empty() || comps.iter().all(|x| !level.contains(*x)) {
            Regime::Unchanged
        } else if comps.iter().all(|x| level.contains(*x)) {
            Regime::Stellar
        } else {
            Regime::Cone
        };
        if regime == Regime::Unchanged {
            if let Some(r) = step.removed.iter().find(|id| within(&p, p.index[*id], level)) {
                return Err(Error::InadmissibleCenter(
                    center.to_string(),
                    format!("it would remove {r} from level {} without meeting it", k + 1),
                ));
            }
        }
        let mut next: Vec<String> = level.iter().filter(|x| !step.removed.contains(x)).cloned().collect();
        if regime != Regime::Unchanged {
            next.extend(step.new_exceptional.clone());
        }
        next.sort();
        regimes.push(regime);
        new_levels.push(next);
    }
    Ok(NestedBlowup { config, filtration: new_levels, step, regimes })
}
