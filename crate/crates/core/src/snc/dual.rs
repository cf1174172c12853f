use std::collections::BTreeMap;

use super::{checked, Poset, SncConfiguration};
use crate::complex::{QuasiComplex, Simplex};
use crate::error::Result;

/// A dual complex together with the simplex of each component and stratum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledComplex {
    pub complex: QuasiComplex,
    pub simplex_of: BTreeMap<String, Simplex>,
}

/// One vertex per component and one `p`-simplex per stratum on `p + 1`
/// components. Strata sharing a component set get tags in id order. Free
/// strata do not appear.
pub fn dual_complex(c: &SncConfiguration) -> Result<QuasiComplex> {
    Ok(dual_complex_labeled(c)?.complex)
}

pub fn dual_complex_labeled(c: &SncConfiguration) -> Result<LabeledComplex> {
    Ok(dual_of(&checked(c)?, |_| true))
}

/// Dual complex of the nodes accepted by `keep`, which must be closed under
/// taking parents.
pub(crate) fn dual_of(p: &Poset, keep: impl Fn(usize) -> bool) -> LabeledComplex {
    let mut next_tag: BTreeMap<&[String], u32> = BTreeMap::new();
    let mut simplex: Vec<Option<Simplex>> = vec![None; p.nodes.len()];
    for (i, node) in p.nodes.iter().enumerate() {
        if node.is_free() || !keep(i) {
            continue;
        }
        let tag = next_tag.entry(node.comps.as_slice()).or_insert(0);
        simplex[i] = Some(Simplex::new(node.comps.iter(), *tag));
        *tag += 1;
    }
    let cells = p.nodes.iter().enumerate().filter_map(|(i, node)| {
        let s = simplex[i].clone()?;
        let faces = node.parents.iter().map(|&q| simplex[q].clone().expect("parents are kept")).collect();
        Some((s, faces))
    });
    let complex = QuasiComplex::from_cells(cells);
    let simplex_of = p
        .nodes
        .iter()
        .zip(simplex)
        .filter_map(|(node, s)| Some((node.id.clone(), s?)))
        .collect();
    LabeledComplex { complex, simplex_of }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::complex::validate_complex;
    use crate::homology::betti;

    #[test]
    fn triangle_is_a_three_cycle() {
        let k = dual_complex(&triangle()).unwrap();
        assert_eq!(k, QuasiComplex::from_facets([["D1", "D2"], ["D1", "D3"], ["D2", "D3"]]));
    }

    #[test]
    fn disjoint_divisors_are_two_points() {
        let c = SncConfiguration::with_components(2, [("A", 1), ("B", 1)], vec![]);
        assert_eq!(dual_complex(&c).unwrap(), QuasiComplex::from_facets([["A"], ["B"]]));
    }

    #[test]
    fn two_points_give_a_double_edge() {
        let l = dual_complex_labeled(&two_points()).unwrap();
        assert!(validate_complex(&l.complex).is_valid());
        assert!(!l.complex.is_simplicial());
        assert_eq!(l.simplex_of["P"], Simplex::new(["D1", "D2"], 0));
        assert_eq!(l.simplex_of["Q"], Simplex::new(["D1", "D2"], 1));
        assert_eq!(betti(&l.complex, false).unwrap().betti, vec![1, 1]);
    }

    #[test]
    fn three_planes_give_a_full_triangle() {
        let k = dual_complex(&three_planes()).unwrap();
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn invalid_configuration_is_rejected() {
        let mut c = triangle();
        c.strata[0].dim = 1;
        assert!(dual_complex(&c).is_err());
    }
}
