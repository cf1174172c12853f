//! The E₁ page of the Mayer–Vietoris spectral sequence of a semi-simplicial
//! diagram of smooth proper spaces: `E₁^{p,q} = ⊕ H^q(cells of level p)` with
//! `d₁` the alternating sum of the pullbacks along the face maps.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use super::local::LocalSystem;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::snc::{Poset, SncConfiguration};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E1Page {
    /// Cell ids of each column, in block order.
    pub columns: Vec<Vec<String>>,
    /// `terms[p][q] = dim E₁^{p,q}`.
    pub terms: Vec<Vec<usize>>,
    /// `d1[p][q] : E₁^{p,q} → E₁^{p+1,q}`; the last column maps to zero.
    #[serde(skip)]
    pub d1: Vec<Vec<Matrix<Rational>>>,
}

impl E1Page {
    pub fn columns_len(&self) -> usize {
        self.terms.len()
    }

    pub fn rows_len(&self) -> usize {
        self.terms.first().map_or(0, Vec::len)
    }

    pub fn term(&self, p: usize, q: usize) -> usize {
        self.terms.get(p).and_then(|c| c.get(q)).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Cell {
    pub id: String,
    /// Indices into the previous level, one per face map.
    pub faces: Vec<usize>,
    /// Points carry only `H^0` and need no local-system entry.
    pub point: bool,
}

/// Levels of a semi-simplicial diagram; cells of level `m ≥ 1` have `m + 1` faces.
#[derive(Clone, Debug, Default)]
pub(crate) struct Diagram {
    pub levels: Vec<Vec<Cell>>,
}

impl Diagram {
    fn h(&self, l: &LocalSystem, cell: &Cell, q: usize) -> Result<usize> {
        if cell.point {
            Ok(usize::from(q == 0))
        } else {
            l.h(&cell.id, q)
        }
    }

    fn restriction(&self, l: &LocalSystem, from: &Cell, to: &Cell, q: usize) -> Result<Matrix<Rational>> {
        if from.point || to.point {
            let (hf, ht) = (self.h(l, from, q)?, self.h(l, to, q)?);
            return Ok(if hf == 1 && ht == 1 { Matrix::identity(1) } else { Matrix::zeros(ht, hf) });
        }
        l.restriction(&from.id, &to.id, q)
    }

    /// Assembles E₁ and checks the cosimplicial identities and `d₁² = 0`.
    /// `known` lists ids the local system may mention without being cells.
    pub fn e1(&self, l: &LocalSystem, known: &BTreeSet<String>) -> Result<E1Page> {
        let cells: BTreeSet<&str> = self.levels.iter().flatten().filter(|c| !c.point).map(|c| c.id.as_str()).collect();
        for id in &cells {
            if !l.has(id) {
                return Err(Error::MissingStratumData(id.to_string()));
            }
        }
        for id in l.strata() {
            if !cells.contains(id) && !known.contains(id) {
                return Err(Error::LocalSystem(format!("unknown stratum {id}")));
            }
        }
        let mut immediate = BTreeSet::new();
        for m in 1..self.levels.len() {
            for c in &self.levels[m] {
                for &f in &c.faces {
                    immediate.insert((self.levels[m - 1][f].id.clone(), c.id.clone()));
                }
            }
        }
        for (from, to, q) in l.restriction_keys() {
            if !immediate.contains(&(from.clone(), to.clone())) {
                return Err(Error::LocalSystem(format!(
                    "restriction {from} -> {to} in degree {q} is not along a codimension-one face"
                )));
            }
        }

        let qmax = l.max_degree();
        let mut columns = Vec::new();
        let mut terms = Vec::new();
        let mut offsets: Vec<Vec<Vec<usize>>> = Vec::new(); // [p][q][cell]
        for level in &self.levels {
            columns.push(level.iter().map(|c| c.id.clone()).collect());
            let mut col = Vec::new();
            let mut offs = Vec::new();
            for q in 0..=qmax {
                let mut acc = 0;
                let mut o = Vec::new();
                for c in level {
                    o.push(acc);
                    acc += self.h(l, c, q)?;
                }
                col.push(acc);
                offs.push(o);
            }
            terms.push(col);
            offsets.push(offs);
        }

        self.check_cosimplicial(l, qmax)?;

        let mut d1 = Vec::new();
        for p in 0..self.levels.len() {
            let mut row = Vec::new();
            for q in 0..=qmax {
                let target = terms.get(p + 1).map_or(0, |c: &Vec<usize>| c[q]);
                let mut m = Matrix::zeros(target, terms[p][q]);
                if let Some(next) = self.levels.get(p + 1) {
                    for (ci, c) in next.iter().enumerate() {
                        for (k, &f) in c.faces.iter().enumerate() {
                            let face = &self.levels[p][f];
                            let r = self.restriction(l, face, c, q)?;
                            let (r0, c0) = (offsets[p + 1][q][ci], offsets[p][q][f]);
                            for i in 0..r.rows() {
                                for j in 0..r.cols() {
                                    let v = r.get(i, j).clone();
                                    if !v.is_zero() {
                                        m.add_to(r0 + i, c0 + j, if k % 2 == 0 { v } else { -v });
                                    }
                                }
                            }
                        }
                    }
                }
                row.push(m);
            }
            d1.push(row);
        }
        for p in 0..d1.len().saturating_sub(1) {
            for q in 0..=qmax {
                if !d1[p + 1][q].mul(&d1[p][q]).is_zero() {
                    return Err(Error::DoubleComplex(format!("d1 does not square to zero at ({p}, {q})")));
                }
            }
        }
        Ok(E1Page { columns, terms, d1 })
    }

    fn check_cosimplicial(&self, l: &LocalSystem, qmax: usize) -> Result<()> {
        for m in 2..self.levels.len() {
            for c in &self.levels[m] {
                for i in 0..c.faces.len() {
                    for j in i + 1..c.faces.len() {
                        let (fi, fj) = (&self.levels[m - 1][c.faces[i]], &self.levels[m - 1][c.faces[j]]);
                        let a = fj.faces[i];
                        let b = fi.faces[j - 1];
                        let err = |q| Error::Cosimplicial {
                            stratum: c.id.clone(),
                            face_a: fj.id.clone(),
                            face_b: fi.id.clone(),
                            q,
                        };
                        if a != b {
                            return Err(err(0));
                        }
                        let g = &self.levels[m - 2][a];
                        for q in 1..=qmax {
                            let via_j = self.restriction(l, fj, c, q)?.mul(&self.restriction(l, g, fj, q)?);
                            let via_i = self.restriction(l, fi, c, q)?.mul(&self.restriction(l, g, fi, q)?);
                            if via_j != via_i {
                                return Err(err(q));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Non-free strata grouped by number of components minus one, each level in
/// dual-complex order, with the position of every node inside its level.
pub(crate) fn stratum_levels(p: &Poset) -> (Vec<Vec<usize>>, BTreeMap<usize, usize>) {
    let mut levels: Vec<Vec<usize>> = Vec::new();
    for (i, node) in p.nodes.iter().enumerate() {
        if node.is_free() {
            continue;
        }
        let m = node.comps.len() - 1;
        if levels.len() <= m {
            levels.resize(m + 1, Vec::new());
        }
        levels[m].push(i);
    }
    for level in &mut levels {
        level.sort_by(|&a, &b| (&p.nodes[a].comps, &p.nodes[a].id).cmp(&(&p.nodes[b].comps, &p.nodes[b].id)));
    }
    let position = levels.iter().flat_map(|level| level.iter().enumerate().map(|(k, &i)| (i, k))).collect();
    (levels, position)
}

/// E₁ of an SNC configuration: column `p` holds the strata on `p + 1`
/// components in dual-complex order.
pub fn build_e1(c: &SncConfiguration, l: &LocalSystem) -> Result<E1Page> {
    let p = crate::snc::checked(c)?;
    let (levels, position) = stratum_levels(&p);
    let diagram = Diagram {
        levels: levels
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|&i| Cell {
                        id: p.nodes[i].id.clone(),
                        faces: p.nodes[i].parents.iter().map(|f| position[f]).collect(),
                        point: false,
                    })
                    .collect()
            })
            .collect(),
    };
    let known: BTreeSet<String> = p.nodes.iter().map(|n| n.id.clone()).collect();
    diagram.e1(l, &known)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::linalg::rank_rational;
    use crate::snc::Stratum;
    use crate::weight::local::rational_matrix;

    fn q(x: i64) -> Rational {
        Rational::from_integer(x.into())
    }

    pub(crate) fn two_lines() -> (SncConfiguration, LocalSystem) {
        let c = SncConfiguration::with_components(2, [("A", 1), ("B", 1)], vec![Stratum::new("P", ["A", "B"], 0)]);
        let mut l = LocalSystem::new();
        l.set_dims("A", vec![1, 0, 1]).unwrap();
        l.set_dims("B", vec![1, 0, 1]).unwrap();
        l.set_dims("P", vec![1]).unwrap();
        (c, l)
    }

    #[test]
    fn two_projective_lines() {
        let (c, l) = two_lines();
        let e = build_e1(&c, &l).unwrap();
        assert_eq!(e.terms, vec![vec![2, 0, 2], vec![1, 0, 0]]);
        assert_eq!(e.d1[0][0].to_rows(), vec![vec![q(-1), q(1)]]);
        assert_eq!((e.d1[0][2].rows(), e.d1[0][2].cols()), (0, 2));
    }

    #[test]
    fn cycle_incidence() {
        let c = SncConfiguration::with_components(
            2,
            [("A", 1), ("B", 1), ("C", 1)],
            vec![Stratum::new("AB", ["A", "B"], 0), Stratum::new("AC", ["A", "C"], 0), Stratum::new("BC", ["B", "C"], 0)],
        );
        let l = LocalSystem::trivial(["A", "B", "C", "AB", "AC", "BC"]);
        let e = build_e1(&c, &l).unwrap();
        assert_eq!(e.terms, vec![vec![3], vec![3]]);
        assert_eq!(rank_rational(&e.d1[0][0]), 2);
    }

    #[test]
    fn missing_data_and_bad_restrictions() {
        let (c, mut l) = two_lines();
        let mut short = LocalSystem::trivial(["A", "B"]);
        assert!(matches!(build_e1(&c, &short), Err(Error::MissingStratumData(_))));
        short.set_dims("P", vec![1]).unwrap();
        short.set_dims("Z", vec![1]).unwrap();
        assert!(build_e1(&c, &short).is_err());
        // A and B do not meet along a face inclusion
        l.set_restriction("A", "B", 2, rational_matrix(1, &[&[1]])).unwrap();
        assert!(matches!(build_e1(&c, &l), Err(Error::LocalSystem(_))));
    }

    #[test]
    fn higher_rows_need_matrices() {
        let c = SncConfiguration::with_components(3, [("A", 2), ("B", 2)], vec![Stratum::new("L", ["A", "B"], 1)]);
        let mut l = LocalSystem::new();
        l.set_dims("A", vec![1, 0, 1]).unwrap();
        l.set_dims("B", vec![1, 0, 1]).unwrap();
        l.set_dims("L", vec![1, 0, 1]).unwrap();
        assert!(matches!(build_e1(&c, &l), Err(Error::LocalSystem(_))));
        l.set_restriction("A", "L", 2, rational_matrix(1, &[&[1]])).unwrap();
        l.set_restriction("B", "L", 2, rational_matrix(1, &[&[1]])).unwrap();
        let e = build_e1(&c, &l).unwrap();
        assert_eq!(e.terms, vec![vec![2, 0, 2], vec![1, 0, 1]]);
    }

    #[test]
    fn cosimplicial_violation_names_the_triple() {
        // three divisors in a fourfold meeting in a curve; one H^2 map is off
        let c = SncConfiguration::with_components(
            4,
            [("A", 3), ("B", 3), ("C", 3)],
            vec![
                Stratum::new("AB", ["A", "B"], 2),
                Stratum::new("AC", ["A", "C"], 2),
                Stratum::new("BC", ["B", "C"], 2),
                Stratum::new("ABC", ["A", "B", "C"], 1),
            ],
        );
        let mut l = LocalSystem::new();
        for s in ["A", "B", "C", "AB", "AC", "BC", "ABC"] {
            l.set_dims(s, vec![1, 0, 1]).unwrap();
        }
        let one = || rational_matrix(1, &[&[1]]);
        for (f, t) in [("A", "AB"), ("B", "AB"), ("A", "AC"), ("C", "AC"), ("B", "BC")] {
            l.set_restriction(f, t, 2, one()).unwrap();
        }
        for f in ["AB", "AC", "BC"] {
            l.set_restriction(f, "ABC", 2, one()).unwrap();
        }
        let mut good = l.clone();
        good.set_restriction("C", "BC", 2, one()).unwrap();
        assert!(build_e1(&c, &good).is_ok());

        l.set_restriction("C", "BC", 2, rational_matrix(1, &[&[2]])).unwrap();
        match build_e1(&c, &l) {
            Err(Error::Cosimplicial { stratum, face_a, face_b, q }) => {
                assert_eq!((stratum.as_str(), face_a.as_str(), face_b.as_str(), q), ("ABC", "AC", "BC", 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
