//! Graded dimensions of the weight filtration read off a column-filtered
//! double complex: `Gr^W_j H^i` sits at `E₂^{i-j, j}`.

use serde::{Deserialize, Serialize};

use super::e1::E1Page;
use super::spectral::DoubleComplex;
use crate::error::{Error, Result, Violation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub i: usize,
    pub j: usize,
    pub gr: usize,
    pub einf: usize,
}

/// `gr_dims[j][i] = dim Gr^W_j H^i` from E₂ and `einf_dims[j][i]` from E∞.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightTable {
    pub gr_dims: Vec<Vec<usize>>,
    pub einf_dims: Vec<Vec<usize>>,
    /// Cohomology of the total complex.
    pub total_dims: Vec<usize>,
    pub degenerate: bool,
    pub dim_bound: usize,
    /// Nonzero entries with explicit indices; redundant with the matrices.
    #[serde(default)]
    pub entries: Vec<TableEntry>,
}

fn at(m: &[Vec<usize>], j: usize, i: usize) -> usize {
    m.get(j).and_then(|r| r.get(i)).copied().unwrap_or(0)
}

impl WeightTable {
    fn assemble(
        gr_dims: Vec<Vec<usize>>,
        einf_dims: Vec<Vec<usize>>,
        total_dims: Vec<usize>,
        degenerate: bool,
        dim_bound: usize,
    ) -> Self {
        let mut t = WeightTable { gr_dims, einf_dims, total_dims, degenerate, dim_bound, entries: Vec::new() };
        t.entries = t.compute_entries();
        t
    }

    fn compute_entries(&self) -> Vec<TableEntry> {
        let mut out = Vec::new();
        for j in 0..self.weights() {
            for i in 0..self.degrees() {
                let (gr, einf) = (self.gr(j, i), self.einf(j, i));
                if gr != 0 || einf != 0 {
                    out.push(TableEntry { i, j, gr, einf });
                }
            }
        }
        out
    }

    /// The table of a point.
    pub fn point() -> Self {
        Self::assemble(vec![vec![1]], vec![vec![1]], vec![1], true, 0)
    }

    pub fn weights(&self) -> usize {
        self.gr_dims.len().max(self.einf_dims.len())
    }

    pub fn degrees(&self) -> usize {
        let w = |m: &[Vec<usize>]| m.iter().map(Vec::len).max().unwrap_or(0);
        w(&self.gr_dims).max(w(&self.einf_dims)).max(self.total_dims.len())
    }

    pub fn gr(&self, j: usize, i: usize) -> usize {
        at(&self.gr_dims, j, i)
    }

    pub fn einf(&self, j: usize, i: usize) -> usize {
        at(&self.einf_dims, j, i)
    }

    /// `Σ_j gr(j, i)`.
    pub fn gr_total(&self, i: usize) -> usize {
        (0..self.weights()).map(|j| self.gr(j, i)).sum()
    }

    pub fn einf_total(&self, i: usize) -> usize {
        (0..self.weights()).map(|j| self.einf(j, i)).sum()
    }

    /// Entrywise equality ignoring trailing zeros.
    pub fn same_dims(&self, other: &WeightTable) -> bool {
        let (w, d) = (self.weights().max(other.weights()), self.degrees().max(other.degrees()));
        let total = |t: &WeightTable, i: usize| t.total_dims.get(i).copied().unwrap_or(0);
        self.degenerate == other.degenerate
            && (0..d).all(|i| total(self, i) == total(other, i))
            && (0..w).all(|j| (0..d).all(|i| self.gr(j, i) == other.gr(j, i) && self.einf(j, i) == other.einf(j, i)))
    }

    /// Vanishing outside `0 ≤ i - j ≤ dim_bound`, and E∞ adding up to the
    /// total cohomology.
    pub fn structure_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for j in 0..self.weights() {
            for i in 0..self.degrees() {
                let (gr, einf) = (self.gr(j, i), self.einf(j, i));
                if gr == 0 && einf == 0 {
                    continue;
                }
                if j > i {
                    out.push(Violation::new(
                        "weight-above-degree",
                        format!("nonzero entry at weight {j} in degree {i}"),
                        vec![format!("{i},{j}")],
                    ));
                } else if i - j > self.dim_bound {
                    out.push(Violation::new(
                        "weight-below-bound",
                        format!("nonzero entry at weight {j} in degree {i} exceeds dimension bound {}", self.dim_bound),
                        vec![format!("{i},{j}")],
                    ));
                }
            }
        }
        for i in 0..self.degrees() {
            let total = self.total_dims.get(i).copied().unwrap_or(0);
            if self.einf_total(i) != total {
                out.push(Violation::new(
                    "einf-total",
                    format!("E-infinity in degree {i} sums to {} but the total complex has {total}", self.einf_total(i)),
                    vec![i.to_string()],
                ));
            }
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let t: WeightTable = serde_json::from_str(text)?;
        if !t.entries.is_empty() && t.entries != t.compute_entries() {
            return Err(Error::Format("table entries disagree with gr_dims/einf_dims".into()));
        }
        Ok(WeightTable::assemble(t.gr_dims, t.einf_dims, t.total_dims, t.degenerate, t.dim_bound))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Table of a filtered double complex `K^{p,q}`, weight `q`, degree `p + q`.
pub fn weight_table_of(dc: &DoubleComplex, dim_bound: usize) -> Result<WeightTable> {
    let pages = dc.spectral_pages()?;
    let rows = dc.rows();
    let degrees = (dc.columns() + rows).saturating_sub(1);
    let read = |page: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        (0..rows)
            .map(|j| (0..degrees).map(|i| if i >= j { at(page, i - j, j) } else { 0 }).collect())
            .collect()
    };
    let e2 = pages.pages.get(1).or(pages.pages.first()).cloned().unwrap_or_default();
    let gr = read(&e2);
    let einf = read(&pages.e_inf);
    let degenerate = gr == einf;
    let mut total = pages.total;
    total.resize(degrees, 0);
    Ok(WeightTable::assemble(gr, einf, total, degenerate, dim_bound))
}

/// Weight table of an E₁ page, regarded as a double complex with zero
/// vertical differential.
pub fn weight_table(e: &E1Page, dim_bound: usize) -> Result<WeightTable> {
    let mut dc = DoubleComplex::new(e.terms.clone());
    for (p, row) in e.d1.iter().enumerate() {
        if p + 1 < e.columns_len() {
            for (q, m) in row.iter().enumerate() {
                dc.set_dh(p, q, m.clone())?;
            }
        }
    }
    weight_table_of(&dc, dim_bound)
}

fn convolve(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let width = |m: &[Vec<usize>]| m.iter().map(Vec::len).max().unwrap_or(0);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (wa, wb) = (width(a), width(b));
    let mut out = vec![vec![0; (wa + wb).saturating_sub(1)]; a.len() + b.len() - 1];
    for (ja, ra) in a.iter().enumerate() {
        for (ia, &x) in ra.iter().enumerate() {
            for (jb, rb) in b.iter().enumerate() {
                for (ib, &y) in rb.iter().enumerate() {
                    out[ja + jb][ia + ib] += x * y;
                }
            }
        }
    }
    out
}

/// Table of a product: weights and degrees both add.
pub fn kunneth_product(t1: &WeightTable, t2: &WeightTable) -> WeightTable {
    let total = convolve(&[t1.total_dims.clone()], &[t2.total_dims.clone()]).pop().unwrap_or_default();
    WeightTable::assemble(
        convolve(&t1.gr_dims, &t2.gr_dims),
        convolve(&t1.einf_dims, &t2.einf_dims),
        total,
        t1.degenerate && t2.degenerate,
        t1.dim_bound + t2.dim_bound,
    )
}
