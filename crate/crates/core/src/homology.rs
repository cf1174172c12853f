//! Rational homology of quasicomplexes.
//!
//! Over ℚ homology and cohomology have the same Betti numbers, so one vector
//! serves for both.

use serde::{Deserialize, Serialize};

use crate::complex::{validate_complex, QuasiComplex, Simplex};
use crate::error::Result;
use crate::linalg::{rank_fraction_free, Matrix};
use crate::Int;

/// `∂_p : C_p → C_{p-1}`, rows and columns in canonical simplex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub degree: usize,
    pub rows: Vec<Simplex>,
    pub cols: Vec<Simplex>,
    pub matrix: Matrix<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub betti: Vec<usize>,
    pub reduced: bool,
}

impl BettiVector {
    /// The numbers without trailing zeros, for comparing complexes of
    /// different dimensions.
    pub fn trimmed(&self) -> Vec<usize> {
        let end = self.betti.iter().rposition(|&b| b != 0).map_or(0, |i| i + 1);
        self.betti[..end].to_vec()
    }

    pub fn euler_characteristic(&self) -> i64 {
        let chi: i64 = self.betti.iter().enumerate().map(|(p, &b)| if p % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        if self.reduced && !self.betti.is_empty() {
            chi + 1
        } else {
            chi
        }
    }
}

/// `∂_1, …, ∂_d` for a complex of dimension `d`. The face in position `k` of
/// a simplex enters with sign `(-1)^k`.
pub fn boundary_matrices(k: &QuasiComplex) -> Result<Vec<BoundaryMatrix>> {
    validate_complex(k).into_result()?;
    Ok(boundary_matrices_unchecked(k))
}

pub(crate) fn boundary_matrices_unchecked(k: &QuasiComplex) -> Vec<BoundaryMatrix> {
    let top = k.dim().unwrap_or(0);
    let by_dim: Vec<Vec<Simplex>> = (0..=top).map(|p| k.simplices_of_dim(p).into_iter().cloned().collect()).collect();
    (1..=top)
        .map(|p| {
            let rows = by_dim[p - 1].clone();
            let cols = by_dim[p].clone();
            let mut matrix = Matrix::zeros(rows.len(), cols.len());
            for (j, s) in cols.iter().enumerate() {
                for (pos, f) in k.faces(s).unwrap_or_default().iter().enumerate() {
                    let i = rows.binary_search(f).expect("face of a valid complex");
                    let sign = if pos % 2 == 0 { Int::from(1) } else { Int::from(-1) };
                    matrix.add_to(i, j, sign);
                }
            }
            BoundaryMatrix { degree: p, rows, cols, matrix }
        })
        .collect()
}

/// Betti numbers over ℚ, indexed by degree `0..=dim K`.
///
/// Reduced numbers subtract one from degree 0. The empty complex has an empty
/// vector in both conventions.
pub fn betti(k: &QuasiComplex, reduced: bool) -> Result<BettiVector> {
    validate_complex(k).into_result()?;
    Ok(betti_unchecked(k, reduced))
}

pub(crate) fn betti_unchecked(k: &QuasiComplex, reduced: bool) -> BettiVector {
    let Some(top) = k.dim() else {
        return BettiVector { betti: Vec::new(), reduced };
    };
    let f = k.f_vector();
    let ranks: Vec<usize> = boundary_matrices_unchecked(k).iter().map(|b| rank_fraction_free(&b.matrix)).collect();
    // ranks[p - 1] = rank ∂_p
    let rank = |p: usize| if p == 0 || p > top { 0 } else { ranks[p - 1] };
    let mut betti: Vec<usize> = (0..=top).map(|p| f[p] - rank(p) - rank(p + 1)).collect();
    if reduced {
        betti[0] -= 1;
    }
    BettiVector { betti, reduced }
}
