//! Spectral sequence of a first-quadrant double complex filtered by columns.
//!
//! Pages are computed directly from the total complex: with
//! `Z_r^p = {x ∈ F^p : Dx ∈ F^{p+r}}` and `B_r^p = F^p ∩ D(F^{p-r+1})`,
//! `E_r^p = Z_r^p / (Z_{r-1}^{p+1} + B_r^p)`. Only dimensions are kept.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank_rational, span_dimension, Matrix};
use crate::Rational;

/// `K^{p,q}` with `dh : K^{p,q} → K^{p+1,q}` and `dv : K^{p,q} → K^{p,q+1}`,
/// commuting. The total differential is `dh + (-1)^p dv`. Absent maps are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleComplex {
    dims: Vec<Vec<usize>>,
    dh: BTreeMap<(usize, usize), Matrix<Rational>>,
    dv: BTreeMap<(usize, usize), Matrix<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pages {
    /// `pages[r - 1][p][q] = dim E_r^{p,q}` for `r = 1..`.
    pub pages: Vec<Vec<Vec<usize>>>,
    pub e_inf: Vec<Vec<usize>>,
    /// Cohomology dimensions of the total complex.
    pub total: Vec<usize>,
}

impl DoubleComplex {
    /// `dims[p][q]`; every column must list the same number of rows.
    pub fn new(dims: Vec<Vec<usize>>) -> Self {
        DoubleComplex { dims, dh: BTreeMap::new(), dv: BTreeMap::new() }
    }

    pub fn columns(&self) -> usize {
        self.dims.len()
    }

    pub fn rows(&self) -> usize {
        self.dims.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims.get(p).and_then(|c| c.get(q)).copied().unwrap_or(0)
    }

    fn check_shape(&self, m: &Matrix<Rational>, from: (usize, usize), to: (usize, usize)) -> Result<()> {
        if m.rows() != self.dim(to.0, to.1) || m.cols() != self.dim(from.0, from.1) {
            return Err(Error::DoubleComplex(format!(
                "map {from:?} -> {to:?} is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                self.dim(to.0, to.1),
                self.dim(from.0, from.1)
            )));
        }
        Ok(())
    }

    pub fn set_dh(&mut self, p: usize, q: usize, m: Matrix<Rational>) -> Result<()> {
        self.check_shape(&m, (p, q), (p + 1, q))?;
        self.dh.insert((p, q), m);
        Ok(())
    }

    pub fn set_dv(&mut self, p: usize, q: usize, m: Matrix<Rational>) -> Result<()> {
        self.check_shape(&m, (p, q), (p, q + 1))?;
        self.dv.insert((p, q), m);
        Ok(())
    }

    pub fn dh(&self, p: usize, q: usize) -> Matrix<Rational> {
        self.dh.get(&(p, q)).cloned().unwrap_or_else(|| Matrix::zeros(self.dim(p + 1, q), self.dim(p, q)))
    }

    pub fn dv(&self, p: usize, q: usize) -> Matrix<Rational> {
        self.dv.get(&(p, q)).cloned().unwrap_or_else(|| Matrix::zeros(self.dim(p, q + 1), self.dim(p, q)))
    }

    /// Checks `dh² = 0`, `dv² = 0` and `dh dv = dv dh`.
    pub fn check(&self) -> Result<()> {
        for p in 0..self.columns() {
            for q in 0..self.rows() {
                if !self.dh(p + 1, q).mul(&self.dh(p, q)).is_zero() {
                    return Err(Error::DoubleComplex(format!("dh does not square to zero at ({p}, {q})")));
                }
                if !self.dv(p, q + 1).mul(&self.dv(p, q)).is_zero() {
                    return Err(Error::DoubleComplex(format!("dv does not square to zero at ({p}, {q})")));
                }
                if self.dv(p + 1, q).mul(&self.dh(p, q)) != self.dh(p, q + 1).mul(&self.dv(p, q)) {
                    return Err(Error::DoubleComplex(format!("dh and dv do not commute at ({p}, {q})")));
                }
            }
        }
        Ok(())
    }

    /// Blocks `(p, n - p)` of the total degree `n`, with their offsets.
    fn layout(&self, n: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for p in 0..=n.min(self.columns().saturating_sub(1)) {
            let d = self.dim(p, n - p);
            out.push((p, off, d));
            off += d;
        }
        out
    }

    fn total_dim(&self, n: usize) -> usize {
        self.layout(n).iter().map(|b| b.2).sum()
    }

    /// Total differential `Tot^n → Tot^{n+1}`.
    fn total_d(&self, n: usize) -> Matrix<Rational> {
        let src = self.layout(n);
        let dst = self.layout(n + 1);
        let mut m = Matrix::zeros(self.total_dim(n + 1), self.total_dim(n));
        let place = |m: &mut Matrix<Rational>, block: &Matrix<Rational>, r0: usize, c0: usize, sign: bool| {
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    let v = block.get(i, j).clone();
                    if !v.is_zero() {
                        m.add_to(r0 + i, c0 + j, if sign { -v } else { v });
                    }
                }
            }
        };
        for &(p, c0, _) in &src {
            let q = n - p;
            if let Some(&(_, r0, _)) = dst.iter().find(|b| b.0 == p + 1) {
                place(&mut m, &self.dh(p, q), r0, c0, false);
            }
            if let Some(&(_, r0, _)) = dst.iter().find(|b| b.0 == p) {
                place(&mut m, &self.dv(p, q), r0, c0, p % 2 == 1);
            }
        }
        m
    }

    /// Dimensions of every page, `E∞`, and the total cohomology.
    pub fn spectral_pages(&self) -> Result<Pages> {
        self.check()?;
        let cols = self.columns();
        let degrees = (cols + self.rows()).saturating_sub(1);
        let tot: Vec<Matrix<Rational>> = (0..=degrees).map(|n| self.total_d(n)).collect();
        let blocks: Vec<Vec<(usize, usize, usize)>> = (0..=degrees).map(|n| self.layout(n)).collect();

        // coordinates of Tot^n lying in columns >= p
        let filt = |n: usize, p: usize| -> Vec<usize> {
            blocks[n].iter().filter(|b| b.0 >= p).flat_map(|&(_, off, d)| off..off + d).collect()
        };
        let below = |n: usize, p: usize| -> Vec<usize> {
            blocks[n].iter().filter(|b| b.0 < p).flat_map(|&(_, off, d)| off..off + d).collect()
        };
        let embed = |n: usize, support: &[usize], v: &[Rational]| -> Vec<Rational> {
            let mut out = vec![Rational::zero(); self.total_dim(n)];
            for (&i, x) in support.iter().zip(v) {
                out[i] = x.clone();
            }
            out
        };
        // Z_r^p in Tot^n: x in F^p with Dx in F^{p+r}
        let z = |n: usize, p: usize, r: usize| -> Vec<Vec<Rational>> {
            let support = filt(n, p);
            let rows = below(n + 1, p + r);
            let m = tot[n].select(&rows, &support);
            kernel_basis(&m).iter().map(|v| embed(n, &support, v)).collect()
        };
        // F^p ∩ D(F^{p-r+1} Tot^{n-1}) in Tot^n
        let b = |n: usize, p: usize, r: usize| -> Vec<Vec<Rational>> {
            if n == 0 {
                return Vec::new();
            }
            let support = filt(n - 1, (p + 1).saturating_sub(r));
            let rows = below(n, p);
            let ker = kernel_basis(&tot[n - 1].select(&rows, &support));
            ker.iter().map(|v| tot[n - 1].apply(&embed(n - 1, &support, v))).collect()
        };

        let rmax = cols + 1;
        let mut pages = Vec::new();
        for r in 1..=rmax {
            let mut page = vec![vec![0; self.rows()]; cols];
            for (p, col) in page.iter_mut().enumerate() {
                for (q, slot) in col.iter_mut().enumerate() {
                    if self.dim(p, q) == 0 {
                        continue;
                    }
                    let n = p + q;
                    let zr = z(n, p, r);
                    let mut denom = z(n, p + 1, r - 1);
                    denom.extend(b(n, p, r));
                    let ambient = self.total_dim(n);
                    *slot = zr.len() - span_dimension(ambient, &denom);
                }
            }
            pages.push(page);
        }
        let e_inf = pages.last().cloned().unwrap_or_default();
        let ranks: Vec<usize> = tot.iter().map(rank_rational).collect();
        let total = (0..degrees)
            .map(|n| self.total_dim(n) - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })
            .collect();
        Ok(Pages { pages, e_inf, total })
    }
}
