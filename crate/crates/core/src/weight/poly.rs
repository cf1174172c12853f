//! Poincaré polynomials.

use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use crate::linalg::Ring;

/// Dense polynomial in `t`, lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![T::zero(); k + 1];
        c[k] = T::one();
        Polynomial { coeffs: c }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
    }
}

impl<T: Ring> Zero for Polynomial<T> {
    fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for Polynomial<T> {
    fn one() -> Self {
        Self::monomial(0)
    }
}

impl<T: Ring> Add for Polynomial<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Ring> Mul for Polynomial<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{c}t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{c}t^{k}")?,
            }
        }
        Ok(())
    }
}

/// `1 + t² + … + t^{2l}`, the Poincaré polynomial of `ℙ^l`.
pub fn projective_space(l: usize) -> Polynomial<i64> {
    Polynomial::new((0..=2 * l).map(|k| i64::from(k % 2 == 0)).collect())
}

/// Poincaré polynomial of a `ℙ^l`-bundle over a base with polynomial `p_c`.
pub fn bundle_poincare(p_c: &Polynomial<i64>, l: usize) -> Polynomial<i64> {
    p_c.clone() * projective_space(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = Polynomial::new(vec![1i64, 2, 1, 0]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval(&1), 4);
        assert_eq!(p.to_string(), "1 + 2t + t^2");
        assert_eq!(p.clone() * Polynomial::one(), p);
        assert!((p.clone() * Polynomial::zero()).is_zero());
        assert_eq!(Polynomial::new(vec![1i64, -1]) + Polynomial::new(vec![0, 1]), Polynomial::one());
    }

    #[test]
    fn bundles() {
        let pt = Polynomial::one();
        assert_eq!(bundle_poincare(&pt, 2), Polynomial::new(vec![1, 0, 1, 0, 1]));
        let elliptic = Polynomial::new(vec![1, 2, 1]);
        assert_eq!(bundle_poincare(&elliptic, 1), Polynomial::new(vec![1, 2, 2, 2, 1]));
        assert_eq!(bundle_poincare(&elliptic, 0), elliptic);
    }
}
