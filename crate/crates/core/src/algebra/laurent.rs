//! Truncated elements of `T`, the Laurent series in `1/x` of norm below one.
//!
//! `beta = sum_{i >= 1} beta_{-i} x^{-i}` is kept to a finite depth `M`. The
//! linear form `g -> (beta g)_{-1}` only reads `beta_{-1}, ..., beta_{-deg g - 1}`,
//! so a depth-`M` truncation evaluates it exactly on every `g` with
//! `deg g < M`.

use alloc::vec;
use alloc::vec::Vec;

use super::field::{Fe, Field};
use super::poly::Polynomial;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentTruncation {
    /// `coeffs[i]` is `beta_{-(i+1)}`.
    coeffs: Vec<Fe>,
}

impl LaurentTruncation {
    /// `coeffs[i]` is the coefficient of `x^{-(i+1)}`.
    pub fn new(coeffs: Vec<Fe>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "truncation depth must be at least 1".into(),
            ));
        }
        Ok(LaurentTruncation { coeffs })
    }

    pub fn from_indices(field: &Field, indices: &[u32]) -> Result<Self> {
        let coeffs = indices
            .iter()
            .map(|&i| field.element(i))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    pub fn zero(depth: usize) -> Result<Self> {
        Self::new(vec![Fe::ZERO; depth])
    }

    /// `x^{-(j+1)}`: the form reading off the coefficient `g_j`.
    pub fn coordinate(j: usize, depth: usize) -> Result<Self> {
        if j >= depth {
            return Err(Error::DepthTooShallow { depth, degree: j });
        }
        let mut coeffs = vec![Fe::ZERO; depth];
        coeffs[j] = Fe::ONE;
        Self::new(coeffs)
    }

    pub fn depth(&self) -> usize {
        self.coeffs.len()
    }

    /// `beta_{-i}` for `1 <= i <= depth`.
    pub fn coefficient(&self, i: usize) -> Fe {
        assert!(
            i >= 1 && i <= self.coeffs.len(),
            "coefficient index out of range"
        );
        self.coeffs[i - 1]
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Whether `beta_{-1}, ..., beta_{-n}` all vanish.
    pub fn vanishes_to(&self, n: usize) -> bool {
        self.coeffs.iter().take(n).all(|c| c.is_zero())
    }

    /// `(beta g)_{-1} = sum_j g_j beta_{-j-1}`.
    pub fn linear_form(&self, g: &Polynomial, f: &Field) -> Result<Fe> {
        if g.len() > self.coeffs.len() {
            return Err(Error::DepthTooShallow {
                depth: self.coeffs.len(),
                degree: g.len() - 1,
            });
        }
        Ok(self.dot(g.coeffs(), f))
    }

    /// Unchecked inner product with a coefficient slice no longer than the depth.
    #[inline]
    pub(crate) fn dot(&self, g: &[Fe], f: &Field) -> Fe {
        g.iter()
            .zip(&self.coeffs)
            .fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    /// The truncation of `a * beta`, so that `((a beta) g)_{-1} = (beta (a g))_{-1}`.
    /// Its depth is `depth - deg a`.
    pub fn times(&self, a: &Polynomial, f: &Field) -> Result<Self> {
        let da = a.degree().finite().ok_or(Error::ZeroPolynomial)?;
        if da >= self.coeffs.len() {
            return Err(Error::DepthTooShallow {
                depth: self.coeffs.len(),
                degree: da,
            });
        }
        let depth = self.coeffs.len() - da;
        let coeffs = (1..=depth)
            .map(|i| {
                a.coeffs()
                    .iter()
                    .enumerate()
                    .fold(Fe::ZERO, |acc, (j, &aj)| {
                        f.add(acc, f.mul(aj, self.coeffs[i + j - 1]))
                    })
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, c: Fe, f: &Field) -> Self {
        LaurentTruncation {
            coeffs: self.coeffs.iter().map(|&b| f.mul(b, c)).collect(),
        }
    }

    /// Pointwise sum, truncated to the shallower depth.
    pub fn add(&self, other: &Self, f: &Field) -> Self {
        LaurentTruncation {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self, f: &Field) -> Self {
        self.add(&other.scale(f.neg(Fe::ONE), f), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn picks_out_constant_term() {
        let f = Field::new(3, 1).unwrap();
        let beta = LaurentTruncation::from_indices(&f, &[1, 0, 0]).unwrap();
        for c in f.elements() {
            assert_eq!(beta.linear_form(&Polynomial::constant(c), &f).unwrap(), c);
        }
        assert_eq!(beta.linear_form(&Polynomial::zero(), &f).unwrap(), Fe::ZERO);
    }

    #[test]
    fn second_coefficient_example() {
        let f = Field::new(3, 1).unwrap();
        let beta = LaurentTruncation::from_indices(&f, &[0, 2]).unwrap();
        assert_eq!(beta.linear_form(&Polynomial::x(), &f).unwrap(), Fe(2));
    }

    #[test]
    fn too_shallow() {
        let f = Field::new(2, 1).unwrap();
        let beta = LaurentTruncation::from_indices(&f, &[1]).unwrap();
        assert_eq!(
            beta.linear_form(&Polynomial::x(), &f).unwrap_err(),
            Error::DepthTooShallow {
                depth: 1,
                degree: 1
            }
        );
    }

    #[test]
    fn times_matches_direct_evaluation() {
        let f = Field::new(3, 1).unwrap();
        let beta = LaurentTruncation::from_indices(&f, &[1, 2, 0, 1, 1, 2, 0, 1]).unwrap();
        let a = Polynomial::from_indices(&f, &[2, 0, 1]).unwrap();
        let ab = beta.times(&a, &f).unwrap();
        assert_eq!(ab.depth(), 6);
        for code in 0..3u64.pow(6) {
            let g = Polynomial::from_code(code, 3);
            assert_eq!(
                ab.linear_form(&g, &f).unwrap(),
                beta.linear_form(&a.mul(&g, &f), &f).unwrap()
            );
        }
    }
}
