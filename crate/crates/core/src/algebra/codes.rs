//! `G_n` viewed as the vector space `F_q^n`, with elements addressed by their
//! base-`q` code. Used by the transforms and the Gowers machinery, which
//! work on value tables indexed by code.

use alloc::vec::Vec;

use super::field::{Fe, Field};
use super::poly::Polynomial;
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct CodeSpace {
    field: Field,
    n: usize,
    size: u64,
}

impl CodeSpace {
    pub fn new(field: &Field, n: usize, budget: u128) -> Result<Self> {
        let size = super::enumerate::guard(
            "G_n table",
            super::enumerate::checked_power(field.order(), n),
            budget,
        )?;
        Ok(CodeSpace {
            field: field.clone(),
            n,
            size,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn digits(&self, mut code: u64) -> Vec<Fe> {
        let q = self.field.order() as u64;
        (0..self.n)
            .map(|_| {
                let d = Fe((code % q) as u32);
                code /= q;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[Fe]) -> u64 {
        let q = self.field.order() as u64;
        digits
            .iter()
            .rev()
            .fold(0, |acc, d| acc * q + d.index() as u64)
    }

    pub fn polynomial(&self, code: u64) -> Polynomial {
        Polynomial::from_code(code, self.field.order())
    }

    fn zip(&self, mut a: u64, mut b: u64, op: impl Fn(Fe, Fe) -> Fe) -> u64 {
        let q = self.field.order() as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.n {
            let d = op(Fe((a % q) as u32), Fe((b % q) as u32));
            out += d.index() as u64 * place;
            place *= q;
            a /= q;
            b /= q;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.zip(a, b, |x, y| self.field.add(x, y))
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.zip(a, b, |x, y| self.field.sub(x, y))
    }

    /// `c * a` for a scalar `c`.
    pub fn scale(&self, c: Fe, a: u64) -> u64 {
        self.zip(a, 0, |x, _| self.field.mul(c, x))
    }

    /// Full addition table when it fits in `limit` entries.
    pub fn addition_table(&self, limit: u64) -> Option<Vec<u32>> {
        let n = self.size;
        if n.checked_mul(n)? > limit || n > u32::MAX as u64 {
            return None;
        }
        let mut t = Vec::with_capacity((n * n) as usize);
        for a in 0..n {
            for b in 0..n {
                t.push(self.add(a, b) as u32);
            }
        }
        Some(t)
    }
}
