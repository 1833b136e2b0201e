//! Dense polynomials over `F_q`, lowest degree first.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::{Fe, Field};
use crate::error::{Error, Result};

/// Degree of a polynomial. The zero polynomial has degree [`Degree::NegInf`],
/// which orders below every finite degree.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// An element of `F_q[x]`. No coefficient above the degree is stored, so
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Fe>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if c.0 == 1 && i > 0 {
                alloc::string::String::new()
            } else {
                alloc::format!("{}", c.0)
            };
            match i {
                0 => write!(f, "{}", coeff)?,
                1 => write!(f, "{}x", coeff)?,
                _ => write!(f, "{}x^{}", coeff, i)?,
            }
        }
        Ok(())
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![Fe::ONE],
        }
    }

    pub fn x() -> Self {
        Polynomial {
            coeffs: vec![Fe::ZERO, Fe::ONE],
        }
    }

    pub fn constant(c: Fe) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c x^k`.
    pub fn monomial(c: Fe, k: usize) -> Self {
        let mut coeffs = vec![Fe::ZERO; k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Builds a polynomial from element indices, lowest degree first.
    pub fn from_indices(field: &Field, indices: &[u32]) -> Result<Self> {
        let coeffs = indices
            .iter()
            .map(|&i| field.element(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    /// Decodes the base-`q` integer `code`, least significant digit first,
    /// into a polynomial. Every `g` with `deg g < n` has a unique code below
    /// `q^n`.
    pub fn from_code(mut code: u64, q: u32) -> Self {
        let q = q as u64;
        let mut coeffs = Vec::new();
        while code > 0 {
            coeffs.push(Fe((code % q) as u32));
            code /= q;
        }
        Polynomial { coeffs }
    }

    /// Inverse of [`Polynomial::from_code`]; `None` if the code overflows `u64`.
    pub fn code(&self, q: u32) -> Option<u64> {
        let q = q as u64;
        self.coeffs
            .iter()
            .rev()
            .try_fold(0u64, |acc, c| acc.checked_mul(q)?.checked_add(c.0 as u64))
    }

    /// The monic polynomial of degree `n` whose lower coefficients encode `code`.
    pub fn monic_from_code(code: u64, n: usize, q: u32) -> Self {
        let mut coeffs = Self::from_code(code, q).coeffs;
        coeffs.resize(n, Fe::ZERO);
        coeffs.push(Fe::ONE);
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero above the degree).
    #[inline]
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    /// Number of stored coefficients, `deg + 1` (zero for the zero polynomial).
    #[inline]
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Fe::ONE)
    }

    pub fn add(&self, other: &Self, f: &Field) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self, f: &Field) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self, f: &Field) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: Fe, f: &Field) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Fe::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial { coeffs }
    }

    pub fn mul(&self, other: &Self, f: &Field) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        // Leading coefficients are nonzero and F_q has no zero divisors.
        Polynomial { coeffs: out }
    }

    /// Euclidean division: `self = quotient * divisor + remainder` with
    /// `deg remainder < deg divisor`.
    pub fn div_rem(&self, divisor: &Self, f: &Field) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let inv = f.inv(lead).expect("leading coefficient is nonzero");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Fe::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let factor = f.mul(c, inv);
            let shift = top - dd;
            quot[shift] = factor;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = f.sub(rem[shift + i], f.mul(factor, d));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Self, f: &Field) -> Result<Self> {
        Ok(self.div_rem(divisor, f)?.1)
    }

    /// Whether `divisor` divides `self`.
    pub fn is_divisible_by(&self, divisor: &Self, f: &Field) -> Result<bool> {
        Ok(self.rem(divisor, f)?.is_zero())
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self, f: &Field) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(c) => self.scale(f.inv(c).unwrap(), f),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self, f: &Field) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self, f: &Field) -> Result<Self> {
        let mut base = self.rem(modulus, f)?;
        let mut acc = Self::one().rem(modulus, f)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(modulus, f)?;
            }
            base = base.mul(&base, f).rem(modulus, f)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Value at a field element, by Horner's rule.
    pub fn eval(&self, t: Fe, f: &Field) -> Fe {
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, t), c))
    }
}
