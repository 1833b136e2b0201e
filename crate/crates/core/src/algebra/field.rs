//! Finite fields `F_q`, `q = p^r`, as lookup tables.
//!
//! An element is stored as its index `sum c_i p^i`, where `(c_0, ..., c_{r-1})`
//! are its coordinates in the power basis of a root `u` of the defining
//! modulus. For `r = 1` the index is the residue itself.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u32 = 256;

/// An element of `F_q`, identified by its index in `[0, q)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Fe(pub(crate) u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    trace: Vec<u32>,
}

/// The field `F_{p^r}` together with its arithmetic tables.
///
/// Cloning is cheap; all clones share the same tables.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.t.p)
            .field("r", &self.t.r)
            .field("modulus", &self.t.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.p == other.t.p && self.t.modulus == other.t.modulus)
    }
}

impl Eq for Field {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_order(p: u32, r: u32) -> Result<u32> {
    let mut q: u64 = 1;
    for _ in 0..r {
        q *= p as u64;
        if q > MAX_FIELD_ORDER as u64 {
            return Err(Error::FieldTooLarge { p, r });
        }
    }
    Ok(q as u32)
}

// Dense F_p polynomial helpers, used only while building tables.

fn fp_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let inv_lead = fp_inv(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = (r[top] * inv_lead) % p;
        let shift = top - dm;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (c * mi) % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    (1..p)
        .find(|&b| (a * b) % p == 1)
        .expect("nonzero residue mod a prime")
}

fn fp_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn digits(mut index: u32, p: u32, len: usize) -> Vec<u32> {
    let mut d = vec![0u32; len];
    for slot in d.iter_mut() {
        *slot = index % p;
        index /= p;
    }
    d
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Whether the monic polynomial `m` (coefficients mod `p`, lowest first) is
/// irreducible over `F_p`, by trial division against every monic polynomial
/// of degree at most `deg m / 2`.
fn fp_is_irreducible(m: &[u32], p: u32) -> bool {
    let d = m.len() - 1;
    if d == 0 {
        return false;
    }
    for e in 1..=d / 2 {
        let count = (p as u64).pow(e as u32);
        for code in 0..count {
            let mut cand = digits(code as u32, p, e);
            cand.push(1);
            if fp_rem(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds `F_{p^r}` with the least monic irreducible modulus of degree
    /// `r` over `F_p`, least in the order of the integer code
    /// `sum_{i<r} c_i p^i` of its non-leading coefficients.
    pub fn new(p: u32, r: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::ZeroExtensionDegree);
        }
        let q = checked_order(p, r)?;
        let modulus = (0..q)
            .map(|code| {
                let mut m = digits(code, p, r as usize);
                m.push(1);
                m
            })
            .find(|m| fp_is_irreducible(m, p))
            .expect("an irreducible polynomial of every degree exists");
        Ok(Self::from_tables(p, r, q, modulus))
    }

    /// Prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        Self::new(p, 1)
    }

    /// Builds `F_p[u]/(modulus)`; the modulus (lowest coefficient first) must
    /// be monic and irreducible over `F_p`.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 {
            return Err(Error::ZeroExtensionDegree);
        }
        if let Some(&bad) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::NotAnElement(bad));
        }
        if *modulus.last().unwrap() != 1 || !fp_is_irreducible(modulus, p) {
            return Err(Error::ReducibleModulus);
        }
        let r = (modulus.len() - 1) as u32;
        let q = checked_order(p, r)?;
        Ok(Self::from_tables(p, r, q, modulus.to_vec()))
    }

    fn from_tables(p: u32, r: u32, q: u32, modulus: Vec<u32>) -> Field {
        let n = q as usize;
        let rl = r as usize;
        let coords: Vec<Vec<u32>> = (0..q).map(|i| digits(i, p, rl)).collect();
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> = coords[a]
                    .iter()
                    .zip(&coords[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * n + b] = undigits(&s, p);
                let mut prod = fp_rem(&fp_mul(&coords[a], &coords[b], p), &modulus, p);
                prod.resize(rl, 0);
                mul[a * n + b] = undigits(&prod, p);
            }
        }
        let neg: Vec<u32> = (0..n)
            .map(|a| (0..n).find(|&b| add[a * n + b] == 0).unwrap() as u32)
            .collect();
        let inv: Vec<u32> = (0..n)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..n).find(|&b| mul[a * n + b] == 1).unwrap() as u32
                }
            })
            .collect();
        let trace: Vec<u32> = (0..n)
            .map(|a| {
                let mut acc = 0usize;
                let mut frob = a;
                for _ in 0..r {
                    acc = add[acc * n + frob] as usize;
                    let mut next = 1usize;
                    for _ in 0..p {
                        next = mul[next * n + frob] as usize;
                    }
                    frob = next;
                }
                debug_assert!((acc as u32) < p, "trace lies in the prime field");
                acc as u32
            })
            .collect();
        Field {
            t: Arc::new(Tables {
                p,
                r,
                q,
                modulus,
                add,
                mul,
                neg,
                inv,
                trace,
            }),
        }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.t.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.t.r
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.t.q
    }

    /// Coefficients (mod p, lowest first) of the defining modulus.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn element(&self, index: u32) -> Result<Fe> {
        if index < self.t.q {
            Ok(Fe(index))
        } else {
            Err(Error::NotAnElement(index))
        }
    }

    /// Image of the integer `k` in the prime subfield.
    pub fn from_int(&self, k: i64) -> Fe {
        Fe(k.rem_euclid(self.t.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.t.q).map(Fe)
    }

    /// Power-basis coordinates of `a` over `F_p`.
    pub fn coordinates(&self, a: Fe) -> Vec<u32> {
        digits(a.0, self.t.p, self.t.r as usize)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.t.add[(a.0 * self.t.q + b.0) as usize])
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.t.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        Fe(self.t.mul[(a.0 * self.t.q + b.0) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            None
        } else {
            Some(Fe(self.t.inv[a.0 as usize]))
        }
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `Tr(t) = sum_{i<r} t^{p^i}`, returned as a residue mod `p`.
    #[inline]
    pub fn trace(&self, t: Fe) -> u32 {
        self.t.trace[t.0 as usize]
    }

    /// Exponent `k` (mod `p`) such that `exp(2 pi i Tr(t s) / p) = zeta_p^k`.
    #[inline]
    pub fn additive_character(&self, s: Fe, t: Fe) -> u32 {
        self.trace(self.mul(s, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.order(), 2);
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.order(), 3);
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(2, 0).unwrap_err(), Error::ZeroExtensionDegree);
        assert!(matches!(Field::new(2, 9), Err(Error::FieldTooLarge { .. })));
        assert_eq!(
            Field::with_modulus(2, &[1, 0, 1]).unwrap_err(),
            Error::ReducibleModulus
        );
    }

    #[test]
    fn trace_examples() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.trace(Fe(1)), 1);
        let f4 = Field::new(2, 2).unwrap();
        // u has coordinates (0, 1), index 2; u^2 = u + 1.
        let u = Fe(2);
        assert_eq!(f4.mul(u, u), Fe(3));
        assert_eq!(f4.trace(u), 1);
        assert_eq!(f4.trace(Fe::ONE), 0);
    }

    #[test]
    fn trace_is_additive_and_character_sums_vanish() {
        for (p, r) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3)] {
            let f = Field::new(p, r).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % p);
                }
            }
            for s in f.elements().skip(1) {
                let mut counts = vec![0u32; p as usize];
                for t in f.elements() {
                    counts[f.additive_character(s, t) as usize] += 1;
                }
                // Each residue is hit equally often, so the sum of roots is zero.
                assert!(counts.iter().all(|&c| c == counts[0]));
            }
            assert_eq!(f.additive_character(Fe::ZERO, Fe(1)), 0);
        }
    }

    #[test]
    fn field_axioms_on_full_tables() {
        for (p, r) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)] {
            let f = Field::new(p, r).unwrap();
            let els: Vec<Fe> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
                if let Some(i) = f.inv(a) {
                    assert_eq!(f.mul(a, i), Fe::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            assert_eq!(f.inv(Fe::ZERO), None);
        }
    }
}
