//! Polynomial phases `P: G_n -> F_q` in structured form.
//!
//! A phase is a sum of product terms `c * prod_i L_i(g)`, where each `L_i` is
//! a linear form `g -> (beta_i g)_{-1}`, plus optional monomials in the
//! coordinates `g_j`. Discrete derivatives are expanded symbolically, so the
//! number of factors per term is an exact degree bound.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::form::{FormOrigin, FormTerm, MultilinearForm, RankBounds};
use crate::algebra::{Fe, Field, LaurentTruncation, Polynomial};
use crate::descriptor::{MonomialTermDescriptor, PhaseDescriptor, ProductTermDescriptor};
use crate::error::{Error, Result};

/// Largest number of rank-one terms [`PolynomialPhase::derivative_form`]
/// will produce.
pub const MAX_FORM_TERMS: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq)]
pub struct ProductTerm {
    pub coeff: Fe,
    pub factors: Vec<LaurentTruncation>,
}

/// `coeff * prod g_j^e` over `(j, e)` with distinct `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialTerm {
    pub coeff: Fe,
    pub powers: Vec<(usize, u32)>,
}

impl MonomialTerm {
    pub fn degree(&self) -> usize {
        self.powers.iter().map(|&(_, e)| e as usize).sum()
    }
}

#[derive(Clone, Debug)]
pub struct PolynomialPhase {
    field: Field,
    n: usize,
    terms: Vec<ProductTerm>,
    monomials: Vec<MonomialTerm>,
}

fn binomial_row(e: u32, p: u32) -> Vec<u32> {
    let mut row = vec![1u32];
    for _ in 0..e {
        let mut next = vec![1u32; row.len() + 1];
        for k in 1..row.len() {
            next[k] = (row[k - 1] + row[k]) % p;
        }
        row = next;
    }
    row
}

impl PolynomialPhase {
    /// The zero phase on `G_n`.
    pub fn zero(field: &Field, n: usize) -> Self {
        PolynomialPhase {
            field: field.clone(),
            n,
            terms: Vec::new(),
            monomials: Vec::new(),
        }
    }

    /// `g -> (beta g)_{-1}`.
    pub fn linear(field: &Field, n: usize, beta: LaurentTruncation) -> Result<Self> {
        Self::zero(field, n).with_term(Fe::ONE, vec![beta])
    }

    /// Adds `coeff * prod L_i`. Every truncation must reach depth `n`.
    pub fn with_term(mut self, coeff: Fe, factors: Vec<LaurentTruncation>) -> Result<Self> {
        self.field.element(coeff.index())?;
        for b in &factors {
            if b.depth() < self.n {
                return Err(Error::DepthTooShallow {
                    depth: b.depth(),
                    degree: self.n.saturating_sub(1),
                });
            }
        }
        if !coeff.is_zero() {
            self.terms.push(ProductTerm { coeff, factors });
        }
        Ok(self)
    }

    /// Adds `coeff * prod g_j^e`; repeated coordinates are merged.
    pub fn with_monomial(mut self, coeff: Fe, powers: &[(usize, u32)]) -> Result<Self> {
        self.field.element(coeff.index())?;
        let mut merged: Vec<(usize, u32)> = Vec::new();
        for &(j, e) in powers {
            if j >= self.n {
                return Err(Error::DegreeMismatch(alloc::format!(
                    "coordinate g_{j} does not exist on G_{}",
                    self.n
                )));
            }
            if e == 0 {
                continue;
            }
            match merged.iter_mut().find(|(i, _)| *i == j) {
                Some(slot) => slot.1 += e,
                None => merged.push((j, e)),
            }
        }
        merged.sort_unstable();
        if !coeff.is_zero() {
            self.monomials.push(MonomialTerm {
                coeff,
                powers: merged,
            });
        }
        Ok(self)
    }

    pub fn from_descriptor(field: &Field, d: &PhaseDescriptor) -> Result<Self> {
        let mut p = Self::zero(field, d.n);
        for t in &d.terms {
            let factors = t
                .factors
                .iter()
                .map(|b| LaurentTruncation::from_indices(field, b))
                .collect::<Result<Vec<_>>>()?;
            p = p.with_term(field.element(t.coeff)?, factors)?;
        }
        for m in &d.monomials {
            p = p.with_monomial(field.element(m.coeff)?, &m.powers)?;
        }
        Ok(p)
    }

    pub fn descriptor(&self) -> PhaseDescriptor {
        PhaseDescriptor {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|t| ProductTermDescriptor {
                    coeff: t.coeff.index(),
                    factors: t
                        .factors
                        .iter()
                        .map(|b| b.coeffs().iter().map(|c| c.index()).collect())
                        .collect(),
                })
                .collect(),
            monomials: self
                .monomials
                .iter()
                .map(|m| MonomialTermDescriptor {
                    coeff: m.coeff.index(),
                    powers: m.powers.clone(),
                })
                .collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `n`, the domain being `G_n`.
    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[ProductTerm] {
        &self.terms
    }

    pub fn monomials(&self) -> &[MonomialTerm] {
        &self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.monomials.is_empty()
    }

    /// Declared degree: the largest factor count or monomial degree.
    pub fn degree(&self) -> usize {
        self.structured_degree().max(self.monomial_degree())
    }

    fn structured_degree(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.factors.len())
            .max()
            .unwrap_or(0)
    }

    fn monomial_degree(&self) -> usize {
        self.monomials.iter().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// `Some(d)` if every term has degree exactly `d >= 1`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self
            .terms
            .iter()
            .map(|t| t.factors.len())
            .chain(self.monomials.iter().map(|m| m.degree()));
        let d = degs.next()?;
        (d >= 1 && degs.all(|e| e == d)).then_some(d)
    }

    pub fn eval(&self, g: &Polynomial) -> Result<Fe> {
        if let Some(d) = g.degree().finite() {
            if d >= self.n {
                return Err(Error::DegreeMismatch(alloc::format!(
                    "degree {d} polynomial is outside G_{}",
                    self.n
                )));
            }
        }
        let f = &self.field;
        let mut acc = Fe::ZERO;
        for t in &self.terms {
            let mut v = t.coeff;
            for b in &t.factors {
                v = f.mul(v, b.dot(g.coeffs(), f));
            }
            acc = f.add(acc, v);
        }
        for m in &self.monomials {
            let mut v = m.coeff;
            for &(j, e) in &m.powers {
                v = f.mul(v, f.pow(g.coeff(j), e as u64));
            }
            acc = f.add(acc, v);
        }
        Ok(acc)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field || self.n != other.n {
            return Err(Error::DegreeMismatch(
                "phases live on different domains".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out.monomials.extend(other.monomials.iter().cloned());
        Ok(out)
    }

    pub fn scale(&self, c: Fe) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f, self.n);
        if c.is_zero() {
            return out;
        }
        out.terms = self
            .terms
            .iter()
            .map(|t| ProductTerm {
                coeff: f.mul(c, t.coeff),
                factors: t.factors.clone(),
            })
            .collect();
        out.monomials = self
            .monomials
            .iter()
            .map(|m| MonomialTerm {
                coeff: f.mul(c, m.coeff),
                powers: m.powers.clone(),
            })
            .collect();
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(self.field.neg(Fe::ONE)))
    }

    /// `Delta_h P (g) = P(g + h) - P(g)`, expanded term by term.
    pub fn delta(&self, h: &Polynomial) -> Result<Self> {
        if h.degree().finite().is_some_and(|d| d >= self.n) {
            return Err(Error::DegreeMismatch(alloc::format!(
                "shift outside G_{}",
                self.n
            )));
        }
        let f = &self.field;
        let mut out = Self::zero(f, self.n);
        for t in &self.terms {
            let at_h: Vec<Fe> = t.factors.iter().map(|b| b.dot(h.coeffs(), f)).collect();
            let k = t.factors.len();
            // subsets S of factors kept as functions of g; the rest are
            // evaluated at h. S = everything cancels against -P(g).
            for mask in 0..(1u64 << k) - 1 {
                let mut c = t.coeff;
                let mut kept = Vec::new();
                for (i, b) in t.factors.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        kept.push(b.clone());
                    } else {
                        c = f.mul(c, at_h[i]);
                    }
                }
                if !c.is_zero() {
                    out.terms.push(ProductTerm {
                        coeff: c,
                        factors: kept,
                    });
                }
            }
        }
        let p = f.characteristic();
        for m in &self.monomials {
            let rows: Vec<Vec<u32>> = m.powers.iter().map(|&(_, e)| binomial_row(e, p)).collect();
            let hs: Vec<Fe> = m.powers.iter().map(|&(j, _)| h.coeff(j)).collect();
            let mut ks = vec![0u32; m.powers.len()];
            loop {
                let full = ks.iter().zip(&m.powers).all(|(k, &(_, e))| *k == e);
                if !full {
                    let mut c = m.coeff;
                    let mut powers = Vec::new();
                    for (i, &(j, e)) in m.powers.iter().enumerate() {
                        let k = ks[i];
                        c = f.mul(c, f.from_int(rows[i][k as usize] as i64));
                        c = f.mul(c, f.pow(hs[i], (e - k) as u64));
                        if k > 0 {
                            powers.push((j, k));
                        }
                    }
                    if !c.is_zero() {
                        out.monomials.push(MonomialTerm { coeff: c, powers });
                    }
                }
                // odometer over 0..=e_i
                let mut i = 0;
                while i < ks.len() {
                    if ks[i] < m.powers[i].1 {
                        ks[i] += 1;
                        break;
                    }
                    ks[i] = 0;
                    i += 1;
                }
                if i == ks.len() {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// `Delta_{h_1} ... Delta_{h_k} P`.
    pub fn iterated_delta(&self, hs: &[Polynomial]) -> Result<Self> {
        hs.iter().try_fold(self.clone(), |p, h| p.delta(h))
    }

    /// Number of top-degree terms, a constructive upper bound for the
    /// Schmidt rank when the degree is at least 2 (0 otherwise).
    pub fn schmidt_upper(&self) -> usize {
        let m = self.degree();
        if m < 2 {
            return 0;
        }
        self.terms.iter().filter(|t| t.factors.len() == m).count()
            + self.monomials.iter().filter(|t| t.degree() == m).count()
    }

    pub fn rank_upper_bounds(&self) -> RankBounds {
        let s = self.schmidt_upper();
        RankBounds {
            schmidt_upper: Some(s),
            partition_upper: None,
            derivative_bound: Some(s as u64 * (1u64 << self.degree().min(63))),
        }
    }

    /// The top-degree part as product terms; monomials become products of
    /// coordinate forms.
    fn top_products(&self, m: usize) -> Result<Vec<ProductTerm>> {
        let mut out: Vec<ProductTerm> = self
            .terms
            .iter()
            .filter(|t| t.factors.len() == m)
            .cloned()
            .collect();
        for mono in self.monomials.iter().filter(|t| t.degree() == m) {
            let mut factors = Vec::new();
            for &(j, e) in &mono.powers {
                for _ in 0..e {
                    factors.push(LaurentTruncation::coordinate(j, self.n.max(j + 1))?);
                }
            }
            out.push(ProductTerm {
                coeff: mono.coeff,
                factors,
            });
        }
        Ok(out)
    }

    /// `d^m P (h_1, ..., h_m) = Delta_{h_1} ... Delta_{h_m} P`, as a sum of
    /// rank-one terms: each top-degree product `c L_1 ... L_m` contributes
    /// `c sum_sigma prod_i L_{sigma(i)}(h_i)`.
    pub fn derivative_form(&self, m: usize) -> Result<MultilinearForm> {
        let p = self.field.characteristic();
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        if m as u64 >= p as u64 {
            return Err(Error::DegreeNotBelowCharacteristic { m, p });
        }
        if self.degree() > m {
            return Err(Error::DegreeMismatch(alloc::format!(
                "phase of degree {} has no {m}-linear derivative form",
                self.degree()
            )));
        }
        let top = self.top_products(m)?;
        let perms = permutations(m);
        if perms.len().saturating_mul(top.len()) > MAX_FORM_TERMS {
            return Err(Error::BudgetExceeded {
                what: "derivative form terms",
                requested: perms.len() as u128 * top.len() as u128,
                budget: MAX_FORM_TERMS as u128,
            });
        }
        let mut terms = Vec::with_capacity(perms.len() * top.len());
        for t in &top {
            for s in &perms {
                terms.push(FormTerm {
                    coeff: t.coeff,
                    slots: s.iter().map(|&i| t.factors[i].clone()).collect(),
                });
            }
        }
        let mut q = MultilinearForm::new(&self.field, vec![self.n; m], terms)?;
        q.set_origin(FormOrigin::Derivative {
            m,
            schmidt_upper: self.schmidt_upper(),
        });
        Ok(q)
    }

    /// Whether `Delta_{h_0} ... Delta_{h_m} P` vanishes. A structured phase
    /// of declared degree at most `m` passes without sampling; otherwise the
    /// iterated difference is evaluated at `trials` random points.
    pub fn verify_degree(&self, m: usize, trials: usize, seed: u64) -> Result<bool> {
        if trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        if self.monomials.is_empty() && self.structured_degree() <= m {
            return Ok(true);
        }
        let f = &self.field;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = f.order();
        let random_poly = |rng: &mut ChaCha8Rng| {
            Polynomial::from_coeffs((0..self.n).map(|_| Fe(rng.random_range(0..q))).collect())
        };
        let points = 1usize << (m + 1);
        for _ in 0..trials {
            let g = random_poly(&mut rng);
            let hs: Vec<Polynomial> = (0..=m).map(|_| random_poly(&mut rng)).collect();
            let mut acc = Fe::ZERO;
            for mask in 0..points {
                let mut x = g.clone();
                for (i, h) in hs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        x = x.add(h, f);
                    }
                }
                let v = self.eval(&x)?;
                let missing = (m + 1) - (mask as u64).count_ones() as usize;
                acc = if missing % 2 == 0 {
                    f.add(acc, v)
                } else {
                    f.sub(acc, v)
                };
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// All permutations of `0..m` in lexicographic order.
pub(crate) fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn spec_examples() {
        let f = f5();
        let g = Polynomial::from_indices(&f, &[2, 1]).unwrap();
        assert_eq!(PolynomialPhase::zero(&f, 3).eval(&g).unwrap(), Fe::ZERO);
        let l = LaurentTruncation::coordinate(0, 3).unwrap();
        let sq = PolynomialPhase::zero(&f, 3)
            .with_term(Fe::ONE, vec![l.clone(), l.clone()])
            .unwrap();
        assert_eq!(sq.eval(&g).unwrap(), Fe(4));
        // Delta of a constant
        let c = PolynomialPhase::zero(&f, 3)
            .with_term(Fe(3), vec![])
            .unwrap();
        assert!(c.delta(&g).unwrap().is_zero());
        // Delta of a linear phase is the constant L(h)
        let lin = PolynomialPhase::linear(&f, 3, l).unwrap();
        let d = lin.delta(&g).unwrap();
        assert_eq!(d.degree(), 0);
        assert_eq!(d.eval(&Polynomial::zero()).unwrap(), Fe(2));
    }

    #[test]
    fn permutations_count() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn verify_degree_witness() {
        let f = f5();
        let l = LaurentTruncation::coordinate(0, 2).unwrap();
        let sq = PolynomialPhase::zero(&f, 2)
            .with_monomial(Fe::ONE, &[(0, 2)])
            .unwrap();
        assert!(!sq.verify_degree(1, 50, 1).unwrap());
        assert!(sq.verify_degree(2, 50, 1).unwrap());
        let lin = PolynomialPhase::linear(&f, 2, l).unwrap();
        assert!(lin.verify_degree(1, 1, 0).unwrap());
    }

    #[test]
    fn derivative_form_refuses_large_m() {
        let f = Field::prime(3).unwrap();
        let l = LaurentTruncation::coordinate(0, 2).unwrap();
        let p = PolynomialPhase::zero(&f, 2)
            .with_term(Fe::ONE, vec![l.clone(), l.clone(), l])
            .unwrap();
        assert_eq!(
            p.derivative_form(3).unwrap_err(),
            Error::DegreeNotBelowCharacteristic { m: 3, p: 3 }
        );
    }

    #[test]
    fn rank_bookkeeping() {
        let f = f5();
        let b = |j| LaurentTruncation::coordinate(j, 4).unwrap();
        let mut p = PolynomialPhase::zero(&f, 4);
        for j in 0..3 {
            p = p.with_term(Fe::ONE, vec![b(j), b(j + 1)]).unwrap();
        }
        assert_eq!(p.schmidt_upper(), 3);
        let q = p.derivative_form(2).unwrap();
        assert_eq!(q.rank_upper_bounds().derivative_bound, Some(12));
        let lin = PolynomialPhase::linear(&f, 4, b(0)).unwrap();
        assert_eq!(lin.schmidt_upper(), 0);
    }
}
