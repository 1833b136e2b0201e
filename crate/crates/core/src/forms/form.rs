//! Multilinear forms `Q: G_{n_1} x ... x G_{n_m} -> F_q` stored as sums of
//! rank-one terms `c * L_1(x_1) ... L_m(x_m)`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::phase::PolynomialPhase;
use crate::algebra::enumerate::{checked_power, guard};
use crate::algebra::{Fe, Field, LaurentTruncation, Polynomial};
use crate::descriptor::{FormDescriptor, FormTermDescriptor};
use crate::error::{Error, Result};
use crate::math;
use crate::reduce::histogram_indexed;

#[derive(Clone, Debug, PartialEq)]
pub struct FormTerm {
    pub coeff: Fe,
    /// One linear form per slot.
    pub slots: Vec<LaurentTruncation>,
}

/// Terms `terms` of a form came from one product `A(x_S) B(x_{S^c})`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionBlock {
    pub subset: Vec<usize>,
    pub terms: Range<usize>,
}

/// How a form was built, for rank bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormOrigin {
    Terms,
    Blocks,
    /// `d^m P` of a phase with the given Schmidt upper bound.
    Derivative {
        m: usize,
        schmidt_upper: usize,
    },
}

/// Constructive rank upper bounds read off a stored decomposition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RankBounds {
    pub schmidt_upper: Option<usize>,
    pub partition_upper: Option<usize>,
    /// `2^m * schmidt_upper` for `d^m P`.
    pub derivative_bound: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiasMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

/// `E alpha_1(Q(x))`; `stderr` is reported in sampled mode only.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bias {
    pub mean: Complex64,
    pub stderr: Option<f64>,
    pub samples: u64,
}

impl Bias {
    pub fn value(&self) -> f64 {
        self.mean.re
    }

    /// `-log_q(bias)`; infinite when the bias is not positive.
    pub fn analytic_rank(&self, q: u32) -> f64 {
        if self.mean.re <= 0.0 {
            f64::INFINITY
        } else {
            -math::ln(self.mean.re) / math::ln(q as f64)
        }
    }
}

#[derive(Clone, Debug)]
pub struct MultilinearForm {
    field: Field,
    domains: Vec<usize>,
    terms: Vec<FormTerm>,
    blocks: Vec<PartitionBlock>,
    origin: FormOrigin,
}

impl MultilinearForm {
    /// A form on `G_{domains[0]} x ...`. Each term needs one truncation per
    /// slot, deep enough for that slot's domain.
    pub fn new(field: &Field, domains: Vec<usize>, terms: Vec<FormTerm>) -> Result<Self> {
        for t in &terms {
            field.element(t.coeff.index())?;
            if t.slots.len() != domains.len() {
                return Err(Error::DegreeMismatch(alloc::format!(
                    "term with {} slots in a {}-linear form",
                    t.slots.len(),
                    domains.len()
                )));
            }
            for (b, &n) in t.slots.iter().zip(&domains) {
                if b.depth() < n {
                    return Err(Error::DepthTooShallow {
                        depth: b.depth(),
                        degree: n.saturating_sub(1),
                    });
                }
            }
        }
        let terms = terms.into_iter().filter(|t| !t.coeff.is_zero()).collect();
        Ok(MultilinearForm {
            field: field.clone(),
            domains,
            terms,
            blocks: Vec::new(),
            origin: FormOrigin::Terms,
        })
    }

    pub fn zero(field: &Field, domains: Vec<usize>) -> Self {
        MultilinearForm {
            field: field.clone(),
            domains,
            terms: Vec::new(),
            blocks: Vec::new(),
            origin: FormOrigin::Terms,
        }
    }

    /// `sum_i A_i(x_{S_i}) B_i(x_{S_i^c})`. Each block gives the slot subset
    /// `S_i` (in increasing order), a form `A_i` on those slots and a form
    /// `B_i` on the remaining slots, both proper.
    pub fn from_blocks(
        field: &Field,
        domains: Vec<usize>,
        blocks: &[(Vec<usize>, MultilinearForm, MultilinearForm)],
    ) -> Result<Self> {
        let m = domains.len();
        let mut terms = Vec::new();
        let mut records = Vec::new();
        for (subset, a, b) in blocks {
            let mut in_s = vec![false; m];
            for &i in subset {
                if i >= m || in_s[i] {
                    return Err(Error::InvalidArgument("bad block subset".into()));
                }
                in_s[i] = true;
            }
            let rest: Vec<usize> = (0..m).filter(|&i| !in_s[i]).collect();
            if subset.is_empty() || rest.is_empty() {
                return Err(Error::InvalidArgument(
                    "a partition block needs both sides nonempty".into(),
                ));
            }
            let sorted = subset.windows(2).all(|w| w[0] < w[1]);
            let dom_a: Vec<usize> = subset.iter().map(|&i| domains[i]).collect();
            let dom_b: Vec<usize> = rest.iter().map(|&i| domains[i]).collect();
            if !sorted || a.domains != dom_a || b.domains != dom_b {
                return Err(Error::SlotDomainMismatch);
            }
            let start = terms.len();
            for ta in &a.terms {
                for tb in &b.terms {
                    let mut slots = vec![None; m];
                    for (k, &i) in subset.iter().enumerate() {
                        slots[i] = Some(ta.slots[k].clone());
                    }
                    for (k, &i) in rest.iter().enumerate() {
                        slots[i] = Some(tb.slots[k].clone());
                    }
                    terms.push(FormTerm {
                        coeff: field.mul(ta.coeff, tb.coeff),
                        slots: slots.into_iter().map(|s| s.unwrap()).collect(),
                    });
                }
            }
            records.push(PartitionBlock {
                subset: subset.clone(),
                terms: start..terms.len(),
            });
        }
        let mut q = Self::new(field, domains, terms)?;
        q.blocks = records;
        q.origin = FormOrigin::Blocks;
        Ok(q)
    }

    pub fn from_descriptor(field: &Field, d: &FormDescriptor) -> Result<Self> {
        let terms = d
            .terms
            .iter()
            .map(|t| {
                Ok(FormTerm {
                    coeff: field.element(t.coeff)?,
                    slots: t
                        .slots
                        .iter()
                        .map(|b| LaurentTruncation::from_indices(field, b))
                        .collect::<Result<Vec<_>>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, d.domains.clone(), terms)
    }

    pub fn descriptor(&self) -> FormDescriptor {
        FormDescriptor {
            domains: self.domains.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| FormTermDescriptor {
                    coeff: t.coeff.index(),
                    slots: t
                        .slots
                        .iter()
                        .map(|b| b.coeffs().iter().map(|c| c.index()).collect())
                        .collect(),
                })
                .collect(),
        }
    }

    pub(crate) fn set_origin(&mut self, origin: FormOrigin) {
        self.origin = origin;
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.domains.len()
    }

    pub fn domains(&self) -> &[usize] {
        &self.domains
    }

    pub fn terms(&self) -> &[FormTerm] {
        &self.terms
    }

    pub fn blocks(&self) -> &[PartitionBlock] {
        &self.blocks
    }

    pub fn origin(&self) -> FormOrigin {
        self.origin
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, xs: &[Polynomial]) -> Result<Fe> {
        if xs.len() != self.arity() {
            return Err(Error::DegreeMismatch(alloc::format!(
                "{} arguments for a {}-linear form",
                xs.len(),
                self.arity()
            )));
        }
        for (x, &n) in xs.iter().zip(&self.domains) {
            if x.degree().finite().is_some_and(|d| d >= n) {
                return Err(Error::DegreeMismatch(alloc::format!(
                    "argument outside G_{n}"
                )));
            }
        }
        let f = &self.field;
        Ok(self.terms.iter().fold(Fe::ZERO, |acc, t| {
            let v = t
                .slots
                .iter()
                .zip(xs)
                .fold(t.coeff, |v, (b, x)| f.mul(v, b.dot(x.coeffs(), f)));
            f.add(acc, v)
        }))
    }

    pub fn scale(&self, c: Fe) -> Self {
        let f = &self.field;
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .map(|t| FormTerm {
                coeff: f.mul(c, t.coeff),
                slots: t.slots.clone(),
            })
            .filter(|t| !t.coeff.is_zero())
            .collect();
        out.blocks.clear();
        out.origin = FormOrigin::Terms;
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.domains != other.domains || self.field != other.field {
            return Err(Error::SlotDomainMismatch);
        }
        let neg = other.scale(self.field.neg(Fe::ONE));
        let mut terms = self.terms.clone();
        terms.extend(neg.terms);
        Self::new(&self.field, self.domains.clone(), terms)
    }

    /// The form `(x_0, ..., x_{m-1}) -> Q(x_{perm^{-1}})`, i.e. new slot `i`
    /// carries old slot `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let m = self.arity();
        let mut seen = vec![false; m];
        if perm.len() != m
            || perm
                .iter()
                .any(|&i| i >= m || core::mem::replace(&mut seen[i], true))
        {
            return Err(Error::InvalidArgument(
                "not a permutation of the slots".into(),
            ));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| FormTerm {
                coeff: t.coeff,
                slots: perm.iter().map(|&i| t.slots[i].clone()).collect(),
            })
            .collect();
        Self::new(
            &self.field,
            perm.iter().map(|&i| self.domains[i]).collect(),
            terms,
        )
    }

    /// The form `(x_i) -> Q(a x_1, ..., a x_m)` on `G_{n'}^m`, obtained by
    /// replacing every `beta` with `a beta`.
    pub fn pullback_by(&self, a: &Polynomial, n: usize) -> Result<Self> {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(FormTerm {
                    coeff: t.coeff,
                    slots: t
                        .slots
                        .iter()
                        .map(|b| b.times(a, f))
                        .collect::<Result<Vec<_>>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(f, vec![n; self.arity()], terms)
    }

    /// `P_Q(g) = Q(g, ..., g)`.
    pub fn diagonal(&self) -> Result<PolynomialPhase> {
        let n = match self.domains.first() {
            Some(&n) => n,
            None => return Ok(PolynomialPhase::zero(&self.field, 0)),
        };
        if self.domains.iter().any(|&d| d != n) {
            return Err(Error::SlotDomainMismatch);
        }
        self.terms
            .iter()
            .try_fold(PolynomialPhase::zero(&self.field, n), |p, t| {
                p.with_term(t.coeff, t.slots.clone())
            })
    }

    pub fn rank_upper_bounds(&self) -> RankBounds {
        let partition = if !self.blocks.is_empty() {
            self.blocks.len()
        } else if self.arity() < 2 {
            usize::from(!self.terms.is_empty())
        } else {
            self.terms.len()
        };
        RankBounds {
            schmidt_upper: None,
            partition_upper: Some(partition),
            derivative_bound: match self.origin {
                FormOrigin::Derivative { m, schmidt_upper } => {
                    Some(schmidt_upper as u64 * (1u64 << m.min(63)))
                }
                _ => None,
            },
        }
    }

    /// Per-slot value tables: `tables[i][t][x]` is the slot-`i` form of term
    /// `t` at the element of code `x`.
    fn tables(&self) -> Vec<Vec<Vec<Fe>>> {
        let f = &self.field;
        let q = f.order();
        self.domains
            .iter()
            .enumerate()
            .map(|(i, &n)| {
                let size = (q as u64).pow(n as u32);
                self.terms
                    .iter()
                    .map(|t| {
                        (0..size)
                            .map(|c| t.slots[i].dot(Polynomial::from_code(c, q).coeffs(), f))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    fn eval_codes(&self, tables: &[Vec<Vec<Fe>>], codes: &[u64]) -> Fe {
        let f = &self.field;
        let mut acc = Fe::ZERO;
        for (t, term) in self.terms.iter().enumerate() {
            let mut v = term.coeff;
            for (i, &c) in codes.iter().enumerate() {
                v = f.mul(v, tables[i][t][c as usize]);
                if v.is_zero() {
                    break;
                }
            }
            acc = f.add(acc, v);
        }
        acc
    }

    /// `E_{x} alpha_1(Q(x))` over all slot tuples, or over seeded samples.
    pub fn bias(&self, mode: BiasMode, budget: u128) -> Result<Bias> {
        let f = &self.field;
        let q = f.order();
        let p = f.characteristic();
        let sizes: Vec<u64> = self
            .domains
            .iter()
            .map(|&n| guard("form slot domain", checked_power(q, n), budget))
            .collect::<Result<_>>()?;
        let tables = self.tables();
        let roots: Vec<Complex64> = (0..p as u64)
            .map(|k| math::root_of_unity(k, p as u64))
            .collect();
        match mode {
            BiasMode::Exhaustive => {
                let total = sizes
                    .iter()
                    .try_fold(1u128, |acc, &s| acc.checked_mul(s as u128));
                let total = guard("exhaustive bias", total, budget)?;
                let m = self.arity();
                let hist = histogram_indexed(
                    total,
                    p as usize,
                    || vec![0u64; m],
                    |codes, mut idx, h| {
                        for (slot, &s) in codes.iter_mut().zip(&sizes).rev() {
                            *slot = idx % s;
                            idx /= s;
                        }
                        h[f.trace(self.eval_codes(&tables, codes)) as usize] += 1;
                        Ok(())
                    },
                )?;
                let mean = hist
                    .iter()
                    .zip(&roots)
                    .fold(Complex64::new(0.0, 0.0), |acc, (&c, &w)| acc + w * c as f64)
                    / total as f64;
                Ok(Bias {
                    mean,
                    stderr: None,
                    samples: total,
                })
            }
            BiasMode::Sampled { samples, seed } => {
                if samples == 0 {
                    return Err(Error::InvalidArgument(
                        "sample count must be positive".into(),
                    ));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut codes = vec![0u64; self.arity()];
                let mut hist = vec![0u64; p as usize];
                for _ in 0..samples {
                    for (c, &s) in codes.iter_mut().zip(&sizes) {
                        *c = rng.random_range(0..s);
                    }
                    hist[f.trace(self.eval_codes(&tables, &codes)) as usize] += 1;
                }
                let n = samples as f64;
                let mean = hist
                    .iter()
                    .zip(&roots)
                    .fold(Complex64::new(0.0, 0.0), |acc, (&c, &w)| acc + w * c as f64)
                    / n;
                let var = hist
                    .iter()
                    .zip(&roots)
                    .map(|(&c, &w)| c as f64 * (w - mean).norm_sqr())
                    .sum::<f64>()
                    / (n - 1.0).max(1.0);
                Ok(Bias {
                    mean,
                    stderr: Some(math::sqrt(var / n)),
                    samples,
                })
            }
        }
    }
}
