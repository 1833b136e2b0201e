//! The Katai double sum and the derivative-form bias statistic.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::TestFunction;
use crate::algebra::enumerate::{checked_power, guard};
use crate::algebra::{CodeSpace, Factorizer, Polynomial};
use crate::error::{Error, Result};
use crate::forms::{Bias, BiasMode, MultilinearForm, PolynomialPhase};
use crate::math;
use crate::reduce::{map_blocks, pairwise_sum};

/// Which polynomials the pairs `(a, b)` range over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PairSet {
    /// Monic irreducibles of degree `k` or `k + 1`.
    #[default]
    Pk,
    /// Nonzero polynomials of degree at most `k`.
    Gk1,
}

impl PairSet {
    pub fn name(self) -> &'static str {
        match self {
            PairSet::Pk => "P_k",
            PairSet::Gk1 => "G_k+1",
        }
    }

    pub fn elements(self, fz: &Factorizer, k: usize, budget: u128) -> Result<Vec<Polynomial>> {
        match self {
            PairSet::Pk => crate::algebra::enumerate::pk(fz, k),
            PairSet::Gk1 => {
                let q = fz.field().order();
                let size = guard("pair set", checked_power(q, k + 1), budget)?;
                Ok((1..size).map(|c| Polynomial::from_code(c, q)).collect())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum KataiNormalization {
    /// Divide the double sum by `|S|^2 q^{n-k}`.
    #[default]
    Global,
    /// Divide each inner sum by its own length, then average over pairs.
    PerPair,
}

impl KataiNormalization {
    pub fn name(self) -> &'static str {
        match self {
            KataiNormalization::Global => "global",
            KataiNormalization::PerPair => "per_pair",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KataiStatistic {
    pub value: f64,
    /// Contribution of the pairs `a = b` alone.
    pub diagonal: f64,
    pub set_size: usize,
}

/// `sum_{a,b in S} |sum_{g in G_m} f(ag) conj f(bg)|`, `m = min(n - deg a, n - deg b)`,
/// normalized as selected.
pub fn katai_statistic(
    f: &dyn TestFunction,
    fz: &Factorizer,
    n: usize,
    k: usize,
    pair_set: PairSet,
    normalization: KataiNormalization,
    budget: u128,
) -> Result<KataiStatistic> {
    let field = fz.field();
    let q = field.order();
    let set = pair_set.elements(fz, k, budget)?;
    if set.is_empty() {
        return Err(Error::InvalidArgument("empty pair set".into()));
    }
    let top = set
        .iter()
        .filter_map(|a| a.degree().finite())
        .max()
        .unwrap_or(0);
    if top > n {
        return Err(Error::DegreeMismatch(alloc::format!(
            "pair set reaches degree {top} above n = {n}"
        )));
    }
    let space = CodeSpace::new(field, n, budget)?;
    let s = set.len();
    let work =
        (s as u128 * s as u128).saturating_mul(checked_power(q, n - k.min(n)).unwrap_or(u128::MAX));
    guard("Katai double sum", Some(work), budget)?;
    let table = super::tabulate(&space, f)?;
    // codes of a*g for g in G_{n - deg a}
    let products: Vec<Vec<u32>> = set
        .iter()
        .map(|a| {
            let len = (q as u64).pow((n - a.degree().finite().unwrap()) as u32);
            (0..len)
                .map(|c| {
                    let g = Polynomial::from_code(c, q);
                    a.mul(&g, field).code(q).expect("fits") as u32
                })
                .collect()
        })
        .collect();
    let pairs = (s * s) as u64;
    let terms: Vec<(f64, bool)> = map_blocks(
        pairs,
        || (),
        |_, range| {
            Ok(range
                .map(|i| {
                    let (ia, ib) = ((i / s as u64) as usize, (i % s as u64) as usize);
                    let len = products[ia].len().min(products[ib].len());
                    let inner: Vec<Complex64> = (0..len)
                        .map(|g| {
                            table[products[ia][g] as usize] * table[products[ib][g] as usize].conj()
                        })
                        .collect();
                    let v = pairwise_sum(&inner).norm();
                    let v = match normalization {
                        KataiNormalization::Global => v,
                        KataiNormalization::PerPair => v / len as f64,
                    };
                    (v, ia == ib)
                })
                .collect::<Vec<_>>())
        },
    )?
    .into_iter()
    .flatten()
    .collect();
    let denom = match normalization {
        KataiNormalization::Global => (s * s) as f64 * math::pow(q as f64, n as f64 - k as f64),
        KataiNormalization::PerPair => (s * s) as f64,
    };
    let all: Vec<f64> = terms.iter().map(|t| t.0).collect();
    let diag: Vec<f64> = terms.iter().filter(|t| t.1).map(|t| t.0).collect();
    Ok(KataiStatistic {
        value: pairwise_sum(&all) / denom,
        diagonal: pairwise_sum(&diag) / denom,
        set_size: s,
    })
}

/// `E_{a,b} E_{g in G_{n-k}^m} alpha_1(d^mP(ag_1, ..., ag_m) - d^mP(bg_1, ..., bg_m))`
/// with `m = deg P`. Exhaustive when `|S|^2 q^{m(n-k)}` fits the budget,
/// otherwise sampled if `mode` allows it.
pub fn r_bias_statistic(
    phase: &PolynomialPhase,
    fz: &Factorizer,
    n: usize,
    k: usize,
    base: PairSet,
    mode: BiasMode,
    budget: u128,
) -> Result<Bias> {
    let field = phase.field();
    let q = field.order();
    let m = phase.degree();
    if k > n {
        return Err(Error::InvalidArgument("k must not exceed n".into()));
    }
    let d = phase.derivative_form(m)?;
    let set = base.elements(fz, k, budget)?;
    let s = set.len() as u128;
    let inner = checked_power(q, n - k).and_then(|x| x.checked_pow(m as u32));
    let total = inner.and_then(|x| x.checked_mul(s * s));
    let pulled: Vec<MultilinearForm> = set
        .iter()
        .map(|a| d.pullback_by(a, n - k))
        .collect::<Result<_>>()?;
    let exhaustive = matches!(mode, BiasMode::Exhaustive) || total.is_some_and(|t| t <= budget);
    if exhaustive {
        let count = guard("r-bias statistic", total, budget)?;
        let mut means = Vec::with_capacity((s * s) as usize);
        for qa in &pulled {
            for qb in &pulled {
                means.push(qa.sub(qb)?.bias(BiasMode::Exhaustive, budget)?.mean);
            }
        }
        return Ok(Bias {
            mean: pairwise_sum(&means) / means.len() as f64,
            stderr: None,
            samples: count,
        });
    }
    let BiasMode::Sampled { samples, seed } = mode else {
        unreachable!()
    };
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least two samples".into()));
    }
    let p = field.characteristic() as u64;
    let g_size = (q as u64).pow((n - k) as u32);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hist = alloc::vec![0u64; p as usize];
    let mut xs = alloc::vec![Polynomial::zero(); m];
    for _ in 0..samples {
        let a = rng.random_range(0..set.len());
        let b = rng.random_range(0..set.len());
        for x in xs.iter_mut() {
            *x = Polynomial::from_code(rng.random_range(0..g_size), q);
        }
        let v = field.sub(pulled[a].eval(&xs)?, pulled[b].eval(&xs)?);
        hist[field.trace(v) as usize] += 1;
    }
    let roots: Vec<Complex64> = (0..p).map(|j| math::root_of_unity(j, p)).collect();
    let nn = samples as f64;
    let mean = hist
        .iter()
        .zip(&roots)
        .fold(Complex64::new(0.0, 0.0), |acc, (&c, &w)| acc + w * c as f64)
        / nn;
    let var = hist
        .iter()
        .zip(&roots)
        .map(|(&c, &w)| c as f64 * (w - mean).norm_sqr())
        .sum::<f64>()
        / (nn - 1.0);
    Ok(Bias {
        mean,
        stderr: Some(math::sqrt(var / nn)),
        samples,
    })
}
