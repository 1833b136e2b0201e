//! Statistics built from sums and products over irreducibles.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::algebra::enumerate::{checked_power, guard};
use crate::algebra::{irreducible_count, Factorizer, Polynomial};
use crate::characters::{
    DegreeTwist, DirichletCharacter, DirichletGroup, HayesCharacter, ShortIntervalGroup,
};
use crate::descriptor::{HayesDescriptor, Theta};
use crate::error::{Error, Result};
use crate::math;
use crate::multiplicative::{MemoEval, MultiplicativeFunction};
use crate::reduce::{map_blocks, pairwise_sum, sum_indexed};
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TuranKubilius {
    /// `A = sum_{W < deg p < H} q^{-deg p}`.
    pub a: f64,
    /// `sum_{g in G_n} |omega(g) - A|^2`.
    pub lhs: f64,
    /// `lhs / (A q^n)`.
    pub ratio: f64,
    pub primes: usize,
}

/// Variance of `omega(g) = #{p : W < deg p < H, p | g}` over `G_n`. The
/// zero polynomial is divisible by every window prime.
pub fn turan_kubilius(
    fz: &Factorizer,
    n: usize,
    w: usize,
    h: usize,
    budget: u128,
) -> Result<TuranKubilius> {
    if h <= w + 1 {
        return Err(Error::EmptyWindow { low: w, high: h });
    }
    if h - 1 > fz.max_degree() {
        return Err(Error::BeyondFactorBound {
            degree: h - 1,
            bound: fz.max_degree(),
        });
    }
    let field = fz.field();
    let q = field.order();
    let size = guard("Turan-Kubilius", checked_power(q, n), budget)?;
    let window: Vec<&Polynomial> = fz.table().in_degrees(w + 1, h - 1).collect();
    if window.is_empty() {
        return Err(Error::EmptyWindow { low: w, high: h });
    }
    let mut count = alloc::vec![0u16; size as usize];
    for p in &window {
        let d = p.degree().finite().unwrap();
        if d > n {
            count[0] += 1;
            continue;
        }
        for c in 0..(q as u64).pow((n - d) as u32) {
            let m = p.mul(&Polynomial::from_code(c, q), field);
            count[m.code(q).unwrap() as usize] += 1;
        }
    }
    let a_terms: Vec<f64> = window
        .iter()
        .map(|p| math::pow(q as f64, -(p.degree().finite().unwrap() as f64)))
        .collect();
    let a = pairwise_sum(&a_terms);
    let mut hist = alloc::vec![0u64; window.len() + 1];
    for &c in &count {
        hist[c as usize] += 1;
    }
    let parts: Vec<f64> = hist
        .iter()
        .enumerate()
        .map(|(c, &m)| m as f64 * (c as f64 - a) * (c as f64 - a))
        .collect();
    let lhs = pairwise_sum(&parts);
    Ok(TuranKubilius {
        a,
        lhs,
        ratio: lhs / (a * size as f64),
        primes: window.len(),
    })
}

fn prime_values(f: &MultiplicativeFunction, fz: &Factorizer, d: usize) -> Result<Vec<Complex64>> {
    if d > fz.max_degree() {
        return Err(Error::BeyondFactorBound {
            degree: d,
            bound: fz.max_degree(),
        });
    }
    fz.table()
        .of_degree(d)
        .iter()
        .map(|p| Ok(f.prime_power(p, 1, fz)?.to_complex()))
        .collect()
}

/// `D(f, g; N) = (sum_{low <= deg p <= N} q^{-deg p} (1 - Re f(p) conj g(p)))^{1/2}`.
/// Degrees where both functions are constant on irreducibles use the
/// necklace count and need no table.
pub fn pretentious_distance(
    f: &MultiplicativeFunction,
    g: &MultiplicativeFunction,
    fz: &Factorizer,
    n: usize,
    window_low: usize,
) -> Result<f64> {
    let q = fz.field().order();
    let mut parts = Vec::new();
    for d in window_low.max(1)..=n {
        let w = math::pow(q as f64, -(d as f64));
        match (f.degree_profile(d, 1), g.degree_profile(d, 1)) {
            (Some(a), Some(b)) => {
                let t = (1.0 - a.mul(b.conj()).to_complex().re).max(0.0);
                parts.push(irreducible_count(q, d)? as f64 * w * t);
            }
            _ => {
                let fv = prime_values(f, fz, d)?;
                let gv = prime_values(g, fz, d)?;
                let terms: Vec<f64> = fv
                    .iter()
                    .zip(&gv)
                    .map(|(a, b)| w * (1.0 - (a * b.conj()).re).max(0.0))
                    .collect();
                parts.push(pairwise_sum(&terms));
            }
        }
    }
    Ok(math::sqrt(pairwise_sum(&parts)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinDistance {
    /// `1 + distance`.
    pub m: f64,
    pub distance: f64,
    pub argmin: HayesDescriptor,
    /// Number of `(chi, xi, theta)` triples examined.
    pub candidates: u64,
}

/// Minimizes `D(f, chi xi e_theta; N)` over Dirichlet characters modulo 1
/// and every monic modulus of degree at most `modulus_degree_bound`, all
/// characters of `R_{length_bound}`, and `theta = j / grid`.
pub fn min_distance_over_hayes(
    f: &MultiplicativeFunction,
    fz: &Factorizer,
    n: usize,
    modulus_degree_bound: usize,
    length_bound: usize,
    grid: u64,
    budget: u128,
) -> Result<MinDistance> {
    if grid == 0 {
        return Err(Error::InvalidArgument(
            "theta grid needs at least one point".into(),
        ));
    }
    let field = fz.field();
    let q = field.order();
    if n > fz.max_degree() {
        return Err(Error::BeyondFactorBound {
            degree: n,
            bound: fz.max_degree(),
        });
    }
    let primes: Vec<&Polynomial> = fz.table().in_degrees(1, n).collect();
    let degs: Vec<usize> = primes
        .iter()
        .map(|p| p.degree().finite().unwrap())
        .collect();
    let fvals: Vec<Complex64> = primes
        .iter()
        .map(|p| Ok(f.prime_power(p, 1, fz)?.to_complex()))
        .collect::<Result<_>>()?;

    let mut chis: Vec<Option<DirichletCharacter>> = alloc::vec![None];
    for d in 1..=modulus_degree_bound {
        let count = guard("Dirichlet moduli", checked_power(q, d), budget)?;
        for code in 0..count {
            let g = Polynomial::monic_from_code(code, d, q);
            let group = DirichletGroup::new(field, &g)?;
            chis.extend(group.characters(budget)?.into_iter().map(Some));
        }
    }
    let xis = ShortIntervalGroup::new(field, length_bound)?.characters()?;
    let pairs = chis.len() as u128 * xis.len() as u128;
    guard(
        "Hayes minimization",
        pairs.checked_mul(primes.len() as u128 + grid as u128),
        budget,
    )?;
    let xi_vals: Vec<Vec<Value>> = xis
        .iter()
        .map(|xi| primes.iter().map(|p| xi.eval(p)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let chi_vals: Vec<Vec<Value>> = chis
        .iter()
        .map(|c| match c {
            Some(chi) => primes.iter().map(|p| chi.eval(p)).collect(),
            None => alloc::vec![Value::ONE; primes.len()],
        })
        .collect();
    let counts: Vec<f64> = (0..=n)
        .map(|d| degs.iter().filter(|&&e| e == d).count() as f64)
        .collect();
    let weights: Vec<f64> = (0..=n).map(|d| math::pow(q as f64, -(d as f64))).collect();

    // best (squared distance, theta index) per (chi, xi) pair, in order
    let nx = xis.len();
    let best: Vec<(f64, u64)> = map_blocks(
        pairs as u64,
        || (),
        |_, range| {
            Ok(range
                .map(|i| {
                    let (ic, ix) = ((i / nx as u64) as usize, (i % nx as u64) as usize);
                    let mut s = alloc::vec![Complex64::new(0.0, 0.0); n + 1];
                    for (t, &d) in degs.iter().enumerate() {
                        let h = chi_vals[ic][t].mul(xi_vals[ix][t]);
                        if !h.is_zero() {
                            s[d] += fvals[t] * h.conj().to_complex();
                        }
                    }
                    let mut arg = (f64::INFINITY, 0u64);
                    for j in 0..grid {
                        let parts: Vec<f64> = (1..=n)
                            .map(|d| {
                                let e = math::root_of_unity((grid - j) * d as u64 % grid, grid);
                                weights[d] * (counts[d] - (s[d] * e).re)
                            })
                            .collect();
                        let v = pairwise_sum(&parts).max(0.0);
                        if v < arg.0 {
                            arg = (v, j);
                        }
                    }
                    arg
                })
                .collect::<Vec<_>>())
        },
    )?
    .into_iter()
    .flatten()
    .collect();
    let (pos, &(d2, j)) = best
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0).then(a.0.cmp(&b.0)))
        .expect("at least the trivial triple");
    let (ic, ix) = (pos / nx, pos % nx);
    let mut h = HayesCharacter::trivial();
    if let Some(chi) = &chis[ic] {
        h = h.with_dirichlet(chi.clone());
    }
    h = h.with_short(xis[ix].clone());
    h = h.with_twist(DegreeTwist::rational(j as i64, grid)?);
    let mut argmin = h.descriptor();
    argmin.theta = Some(Theta::Rational {
        num: j as i64,
        den: grid,
    });
    let distance = math::sqrt(d2);
    Ok(MinDistance {
        m: 1.0 + distance,
        distance,
        argmin,
        candidates: pairs as u64 * grid,
    })
}

/// Cut-off for the prime-power tails of the Euler product.
pub const HALASZ_TAIL: f64 = 1e-15;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Halasz {
    pub value: Complex64,
    /// Largest prime-power exponent kept.
    pub max_power: u32,
}

/// `ln(1 + z)`, accurate for small `z`.
fn ln_1p(z: Complex64) -> Complex64 {
    if z.norm_sqr() < 1e-4 {
        let mut term = z;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..=9 {
            acc += term / k as f64;
            term *= -z;
        }
        acc
    } else {
        math::complex_ln(Complex64::new(1.0, 0.0) + z)
    }
}

/// `P(f, n) = prod_{deg p <= n} (1 - q^{-deg p}) sum_{k >= 0} f(p^k) q^{-k deg p}`.
/// For each degree `d` the series stops once `N_q(d) q^{-kd}` drops below
/// [`HALASZ_TAIL`], which bounds the neglected mass of the whole degree.
pub fn halasz_product(f: &MultiplicativeFunction, fz: &Factorizer, n: usize) -> Result<Halasz> {
    let q = fz.field().order();
    let mut log = Complex64::new(0.0, 0.0);
    let mut direct = Complex64::new(1.0, 0.0);
    let mut max_power = 0;
    for d in 1..=n {
        let count = irreducible_count(q, d)?;
        let w = math::pow(q as f64, -(d as f64));
        let mut kmax = 0u32;
        while count as f64 * math::pow(w, (kmax + 1) as f64) >= HALASZ_TAIL {
            kmax += 1;
        }
        max_power = max_power.max(kmax);
        let profile: Option<Vec<Value>> = (1..=kmax).map(|k| f.degree_profile(d, k)).collect();
        // local factor minus one:
        // sum_{k=1}^K (f(p^k) - f(p^{k-1})) w^k - f(p^K) w^{K+1}
        let deviation = |vals: &[Value]| {
            let mut prev = Complex64::new(1.0, 0.0);
            let mut s = Complex64::new(0.0, 0.0);
            for (k, v) in vals.iter().enumerate() {
                let c = v.to_complex();
                s += (c - prev) * math::pow(w, (k + 1) as f64);
                prev = c;
            }
            s - prev * math::pow(w, (vals.len() + 1) as f64)
        };
        match profile {
            Some(vals) => {
                let dev = deviation(&vals);
                if dev == Complex64::new(-1.0, 0.0) {
                    return Ok(Halasz {
                        value: Complex64::new(0.0, 0.0),
                        max_power,
                    });
                }
                log += ln_1p(dev) * count as f64;
            }
            None => {
                if d > fz.max_degree() {
                    return Err(Error::BeyondFactorBound {
                        degree: d,
                        bound: fz.max_degree(),
                    });
                }
                for p in fz.table().of_degree(d) {
                    let vals = (1..=kmax)
                        .map(|k| f.prime_power(p, k, fz))
                        .collect::<Result<Vec<_>>>()?;
                    direct *= Complex64::new(1.0, 0.0) + deviation(&vals);
                }
            }
        }
    }
    let value = direct * math::complex_exp(log);
    Ok(Halasz { value, max_power })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum MeanDomain {
    /// Monic polynomials of degree `n`.
    #[default]
    Monic,
    /// All polynomials of degree exactly `n`.
    All,
}

/// Average of `f` over the polynomials of degree `n` in the domain.
pub fn mean_value(
    f: &MultiplicativeFunction,
    fz: &Factorizer,
    n: usize,
    domain: MeanDomain,
    budget: u128,
) -> Result<Complex64> {
    let q = fz.field().order();
    let monic = guard("mean value", checked_power(q, n), budget)?;
    let size = match domain {
        MeanDomain::Monic => monic,
        MeanDomain::All => guard(
            "mean value",
            (monic as u128).checked_mul(q as u128 - 1),
            budget,
        )?,
    };
    let field = fz.field();
    let sum: Complex64 = sum_indexed(
        size,
        || MemoEval::new(f, fz),
        |memo, i| {
            let lead = crate::Fe((i / monic) as u32 + 1);
            let g = Polynomial::monic_from_code(i % monic, n, q);
            let g = if lead == crate::Fe::ONE {
                g
            } else {
                g.scale(lead, field)
            };
            Ok(memo.eval(&g)?.to_complex())
        },
    )?;
    Ok(sum / size as f64)
}
