//! Gowers norms on `G_n`, the `U^2` Fourier identity and progression
//! averages.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::TestFunction;
use crate::algebra::enumerate::{checked_power, guard};
use crate::algebra::{CodeSpace, Fe, Field};
use crate::error::{Error, Result};
use crate::math;
use crate::reduce::{pairwise_sum, sum_indexed};

/// Largest addition table (in entries) built to speed up shifts.
const ADD_TABLE_LIMIT: u64 = 1 << 24;

/// A complex function on `G_n`, tabulated by code.
#[derive(Clone, Debug)]
pub struct GnFunction {
    space: CodeSpace,
    values: Vec<Complex64>,
}

impl GnFunction {
    pub fn new(space: CodeSpace, values: Vec<Complex64>) -> Result<Self> {
        if values.len() as u64 != space.size() {
            return Err(Error::InvalidArgument(alloc::format!(
                "{} values for a domain of size {}",
                values.len(),
                space.size()
            )));
        }
        Ok(GnFunction { space, values })
    }

    pub fn from_test(space: CodeSpace, t: &dyn TestFunction) -> Result<Self> {
        let values = super::tabulate(&space, t)?;
        Ok(GnFunction { space, values })
    }

    pub fn constant(space: CodeSpace, c: Complex64) -> Self {
        let values = vec![c; space.size() as usize];
        GnFunction { space, values }
    }

    /// Values uniform in the unit disk.
    pub fn random_bounded(space: CodeSpace, seed: u64) -> Self {
        let values = super::random_bounded_values(space.size() as usize, seed);
        GnFunction { space, values }
    }

    pub fn random_signs(space: CodeSpace, seed: u64) -> Self {
        let values = super::random_sign_values(space.size() as usize, seed);
        GnFunction { space, values }
    }

    pub fn space(&self) -> &CodeSpace {
        &self.space
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn mean(&self) -> Complex64 {
        pairwise_sum(&self.values) / self.values.len() as f64
    }
}

enum Adder<'a> {
    Table(Vec<u32>, usize),
    Space(&'a CodeSpace),
}

impl<'a> Adder<'a> {
    fn new(space: &'a CodeSpace) -> Self {
        match space.addition_table(ADD_TABLE_LIMIT) {
            Some(t) => Adder::Table(t, space.size() as usize),
            None => Adder::Space(space),
        }
    }

    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        match self {
            Adder::Table(t, n) => t[a * n + b] as usize,
            Adder::Space(s) => s.add(a as u64, b as u64) as usize,
        }
    }
}

/// `||f||_{U^k}^{2^k}` by `||f||^{2^k} = E_h ||Delta_h f||^{2^{k-1}}` with
/// `Delta_h f(x) = f(x + h) conj f(x)`.
fn gowers_power(f: &[Complex64], k: u32, adder: &Adder) -> Complex64 {
    let n = f.len();
    if k == 1 {
        let m = pairwise_sum(f) / n as f64;
        return Complex64::new(m.norm_sqr(), 0.0);
    }
    let mut d = vec![Complex64::new(0.0, 0.0); n];
    let parts: Vec<Complex64> = (0..n)
        .map(|h| {
            for (x, slot) in d.iter_mut().enumerate() {
                *slot = f[adder.add(x, h)] * f[x].conj();
            }
            gowers_power(&d, k - 1, adder)
        })
        .collect();
    pairwise_sum(&parts) / n as f64
}

/// The `U^k` norm (`k >= 1`) by derivative recursion, costing `q^{nk}`
/// elementary steps.
pub fn gowers_norm(f: &GnFunction, k: u32, budget: u128) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroDegree);
    }
    let n = f.space.dimension();
    let q = f.space.field().order();
    guard(
        "Gowers norm",
        checked_power(q, n).and_then(|s| s.checked_pow(k)),
        budget,
    )?;
    let adder = Adder::new(&f.space);
    let power = if k == 1 {
        gowers_power(&f.values, 1, &adder)
    } else {
        let size = f.values.len();
        sum_indexed(
            size as u64,
            || vec![Complex64::new(0.0, 0.0); size],
            |d, h| {
                for (x, slot) in d.iter_mut().enumerate() {
                    *slot = f.values[adder.add(x, h as usize)] * f.values[x].conj();
                }
                Ok(gowers_power(d, k - 1, &adder))
            },
        )? / size as f64
    };
    let p = power.re.max(0.0);
    Ok(math::pow(p, 1.0 / (1u64 << k) as f64))
}

/// `f^(xi) = E_x f(x) conj(alpha_1(<x, xi>))` for every `xi`, where
/// `<x, xi> = sum_j x_j xi_j`. Computed one coordinate axis at a time.
pub fn fourier_transform(f: &GnFunction, budget: u128) -> Result<Vec<Complex64>> {
    let field: &Field = f.space.field();
    let q = field.order() as usize;
    let n = f.space.dimension();
    let size = f.values.len();
    guard(
        "Fourier transform",
        (size as u128).checked_mul((q * n.max(1)) as u128),
        budget,
    )?;
    let p = field.characteristic() as u64;
    let kernel: Vec<Complex64> = (0..q * q)
        .map(|st| {
            let (s, t) = (Fe((st / q) as u32), Fe((st % q) as u32));
            let k = field.trace(field.mul(s, t)) as u64;
            math::root_of_unity((p - k) % p, p)
        })
        .collect();
    let mut a = f.values.clone();
    let mut buf = vec![Complex64::new(0.0, 0.0); q];
    let mut stride = 1usize;
    for _ in 0..n {
        for base in 0..size {
            if (base / stride) % q != 0 {
                continue;
            }
            for (t, slot) in buf.iter_mut().enumerate() {
                *slot = a[base + t * stride];
            }
            for s in 0..q {
                let row = &kernel[s * q..(s + 1) * q];
                let mut acc = Complex64::new(0.0, 0.0);
                for (w, v) in row.iter().zip(&buf) {
                    acc += w * v;
                }
                a[base + s * stride] = acc;
            }
        }
        stride *= q;
    }
    let scale = 1.0 / size as f64;
    for v in a.iter_mut() {
        *v *= scale;
    }
    Ok(a)
}

/// `(sum_xi |f^(xi)|^4)^{1/4}`, equal to the `U^2` norm.
pub fn u2_fourier(f: &GnFunction, budget: u128) -> Result<f64> {
    let hat = fourier_transform(f, budget)?;
    let fourth: Vec<f64> = hat.iter().map(|z| z.norm_sqr() * z.norm_sqr()).collect();
    Ok(math::sqrt(math::sqrt(pairwise_sum(&fourth))))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApCorrelation {
    /// `E_{x,y} prod_j f_j(x + (j-1) y)`.
    pub mean: Complex64,
    /// `||f_k||_{U^{k-1}}`.
    pub bound: f64,
    /// `|mean| <= bound + 1e-9`.
    pub holds: bool,
}

/// Tolerance of the progression inequality check.
pub const AP_SLACK: f64 = 1e-9;

/// Progression average of `f_1, ..., f_k` on a common `G_n`, `2 <= k < p`.
pub fn ap_correlation(fs: &[&GnFunction], budget: u128) -> Result<ApCorrelation> {
    let k = fs.len();
    let space = fs
        .first()
        .map(|f| &f.space)
        .ok_or_else(|| Error::InvalidArgument("no functions".into()))?;
    if k < 2 {
        return Err(Error::InvalidArgument("progressions need k >= 2".into()));
    }
    let field = space.field();
    let p = field.characteristic();
    if k as u64 >= p as u64 {
        return Err(Error::ProgressionTooLong { k, p });
    }
    if fs
        .iter()
        .any(|f| f.space.field() != field || f.space.dimension() != space.dimension())
    {
        return Err(Error::SlotDomainMismatch);
    }
    let size = space.size();
    guard(
        "progression average",
        (size as u128).checked_mul(size as u128 * k as u128),
        budget,
    )?;
    let adder = Adder::new(space);
    let steps: Vec<Fe> = (0..k).map(|j| field.from_int(j as i64)).collect();
    let sum: Complex64 = sum_indexed(
        size,
        || vec![0usize; k],
        |shift, y| {
            for (s, &c) in shift.iter_mut().zip(&steps) {
                *s = space.scale(c, y) as usize;
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for x in 0..size as usize {
                let mut v = Complex64::new(1.0, 0.0);
                for (f, &s) in fs.iter().zip(shift.iter()) {
                    v *= f.values[adder.add(x, s)];
                }
                acc += v;
            }
            Ok(acc)
        },
    )?;
    let mean = sum / (size as f64 * size as f64);
    let bound = gowers_norm(fs[k - 1], (k - 1) as u32, budget)?;
    Ok(ApCorrelation {
        mean,
        bound,
        holds: mean.norm() <= bound + AP_SLACK,
    })
}
