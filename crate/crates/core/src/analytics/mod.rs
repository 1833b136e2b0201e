//! Correlations, norms, distances and the other exhaustive statistics.
//!
//! Sums over `G_n` are folded with [`crate::reduce`], so every result is
//! independent of the worker count.

pub mod correlate;
pub mod gowers;
pub mod katai;
pub mod primes;

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{CodeSpace, Factorizer, Fe, Field, Polynomial};
use crate::characters::HayesCharacter;
use crate::error::Result;
use crate::forms::PolynomialPhase;
use crate::math;
use crate::multiplicative::MultiplicativeFunction;

pub use correlate::{average, correlate, linear_character_sum, CharacterSum, Correlation, Domain};
pub use gowers::{
    ap_correlation, fourier_transform, gowers_norm, u2_fourier, ApCorrelation, GnFunction,
};
pub use katai::{katai_statistic, r_bias_statistic, KataiNormalization, KataiStatistic, PairSet};
pub use primes::{
    halasz_product, mean_value, min_distance_over_hayes, pretentious_distance, turan_kubilius,
    Halasz, MeanDomain, MinDistance, TuranKubilius, HALASZ_TAIL,
};

/// A complex-valued function on polynomials.
pub trait TestFunction: Sync {
    fn value(&self, g: &Polynomial) -> Result<Complex64>;
}

/// `g -> alpha_1(P(g)) = exp(2 pi i Tr(P(g)) / p)`.
#[derive(Clone, Copy, Debug)]
pub struct PhaseCharacter<'a>(pub &'a PolynomialPhase);

impl TestFunction for PhaseCharacter<'_> {
    fn value(&self, g: &Polynomial) -> Result<Complex64> {
        let f = self.0.field();
        let t = f.trace(self.0.eval(g)?);
        Ok(math::root_of_unity(t as u64, f.characteristic() as u64))
    }
}

/// Extended by zero at the zero polynomial.
impl TestFunction for HayesCharacter {
    fn value(&self, g: &Polynomial) -> Result<Complex64> {
        if g.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(self.eval(g)?.to_complex())
    }
}

/// A multiplicative function viewed as a test function.
#[derive(Clone, Copy, Debug)]
pub struct Multiplicative<'a> {
    pub f: &'a MultiplicativeFunction,
    pub fz: &'a Factorizer,
}

impl TestFunction for Multiplicative<'_> {
    fn value(&self, g: &Polynomial) -> Result<Complex64> {
        Ok(self.f.eval(g, self.fz)?.to_complex())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Constant(pub Complex64);

impl TestFunction for Constant {
    fn value(&self, _: &Polynomial) -> Result<Complex64> {
        Ok(self.0)
    }
}

/// A sequence periodic modulo `modulus`, given by its values on residue codes.
#[derive(Clone, Debug)]
pub struct Periodic {
    field: Field,
    modulus: Polynomial,
    values: Vec<Complex64>,
}

impl Periodic {
    /// `values[c]` is the value on the residue with code `c`; there must be
    /// `q^{deg modulus}` of them.
    pub fn new(field: &Field, modulus: Polynomial, values: Vec<Complex64>) -> Result<Self> {
        let d = modulus
            .degree()
            .finite()
            .ok_or(crate::Error::ZeroPolynomial)?;
        let expected = (field.order() as u64).pow(d as u32);
        if values.len() as u64 != expected {
            return Err(crate::Error::InvalidArgument(alloc::format!(
                "expected {expected} residue values, got {}",
                values.len()
            )));
        }
        Ok(Periodic {
            field: field.clone(),
            modulus,
            values,
        })
    }
}

impl TestFunction for Periodic {
    fn value(&self, g: &Polynomial) -> Result<Complex64> {
        let r = g.rem(&self.modulus, &self.field)?;
        Ok(self.values[r.code(self.field.order()).expect("residue fits") as usize])
    }
}

/// `g -> F(P_1(g), ..., P_r(g))`.
pub struct Composite<'a, F> {
    pub phases: &'a [PolynomialPhase],
    pub f: F,
}

impl<F> TestFunction for Composite<'_, F>
where
    F: Fn(&[Fe]) -> Complex64 + Sync,
{
    fn value(&self, g: &Polynomial) -> Result<Complex64> {
        let vals = self
            .phases
            .iter()
            .map(|p| p.eval(g))
            .collect::<Result<Vec<_>>>()?;
        Ok((self.f)(&vals))
    }
}

/// Any closure.
pub struct FnTest<F>(pub F);

impl<F> TestFunction for FnTest<F>
where
    F: Fn(&Polynomial) -> Result<Complex64> + Sync,
{
    fn value(&self, g: &Polynomial) -> Result<Complex64> {
        (self.0)(g)
    }
}

/// Random 1-bounded values: uniform in the closed unit disk.
pub fn random_bounded_values(count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = math::sqrt(rng.random::<f64>());
            r * math::cis_turn(rng.random::<f64>())
        })
        .collect()
}

/// Random signs.
pub fn random_sign_values(count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Complex64::new(if rng.random::<bool>() { 1.0 } else { -1.0 }, 0.0))
        .collect()
}

pub(crate) fn tabulate(space: &CodeSpace, t: &dyn TestFunction) -> Result<Vec<Complex64>> {
    (0..space.size())
        .map(|c| t.value(&space.polynomial(c)))
        .collect()
}
