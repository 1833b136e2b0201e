//! `E_{g} nu(g) t(g)` over `G_n` and exact linear character sums.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::TestFunction;
use crate::algebra::enumerate::{checked_power, guard};
use crate::algebra::{Factorizer, Field, LaurentTruncation, Polynomial};
use crate::error::{Error, Result};
use crate::math;
use crate::multiplicative::{MemoEval, MultiplicativeFunction};
use crate::reduce::{histogram_indexed, sum_indexed};

/// The part of `G_n` an average runs over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Domain {
    /// All of `G_n`, including 0.
    #[default]
    All,
    Nonzero,
    /// Monic polynomials of degree below `n`.
    Monic,
}

impl Domain {
    pub fn name(self) -> &'static str {
        match self {
            Domain::All => "all",
            Domain::Nonzero => "nonzero",
            Domain::Monic => "monic",
        }
    }

    pub fn contains(self, g: &Polynomial) -> bool {
        match self {
            Domain::All => true,
            Domain::Nonzero => !g.is_zero(),
            Domain::Monic => g.is_monic(),
        }
    }

    /// Number of elements of the domain inside `G_n`.
    pub fn size(self, q: u32, n: usize) -> u64 {
        let all = (q as u64).pow(n as u32);
        match self {
            Domain::All => all,
            Domain::Nonzero => all - 1,
            Domain::Monic => (all - 1) / (q as u64 - 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Correlation {
    pub n: usize,
    pub mean: Complex64,
    pub count: u64,
}

/// `E_{g in domain} nu(g) t(g)` over `G_n`, exhaustively.
pub fn correlate(
    nu: &MultiplicativeFunction,
    fz: &Factorizer,
    t: &dyn TestFunction,
    n: usize,
    domain: Domain,
    budget: u128,
) -> Result<Correlation> {
    let q = fz.field().order();
    let size = guard("correlation", checked_power(q, n), budget)?;
    let count = domain.size(q, n);
    if count == 0 {
        return Err(Error::InvalidArgument("empty domain".into()));
    }
    let sum: Complex64 = sum_indexed(
        size,
        || MemoEval::new(nu, fz),
        |memo, code| {
            let g = Polynomial::from_code(code, q);
            if !domain.contains(&g) {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let v = memo.eval(&g)?;
            if v.is_zero() {
                return Ok(Complex64::new(0.0, 0.0));
            }
            Ok(v.to_complex() * t.value(&g)?)
        },
    )?;
    Ok(Correlation {
        n,
        mean: sum / count as f64,
        count,
    })
}

/// `E_{g in domain} t(g)` over `G_n`, without a multiplicative weight.
pub fn average(
    field: &Field,
    t: &dyn TestFunction,
    n: usize,
    domain: Domain,
    budget: u128,
) -> Result<Correlation> {
    let q = field.order();
    let size = guard("average", checked_power(q, n), budget)?;
    let count = domain.size(q, n);
    if count == 0 {
        return Err(Error::InvalidArgument("empty domain".into()));
    }
    let sum: Complex64 = sum_indexed(
        size,
        || (),
        |_, code| {
            let g = Polynomial::from_code(code, q);
            if !domain.contains(&g) {
                return Ok(Complex64::new(0.0, 0.0));
            }
            t.value(&g)
        },
    )?;
    Ok(Correlation {
        n,
        mean: sum / count as f64,
        count,
    })
}

/// `sum_{g in G_n} alpha_1((beta g)_{-1})` as exact counts of each trace value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSum {
    pub p: u32,
    /// `counts[k]` is the number of `g` with `Tr((beta g)_{-1}) = k`.
    pub counts: Vec<u64>,
}

impl CharacterSum {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn value(&self) -> Complex64 {
        self.counts
            .iter()
            .enumerate()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, &c)| {
                acc + math::root_of_unity(k as u64, self.p as u64) * c as f64
            })
    }

    /// All trace values equally often: the sum is exactly 0.
    pub fn is_balanced(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] == w[1])
    }
}

pub fn linear_character_sum(
    field: &Field,
    beta: &LaurentTruncation,
    n: usize,
    budget: u128,
) -> Result<CharacterSum> {
    if beta.depth() < n {
        return Err(Error::DepthTooShallow {
            depth: beta.depth(),
            degree: n.saturating_sub(1),
        });
    }
    let q = field.order();
    let size = guard("linear character sum", checked_power(q, n), budget)?;
    let p = field.characteristic();
    let counts = histogram_indexed(
        size,
        p as usize,
        || (),
        |_, code, h| {
            let g = Polynomial::from_code(code, q);
            h[field.trace(beta.dot(g.coeffs(), field)) as usize] += 1;
            Ok(())
        },
    )?;
    Ok(CharacterSum { p, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::{Constant, PhaseCharacter};
    use crate::forms::PolynomialPhase;
    use crate::Fe;

    #[test]
    fn trivial_and_moebius() {
        let f = Field::prime(2).unwrap();
        let fz = Factorizer::with_default_bound(&f).unwrap();
        let one = MultiplicativeFunction::one();
        let c1 = Constant(Complex64::new(1.0, 0.0));
        let r = correlate(&one, &fz, &c1, 5, Domain::Nonzero, 1 << 20).unwrap();
        assert!((r.mean - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let mu = MultiplicativeFunction::moebius();
        let r = correlate(&mu, &fz, &c1, 5, Domain::All, 1 << 20).unwrap();
        assert!((r.mean.re + 1.0 / 32.0).abs() < 1e-15);
        assert_eq!(r.count, 32);
    }

    #[test]
    fn linear_phase_cancels() {
        let f = Field::prime(3).unwrap();
        let fz = Factorizer::with_default_bound(&f).unwrap();
        let beta = LaurentTruncation::new(alloc::vec![Fe(0), Fe(2), Fe(1), Fe(0)]).unwrap();
        let sum = linear_character_sum(&f, &beta, 4, 1 << 20).unwrap();
        assert!(sum.is_balanced());
        assert_eq!(sum.total(), 81);
        let p = PolynomialPhase::linear(&f, 4, beta).unwrap();
        let r = correlate(
            &MultiplicativeFunction::one(),
            &fz,
            &PhaseCharacter(&p),
            4,
            Domain::All,
            1 << 20,
        )
        .unwrap();
        // nu(0) = 0 removes the g = 0 term from the full sum
        assert!((r.mean + Complex64::new(1.0 / 81.0, 0.0)).norm() < 1e-12);
        let a = average(&f, &PhaseCharacter(&p), 4, Domain::All, 1 << 20).unwrap();
        assert!(a.mean.norm() < 1e-12);
    }

    #[test]
    fn domain_sizes() {
        assert_eq!(Domain::Monic.size(3, 3), 1 + 3 + 9);
        assert_eq!(Domain::Nonzero.size(2, 4), 15);
    }
}
