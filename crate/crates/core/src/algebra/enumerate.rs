//! Deterministic enumeration of the polynomial sets the statistics range over.

use alloc::vec::Vec;

use super::irreducible::Factorizer;
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Which set to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolySet {
    /// `G_n`: all polynomials of degree at most `n - 1`, including zero.
    Gn(usize),
    /// Monic polynomials of degree exactly `n`.
    MonicOfDegree(usize),
    /// `P_k`: monic irreducibles of degree `k` or `k + 1`.
    Pk(usize),
}

pub(crate) fn checked_power(q: u32, n: usize) -> Option<u128> {
    (q as u128).checked_pow(n as u32)
}

pub(crate) fn guard(what: &'static str, requested: Option<u128>, budget: u128) -> Result<u64> {
    match requested {
        Some(r) if r <= budget && r <= u64::MAX as u128 => Ok(r as u64),
        Some(r) => Err(Error::BudgetExceeded {
            what,
            requested: r,
            budget,
        }),
        None => Err(Error::BudgetExceeded {
            what,
            requested: u128::MAX,
            budget,
        }),
    }
}

/// `G_n` in code order (`code = sum g_j q^j`).
pub fn gn(q: u32, n: usize, budget: u128) -> Result<impl Iterator<Item = Polynomial> + Clone> {
    let size = guard("G_n enumeration", checked_power(q, n), budget)?;
    Ok((0..size).map(move |c| Polynomial::from_code(c, q)))
}

/// Monic polynomials of degree `n` in code order of their lower coefficients.
pub fn monic_of_degree(
    q: u32,
    n: usize,
    budget: u128,
) -> Result<impl Iterator<Item = Polynomial> + Clone> {
    let size = guard("monic enumeration", checked_power(q, n), budget)?;
    Ok((0..size).map(move |c| Polynomial::monic_from_code(c, n, q)))
}

/// `P_k = {g irreducible monic : k <= deg g <= k + 1}`.
pub fn pk(fz: &Factorizer, k: usize) -> Result<Vec<Polynomial>> {
    if k == 0 {
        return Err(Error::ZeroDegree);
    }
    if k + 1 > fz.max_degree() {
        return Err(Error::BeyondFactorBound {
            degree: k + 1,
            bound: fz.max_degree(),
        });
    }
    Ok(fz.table().in_degrees(k, k + 1).cloned().collect())
}

/// Materializes any of the sets, refusing more than `budget` elements.
pub fn enumerate_sets(fz: &Factorizer, set: PolySet, budget: u128) -> Result<Vec<Polynomial>> {
    let q = fz.field().order();
    match set {
        PolySet::Gn(n) => Ok(gn(q, n, budget)?.collect()),
        PolySet::MonicOfDegree(n) => Ok(monic_of_degree(q, n, budget)?.collect()),
        PolySet::Pk(k) => pk(fz, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    #[test]
    fn sizes() {
        let f = Field::new(2, 1).unwrap();
        let fz = Factorizer::new(&f, 6).unwrap();
        assert_eq!(enumerate_sets(&fz, PolySet::Gn(3), 1000).unwrap().len(), 8);
        assert_eq!(
            enumerate_sets(&fz, PolySet::MonicOfDegree(0), 1000).unwrap(),
            alloc::vec![Polynomial::one()]
        );
        assert_eq!(enumerate_sets(&fz, PolySet::Pk(3), 1000).unwrap().len(), 5);
        assert!(matches!(
            enumerate_sets(&fz, PolySet::Gn(20), 1000),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(enumerate_sets(&fz, PolySet::Gn(3), 1000).unwrap()[0].is_zero());
    }
}
