//! Irreducible polynomials: Rabin's test, the necklace count, a sieved table
//! of monic irreducibles and factorization by trial division against it.

use alloc::vec;
use alloc::vec::Vec;

use super::field::{Fe, Field};
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Largest `q^d` for which [`IrreducibleTable`] will sieve degree `d`.
pub const MAX_SIEVE_SIZE: u64 = 1 << 24;

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Integer Möbius function.
pub fn moebius_int(n: u64) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducible polynomials of degree `d` over `F_q`:
/// `N_q(d) = (1/d) sum_{e | d} mu(e) q^{d/e}`.
pub fn irreducible_count(q: u32, d: usize) -> Result<u64> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut total: i128 = 0;
    for e in (1..=d).filter(|e| d % e == 0) {
        let mu = moebius_int(e as u64) as i128;
        if mu == 0 {
            continue;
        }
        let power = (q as i128)
            .checked_pow((d / e) as u32)
            .ok_or(Error::Overflow("irreducible count"))?;
        total += mu * power;
    }
    debug_assert_eq!(total % d as i128, 0);
    u64::try_from(total / d as i128).map_err(|_| Error::Overflow("irreducible count"))
}

/// Rabin's irreducibility test: a polynomial `g` of degree `d >= 1` is
/// irreducible iff `x^{q^d} = x mod g` and `gcd(x^{q^{d/l}} - x, g) = 1` for
/// every prime `l | d`.
pub fn is_irreducible(g: &Polynomial, f: &Field) -> bool {
    let Some(d) = g.degree().finite() else {
        return false;
    };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let g = g.monic(f);
    let q = f.order() as u64;
    let x = Polynomial::x();
    // frob[i] = x^{q^i} mod g
    let mut frob = Vec::with_capacity(d + 1);
    frob.push(x.rem(&g, f).unwrap());
    for i in 1..=d {
        let next = frob[i - 1].pow_mod(q, &g, f).unwrap();
        frob.push(next);
    }
    if frob[d] != x.rem(&g, f).unwrap() {
        return false;
    }
    prime_factors(d as u64).into_iter().all(|l| {
        let h = frob[d / l as usize].sub(&x, f);
        h.gcd(&g, f) == Polynomial::one()
    })
}

/// Monic irreducible polynomials of every degree up to a bound, sorted by
/// code within each degree.
#[derive(Clone, Debug)]
pub struct IrreducibleTable {
    max_degree: usize,
    by_degree: Vec<Vec<Polynomial>>,
}

impl IrreducibleTable {
    /// Sieves all monic irreducibles of degree `1..=max_degree`: a monic
    /// polynomial of degree `d` is composite iff it is a multiple of an
    /// irreducible of degree at most `d/2`, so every such product is marked.
    pub fn new(field: &Field, max_degree: usize) -> Result<Self> {
        let q = field.order() as u64;
        let mut by_degree: Vec<Vec<Polynomial>> = vec![Vec::new()];
        for d in 1..=max_degree {
            let size = q.checked_pow(d as u32).unwrap_or(u64::MAX);
            if size > MAX_SIEVE_SIZE {
                return Err(Error::BudgetExceeded {
                    what: "irreducible sieve",
                    requested: size as u128,
                    budget: MAX_SIEVE_SIZE as u128,
                });
            }
            let list = sieve_degree(field, d, &by_degree);
            by_degree.push(list);
        }
        Ok(IrreducibleTable {
            max_degree,
            by_degree,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Monic irreducibles of exactly degree `d` (empty for `d = 0` or beyond
    /// the bound).
    pub fn of_degree(&self, d: usize) -> &[Polynomial] {
        self.by_degree.get(d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// All tabulated irreducibles with degree in `low..=high`, by degree then code.
    pub fn in_degrees(&self, low: usize, high: usize) -> impl Iterator<Item = &Polynomial> {
        (low.max(1)..=high.min(self.max_degree)).flat_map(move |d| self.by_degree[d].iter())
    }

    pub fn count(&self, d: usize) -> usize {
        self.of_degree(d).len()
    }
}

fn sieve_degree(f: &Field, d: usize, lower: &[Vec<Polynomial>]) -> Vec<Polynomial> {
    let q = f.order() as u64;
    let size = q.pow(d as u32) as usize;
    let mut composite = vec![false; size];
    let mut other = vec![Fe::ZERO; d + 1];
    let mut prod = vec![Fe::ZERO; d + 1];
    for (e, primes) in lower.iter().enumerate().take(d / 2 + 1).skip(1) {
        let cofactor_count = q.pow((d - e) as u32);
        for p in primes {
            let pc = p.coeffs();
            for code in 0..cofactor_count {
                // monic cofactor of degree d - e
                let mut c = code;
                for slot in other.iter_mut().take(d - e) {
                    *slot = Fe((c % q) as u32);
                    c /= q;
                }
                other[d - e] = Fe::ONE;
                for slot in prod.iter_mut() {
                    *slot = Fe::ZERO;
                }
                for (i, &a) in pc.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, &b) in other[..=d - e].iter().enumerate() {
                        prod[i + j] = f.add(prod[i + j], f.mul(a, b));
                    }
                }
                let idx = prod[..d]
                    .iter()
                    .rev()
                    .fold(0u64, |acc, c| acc * q + c.index() as u64);
                composite[idx as usize] = true;
            }
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(code, _)| Polynomial::monic_from_code(code as u64, d, q as u32))
        .collect()
}

/// `g = unit * prod p_i^{k_i}` with distinct monic irreducible `p_i`, sorted
/// by degree then code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self, f: &Field) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(self.unit), |acc, (p, k)| {
                (0..*k).fold(acc, |a, _| a.mul(p, f))
            })
    }
}

/// A field together with its irreducible table up to a degree bound.
/// Polynomials of degree above the bound are refused.
#[derive(Clone, Debug)]
pub struct Factorizer {
    field: Field,
    table: IrreducibleTable,
}

impl Factorizer {
    pub fn new(field: &Field, max_degree: usize) -> Result<Self> {
        Ok(Factorizer {
            field: field.clone(),
            table: IrreducibleTable::new(field, max_degree)?,
        })
    }

    /// Default bound: 12 for `q = 2`, 8 for `q = 3`, otherwise the largest
    /// `d` with `q^d <= 10^4`.
    pub fn default_bound(q: u32) -> usize {
        match q {
            2 => 12,
            3 => 8,
            _ => {
                let mut d = 1;
                while (q as u64).pow(d as u32 + 1) <= 10_000 {
                    d += 1;
                }
                d
            }
        }
    }

    pub fn with_default_bound(field: &Field) -> Result<Self> {
        Self::new(field, Self::default_bound(field.order()))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn table(&self) -> &IrreducibleTable {
        &self.table
    }

    pub fn max_degree(&self) -> usize {
        self.table.max_degree
    }

    pub fn check_degree(&self, g: &Polynomial) -> Result<()> {
        match g.degree().finite() {
            Some(d) if d > self.table.max_degree => Err(Error::BeyondFactorBound {
                degree: d,
                bound: self.table.max_degree,
            }),
            _ => Ok(()),
        }
    }

    /// Trial division against the table, smallest degree first. Once the
    /// cofactor has degree below twice the next candidate degree it is
    /// irreducible.
    pub fn factor(&self, g: &Polynomial) -> Result<Factorization> {
        let f = &self.field;
        let unit = g.leading().ok_or(Error::ZeroPolynomial)?;
        self.check_degree(g)?;
        let mut m = g.monic(f);
        let mut factors = Vec::new();
        'degrees: for e in 1..=self.table.max_degree {
            for p in self.table.of_degree(e) {
                let deg_m = m.len() - 1;
                if 2 * e > deg_m {
                    break 'degrees;
                }
                let mut k = 0;
                loop {
                    let (quot, rem) = m.div_rem(p, f)?;
                    if !rem.is_zero() {
                        break;
                    }
                    m = quot;
                    k += 1;
                }
                if k > 0 {
                    factors.push((p.clone(), k));
                }
            }
        }
        if m.len() > 1 {
            factors.push((m, 1));
        }
        factors.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        Ok(Factorization { unit, factors })
    }

    /// Irreducibility via the table (or Rabin's test above half the bound).
    pub fn is_irreducible(&self, g: &Polynomial) -> Result<bool> {
        self.check_degree(g)?;
        let f = self.factor(g)?;
        Ok(f.factors.len() == 1 && f.factors[0].1 == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(f: &Field, c: &[u32]) -> Polynomial {
        Polynomial::from_indices(f, c).unwrap()
    }

    #[test]
    fn necklace_examples() {
        assert_eq!(irreducible_count(2, 3).unwrap(), 2);
        assert_eq!(irreducible_count(2, 4).unwrap(), 3);
        assert_eq!(irreducible_count(3, 2).unwrap(), 3);
        assert_eq!(irreducible_count(2, 0).unwrap_err(), Error::ZeroDegree);
    }

    #[test]
    fn rabin_agrees_with_sieve() {
        for (pr, r, dmax) in [(2, 1, 9), (3, 1, 6), (2, 2, 4), (5, 1, 4)] {
            let f = Field::new(pr, r).unwrap();
            let table = IrreducibleTable::new(&f, dmax).unwrap();
            let q = f.order();
            for d in 1..=dmax {
                let from_rabin: Vec<Polynomial> = (0..(q as u64).pow(d as u32))
                    .map(|c| Polynomial::monic_from_code(c, d, q))
                    .filter(|g| is_irreducible(g, &f))
                    .collect();
                assert_eq!(from_rabin, table.of_degree(d), "q={q} d={d}");
                assert_eq!(from_rabin.len() as u64, irreducible_count(q, d).unwrap());
            }
        }
    }

    #[test]
    fn factor_examples() {
        let f2 = Field::new(2, 1).unwrap();
        let fz = Factorizer::new(&f2, 8).unwrap();
        let fac = fz.factor(&p(&f2, &[1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(p(&f2, &[1, 1]), 2)]);

        let f3 = Field::new(3, 1).unwrap();
        let fz3 = Factorizer::new(&f3, 6).unwrap();
        assert!(fz3.is_irreducible(&p(&f3, &[1, 0, 1])).unwrap());
        let fac = fz3.factor(&Polynomial::constant(Fe(2))).unwrap();
        assert_eq!(fac.unit, Fe(2));
        assert!(fac.factors.is_empty());
        assert_eq!(
            fz3.factor(&Polynomial::zero()).unwrap_err(),
            Error::ZeroPolynomial
        );
        let big = Polynomial::monomial(Fe::ONE, 7);
        assert_eq!(
            fz3.factor(&big).unwrap_err(),
            Error::BeyondFactorBound {
                degree: 7,
                bound: 6
            }
        );
    }

    #[test]
    fn default_bounds() {
        assert_eq!(Factorizer::default_bound(2), 12);
        assert_eq!(Factorizer::default_bound(3), 8);
        assert_eq!(Factorizer::default_bound(5), 5);
    }
}
