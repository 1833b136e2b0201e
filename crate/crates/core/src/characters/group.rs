//! Structure of a finite abelian group given by its multiplication rule.
//!
//! The decomposition repeatedly extracts an element of maximal order in the
//! quotient by the subgroup found so far and adjusts it so its order in the
//! group equals its quotient order. The cyclic factors produced this way
//! have orders `d_1, d_2, ...` with `d_{i+1} | d_i`. Every element then has a
//! unique exponent vector, and the characters are indexed by vectors
//! `a` with `0 <= a_i < d_i`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest group the decomposer accepts.
pub const MAX_GROUP_SIZE: usize = 100_000;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct AbelianGroup {
    size: usize,
    identity: usize,
    generators: Vec<usize>,
    orders: Vec<u64>,
    /// Row-major `size x rank` exponent vectors.
    logs: Vec<u64>,
}

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

/// Decomposes the group on `0..size` with the given identity and operation.
/// Inputs that fail closure, identity or invertibility are rejected.
pub fn decompose_abelian_group<F>(size: usize, identity: usize, op: F) -> Result<AbelianGroup>
where
    F: Fn(usize, usize) -> usize,
{
    if size == 0 || identity >= size {
        return Err(Error::NotAGroup(
            "empty universe or identity out of range".into(),
        ));
    }
    if size > MAX_GROUP_SIZE {
        return Err(Error::BudgetExceeded {
            what: "abelian group decomposition",
            requested: size as u128,
            budget: MAX_GROUP_SIZE as u128,
        });
    }
    let mul = |a: usize, b: usize| -> Result<usize> {
        let c = op(a, b);
        if c < size {
            Ok(c)
        } else {
            Err(Error::NotAGroup(format!("{a} * {b} leaves the universe")))
        }
    };
    let pow = |a: usize, mut e: u64| -> Result<usize> {
        let mut base = a;
        let mut acc = identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base)?;
            }
            base = mul(base, base)?;
            e >>= 1;
        }
        Ok(acc)
    };
    for a in 0..size {
        if mul(identity, a)? != a || mul(a, identity)? != a {
            return Err(Error::NotAGroup(format!(
                "{identity} is not an identity for {a}"
            )));
        }
    }
    // In a group of order N every element satisfies a^N = e; a monoid
    // element without inverse never returns to the identity.
    for a in 0..size {
        if pow(a, size as u64)? != identity {
            return Err(Error::NotAGroup(format!("element {a} has no inverse")));
        }
    }

    let mut member = vec![NONE; size];
    let mut elements = vec![identity];
    let mut logs: Vec<Vec<u64>> = vec![Vec::new()];
    member[identity] = 0;
    let mut generators = Vec::new();
    let mut orders: Vec<u64> = Vec::new();

    while elements.len() < size {
        let h = elements.len();
        if size % h != 0 {
            return Err(Error::NotAGroup(
                "subgroup order does not divide group order".into(),
            ));
        }
        let quotient = (size / h) as u64;
        let primes = prime_factors(quotient);
        let mut best: Option<(u64, usize)> = None;
        for a in 0..size {
            if member[a] != NONE {
                continue;
            }
            let mut m = quotient;
            for &l in &primes {
                while m % l == 0 && member[pow(a, m / l)?] != NONE {
                    m /= l;
                }
            }
            if best.is_none_or(|(bm, _)| m > bm) {
                best = Some((m, a));
            }
        }
        let (m, a) = best.expect("a non-member exists");
        let landing = logs[member[pow(a, m)?] as usize].clone();
        let mut adjusted = a;
        for (i, &j) in landing.iter().enumerate() {
            if j % m != 0 {
                return Err(Error::NotAGroup("operation is not abelian".into()));
            }
            let c = j / m;
            let correction = (orders[i] - c % orders[i]) % orders[i];
            adjusted = mul(adjusted, pow(generators[i], correction)?)?;
        }
        if pow(adjusted, m)? != identity {
            return Err(Error::NotAGroup("operation is not abelian".into()));
        }
        for l in logs.iter_mut() {
            l.push(0);
        }
        let mut power = identity;
        for k in 1..m {
            power = mul(power, adjusted)?;
            for t in 0..h {
                let x = mul(elements[t], power)?;
                if member[x] != NONE {
                    return Err(Error::NotAGroup("operation is not abelian".into()));
                }
                member[x] = elements.len() as u32;
                let mut l = logs[t].clone();
                *l.last_mut().unwrap() = k;
                elements.push(x);
                logs.push(l);
            }
        }
        generators.push(adjusted);
        orders.push(m);
    }
    if orders.windows(2).any(|w| w[0] % w[1] != 0) {
        return Err(Error::NotAGroup(
            "orders do not form a divisibility chain".into(),
        ));
    }

    let rank = generators.len();
    let mut flat = vec![0u64; size * rank];
    for (pos, &x) in elements.iter().enumerate() {
        flat[x * rank..(x + 1) * rank].copy_from_slice(&logs[pos]);
    }
    Ok(AbelianGroup {
        size,
        identity,
        generators,
        orders,
        logs: flat,
    })
}

impl AbelianGroup {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Orders of the generators, a divisibility chain `d_1 >= d_2 >= ...`.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Exponent of the group, `lcm(d_i) = d_1` (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.orders.first().copied().unwrap_or(1)
    }

    /// Exponent vector of `element` against the generators.
    pub fn log(&self, element: usize) -> &[u64] {
        let r = self.rank();
        &self.logs[element * r..(element + 1) * r]
    }

    /// The `rank`-th character index in lexicographic order (first
    /// coordinate most significant). Rank 0 is the trivial character.
    pub fn character_index(&self, mut rank: u64) -> Vec<u64> {
        let mut index = vec![0u64; self.rank()];
        for (slot, &d) in index.iter_mut().zip(&self.orders).rev() {
            *slot = rank % d;
            rank /= d;
        }
        index
    }

    pub fn validate_index(&self, index: &[u64]) -> Result<()> {
        if index.len() != self.rank() || index.iter().zip(&self.orders).any(|(a, d)| a >= d) {
            return Err(Error::InvalidArgument(format!(
                "character index {index:?} does not fit orders {:?}",
                self.orders
            )));
        }
        Ok(())
    }

    /// Value of the character `index` on every element, as an exponent `k`
    /// of `exp(2 pi i k / exponent())`.
    pub fn character_exponents(&self, index: &[u64]) -> Result<Vec<u64>> {
        self.validate_index(index)?;
        let l = self.exponent();
        let weights: Vec<u64> = index
            .iter()
            .zip(&self.orders)
            .map(|(&a, &d)| a * (l / d))
            .collect();
        Ok((0..self.size)
            .map(|x| {
                self.log(x)
                    .iter()
                    .zip(&weights)
                    .fold(0u64, |acc, (&e, &w)| (acc + e * w) % l)
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = decompose_abelian_group(1, 0, |_, _| 0).unwrap();
        assert!(g.generators().is_empty());
        assert_eq!(g.exponent(), 1);
    }

    #[test]
    fn cyclic_and_products() {
        // Z/12 additively
        let g = decompose_abelian_group(12, 0, |a, b| (a + b) % 12).unwrap();
        assert_eq!(g.orders(), &[12]);
        // Z/2 x Z/6 encoded as a + 2b
        let g = decompose_abelian_group(12, 0, |x, y| {
            let (a1, b1) = (x % 2, x / 2);
            let (a2, b2) = (y % 2, y / 2);
            (a1 + a2) % 2 + 2 * ((b1 + b2) % 6)
        })
        .unwrap();
        assert_eq!(g.orders(), &[6, 2]);
        // every element has a distinct log
        let mut seen: Vec<Vec<u64>> = (0..12).map(|x| g.log(x).to_vec()).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 12);
    }

    #[test]
    fn units_mod_fifteen() {
        let units: Vec<usize> = (1..15).filter(|k| gcd(*k, 15) == 1).collect();
        let pos = |v: usize| units.iter().position(|&u| u == v).unwrap();
        let g = decompose_abelian_group(units.len(), pos(1), |a, b| pos(units[a] * units[b] % 15))
            .unwrap();
        assert_eq!(g.orders(), &[4, 2]);
    }

    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn rejects_monoid() {
        // multiplication mod 4 on {0,1,2,3}: 0 and 2 are not invertible
        let err = decompose_abelian_group(4, 1, |a, b| a * b % 4).unwrap_err();
        assert!(matches!(err, Error::NotAGroup(_)));
    }
}
