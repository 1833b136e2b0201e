//! Short-interval characters.
//!
//! `R_s` is the group of series `1 + a_1 x^{-1} + ... + a_s x^{-s}` under
//! multiplication truncated after `x^{-s}`, with `(a_1, ..., a_s)` stored as
//! the base-`q` code `sum a_i q^{i-1}`. A polynomial `g` of degree `d` maps
//! to the series of `g / (lc(g) x^d)`, i.e. `a_i = g_{d-i} / lc(g)`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::group::{decompose_abelian_group, AbelianGroup, MAX_GROUP_SIZE};
use super::unit::UnitCharacter;
use crate::algebra::enumerate::{checked_power, guard};
use crate::algebra::{Fe, Field, Polynomial};
use crate::error::{Error, Result};
use crate::value::{Turn, Value};

/// Code of the normalized top-coefficient segment of `g` in `R_s`.
/// Coefficients below degree 0 are read as zero.
pub fn top_coefficient_key(field: &Field, g: &Polynomial, s: usize) -> Result<u64> {
    let d = g.degree().finite().ok_or(Error::ZeroPolynomial)?;
    let inv = field.inv(g.coeff(d)).expect("nonzero leading coefficient");
    let q = field.order() as u64;
    let mut code = 0u64;
    let mut place = 1u64;
    for i in 1..=s {
        if i <= d {
            code += field.mul(g.coeff(d - i), inv).index() as u64 * place;
        }
        place = place.wrapping_mul(q);
    }
    Ok(code)
}

/// The group `R_s`.
#[derive(Clone, Debug)]
pub struct ShortIntervalGroup {
    field: Field,
    length: usize,
    group: AbelianGroup,
}

impl ShortIntervalGroup {
    pub fn new(field: &Field, s: usize) -> Result<Self> {
        let size = guard(
            "short-interval group",
            checked_power(field.order(), s),
            MAX_GROUP_SIZE as u128,
        )? as usize;
        let group = decompose_abelian_group(size, 0, |a, b| {
            series_mul(field, s, a as u64, b as u64) as usize
        })?;
        Ok(ShortIntervalGroup {
            field: field.clone(),
            length: s,
            group,
        })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn structure(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn character(&self, index: &[u64]) -> Result<ShortIntervalCharacter> {
        let table = self.group.character_exponents(index)?;
        Ok(ShortIntervalCharacter {
            field: self.field.clone(),
            length: self.length,
            index: index.to_vec(),
            order: self.group.exponent(),
            table: Arc::new(table),
            unit: None,
        })
    }

    pub fn trivial(&self) -> ShortIntervalCharacter {
        self.character(&alloc::vec![0; self.group.rank()])
            .expect("zero index is valid")
    }

    /// All `q^s` characters in lexicographic index order, trivial first.
    pub fn characters(&self) -> Result<Vec<ShortIntervalCharacter>> {
        (0..self.group.size() as u64)
            .map(|r| self.character(&self.group.character_index(r)))
            .collect()
    }
}

/// Product in `R_s` of two codes.
pub fn series_mul(field: &Field, s: usize, a: u64, b: u64) -> u64 {
    let q = field.order() as u64;
    let digits = |mut c: u64| -> Vec<Fe> {
        (0..s)
            .map(|_| {
                let d = Fe((c % q) as u32);
                c /= q;
                d
            })
            .collect()
    };
    let (x, y) = (digits(a), digits(b));
    let mut code = 0u64;
    let mut place = 1u64;
    for k in 0..s {
        let mut c = field.add(x[k], y[k]);
        for i in 0..k {
            c = field.add(c, field.mul(x[i], y[k - 1 - i]));
        }
        code += c.index() as u64 * place;
        place *= q;
    }
    code
}

/// All `q^s` characters of `R_s`, pulled back to nonzero polynomials.
pub fn short_interval_characters(field: &Field, s: usize) -> Result<Vec<ShortIntervalCharacter>> {
    ShortIntervalGroup::new(field, s)?.characters()
}

/// A character of `R_s` composed with the top-coefficient map, optionally
/// multiplied by a character of the leading coefficient.
#[derive(Clone, Debug)]
pub struct ShortIntervalCharacter {
    field: Field,
    length: usize,
    index: Vec<u64>,
    order: u64,
    table: Arc<Vec<u64>>,
    unit: Option<UnitCharacter>,
}

impl ShortIntervalCharacter {
    /// Declared length bound `s`.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn index(&self) -> &[u64] {
        &self.index
    }

    pub fn unit_character(&self) -> Option<&UnitCharacter> {
        self.unit.as_ref()
    }

    pub fn is_trivial(&self) -> bool {
        self.index.iter().all(|&a| a == 0) && self.unit.as_ref().is_none_or(|u| u.is_trivial())
    }

    /// Uses `u(lc(g))` as the value on units instead of 1.
    pub fn with_unit_character(mut self, u: UnitCharacter) -> Self {
        self.unit = Some(u);
        self
    }

    pub fn eval(&self, g: &Polynomial) -> Result<Value> {
        let key = top_coefficient_key(&self.field, g, self.length)?;
        let v = Value::Unit(Turn::ratio(self.table[key as usize] as i64, self.order));
        Ok(match &self.unit {
            Some(u) => v.mul(u.eval(g.leading().expect("nonzero"))),
            None => v,
        })
    }
}
