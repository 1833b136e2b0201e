//! Dirichlet characters modulo a polynomial `g`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::group::{decompose_abelian_group, AbelianGroup};
use crate::algebra::enumerate::{checked_power, guard};
use crate::algebra::{Field, Polynomial};
use crate::error::{Error, Result};
use crate::value::{Turn, Value};

const NOT_A_UNIT: u32 = u32::MAX;

/// The unit group `(F_q[x]/g)^*` with its decomposition.
#[derive(Clone, Debug)]
pub struct DirichletGroup {
    field: Field,
    modulus: Polynomial,
    residues: u64,
    unit_codes: Vec<u64>,
    unit_of_code: Vec<u32>,
    group: AbelianGroup,
}

impl DirichletGroup {
    /// Builds the unit group modulo `g`. The modulus is replaced by its monic
    /// associate, which generates the same ideal.
    pub fn new(field: &Field, g: &Polynomial) -> Result<Self> {
        let d = g.degree().finite().ok_or(Error::ZeroPolynomial)?;
        if d == 0 {
            return Err(Error::InvalidArgument(
                "a Dirichlet modulus must have degree at least 1".into(),
            ));
        }
        let residues = guard(
            "residue classes",
            checked_power(field.order(), d),
            super::group::MAX_GROUP_SIZE as u128 * field.order() as u128,
        )?;
        let modulus = g.monic(field);
        let q = field.order();
        let mut unit_codes = Vec::new();
        let mut unit_of_code = vec![NOT_A_UNIT; residues as usize];
        for code in 0..residues {
            let h = Polynomial::from_code(code, q);
            if !h.is_zero() && h.gcd(&modulus, field).is_constant() {
                unit_of_code[code as usize] = unit_codes.len() as u32;
                unit_codes.push(code);
            }
        }
        let one = unit_of_code[1] as usize;
        let group = decompose_abelian_group(unit_codes.len(), one, |a, b| {
            let x = Polynomial::from_code(unit_codes[a], q);
            let y = Polynomial::from_code(unit_codes[b], q);
            let r = x
                .mul(&y, field)
                .rem(&modulus, field)
                .expect("nonzero modulus");
            unit_of_code[r.code(q).expect("residue code fits") as usize] as usize
        })?;
        Ok(DirichletGroup {
            field: field.clone(),
            modulus,
            residues,
            unit_codes,
            unit_of_code,
            group,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    /// `phi(g)`, the number of units and of characters.
    pub fn phi(&self) -> usize {
        self.unit_codes.len()
    }

    pub fn structure(&self) -> &AbelianGroup {
        &self.group
    }

    /// Code of `h mod g` in `0..q^{deg g}`.
    pub fn residue_code(&self, h: &Polynomial) -> u64 {
        let r = h.rem(&self.modulus, &self.field).expect("nonzero modulus");
        r.code(self.field.order()).expect("residue code fits")
    }

    pub fn character(&self, index: &[u64]) -> Result<DirichletCharacter> {
        let exps = self.group.character_exponents(index)?;
        let table = self
            .unit_of_code
            .iter()
            .map(|&u| (u != NOT_A_UNIT).then(|| exps[u as usize]))
            .collect();
        Ok(DirichletCharacter {
            field: self.field.clone(),
            modulus: self.modulus.clone(),
            index: index.to_vec(),
            order: self.group.exponent(),
            table: Arc::new(table),
        })
    }

    pub fn principal(&self) -> DirichletCharacter {
        self.character(&vec![0; self.group.rank()])
            .expect("zero index is valid")
    }

    /// All characters in lexicographic index order, principal first.
    pub fn characters(&self, budget: u128) -> Result<Vec<DirichletCharacter>> {
        guard(
            "Dirichlet character tables",
            Some(self.phi() as u128 * self.residues as u128),
            budget,
        )?;
        (0..self.phi() as u64)
            .map(|r| self.character(&self.group.character_index(r)))
            .collect()
    }
}

/// All `phi(g)` characters modulo `g`; index 0 is the principal character.
pub fn dirichlet_characters(
    field: &Field,
    g: &Polynomial,
    budget: u128,
) -> Result<Vec<DirichletCharacter>> {
    DirichletGroup::new(field, g)?.characters(budget)
}

/// A character of `(F_q[x]/g)^*`, extended by zero to non-units.
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    field: Field,
    modulus: Polynomial,
    index: Vec<u64>,
    order: u64,
    /// Exponent of `exp(2 pi i / order)` per residue code; `None` off the units.
    table: Arc<Vec<Option<u64>>>,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    pub fn index(&self) -> &[u64] {
        &self.index
    }

    pub fn is_principal(&self) -> bool {
        self.index.iter().all(|&a| a == 0)
    }

    pub fn eval(&self, h: &Polynomial) -> Value {
        let r = h.rem(&self.modulus, &self.field).expect("nonzero modulus");
        let code = r.code(self.field.order()).expect("residue code fits");
        match self.table[code as usize] {
            Some(k) => Value::Unit(Turn::ratio(k as i64, self.order)),
            None => Value::Zero,
        }
    }
}
