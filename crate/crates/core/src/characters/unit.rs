//! Characters of the multiplicative group `F_q^*`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::group::decompose_abelian_group;
use crate::algebra::{Fe, Field};
use crate::error::{Error, Result};
use crate::value::{Turn, Value};

/// The character `gamma^j -> exp(2 pi i * index * j / (q - 1))` for the
/// generator `gamma` found by the decomposer.
#[derive(Clone, Debug)]
pub struct UnitCharacter {
    index: u64,
    order: u64,
    /// Discrete log per element index; slot 0 (the zero element) is unused.
    log: Arc<Vec<u64>>,
}

impl UnitCharacter {
    pub fn new(field: &Field, index: u64) -> Result<Self> {
        let order = field.order() as u64 - 1;
        if index >= order {
            return Err(Error::InvalidArgument(alloc::format!(
                "unit character index {index} must be below q - 1 = {order}"
            )));
        }
        let g = decompose_abelian_group(order as usize, 0, |a, b| {
            field.mul(Fe(a as u32 + 1), Fe(b as u32 + 1)).index() as usize - 1
        })?;
        let mut log = alloc::vec![0u64; field.order() as usize];
        for e in 0..order as usize {
            log[e + 1] = g.log(e).first().copied().unwrap_or(0);
        }
        Ok(UnitCharacter {
            index,
            order,
            log: Arc::new(log),
        })
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    pub fn eval(&self, c: Fe) -> Value {
        if c.is_zero() {
            return Value::Zero;
        }
        let k = self.log[c.index() as usize] * self.index;
        Value::Unit(Turn::ratio((k % self.order) as i64, self.order))
    }
}
