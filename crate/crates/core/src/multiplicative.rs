//! Multiplicative functions on `F_q[x]`.
//!
//! A function is given by a rule on prime powers `p^k` (with `p` monic
//! irreducible) and a rule on the leading unit. Evaluation factors `g` and
//! multiplies the pieces. Character-derived functions are evaluated
//! directly, without factoring. The value at the zero polynomial is 0.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Factorizer, Polynomial};
use crate::characters::{HayesCharacter, UnitCharacter};
use crate::descriptor::{Builtin, FunctionDescriptor, ValueSet};
use crate::error::{Error, Result};
use crate::value::{Turn, Value};
use crate::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Multiplicative,
    CompletelyMultiplicative,
}

#[derive(Clone, Debug)]
enum Rule {
    Builtin(Builtin),
    Random {
        seed: u64,
        values: ValueSet,
    },
    Character(HayesCharacter),
    Twist {
        base: Arc<MultiplicativeFunction>,
        character: HayesCharacter,
        conjugate: bool,
    },
}

#[derive(Clone, Debug)]
pub struct MultiplicativeFunction {
    rule: Rule,
    unit: Option<UnitCharacter>,
}

/// Default entry cap of [`MemoEval`].
pub const DEFAULT_CACHE_CAP: usize = 1 << 20;

impl MultiplicativeFunction {
    pub fn builtin(b: Builtin) -> Self {
        MultiplicativeFunction {
            rule: Rule::Builtin(b),
            unit: None,
        }
    }

    pub fn moebius() -> Self {
        Self::builtin(Builtin::Moebius)
    }

    pub fn liouville() -> Self {
        Self::builtin(Builtin::Liouville)
    }

    pub fn one() -> Self {
        Self::builtin(Builtin::One)
    }

    pub fn from_character(h: HayesCharacter) -> Self {
        MultiplicativeFunction {
            rule: Rule::Character(h),
            unit: None,
        }
    }

    /// Independent uniform values on each monic irreducible, drawn from a
    /// generator seeded by `(seed, code of p)`, extended completely
    /// multiplicatively.
    pub fn random_on_irreducibles(seed: u64, values: ValueSet) -> Self {
        MultiplicativeFunction {
            rule: Rule::Random { seed, values },
            unit: None,
        }
    }

    /// `f * H`, or `f * conj(H)` when `conjugate` is set.
    pub fn twist(f: MultiplicativeFunction, h: HayesCharacter, conjugate: bool) -> Self {
        MultiplicativeFunction {
            rule: Rule::Twist {
                base: Arc::new(f),
                character: h,
                conjugate,
            },
            unit: None,
        }
    }

    /// Replaces the unit rule `c -> 1` by a character of `F_q^*`. Has no
    /// effect on character-derived rules, which carry their own unit values.
    pub fn with_unit_character(mut self, u: UnitCharacter) -> Self {
        self.unit = Some(u);
        self
    }

    pub fn from_descriptor(field: &Field, d: &FunctionDescriptor) -> Result<Self> {
        Ok(match d {
            FunctionDescriptor::Builtin(b) => Self::builtin(*b),
            FunctionDescriptor::Random { seed, values } => {
                Self::random_on_irreducibles(*seed, *values)
            }
            FunctionDescriptor::Character(h) => {
                Self::from_character(HayesCharacter::from_descriptor(field, h)?)
            }
            FunctionDescriptor::Twist {
                base,
                character,
                conjugate,
            } => Self::twist(
                Self::from_descriptor(field, base)?,
                HayesCharacter::from_descriptor(field, character)?,
                *conjugate,
            ),
        })
    }

    pub fn descriptor(&self) -> FunctionDescriptor {
        match &self.rule {
            Rule::Builtin(b) => FunctionDescriptor::Builtin(*b),
            Rule::Random { seed, values } => FunctionDescriptor::Random {
                seed: *seed,
                values: *values,
            },
            Rule::Character(h) => FunctionDescriptor::Character(h.descriptor()),
            Rule::Twist {
                base,
                character,
                conjugate,
            } => FunctionDescriptor::Twist {
                base: alloc::boxed::Box::new(base.descriptor()),
                character: character.descriptor(),
                conjugate: *conjugate,
            },
        }
    }

    pub fn kind(&self) -> Kind {
        match &self.rule {
            Rule::Builtin(Builtin::Moebius) => Kind::Multiplicative,
            Rule::Builtin(_) | Rule::Random { .. } | Rule::Character(_) => {
                Kind::CompletelyMultiplicative
            }
            Rule::Twist { base, .. } => base.kind(),
        }
    }

    /// Whether the function depends on a seed.
    pub fn is_random(&self) -> bool {
        match &self.rule {
            Rule::Random { .. } => true,
            Rule::Twist { base, .. } => base.is_random(),
            _ => false,
        }
    }

    fn unit_value(&self, g: &Polynomial) -> Value {
        match &self.unit {
            Some(u) => u.eval(g.leading().expect("nonzero")),
            None => Value::ONE,
        }
    }

    fn random_value(seed: u64, values: ValueSet, p: &Polynomial, q: u32) -> Result<Value> {
        let code = p.code(q).ok_or(Error::Overflow("irreducible code"))?;
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        key[8..16].copy_from_slice(&code.to_le_bytes());
        key[16..20].copy_from_slice(&q.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        Ok(match values {
            ValueSet::Signs => {
                if rng.random::<bool>() {
                    Value::ONE
                } else {
                    Value::MINUS_ONE
                }
            }
            ValueSet::UnitCircle => Value::Unit(Turn::real(rng.random::<f64>())),
        })
    }

    /// `f(p^k)` for a monic irreducible `p` and `k >= 1`.
    pub fn prime_power(&self, p: &Polynomial, k: u32, fz: &Factorizer) -> Result<Value> {
        if k == 0 {
            return Ok(Value::ONE);
        }
        match &self.rule {
            Rule::Builtin(Builtin::Moebius) => Ok(if k == 1 {
                Value::MINUS_ONE
            } else {
                Value::Zero
            }),
            Rule::Builtin(Builtin::Liouville) => Ok(Value::MINUS_ONE.pow(k)),
            Rule::Builtin(Builtin::One) => Ok(Value::ONE),
            Rule::Random { seed, values } => {
                fz.check_degree(p)?;
                Ok(Self::random_value(*seed, *values, p, fz.field().order())?.pow(k))
            }
            Rule::Character(h) => Ok(h.eval(p)?.pow(k)),
            Rule::Twist {
                base,
                character,
                conjugate,
            } => {
                let c = character.eval(p)?.pow(k);
                let c = if *conjugate { c.conj() } else { c };
                Ok(base.prime_power(p, k, fz)?.mul(c))
            }
        }
    }

    /// The common value of `f(p^k)` over all monic irreducible `p` of degree
    /// `d`, when the rule makes it depend on `(d, k)` only.
    pub fn degree_profile(&self, d: usize, k: u32) -> Option<Value> {
        if k == 0 {
            return Some(Value::ONE);
        }
        match &self.rule {
            Rule::Builtin(Builtin::Moebius) => Some(if k == 1 {
                Value::MINUS_ONE
            } else {
                Value::Zero
            }),
            Rule::Builtin(Builtin::Liouville) => Some(Value::MINUS_ONE.pow(k)),
            Rule::Builtin(Builtin::One) => Some(Value::ONE),
            Rule::Random { .. } => None,
            Rule::Character(h) => hayes_profile(h, d).map(|v| v.pow(k)),
            Rule::Twist {
                base,
                character,
                conjugate,
            } => {
                let c = hayes_profile(character, d)?.pow(k);
                let c = if *conjugate { c.conj() } else { c };
                Some(base.degree_profile(d, k)?.mul(c))
            }
        }
    }

    /// `f(g)`, with `f(0) = 0`.
    pub fn eval(&self, g: &Polynomial, fz: &Factorizer) -> Result<Value> {
        if g.is_zero() {
            return Ok(Value::Zero);
        }
        match &self.rule {
            Rule::Character(h) => h.eval(g),
            Rule::Twist {
                base,
                character,
                conjugate,
            } => {
                let b = base.eval(g, fz)?;
                if b.is_zero() {
                    return Ok(b);
                }
                let c = character.eval(g)?;
                Ok(b.mul(if *conjugate { c.conj() } else { c }))
            }
            Rule::Builtin(Builtin::One) => Ok(self.unit_value(g)),
            _ => {
                let fact = fz.factor(g)?;
                let mut v = self.unit_value(g);
                for (p, k) in &fact.factors {
                    v = v.mul(self.prime_power(p, *k, fz)?);
                    if v.is_zero() {
                        break;
                    }
                }
                Ok(v)
            }
        }
    }
}

/// Value of a Hayes character on every monic irreducible of degree `d`, if
/// it is the same for all of them: only the degree twist survives.
fn hayes_profile(h: &HayesCharacter, d: usize) -> Option<Value> {
    let chi_trivial = h.dirichlet().is_none_or(|c| c.is_principal());
    if !(chi_trivial && h.short().is_none_or(|c| c.is_trivial())) {
        return None;
    }
    if h.dirichlet().is_some() {
        // a principal character still vanishes on the primes dividing its modulus
        return None;
    }
    Some(h.twist().map_or(Value::ONE, |t| t.at_degree(d)))
}

impl core::fmt::Display for MultiplicativeFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

/// A bounded memo in front of [`MultiplicativeFunction::eval`]. Meant to be
/// held by one worker; results are identical to uncached evaluation.
pub struct MemoEval<'a> {
    f: &'a MultiplicativeFunction,
    fz: &'a Factorizer,
    cap: usize,
    cache: BTreeMap<Polynomial, Value>,
}

impl<'a> MemoEval<'a> {
    pub fn new(f: &'a MultiplicativeFunction, fz: &'a Factorizer) -> Self {
        Self::with_cap(f, fz, DEFAULT_CACHE_CAP)
    }

    pub fn with_cap(f: &'a MultiplicativeFunction, fz: &'a Factorizer, cap: usize) -> Self {
        MemoEval {
            f,
            fz,
            cap,
            cache: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.cache.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cache.is_empty()
    }

    pub fn eval(&mut self, g: &Polynomial) -> Result<Value> {
        if let Some(v) = self.cache.get(g) {
            return Ok(*v);
        }
        let v = self.f.eval(g, self.fz)?;
        if self.cache.len() < self.cap {
            self.cache.insert(g.clone(), v);
        }
        Ok(v)
    }
}
