//! Plain records describing characters, functions and phases, so an
//! experiment can be reconstructed from its output metadata. With the
//! `serde` feature they (de)serialize as ordinary structs.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// A degree twist angle, in turns.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Theta {
    Rational { num: i64, den: u64 },
    Real(f64),
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theta::Rational { num, den } => write!(f, "{num}/{den}"),
            Theta::Real(t) => write!(f, "{t}"),
        }
    }
}

/// `chi * xi * e_theta`. Polynomials are coefficient indices, lowest first.
#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct HayesDescriptor {
    /// Dirichlet modulus; `None` means no Dirichlet factor.
    pub modulus: Option<Vec<u32>>,
    /// Exponent vector of the Dirichlet character; empty means principal.
    pub dirichlet_index: Vec<u64>,
    pub short_length: usize,
    /// Exponent vector of the short-interval character; empty means trivial.
    pub short_index: Vec<u64>,
    /// Character of `F_q^*` applied to the leading coefficient.
    pub unit_index: Option<u64>,
    pub theta: Option<Theta>,
}

impl fmt::Display for HayesDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<alloc::string::String> = Vec::new();
        if let Some(m) = &self.modulus {
            parts.push(alloc::format!("chi{:?}@{:?}", self.dirichlet_index, m));
        }
        if self.short_length > 0 || !self.short_index.is_empty() {
            parts.push(alloc::format!(
                "xi{:?}/s={}",
                self.short_index,
                self.short_length
            ));
        }
        if let Some(u) = self.unit_index {
            parts.push(alloc::format!("unit{u}"));
        }
        if let Some(t) = self.theta {
            parts.push(alloc::format!("e({t})"));
        }
        if parts.is_empty() {
            write!(f, "trivial")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Builtin {
    Moebius,
    Liouville,
    One,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [Builtin::Moebius, Builtin::Liouville, Builtin::One];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Moebius => "moebius",
            Builtin::Liouville => "liouville",
            Builtin::One => "one",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        match name {
            "moebius" | "mobius" | "mu" => Some(Builtin::Moebius),
            "liouville" | "lambda" => Some(Builtin::Liouville),
            "one" | "1" => Some(Builtin::One),
            _ => None,
        }
    }
}

/// Value set of a random function on irreducibles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ValueSet {
    Signs,
    UnitCircle,
}

impl ValueSet {
    pub fn name(self) -> &'static str {
        match self {
            ValueSet::Signs => "signs",
            ValueSet::UnitCircle => "unit_circle",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum FunctionDescriptor {
    Builtin(Builtin),
    Random {
        seed: u64,
        values: ValueSet,
    },
    Character(HayesDescriptor),
    Twist {
        base: Box<FunctionDescriptor>,
        character: HayesDescriptor,
        conjugate: bool,
    },
}

impl fmt::Display for FunctionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionDescriptor::Builtin(b) => write!(f, "{}", b.name()),
            FunctionDescriptor::Random { seed, values } => {
                write!(f, "random({},seed={seed})", values.name())
            }
            FunctionDescriptor::Character(h) => write!(f, "hayes({h})"),
            FunctionDescriptor::Twist {
                base,
                character,
                conjugate,
            } => {
                let bar = if *conjugate { "conj " } else { "" };
                write!(f, "{base}*{bar}hayes({character})")
            }
        }
    }
}

/// `coeff * prod_i (beta_i g)_{-1}`; each factor lists `beta_{-1}, beta_{-2}, ...`.
#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct ProductTermDescriptor {
    pub coeff: u32,
    pub factors: Vec<Vec<u32>>,
}

/// `coeff * prod g_j^e` over `(j, e)` pairs.
#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct MonomialTermDescriptor {
    pub coeff: u32,
    pub powers: Vec<(usize, u32)>,
}

#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct PhaseDescriptor {
    pub n: usize,
    pub terms: Vec<ProductTermDescriptor>,
    pub monomials: Vec<MonomialTermDescriptor>,
}

/// One rank-one term of a multilinear form: a coefficient and one
/// Laurent truncation per slot.
#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct FormTermDescriptor {
    pub coeff: u32,
    pub slots: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct FormDescriptor {
    /// Dimension of each slot's domain `G_{n_i}`.
    pub domains: Vec<usize>,
    pub terms: Vec<FormTermDescriptor>,
}
