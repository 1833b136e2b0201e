//! Degree twists and Hayes characters `chi * xi * e_theta`.

use crate::algebra::{Field, Polynomial};
use crate::descriptor::{HayesDescriptor, Theta};
use crate::error::{Error, Result};
use crate::value::{Turn, Value};

use super::dirichlet::{DirichletCharacter, DirichletGroup};
use super::short_interval::{ShortIntervalCharacter, ShortIntervalGroup};
use super::unit::UnitCharacter;

/// `e_theta(g) = exp(2 pi i theta deg g)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeTwist {
    theta: Turn,
}

impl DegreeTwist {
    /// `theta = num / den`, kept exact.
    pub fn rational(num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("theta denominator is zero".into()));
        }
        Ok(DegreeTwist {
            theta: Turn::ratio(num, den),
        })
    }

    pub fn real(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidArgument("theta must be finite".into()));
        }
        Ok(DegreeTwist {
            theta: Turn::real(theta),
        })
    }

    pub fn from_theta(theta: Theta) -> Result<Self> {
        match theta {
            Theta::Rational { num, den } => Self::rational(num, den),
            Theta::Real(t) => Self::real(t),
        }
    }

    pub fn theta(&self) -> Turn {
        self.theta
    }

    pub fn to_theta(&self) -> Theta {
        match self.theta {
            Turn::Exact { num, den } => Theta::Rational {
                num: num as i64,
                den,
            },
            Turn::Approx(t) => Theta::Real(t),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.theta == Turn::ZERO
    }

    pub fn at_degree(&self, d: usize) -> Value {
        Value::Unit(self.theta.times(d as u64))
    }
}

/// Pointwise product of an optional Dirichlet character, an optional
/// short-interval character and an optional degree twist. Missing factors
/// are trivial.
#[derive(Clone, Debug, Default)]
pub struct HayesCharacter {
    dirichlet: Option<DirichletCharacter>,
    short: Option<ShortIntervalCharacter>,
    twist: Option<DegreeTwist>,
}

impl HayesCharacter {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn with_dirichlet(mut self, chi: DirichletCharacter) -> Self {
        self.dirichlet = Some(chi);
        self
    }

    pub fn with_short(mut self, xi: ShortIntervalCharacter) -> Self {
        self.short = Some(xi);
        self
    }

    pub fn with_twist(mut self, twist: DegreeTwist) -> Self {
        self.twist = Some(twist);
        self
    }

    pub fn dirichlet(&self) -> Option<&DirichletCharacter> {
        self.dirichlet.as_ref()
    }

    pub fn short(&self) -> Option<&ShortIntervalCharacter> {
        self.short.as_ref()
    }

    pub fn twist(&self) -> Option<&DegreeTwist> {
        self.twist.as_ref()
    }

    pub fn is_trivial(&self) -> bool {
        self.dirichlet.as_ref().is_none_or(|c| c.is_principal())
            && self.short.as_ref().is_none_or(|c| c.is_trivial())
            && self.twist.as_ref().is_none_or(|t| t.is_trivial())
    }

    pub fn eval(&self, g: &Polynomial) -> Result<Value> {
        let d = g.degree().finite().ok_or(Error::ZeroPolynomial)?;
        let mut v = Value::ONE;
        if let Some(chi) = &self.dirichlet {
            v = chi.eval(g);
            if v.is_zero() {
                return Ok(v);
            }
        }
        if let Some(xi) = &self.short {
            v = v.mul(xi.eval(g)?);
        }
        if let Some(t) = &self.twist {
            v = v.mul(t.at_degree(d));
        }
        Ok(v)
    }

    pub fn from_descriptor(field: &Field, desc: &HayesDescriptor) -> Result<Self> {
        let mut h = HayesCharacter::trivial();
        if let Some(m) = &desc.modulus {
            let g = Polynomial::from_indices(field, m)?;
            let group = DirichletGroup::new(field, &g)?;
            let index = if desc.dirichlet_index.is_empty() {
                alloc::vec![0; group.structure().rank()]
            } else {
                desc.dirichlet_index.clone()
            };
            h = h.with_dirichlet(group.character(&index)?);
        } else if !desc.dirichlet_index.is_empty() {
            return Err(Error::InvalidArgument(
                "Dirichlet index given without a modulus".into(),
            ));
        }
        if desc.short_length > 0 || !desc.short_index.is_empty() || desc.unit_index.is_some() {
            let group = ShortIntervalGroup::new(field, desc.short_length)?;
            let index = if desc.short_index.is_empty() {
                alloc::vec![0; group.structure().rank()]
            } else {
                desc.short_index.clone()
            };
            let mut xi = group.character(&index)?;
            if let Some(j) = desc.unit_index {
                xi = xi.with_unit_character(UnitCharacter::new(field, j)?);
            }
            h = h.with_short(xi);
        }
        if let Some(t) = desc.theta {
            h = h.with_twist(DegreeTwist::from_theta(t)?);
        }
        Ok(h)
    }

    pub fn descriptor(&self) -> HayesDescriptor {
        HayesDescriptor {
            modulus: self
                .dirichlet
                .as_ref()
                .map(|c| c.modulus().coeffs().iter().map(|e| e.index()).collect()),
            dirichlet_index: self
                .dirichlet
                .as_ref()
                .map(|c| c.index().to_vec())
                .unwrap_or_default(),
            short_length: self.short.as_ref().map_or(0, |c| c.length()),
            short_index: self
                .short
                .as_ref()
                .map(|c| c.index().to_vec())
                .unwrap_or_default(),
            unit_index: self
                .short
                .as_ref()
                .and_then(|c| c.unit_character())
                .map(|u| u.index()),
            theta: self.twist.map(|t| t.to_theta()),
        }
    }
}
