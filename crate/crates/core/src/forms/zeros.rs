//! Common projective zeros of homogeneous phases.

use alloc::vec::Vec;

use super::phase::PolynomialPhase;
use crate::algebra::enumerate::{checked_power, guard};
use crate::algebra::{Fe, Field, Polynomial};
use crate::error::{Error, Result};
use crate::math;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroCount {
    /// Projective points where every phase vanishes.
    pub count: u64,
    /// `|Pr(V)| = (q^dim - 1) / (q - 1)`.
    pub points: u64,
    /// `D`, the sum of the degrees.
    pub total_degree: usize,
    /// `|Pr(V)| / (2 q^{D+1})`.
    pub bound: f64,
    pub holds: bool,
}

/// Brute-force count over canonical representatives (first nonzero
/// coordinate equal to 1) of the points of `P(F_q^dim)`, with `F_q^dim`
/// identified with `G_dim`.
pub fn projective_common_zeros(
    field: &Field,
    phases: &[PolynomialPhase],
    dim: usize,
    budget: u128,
) -> Result<ZeroCount> {
    let q = field.order();
    guard("projective enumeration", checked_power(q, dim), budget)?;
    let mut total_degree = 0;
    for p in phases {
        if p.field() != field || p.ambient() != dim {
            return Err(Error::DegreeMismatch("phase does not live on G_dim".into()));
        }
        total_degree += p.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    }
    let qq = q as u64;
    let points = (qq.pow(dim as u32) - 1) / (qq - 1);
    let mut count = 0u64;
    let mut coeffs = Vec::with_capacity(dim);
    for lead in 0..dim {
        let tail = qq.pow((dim - 1 - lead) as u32);
        for code in 0..tail {
            coeffs.clear();
            coeffs.resize(lead, Fe::ZERO);
            coeffs.push(Fe::ONE);
            let mut c = code;
            for _ in lead + 1..dim {
                coeffs.push(Fe((c % qq) as u32));
                c /= qq;
            }
            let g = Polynomial::from_coeffs(coeffs.clone());
            let mut zero = true;
            for p in phases {
                if !p.eval(&g)?.is_zero() {
                    zero = false;
                    break;
                }
            }
            count += zero as u64;
        }
    }
    let bound = points as f64 / (2.0 * math::pow(q as f64, (total_degree + 1) as f64));
    Ok(ZeroCount {
        count,
        points,
        total_degree,
        bound,
        holds: count as f64 >= bound,
    })
}
