//! Exact values of characters and multiplicative functions.
//!
//! Every function in this crate takes values in `{0} ∪ S^1`. A point of the
//! unit circle is stored as a [`Turn`], the fraction `t` of a full turn in
//! `exp(2 pi i t)`. Rational turns stay exact under multiplication, so
//! identities such as `chi(gh) = chi(g) chi(h)` can be checked with `==`.
//! Conversion to floats happens only when values are summed.

use num_complex::Complex64;

use crate::math;

/// Largest denominator kept exact; beyond it a turn degrades to a float.
const MAX_EXACT_DEN: u64 = 1 << 40;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Turn {
    /// `num / den` of a turn, reduced, `0 <= num < den`.
    Exact { num: u64, den: u64 },
    /// A real turn in `[0, 1)`.
    Approx(f64),
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn frac(t: f64) -> f64 {
    let r = t - math::floor(t);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

impl Turn {
    pub const ZERO: Turn = Turn::Exact { num: 0, den: 1 };
    pub const HALF: Turn = Turn::Exact { num: 1, den: 2 };

    /// `num / den` reduced mod 1. Panics if `den == 0`.
    pub fn ratio(num: i64, den: u64) -> Turn {
        assert!(den > 0, "zero denominator");
        let n = num.rem_euclid(den as i64) as u64;
        let g = gcd(n, den);
        let (n, d) = (n / g, den / g);
        if n == 0 {
            Turn::ZERO
        } else {
            Turn::Exact { num: n, den: d }
        }
    }

    pub fn real(t: f64) -> Turn {
        Turn::Approx(frac(t))
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Turn::Exact { num, den } => num as f64 / den as f64,
            Turn::Approx(t) => t,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Turn::Exact { .. })
    }

    pub fn add(self, other: Turn) -> Turn {
        match (self, other) {
            (Turn::Exact { num: a, den: b }, Turn::Exact { num: c, den: d }) => {
                let g = gcd(b, d);
                let l = (b / g) as u128 * d as u128;
                if l > MAX_EXACT_DEN as u128 {
                    return Turn::real(self.as_f64() + other.as_f64());
                }
                let n = (a as u128 * (l / b as u128) + c as u128 * (l / d as u128)) % l;
                Turn::ratio(n as i64, l as u64)
            }
            _ => Turn::real(self.as_f64() + other.as_f64()),
        }
    }

    pub fn neg(self) -> Turn {
        match self {
            Turn::Exact { num, den } => Turn::ratio(-(num as i64), den),
            Turn::Approx(t) => Turn::real(-t),
        }
    }

    pub fn times(self, k: u64) -> Turn {
        match self {
            Turn::Exact { num, den } => {
                let n = (num as u128 * k as u128) % den as u128;
                Turn::ratio(n as i64, den)
            }
            Turn::Approx(t) => Turn::real(t * k as f64),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            Turn::Exact { num, den } => math::root_of_unity(num, den),
            Turn::Approx(t) => math::cis_turn(t),
        }
    }
}

/// A value in `{0} ∪ S^1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Zero,
    Unit(Turn),
}

impl Value {
    pub const ONE: Value = Value::Unit(Turn::ZERO);
    pub const MINUS_ONE: Value = Value::Unit(Turn::HALF);

    pub fn is_zero(self) -> bool {
        matches!(self, Value::Zero)
    }

    pub fn mul(self, other: Value) -> Value {
        match (self, other) {
            (Value::Unit(a), Value::Unit(b)) => Value::Unit(a.add(b)),
            _ => Value::Zero,
        }
    }

    pub fn conj(self) -> Value {
        match self {
            Value::Unit(t) => Value::Unit(t.neg()),
            Value::Zero => Value::Zero,
        }
    }

    pub fn pow(self, k: u32) -> Value {
        match self {
            _ if k == 0 => Value::ONE,
            Value::Unit(t) => Value::Unit(t.times(k as u64)),
            Value::Zero => Value::Zero,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            Value::Zero => Complex64::new(0.0, 0.0),
            Value::Unit(t) => t.to_complex(),
        }
    }

    /// Equality up to `tol` in the complex plane.
    pub fn approx_eq(self, other: Value, tol: f64) -> bool {
        math::abs(self.to_complex() - other.to_complex()) <= tol
    }
}
