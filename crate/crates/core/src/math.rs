//! Float helpers routed through `libm` so results are identical with and
//! without `std`.

use core::f64::consts::TAU;
use num_complex::Complex64;

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn pow(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn abs(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

/// `exp(2 pi i t)`.
#[inline]
pub fn cis_turn(t: f64) -> Complex64 {
    let a = TAU * t;
    Complex64::new(libm::cos(a), libm::sin(a))
}

/// `exp(2 pi i k / n)` with the exponent reduced first, so that exact
/// rational turns map to the same float regardless of representative.
#[inline]
pub fn root_of_unity(k: u64, n: u64) -> Complex64 {
    let k = k % n;
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * k == n {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * k == n {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * k == 3 * n {
        return Complex64::new(0.0, -1.0);
    }
    cis_turn(k as f64 / n as f64)
}

/// Principal complex logarithm.
pub fn complex_ln(z: Complex64) -> Complex64 {
    Complex64::new(ln(abs(z)), libm::atan2(z.im, z.re))
}

pub fn complex_exp(z: Complex64) -> Complex64 {
    let m = exp(z.re);
    Complex64::new(m * libm::cos(z.im), m * libm::sin(z.im))
}
