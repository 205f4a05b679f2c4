//! Complex numbers carried by their logarithm.
//!
//! `LogComplex(w)` stands for the value `exp(w)`. Only `exp(w)` is
//! meaningful, so the imaginary part of `w` is a phase that may sit on any
//! branch. Zero is `re = -inf`. This lets products of Gamma factors and
//! L-function values of size `exp(2000)` flow through the library without
//! overflow.

use core::ops::{Div, Mul, Neg};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::c64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogComplex(pub Complex64);

impl LogComplex {
    pub const ZERO: LogComplex = LogComplex(Complex64 { re: f64::NEG_INFINITY, im: 0.0 });
    pub const ONE: LogComplex = LogComplex(Complex64 { re: 0.0, im: 0.0 });
    pub const INFINITY: LogComplex = LogComplex(Complex64 { re: f64::INFINITY, im: 0.0 });

    pub fn from_value(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return Self::ZERO;
        }
        if !(z.re.is_finite() && z.im.is_finite()) {
            if z.re.is_nan() || z.im.is_nan() {
                return LogComplex(c64(f64::NAN, f64::NAN));
            }
            return LogComplex(c64(f64::INFINITY, z.im.atan2(z.re)));
        }
        LogComplex(z.ln())
    }

    /// `exp(ln_modulus + i*phase)`.
    pub fn from_polar_log(ln_modulus: f64, phase: f64) -> Self {
        LogComplex(c64(ln_modulus, phase))
    }

    pub fn from_real(x: f64) -> Self {
        Self::from_value(c64(x, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.0.re == f64::NEG_INFINITY
    }

    pub fn is_infinite(&self) -> bool {
        self.0.re == f64::INFINITY
    }

    pub fn is_finite(&self) -> bool {
        !self.0.re.is_nan() && !self.0.im.is_nan() && self.0.re < f64::INFINITY
    }

    /// `ln |z|`.
    pub fn ln_abs(&self) -> f64 {
        self.0.re
    }

    /// A phase of `z`, not reduced to the principal range.
    pub fn phase(&self) -> f64 {
        self.0.im
    }

    pub fn exp(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let m = self.0.re.exp();
        let (s, c) = self.0.im.sin_cos();
        if m.is_infinite() {
            // keep the direction when the modulus overflows
            return c64(
                if c == 0.0 { 0.0 } else { f64::INFINITY * c.signum() },
                if s == 0.0 { 0.0 } else { f64::INFINITY * s.signum() },
            );
        }
        c64(m * c, m * s)
    }

    pub fn abs(&self) -> f64 {
        self.0.re.exp()
    }

    pub fn conj(&self) -> Self {
        LogComplex(self.0.conj())
    }

    pub fn recip(&self) -> Self {
        LogComplex(-self.0)
    }

    pub fn powi(&self, n: i32) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        if self.is_zero() {
            return if n > 0 { Self::ZERO } else { Self::INFINITY };
        }
        LogComplex(self.0 * n as f64)
    }

    /// `self + other`, evaluated without leaving log space.
    pub fn add(&self, other: &LogComplex) -> LogComplex {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (big, small) = if self.0.re >= other.0.re { (self, other) } else { (other, self) };
        if big.is_infinite() {
            return *big;
        }
        let ratio = (small.0 - big.0).exp();
        let one_plus = c64(1.0 + ratio.re, ratio.im);
        // exact cancellation up to the rounding of exp(i pi)
        if one_plus.norm() <= 4.0 * f64::EPSILON {
            return Self::ZERO;
        }
        LogComplex(big.0 + ln_1p(ratio))
    }

    pub fn sub(&self, other: &LogComplex) -> LogComplex {
        self.add(&-*other)
    }

    /// `self + z` for a plain complex `z`.
    pub fn add_value(&self, z: Complex64) -> LogComplex {
        self.add(&LogComplex::from_value(z))
    }

    pub fn sub_value(&self, z: Complex64) -> LogComplex {
        self.add(&LogComplex::from_value(-z))
    }

    /// Phase reduced to `(-pi, pi]`.
    pub fn principal_phase(&self) -> f64 {
        wrap_phase(self.0.im)
    }
}

impl Mul for LogComplex {
    type Output = LogComplex;
    fn mul(self, rhs: LogComplex) -> LogComplex {
        if self.is_zero() || rhs.is_zero() {
            if self.is_infinite() || rhs.is_infinite() {
                return LogComplex(c64(f64::NAN, f64::NAN));
            }
            return Self::ZERO;
        }
        LogComplex(self.0 + rhs.0)
    }
}

impl Div for LogComplex {
    type Output = LogComplex;
    fn div(self, rhs: LogComplex) -> LogComplex {
        self * rhs.recip()
    }
}

impl Neg for LogComplex {
    type Output = LogComplex;
    fn neg(self) -> LogComplex {
        if self.is_zero() {
            return self;
        }
        let im = self.0.im;
        let shifted = if im > 0.0 { im - core::f64::consts::PI } else { im + core::f64::consts::PI };
        LogComplex(c64(self.0.re, shifted))
    }
}

/// Reduce an angle to `(-pi, pi]`.
pub fn wrap_phase(x: f64) -> f64 {
    use core::f64::consts::{PI, TAU};
    if x > -PI && x <= PI {
        return x;
    }
    let mut y = x - TAU * (x / TAU).round();
    if y <= -PI {
        y += TAU;
    } else if y > PI {
        y -= TAU;
    }
    y
}

/// `ln(1 + z)` accurate for small `|z|`.
pub fn ln_1p(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        // 1 + z is well away from zero; series to fifth order
        let mut term = z;
        let mut acc = c64(0.0, 0.0);
        for k in 1..=6 {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            acc += term * (sign / k as f64);
            term *= z;
        }
        return acc;
    }
    let w = c64(1.0 + z.re, z.im);
    // real part via log1p of |1+z|^2 - 1 = 2 re z + |z|^2
    let t = 2.0 * z.re + z.re * z.re + z.im * z.im;
    let re = if t.abs() < 0.5 { 0.5 * t.ln_1p() } else { w.norm().ln() };
    c64(re, w.im.atan2(w.re))
}

/// `exp(z) - 1` without cancellation for small `|z|`.
pub fn exp_m1(z: Complex64) -> Complex64 {
    let em1 = z.re.exp_m1();
    let (s, c) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    // e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
    let re = em1 * c - 2.0 * half * half;
    let im = z.re.exp() * s;
    c64(re, im)
}

/// `(exp(z) - 1) / z`, equal to 1 at the origin.
pub fn exprel(z: Complex64) -> Complex64 {
    if z.norm() < 1e-5 {
        return c64(1.0, 0.0) + z * 0.5 + z * z / 6.0;
    }
    exp_m1(z) / z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_sum_round_trip() {
        let a = c64(1.5, -0.25);
        let b = c64(-3.0, 2.0);
        let la = LogComplex::from_value(a);
        let lb = LogComplex::from_value(b);
        assert!(((la * lb).exp() - a * b).norm() < 1e-14);
        assert!(((la / lb).exp() - a / b).norm() < 1e-14);
        assert!((la.add(&lb).exp() - (a + b)).norm() < 1e-14);
        assert!((la.sub(&lb).exp() - (a - b)).norm() < 1e-14);
        assert!(((-la).exp() + a).norm() < 1e-14);
    }

    #[test]
    fn huge_values_stay_finite() {
        let big = LogComplex::from_polar_log(2000.0, 0.3);
        let sum = big.add(&LogComplex::from_polar_log(1999.0, 0.3));
        let expect = 2000.0 + (1.0 + (-1.0f64).exp()).ln();
        assert!((sum.ln_abs() - expect).abs() < 1e-12);
        assert!(big.sub(&big).is_zero());
    }

    #[test]
    fn expm1_small_and_large() {
        let z = c64(1e-9, -2e-9);
        let e = exp_m1(z);
        assert!((e - z).norm() < 1e-17);
        let z = c64(0.7, 3.0);
        assert!((exp_m1(z) - (z.exp() - 1.0)).norm() < 1e-14);
        assert!((exprel(c64(0.0, 0.0)) - c64(1.0, 0.0)).norm() == 0.0);
    }

    #[test]
    fn wrap_phase_range() {
        use core::f64::consts::PI;
        assert_eq!(wrap_phase(PI), PI);
        assert!((wrap_phase(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_phase(-PI) - PI).abs() < 1e-12);
        assert!((wrap_phase(7.0) - (7.0 - 2.0 * PI)).abs() < 1e-15);
    }
}
