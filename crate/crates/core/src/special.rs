//! Complex log-Gamma and the three-term Stirling expression.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::c64;
use crate::logc::ln_1p;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpecialError {
    /// `z` is a pole of Gamma; carries the non-positive integer.
    GammaPole(i64),
    /// The Stirling expression is undefined at the origin.
    ZeroArgument,
}

impl fmt::Display for SpecialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialError::GammaPole(n) => write!(f, "Gamma has a pole at z = {n}"),
            SpecialError::ZeroArgument => write!(f, "Stirling expression is undefined at z = 0"),
        }
    }
}

/// `Omega_delta = { z : |arg z| <= pi - delta }`, `0 < delta < pi/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularSector {
    delta: f64,
}

impl AngularSector {
    pub fn new(delta: f64) -> Option<Self> {
        if delta > 0.0 && delta < 0.5 * PI {
            Some(AngularSector { delta })
        } else {
            None
        }
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn contains(&self, z: Complex64) -> bool {
        if z.re == 0.0 && z.im == 0.0 {
            return false;
        }
        z.im.atan2(z.re).abs() <= PI - self.delta
    }

    /// Extreme admissible argument `pi - delta`.
    pub fn max_arg(&self) -> f64 {
        PI - self.delta
    }
}

/// If `z` is (numerically) a pole of Gamma, return the integer.
pub fn gamma_pole(z: Complex64) -> Option<i64> {
    if z.re > 0.5 {
        return None;
    }
    let n = z.re.round();
    let tol = 1e-13 * n.abs().max(1.0);
    if (z.re - n).abs() <= tol && z.im.abs() <= tol {
        Some(n as i64)
    } else {
        None
    }
}

// Lanczos g = 7, n = 9 (Godfrey's coefficients).
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

// B_{2k} / (2k (2k-1)) for k = 1..10
const STIRLING_COEF: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// Principal branch of `log Gamma(z)`.
///
/// Continuous off the non-positive real axis and real on the positive real
/// axis. On the negative real axis the value is the limit from above.
pub fn log_gamma(z: Complex64) -> Result<Complex64, SpecialError> {
    if let Some(n) = gamma_pole(z) {
        return Err(SpecialError::GammaPole(n));
    }
    if z.im < 0.0 {
        return log_gamma(z.conj()).map(|w| w.conj());
    }
    if z.re < 0.5 {
        return Ok(reflect(z));
    }
    Ok(log_gamma_right(z))
}

/// `Re z >= 1/2` branch.
fn log_gamma_right(z: Complex64) -> Complex64 {
    if z.norm() > 30.0 {
        stirling_series(z)
    } else {
        lanczos(z)
    }
}

fn lanczos(z: Complex64) -> Complex64 {
    let zm1 = z - 1.0;
    let mut acc = c64(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (zm1 + k as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    (zm1 + 0.5) * t.ln() - t + LN_SQRT_2PI + acc.ln()
}

fn stirling_series(z: Complex64) -> Complex64 {
    let r = z.inv();
    let r2 = r * r;
    let mut corr = c64(0.0, 0.0);
    let mut pow = r;
    for &c in STIRLING_COEF.iter() {
        corr += pow * c;
        pow *= r2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + corr
}

/// Reflection for `Im z >= 0`, `Re z < 1/2`.
///
/// Uses the branch `log sin(pi z) = -ln 2 + i pi/2 - i pi z + log(1 - e^{2 pi i z})`,
/// analytic in the upper half plane and vanishing at `z = 1/2`.
fn reflect(z: Complex64) -> Complex64 {
    let q = (c64(0.0, TAU) * z).exp();
    let log_sin = c64(-core::f64::consts::LN_2, 0.5 * PI) - c64(0.0, PI) * z + ln_1p(-q);
    c64(LN_PI, 0.0) - log_sin - log_gamma_right(c64(1.0, 0.0) - z)
}

/// `(z - 1/2) log z - z + (1/2) log(2 pi)` with the principal logarithm.
pub fn stirling_log_gamma(z: Complex64) -> Result<Complex64, SpecialError> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(SpecialError::ZeroArgument);
    }
    Ok((z - 0.5) * z.ln() - z + LN_SQRT_2PI)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StirlingResidual {
    pub z: Complex64,
    /// `|log_gamma(z) - stirling_log_gamma(z)|`
    pub residual: f64,
    /// `residual * |z|`
    pub scaled: f64,
}

/// Rays at which [`stirling_residual_scan`] samples each radius: seven
/// arguments spread evenly over `[-(pi - delta), pi - delta]`.
pub fn sector_rays(sector: &AngularSector) -> [f64; 7] {
    let a = sector.max_arg();
    let mut out = [0.0; 7];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = -a + 2.0 * a * k as f64 / 6.0;
    }
    out
}

/// Residual table over `radii x sector_rays(sector)`, radius-major.
pub fn stirling_residual_scan(sector: &AngularSector, radii: &[f64]) -> Vec<StirlingResidual> {
    let rays = sector_rays(sector);
    let mut out = Vec::with_capacity(radii.len() * rays.len());
    for &r in radii {
        for &theta in rays.iter() {
            let z = Complex64::from_polar(r, theta);
            out.push(residual_at(z));
        }
    }
    out
}

fn residual_at(z: Complex64) -> StirlingResidual {
    // sector points with |z| >= 1 are never poles or the origin
    let exact = log_gamma(z).unwrap_or(c64(f64::NAN, f64::NAN));
    let approx = stirling_log_gamma(z).unwrap_or(c64(f64::NAN, f64::NAN));
    let residual = (exact - approx).norm();
    StirlingResidual { z, residual, scaled: residual * z.norm() }
}

/// Empirical constant of the `O(1/|z|)` bound: max of `scaled` over `|z| >= 10`.
pub fn stirling_constant(table: &[StirlingResidual]) -> Option<f64> {
    table
        .iter()
        .filter(|row| row.z.norm() >= 10.0 - 1e-12)
        .map(|row| row.scaled)
        .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.max(v))))
}
