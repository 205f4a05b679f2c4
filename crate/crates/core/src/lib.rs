//! Numerical value distribution of extended-Selberg-class L-functions.
//!
//! The crate is `no_std` and only needs `alloc`. Every routine is a pure
//! function of its inputs; evaluators are shared through `Sync` trait
//! objects so callers with a thread pool can fan out over sample grids.
//!
//! Layout:
//!
//! | module | contents |
//! |--------|----------|
//! | [`special`] | complex log-Gamma, the three-term Stirling expression and its residual scan |
//! | [`lfunction`] | L-function data model, evaluation in the whole plane, functional equation, trivial zeros, catalog |
//! | [`function`] | the [`Analytic`] evaluator trait and meromorphic functions with pole ledgers |
//! | [`nevanlinna`] | proximity, counting and characteristic functions, growth fits, FMT/SMT diagnostics |
//! | [`zeros`] | winding numbers, zero location, zero-set comparison, Hadamard quotient fits |
//! | [`targets`] | moving targets `h_m`, `h_inf`, `h_1`, direction classification, TD measure |
//! | [`asymptotics`] | left-half-plane expansion, degree-zero `Q > 1` check, growth bound, constant `A` |

#![no_std]
// float methods resolve to std inherents when a dev-dependency links std

extern crate alloc;

pub mod asymptotics;
pub mod function;
pub mod lfunction;
pub mod logc;
pub mod nevanlinna;
pub mod quadrature;
pub mod special;
pub mod targets;
pub mod zeros;

pub use function::{Analytic, MeroFunction, PoleLedger};
pub use lfunction::LFunctionSpec;
pub use logc::LogComplex;

pub use num_complex::Complex64;

/// Shorthand for `Complex64::new`.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Axis-aligned rectangle `[re_min, re_max] x [im_min, im_max]` in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rect {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Self {
        Rect { re_min, re_max, im_min, im_max }
    }

    /// Square of half-width `half` centred at `c`.
    pub fn square(c: Complex64, half: f64) -> Self {
        Rect::new(c.re - half, c.re + half, c.im - half, c.im + half)
    }

    pub fn is_valid(&self) -> bool {
        self.re_min.is_finite()
            && self.re_max.is_finite()
            && self.im_min.is_finite()
            && self.im_max.is_finite()
            && self.re_min < self.re_max
            && self.im_min < self.im_max
    }

    pub fn width(&self) -> f64 {
        self.re_max - self.re_min
    }

    pub fn height(&self) -> f64 {
        self.im_max - self.im_min
    }

    pub fn diameter(&self) -> f64 {
        num_traits::Float::hypot(self.width(), self.height())
    }

    pub fn center(&self) -> Complex64 {
        c64(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re_min && z.re <= self.re_max && z.im >= self.im_min && z.im <= self.im_max
    }

    /// Counter-clockwise corners starting at the lower-left.
    pub fn corners(&self) -> [Complex64; 4] {
        [
            c64(self.re_min, self.im_min),
            c64(self.re_max, self.im_min),
            c64(self.re_max, self.im_max),
            c64(self.re_min, self.im_max),
        ]
    }

    /// Distance from `z` (assumed inside) to the nearest edge.
    pub fn inner_distance(&self, z: Complex64) -> f64 {
        let dx = (z.re - self.re_min).min(self.re_max - z.re);
        let dy = (z.im - self.im_min).min(self.im_max - z.im);
        dx.min(dy)
    }
}

/// `theta` reduced to `[0, 2 pi)`.
pub fn angle_mod_tau(theta: f64) -> f64 {
    let t = theta % core::f64::consts::TAU;
    if t < 0.0 {
        t + core::f64::consts::TAU
    } else {
        t
    }
}
