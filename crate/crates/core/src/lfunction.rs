//! L-functions with a Gamma-factor functional equation.
//!
//! An [`LFunctionSpec`] is a Dirichlet series `sum a(n) n^{-s}` with
//! `a(1) = 1`, a pole of order `k` at most at `s = 1`, and optionally the
//! data `(Q, omega, {(lambda_j, mu_j)})` of
//!
//! ```text
//! Lambda(s) = L(s) Q^s prod Gamma(lambda_j s + mu_j) = omega * conj(Lambda(1 - conj(s)))
//! ```
//!
//! Full-plane evaluation is available for finite Dirichlet polynomials
//! (exact sums), the Riemann zeta function and the Dirichlet L-function of
//! the non-principal character mod 4. The two infinite series use
//! Euler-Maclaurin summation for `Re s >= -1` and the functional equation
//! to the left of that line.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::c64;
use crate::logc::{exprel, LogComplex};
use crate::special::{gamma_pole, log_gamma, SpecialError};

/// Left edge of the region where the infinite series are summed directly.
const EM_LEFT_EDGE: f64 = -1.0;
/// Number of Bernoulli correction terms in Euler-Maclaurin summation.
const EM_ORDER: usize = 8;
/// Absolute tail budget for direct summation of the Dirichlet series.
const SERIES_TAIL: f64 = 1e-12;

// B_{2k} / (2k)!
const BERNOULLI_OVER_FACTORIAL: [f64; EM_ORDER] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
];

#[derive(Debug, Clone, PartialEq)]
pub enum LError {
    /// Evaluation at the pole `s = 1`; carries the order `k`.
    Pole { k: u32 },
    /// The operation needs functional-equation data.
    MissingFunctionalEquation,
    /// Both numerator and denominator Gamma factors are singular; pairs `(j, m)`.
    GammaCollision(Vec<(usize, u64)>),
    /// A numerator Gamma factor is singular, so `chi` is infinite; pairs `(j, m)`.
    ChiPole(Vec<(usize, u64)>),
    /// Malformed construction data.
    Invalid(String),
    Special(SpecialError),
}

impl fmt::Display for LError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LError::Pole { k } => write!(f, "s = 1 is a pole of order {k}"),
            LError::MissingFunctionalEquation => write!(f, "no functional-equation data"),
            LError::GammaCollision(pairs) => {
                write!(f, "indeterminate Gamma ratio at colliding poles (j, m) = {pairs:?}")
            }
            LError::ChiPole(pairs) => write!(f, "chi is infinite: numerator Gamma poles (j, m) = {pairs:?}"),
            LError::Invalid(msg) => write!(f, "invalid L-function data: {msg}"),
            LError::Special(e) => write!(f, "{e}"),
        }
    }
}

impl From<SpecialError> for LError {
    fn from(e: SpecialError) -> Self {
        LError::Special(e)
    }
}

/// `Gamma(lambda s + mu)` with `lambda > 0`, `Re mu >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaFactor {
    lambda: f64,
    mu: Complex64,
}

impl GammaFactor {
    pub fn new(lambda: f64, mu: Complex64) -> Result<Self, LError> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(LError::Invalid("gamma factor needs lambda > 0".to_string()));
        }
        if !(mu.re >= 0.0 && mu.re.is_finite() && mu.im.is_finite()) {
            return Err(LError::Invalid("gamma factor needs Re(mu) >= 0".to_string()));
        }
        Ok(GammaFactor { lambda, mu })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionalEquationData {
    q: f64,
    omega: Complex64,
    factors: Vec<GammaFactor>,
}

impl FunctionalEquationData {
    pub fn new(q: f64, omega: Complex64, factors: Vec<GammaFactor>) -> Result<Self, LError> {
        if !(q > 0.0 && q.is_finite()) {
            return Err(LError::Invalid("functional equation needs Q > 0".to_string()));
        }
        if (omega.norm() - 1.0).abs() > 1e-14 {
            return Err(LError::Invalid("functional equation needs |omega| = 1".to_string()));
        }
        Ok(FunctionalEquationData { q, omega, factors })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }

    pub fn factors(&self) -> &[GammaFactor] {
        &self.factors
    }

    /// `d_L = 2 * sum lambda_j`.
    pub fn degree(&self) -> f64 {
        // fold from +0.0: an empty f64 sum is -0.0
        2.0 * self.factors.iter().fold(0.0, |acc, g| acc + g.lambda)
    }

    /// `sum lambda_j log lambda_j`.
    pub fn lambda_log_lambda(&self) -> f64 {
        self.factors.iter().map(|g| g.lambda * g.lambda.ln()).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Coefficients {
    /// `a(1), a(2), ..., a(N)`; indices beyond are zero.
    Polynomial(Vec<Complex64>),
    Zeta,
    /// Non-principal character mod 4: `1, 0, -1, 0, ...`.
    DirichletMod4,
}

/// `|a(n)| <= c * n^eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffGrowth {
    pub c: f64,
    pub eps: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LFunctionSpec {
    name: String,
    coefficients: Coefficients,
    pole_order_k: u32,
    fe: Option<FunctionalEquationData>,
    coeff_growth: CoeffGrowth,
}

/// A zero forced by the poles of `Gamma(lambda_j s + mu_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrivialZero {
    pub location: Complex64,
    pub multiplicity: u32,
    /// `(j, m)` pairs with `-(m + mu_j) / lambda_j = location`.
    pub sources: Vec<(usize, u64)>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrivialZeroSet {
    /// Sorted by modulus, then real part, then imaginary part.
    pub zeros: Vec<TrivialZero>,
    /// Gamma poles sitting at `s = 0`, which the functional equation does not force to be zeros.
    pub exceptional_origin: Option<TrivialZero>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeResidual {
    /// Max over the usable samples; 0 for an empty list.
    pub max_residual: f64,
    pub per_sample: Vec<Result<f64, LError>>,
}

impl LFunctionSpec {
    /// Finite Dirichlet polynomial from `(n, a(n))` pairs. Missing indices
    /// are zero; `a(1)` must be 1.
    pub fn dirichlet_polynomial(
        name: &str,
        terms: &[(u64, Complex64)],
        fe: Option<FunctionalEquationData>,
        coeff_growth: CoeffGrowth,
    ) -> Result<Self, LError> {
        let max_n = terms.iter().map(|t| t.0).max().unwrap_or(0);
        if terms.iter().any(|t| t.0 == 0) {
            return Err(LError::Invalid("coefficients are indexed from n = 1".to_string()));
        }
        if max_n > 1_000_000 {
            return Err(LError::Invalid("Dirichlet polynomial too long".to_string()));
        }
        let mut coeffs = alloc::vec![c64(0.0, 0.0); max_n as usize];
        for &(n, a) in terms {
            if !(a.re.is_finite() && a.im.is_finite()) {
                return Err(LError::Invalid("non-finite coefficient".to_string()));
            }
            coeffs[(n - 1) as usize] += a;
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|z| z.norm() == 0.0) {
            coeffs.pop();
        }
        let spec = LFunctionSpec {
            name: name.to_string(),
            coefficients: Coefficients::Polynomial(coeffs),
            pole_order_k: 0,
            fe,
            coeff_growth,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// General constructor used by config ingestion.
    pub fn new(
        name: &str,
        coefficients: Coefficients,
        pole_order_k: u32,
        fe: Option<FunctionalEquationData>,
        coeff_growth: CoeffGrowth,
    ) -> Result<Self, LError> {
        let spec = LFunctionSpec { name: name.to_string(), coefficients, pole_order_k, fe, coeff_growth };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), LError> {
        if (self.coefficient(1) - c64(1.0, 0.0)).norm() > 1e-14 {
            return Err(LError::Invalid("a(1) must equal 1".to_string()));
        }
        if !(self.coeff_growth.c > 0.0 && self.coeff_growth.eps >= 0.0) {
            return Err(LError::Invalid("coefficient growth needs C > 0, eps >= 0".to_string()));
        }
        if let Coefficients::Polynomial(c) = &self.coefficients {
            if self.pole_order_k != 0 {
                return Err(LError::Invalid("Dirichlet polynomials are entire (k = 0)".to_string()));
            }
            for (i, a) in c.iter().enumerate() {
                let n = (i + 1) as f64;
                if a.norm() > self.coeff_growth.c * n.powf(self.coeff_growth.eps) * (1.0 + 1e-12) {
                    return Err(LError::Invalid(alloc::format!("|a({})| exceeds the declared growth bound", i + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn zeta() -> Self {
        let fe = FunctionalEquationData {
            q: PI.powf(-0.5),
            omega: c64(1.0, 0.0),
            factors: alloc::vec![GammaFactor { lambda: 0.5, mu: c64(0.0, 0.0) }],
        };
        LFunctionSpec {
            name: "zeta".to_string(),
            coefficients: Coefficients::Zeta,
            pole_order_k: 1,
            fe: Some(fe),
            coeff_growth: CoeffGrowth { c: 1.0, eps: 0.0 },
        }
    }

    pub fn dirichlet_mod4() -> Self {
        let fe = FunctionalEquationData {
            q: 2.0 / PI.sqrt(),
            omega: c64(1.0, 0.0),
            factors: alloc::vec![GammaFactor { lambda: 0.5, mu: c64(0.5, 0.0) }],
        };
        LFunctionSpec {
            name: "chi4".to_string(),
            coefficients: Coefficients::DirichletMod4,
            pole_order_k: 0,
            fe: Some(fe),
            coeff_growth: CoeffGrowth { c: 1.0, eps: 0.0 },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    pub fn pole_order(&self) -> u32 {
        self.pole_order_k
    }

    pub fn functional_equation(&self) -> Option<&FunctionalEquationData> {
        self.fe.as_ref()
    }

    pub fn coeff_growth(&self) -> CoeffGrowth {
        self.coeff_growth
    }

    fn fe_or_err(&self) -> Result<&FunctionalEquationData, LError> {
        self.fe.as_ref().ok_or(LError::MissingFunctionalEquation)
    }

    /// `a(n)` for `n >= 1`.
    pub fn coefficient(&self, n: u64) -> Complex64 {
        match &self.coefficients {
            Coefficients::Polynomial(c) => {
                if n == 0 {
                    c64(0.0, 0.0)
                } else {
                    c.get((n - 1) as usize).copied().unwrap_or(c64(0.0, 0.0))
                }
            }
            Coefficients::Zeta => c64(if n >= 1 { 1.0 } else { 0.0 }, 0.0),
            Coefficients::DirichletMod4 => match n % 4 {
                1 => c64(1.0, 0.0),
                3 => c64(-1.0, 0.0),
                _ => c64(0.0, 0.0),
            },
        }
    }

    pub fn has_real_coefficients(&self) -> bool {
        match &self.coefficients {
            Coefficients::Polynomial(c) => c.iter().all(|a| a.im == 0.0),
            _ => true,
        }
    }

    /// `true` for Dirichlet polynomials whose only nonzero coefficient is `a(1)`.
    pub fn is_constant(&self) -> bool {
        match &self.coefficients {
            Coefficients::Polynomial(c) => c.iter().skip(1).all(|a| a.norm() == 0.0),
            _ => false,
        }
    }

    pub fn degree(&self) -> Result<f64, LError> {
        Ok(self.fe_or_err()?.degree())
    }

    /// Bound on `|L(sigma + it) - 1|` for `sigma >= 3` from the growth witness:
    /// `C 2^{eps - sigma} (1 + 2 / (sigma - 1 - eps))`.
    pub fn right_half_plane_bound(&self, sigma: f64) -> f64 {
        let CoeffGrowth { c, eps } = self.coeff_growth;
        c * 2f64.powf(eps - sigma) * (1.0 + 2.0 / (sigma - 1.0 - eps))
    }

    /// `L(s)`.
    pub fn evaluate(&self, s: Complex64) -> Result<Complex64, LError> {
        self.ln_evaluate(s).map(|v| v.exp())
    }

    /// `L(s)` in log space.
    pub fn ln_evaluate(&self, s: Complex64) -> Result<LogComplex, LError> {
        if !(s.re.is_finite() && s.im.is_finite()) {
            return Err(LError::Invalid(alloc::format!("non-finite argument {s}")));
        }
        if self.pole_order_k > 0 && s == c64(1.0, 0.0) {
            return Err(LError::Pole { k: self.pole_order_k });
        }
        match &self.coefficients {
            Coefficients::Polynomial(c) => Ok(ln_dirichlet_polynomial(c, s)),
            Coefficients::Zeta | Coefficients::DirichletMod4 => {
                if s.re >= EM_LEFT_EDGE || self.fe.is_none() {
                    Ok(LogComplex::from_value(self.series_value(s)))
                } else {
                    self.ln_evaluate_reflected(s)
                }
            }
        }
    }

    fn series_value(&self, s: Complex64) -> Complex64 {
        let em_terms = em_cutoff(s);
        if s.re >= 2.0 {
            if let Some(n) = self.series_cutoff(s.re) {
                if n <= em_terms {
                    return (1..=n as u64).map(|k| self.coefficient(k) * (-s * (k as f64).ln()).exp()).sum();
                }
            }
        }
        match self.coefficients {
            Coefficients::Zeta => zeta_em(s, em_terms),
            Coefficients::DirichletMod4 => mod4_em(s, em_terms),
            Coefficients::Polynomial(_) => unreachable!("polynomials are summed exactly"),
        }
    }

    /// Smallest `N` with `C N^{1+eps-sigma} / (sigma-1-eps) <= 1e-12`.
    fn series_cutoff(&self, sigma: f64) -> Option<usize> {
        let CoeffGrowth { c, eps } = self.coeff_growth;
        let gap = sigma - 1.0 - eps;
        if gap <= 0.0 {
            return None;
        }
        // N^{-gap} <= tail * gap / c
        let n = ((c / (SERIES_TAIL * gap)).ln() / gap).exp().ceil();
        if n.is_finite() && n < 1e7 {
            Some((n as usize).max(1))
        } else {
            None
        }
    }

    /// `log chi(s)` where `L(s) = chi(s) conj(L(1 - conj s))`.
    pub fn ln_chi(&self, s: Complex64) -> Result<LogComplex, LError> {
        let fe = self.fe_or_err()?;
        let one = c64(1.0, 0.0);
        let mut numerator_poles = Vec::new();
        let mut denominator_poles = Vec::new();
        for (j, g) in fe.factors.iter().enumerate() {
            let u = (one - s) * g.lambda + g.mu.conj();
            let v = s * g.lambda + g.mu;
            if let Some(n) = gamma_pole(u) {
                numerator_poles.push((j, (-n) as u64));
            }
            if let Some(n) = gamma_pole(v) {
                denominator_poles.push((j, (-n) as u64));
            }
        }
        if !numerator_poles.is_empty() && !denominator_poles.is_empty() {
            numerator_poles.extend(denominator_poles);
            return Err(LError::GammaCollision(numerator_poles));
        }
        if !numerator_poles.is_empty() {
            return Err(LError::ChiPole(numerator_poles));
        }
        if !denominator_poles.is_empty() {
            return Ok(LogComplex::ZERO);
        }
        let mut acc = c64(fe.omega.norm().ln(), fe.omega.im.atan2(fe.omega.re));
        acc += (one - s * 2.0) * fe.q.ln();
        for g in &fe.factors {
            acc += log_gamma((one - s) * g.lambda + g.mu.conj())?;
            acc -= log_gamma(s * g.lambda + g.mu)?;
        }
        Ok(LogComplex(acc))
    }

    pub fn chi_factor(&self, s: Complex64) -> Result<Complex64, LError> {
        self.ln_chi(s).map(|v| v.exp())
    }

    /// `chi(s) conj(L(1 - conj s))` in log space.
    pub fn ln_evaluate_reflected(&self, s: Complex64) -> Result<LogComplex, LError> {
        let chi = self.ln_chi(s)?;
        if chi.is_zero() {
            return Ok(LogComplex::ZERO);
        }
        let mirror = c64(1.0, 0.0) - s.conj();
        let other = self.ln_evaluate(mirror)?;
        Ok(chi * other.conj())
    }

    pub fn evaluate_reflected(&self, s: Complex64) -> Result<Complex64, LError> {
        self.ln_evaluate_reflected(s).map(|v| v.exp())
    }

    /// `log Lambda(s) = log L(s) + s log Q + sum log Gamma(lambda_j s + mu_j)`.
    pub fn ln_completed(&self, s: Complex64) -> Result<LogComplex, LError> {
        let fe = self.fe_or_err()?;
        let l = self.ln_evaluate(s)?;
        let mut acc = s * fe.q.ln();
        for g in &fe.factors {
            acc += log_gamma(s * g.lambda + g.mu)?;
        }
        Ok(l * LogComplex(acc))
    }

    /// `max |Lambda(s) - omega conj(Lambda(1 - conj s))| / (1 + |Lambda(s)|)` over the samples.
    pub fn functional_equation_residual(&self, samples: &[Complex64]) -> Result<FeResidual, LError> {
        let fe = self.fe_or_err()?;
        let omega = LogComplex::from_value(fe.omega);
        let mut per_sample = Vec::with_capacity(samples.len());
        let mut max_residual: f64 = 0.0;
        for &s in samples {
            let res = (|| {
                let lhs = self.ln_completed(s)?;
                let rhs = omega * self.ln_completed(c64(1.0, 0.0) - s.conj())?.conj();
                let diff = lhs.sub(&rhs);
                let denom = log_add_exp(0.0, lhs.ln_abs());
                Ok(if diff.is_zero() { 0.0 } else { (diff.ln_abs() - denom).exp() })
            })();
            if let Ok(v) = res {
                max_residual = max_residual.max(v);
            }
            per_sample.push(res);
        }
        Ok(FeResidual { max_residual, per_sample })
    }

    /// Gamma-factor zeros with `|s| <= max_modulus`.
    pub fn trivial_zeros(&self, max_modulus: f64) -> Result<TrivialZeroSet, LError> {
        let fe = self.fe_or_err()?;
        let mut raw: Vec<(Complex64, usize, u64)> = Vec::new();
        for (j, g) in fe.factors.iter().enumerate() {
            for m in 0u64..10_000_000 {
                let z = -(g.mu + m as f64) / g.lambda;
                if z.norm() > max_modulus {
                    break;
                }
                raw.push((z, j, m));
            }
        }
        let mut merged: Vec<TrivialZero> = Vec::new();
        for (z, j, m) in raw {
            let tol = 1e-12 * z.norm().max(1.0);
            if let Some(tz) = merged.iter_mut().find(|t| (t.location - z).norm() <= tol) {
                tz.multiplicity += 1;
                tz.sources.push((j, m));
            } else {
                merged.push(TrivialZero { location: z, multiplicity: 1, sources: alloc::vec![(j, m)] });
            }
        }
        merged.sort_by(|a, b| {
            a.location
                .norm()
                .total_cmp(&b.location.norm())
                .then(a.location.re.total_cmp(&b.location.re))
                .then(a.location.im.total_cmp(&b.location.im))
        });
        let origin = merged.iter().position(|t| t.location.norm() <= 1e-12);
        let exceptional_origin = origin.map(|i| {
            let mut t = merged.remove(i);
            t.location = c64(0.0, 0.0);
            t
        });
        Ok(TrivialZeroSet { zeros: merged, exceptional_origin })
    }
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `sum a(n) n^{-s}` with a common scale factor pulled out.
fn ln_dirichlet_polynomial(c: &[Complex64], s: Complex64) -> LogComplex {
    let mut terms: Vec<Complex64> = Vec::with_capacity(c.len());
    let mut top = f64::NEG_INFINITY;
    for (i, a) in c.iter().enumerate() {
        if a.norm() == 0.0 {
            continue;
        }
        let w = a.ln() - s * ((i + 1) as f64).ln();
        top = top.max(w.re);
        terms.push(w);
    }
    if terms.is_empty() {
        return LogComplex::ZERO;
    }
    let sum: Complex64 = terms.iter().map(|w| (*w - top).exp()).sum();
    LogComplex(c64(top, 0.0)) * LogComplex::from_value(sum)
}

fn em_cutoff(s: Complex64) -> usize {
    16 + s.norm().ceil() as usize
}

/// Euler-Maclaurin correction terms `sum_k B_2k/(2k)! (s)_{2k-1} x^{-s-2k+1}`
/// plus the boundary term `x^{-s} / 2`.
fn em_corrections(s: Complex64, x: f64) -> Complex64 {
    let ln_x = x.ln();
    let x_pow = (-s * ln_x).exp();
    let mut acc = x_pow * 0.5;
    // (s)_{2k-1} x^{-s-2k+1}
    let mut rising = s * x_pow / x;
    for (k, &b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        acc += rising * b;
        let a = 2.0 * (k as f64) + 1.0;
        rising *= (s + a) * (s + a + 1.0) / (x * x);
    }
    acc
}

fn zeta_em(s: Complex64, n: usize) -> Complex64 {
    let mut acc = c64(0.0, 0.0);
    for k in 1..n {
        acc += (-s * (k as f64).ln()).exp();
    }
    let x = n as f64;
    let one_minus_s = c64(1.0, 0.0) - s;
    acc += (one_minus_s * x.ln()).exp() / (s - 1.0);
    acc + em_corrections(s, x)
}

/// `L(s, chi_4) = sum_{n < 4N} chi(n) n^{-s} + 4^{-s} (tail(N + 1/4) - tail(N + 3/4))`.
fn mod4_em(s: Complex64, n: usize) -> Complex64 {
    let mut acc = c64(0.0, 0.0);
    for k in 0..n {
        let a = (4 * k + 1) as f64;
        let b = (4 * k + 3) as f64;
        acc += (-s * a.ln()).exp() - (-s * b.ln()).exp();
    }
    let x1 = n as f64 + 0.25;
    let x2 = n as f64 + 0.75;
    let one_minus_s = c64(1.0, 0.0) - s;
    let ratio_ln = (x2 / x1).ln();
    // (x1^{1-s} - x2^{1-s}) / (s - 1) without the removable singularity at s = 1
    let pole_part = (one_minus_s * x1.ln()).exp() * ratio_ln * exprel(one_minus_s * ratio_ln);
    let tail = pole_part + em_corrections(s, x1) - em_corrections(s, x2);
    acc + (-s * 4f64.ln()).exp() * tail
}

/// The catalog: `E1 = 1 + 2/4^s`, `E2 = 1 + 3/9^s`, `E3 = 1 + 1/2^s + 2/4^s`,
/// `zeta`, and `chi4`.
pub fn builtin_catalog() -> Vec<LFunctionSpec> {
    let one = c64(1.0, 0.0);
    let fe_q = |q: f64| FunctionalEquationData { q, omega: one, factors: Vec::new() };
    let e1 = LFunctionSpec::dirichlet_polynomial(
        "E1",
        &[(1, one), (4, c64(2.0, 0.0))],
        Some(fe_q(2.0)),
        CoeffGrowth { c: 2.0, eps: 0.0 },
    );
    let e2 = LFunctionSpec::dirichlet_polynomial(
        "E2",
        &[(1, one), (9, c64(3.0, 0.0))],
        Some(fe_q(3.0)),
        CoeffGrowth { c: 3.0, eps: 0.0 },
    );
    let e3 = LFunctionSpec::dirichlet_polynomial(
        "E3",
        &[(1, one), (2, one), (4, c64(2.0, 0.0))],
        Some(fe_q(2.0)),
        CoeffGrowth { c: 2.0, eps: 0.0 },
    );
    let mut out = Vec::with_capacity(5);
    for e in [e1, e2, e3] {
        out.push(e.expect("catalog entries are valid"));
    }
    out.push(LFunctionSpec::zeta());
    out.push(LFunctionSpec::dirichlet_mod4());
    out
}

/// Look up a catalog entry by name.
pub fn catalog_entry(name: &str) -> Option<LFunctionSpec> {
    builtin_catalog().into_iter().find(|l| l.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(name: &str) -> LFunctionSpec {
        catalog_entry(name).unwrap()
    }

    #[test]
    fn polynomial_exact_values() {
        let v = e("E1").evaluate(c64(0.0, 0.0)).unwrap();
        assert!((v - c64(3.0, 0.0)).norm() < 1e-15);
        let v = e("E1").evaluate(c64(2.0, 0.0)).unwrap();
        assert!((v - c64(1.125, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn zeta_values() {
        let z = LFunctionSpec::zeta();
        let v = z.evaluate(c64(2.0, 0.0)).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() < 1e-14 && v.im.abs() < 1e-15);
        assert!((z.evaluate(c64(0.0, 0.0)).unwrap() - c64(-0.5, 0.0)).norm() < 1e-14);
        assert!((z.evaluate(c64(-1.0, 0.0)).unwrap() - c64(-1.0 / 12.0, 0.0)).norm() < 1e-12);
        assert!(z.evaluate(c64(-2.0, 0.0)).unwrap().norm() <= 1e-10);
        assert_eq!(z.evaluate(c64(1.0, 0.0)), Err(LError::Pole { k: 1 }));
        // reflection region: zeta(-3) = 1/120
        let v = z.evaluate(c64(-3.0, 0.0)).unwrap();
        assert!((v - c64(1.0 / 120.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn mod4_values() {
        let l = LFunctionSpec::dirichlet_mod4();
        // L(1, chi_4) = pi/4, L(0) = 1/2, L(-1) = 0
        assert!((l.evaluate(c64(1.0, 0.0)).unwrap() - c64(PI / 4.0, 0.0)).norm() < 1e-13);
        assert!((l.evaluate(c64(0.0, 0.0)).unwrap() - c64(0.5, 0.0)).norm() < 1e-13);
        assert!(l.evaluate(c64(-1.0, 0.0)).unwrap().norm() < 1e-12);
        // L(-2, chi_4) = E_2 / 2 with the Euler number E_2 = -1
        assert!((l.evaluate(c64(-2.0, 0.0)).unwrap() - c64(-0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn chi_factor_examples() {
        let l = e("E1");
        assert!((l.chi_factor(c64(0.0, 0.0)).unwrap() - c64(2.0, 0.0)).norm() < 1e-14);
        assert!((l.chi_factor(c64(0.5, 0.0)).unwrap() - c64(1.0, 0.0)).norm() < 1e-14);
        let z = LFunctionSpec::zeta();
        assert_eq!(z.chi_factor(c64(-2.0, 0.0)).unwrap(), c64(0.0, 0.0));
        // 1 - s = -2 hits a numerator pole
        assert!(matches!(z.chi_factor(c64(3.0, 0.0)), Err(LError::ChiPole(_))));
    }

    #[test]
    fn chi_pole_reports_pairs() {
        // numerator poles sit at Re s >= 1 and denominator poles at Re s <= 0,
        // so valid data can only produce one-sided singularities
        let fe = FunctionalEquationData::new(
            1.0,
            c64(1.0, 0.0),
            alloc::vec![
                GammaFactor::new(1.0, c64(0.0, 0.0)).unwrap(),
                GammaFactor::new(1.0, c64(2.0, 0.0)).unwrap(),
            ],
        )
        .unwrap();
        let l = LFunctionSpec::dirichlet_polynomial("syn", &[(1, c64(1.0, 0.0))], Some(fe), CoeffGrowth { c: 1.0, eps: 0.0 })
            .unwrap();
        assert_eq!(l.chi_factor(c64(-2.0, 0.0)).unwrap(), c64(0.0, 0.0));
        // Gamma(1 - s) at s = 3 and Gamma(3 - s) at s = 3
        match l.chi_factor(c64(3.0, 0.0)) {
            Err(LError::ChiPole(p)) => assert_eq!(p, alloc::vec![(0, 2), (1, 0)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn trivial_zero_enumeration() {
        let z = LFunctionSpec::zeta().trivial_zeros(10.0).unwrap();
        let locs: Vec<f64> = z.zeros.iter().map(|t| t.location.re).collect();
        assert_eq!(locs, alloc::vec![-2.0, -4.0, -6.0, -8.0, -10.0]);
        assert!(z.zeros.iter().all(|t| t.multiplicity == 1));
        assert!(z.exceptional_origin.is_some());

        assert!(e("E1").trivial_zeros(100.0).unwrap().zeros.is_empty());

        let fe = FunctionalEquationData::new(
            1.0,
            c64(1.0, 0.0),
            alloc::vec![
                GammaFactor::new(1.0, c64(0.0, 0.0)).unwrap(),
                GammaFactor::new(1.0, c64(1.0, 0.0)).unwrap(),
            ],
        )
        .unwrap();
        let l = LFunctionSpec::dirichlet_polynomial("syn", &[(1, c64(1.0, 0.0))], Some(fe), CoeffGrowth { c: 1.0, eps: 0.0 })
            .unwrap();
        let t = l.trivial_zeros(3.0).unwrap();
        assert_eq!(t.zeros.len(), 3);
        for (tz, want) in t.zeros.iter().zip([-1.0, -2.0, -3.0]) {
            assert_eq!(tz.location, c64(want, 0.0));
            assert_eq!(tz.multiplicity, 2);
        }
        assert_eq!(t.exceptional_origin.unwrap().multiplicity, 1);
    }

    #[test]
    fn degrees() {
        assert_eq!(LFunctionSpec::zeta().degree().unwrap(), 1.0);
        assert_eq!(e("E1").degree().unwrap(), 0.0);
        let fe = FunctionalEquationData::new(
            1.0,
            c64(1.0, 0.0),
            alloc::vec![GammaFactor::new(0.5, c64(0.0, 0.0)).unwrap(), GammaFactor::new(0.5, c64(0.0, 0.0)).unwrap()],
        )
        .unwrap();
        assert_eq!(fe.degree(), 2.0);
    }

    #[test]
    fn construction_errors() {
        let g = CoeffGrowth { c: 2.0, eps: 0.0 };
        assert!(LFunctionSpec::dirichlet_polynomial("bad", &[(1, c64(2.0, 0.0))], None, g).is_err());
        assert!(LFunctionSpec::dirichlet_polynomial("bad", &[(0, c64(1.0, 0.0))], None, g).is_err());
        assert!(LFunctionSpec::dirichlet_polynomial("bad", &[(1, c64(1.0, 0.0)), (2, c64(5.0, 0.0))], None, g).is_err());
        assert!(GammaFactor::new(0.0, c64(0.0, 0.0)).is_err());
        assert!(GammaFactor::new(1.0, c64(-0.1, 0.0)).is_err());
        assert!(FunctionalEquationData::new(0.0, c64(1.0, 0.0), Vec::new()).is_err());
        assert!(FunctionalEquationData::new(1.0, c64(1.0, 1e-3), Vec::new()).is_err());
        assert_eq!(e("E1").functional_equation(), e("E3").functional_equation());
    }

    #[test]
    fn catalog_normalisation() {
        for l in builtin_catalog() {
            assert_eq!(l.coefficient(1), c64(1.0, 0.0));
        }
        let e1 = e("E1");
        assert_eq!(e1.coefficient(4), c64(2.0, 0.0));
        for n in [2, 3, 5, 6, 7, 8, 100] {
            assert_eq!(e1.coefficient(n), c64(0.0, 0.0));
        }
    }
}
