//! Left-half-plane growth of positive-degree L-functions, the degree-zero
//! `Q > 1` check, the exceptional-disk growth bound and the constant `A`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::function::{Analytic, MeroFunction};
use crate::lfunction::{Coefficients, LError, LFunctionSpec};
use crate::c64;

#[derive(Debug, Clone, PartialEq)]
pub enum AsymptoticsError {
    MissingFunctionalEquation,
    /// The expansion needs positive degree.
    DegreeZero,
    /// The `Q > 1` check needs degree zero.
    PositiveDegree(f64),
    ConstantFunction,
    NotPolynomial,
    /// `theta` is outside `(pi/2 + delta, pi - delta) U (pi + delta, 3pi/2 - delta)`.
    OutsideSector { theta: f64, delta: f64 },
    InvalidDelta(f64),
    L(LError),
}

impl fmt::Display for AsymptoticsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AsymptoticsError::MissingFunctionalEquation => write!(f, "no functional equation data"),
            AsymptoticsError::DegreeZero => write!(f, "the left-half-plane expansion needs positive degree"),
            AsymptoticsError::PositiveDegree(d) => write!(f, "degree {d} is positive; the Q > 1 check is for degree zero"),
            AsymptoticsError::ConstantFunction => write!(f, "L is constant"),
            AsymptoticsError::NotPolynomial => write!(f, "degree-zero check needs a Dirichlet polynomial"),
            AsymptoticsError::OutsideSector { theta, delta } => write!(f, "theta = {theta} is outside the admissible sectors for delta = {delta}"),
            AsymptoticsError::InvalidDelta(d) => write!(f, "delta = {d} must lie in (0, pi/4)"),
            AsymptoticsError::L(e) => write!(f, "{e}"),
        }
    }
}

impl From<LError> for AsymptoticsError {
    fn from(e: LError) -> Self {
        match e {
            LError::MissingFunctionalEquation => AsymptoticsError::MissingFunctionalEquation,
            e => AsymptoticsError::L(e),
        }
    }
}

pub const DEFAULT_DELTA: f64 = PI / 12.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    Upper,
    Lower,
}

/// Which admissible sector `theta` (any branch) falls in.
pub fn sector_of(theta: f64, delta: f64) -> Result<Sector, AsymptoticsError> {
    if !(delta > 0.0 && delta < 0.25 * PI) {
        return Err(AsymptoticsError::InvalidDelta(delta));
    }
    let t = crate::angle_mod_tau(theta);
    if t > 0.5 * PI + delta && t < PI - delta {
        Ok(Sector::Upper)
    } else if t > PI + delta && t < 1.5 * PI - delta {
        Ok(Sector::Lower)
    } else {
        Err(AsymptoticsError::OutsideSector { theta, delta })
    }
}

fn positive_degree(l: &LFunctionSpec) -> Result<(f64, f64), AsymptoticsError> {
    let fe = l.functional_equation().ok_or(AsymptoticsError::MissingFunctionalEquation)?;
    let d = fe.degree();
    if d <= 0.0 {
        return Err(AsymptoticsError::DegreeZero);
    }
    Ok((d, 2.0 * fe.q().ln() + 2.0 * fe.lambda_log_lambda() - d))
}

/// Three-term prediction of `log |L(r e^{i theta})|`.
///
/// The angular term is `(theta - pi/2) d sin(theta) r` in the upper sector
/// and `(theta - 3pi/2) d sin(theta) r` in the lower one, with `theta` in
/// `[0, 2 pi)`. The two agree under `theta -> 2 pi - theta`, as they must
/// for real coefficients.
pub fn lemma2_predicted(l: &LFunctionSpec, theta: f64, r: f64, delta: f64) -> Result<f64, AsymptoticsError> {
    let (d, a) = positive_degree(l)?;
    let sector = sector_of(theta, delta)?;
    let t = crate::angle_mod_tau(theta);
    let pivot = match sector {
        Sector::Upper => 0.5 * PI,
        Sector::Lower => 1.5 * PI,
    };
    let (s, c) = t.sin_cos();
    Ok(-d * c * r * r.ln() - a * r * c + (t - pivot) * d * s * r)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lemma2Evaluation {
    pub l_name: String,
    pub theta: f64,
    pub r: f64,
    pub predicted: f64,
    pub actual: f64,
    pub remainder: f64,
}

impl Lemma2Evaluation {
    pub fn remainder_over_logr(&self) -> f64 {
        self.remainder / self.r.ln()
    }

    pub fn relative_error(&self) -> f64 {
        (self.remainder / self.predicted).abs()
    }
}

/// `log |L|` in the left half plane through the functional equation.
pub fn lemma2_actual(l: &LFunctionSpec, theta: f64, r: f64) -> Result<f64, AsymptoticsError> {
    let s = Complex64::from_polar(r, theta);
    let v = if s.re < 0.0 && l.functional_equation().is_some() { l.ln_evaluate_reflected(s)? } else { l.ln_evaluate(s)? };
    Ok(v.ln_abs())
}

pub fn lemma2_evaluate(l: &LFunctionSpec, theta: f64, r: f64, delta: f64) -> Result<Lemma2Evaluation, AsymptoticsError> {
    let predicted = lemma2_predicted(l, theta, r, delta)?;
    let actual = lemma2_actual(l, theta, r)?;
    Ok(Lemma2Evaluation { l_name: l.name().to_string(), theta, r, predicted, actual, remainder: actual - predicted })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lemma2Table {
    pub rows: Vec<Lemma2Evaluation>,
    /// Radii `<= split_r` fit `c_hat`; the rest validate it.
    pub split_r: f64,
    /// `max |remainder| / log r` over the training radii.
    pub c_hat: f64,
    /// Every validation row has `|remainder| <= 2 c_hat log r`.
    pub validated: bool,
}

/// Training radii run up to `0.4 r_max`.
pub fn default_split(r_grid: &[f64]) -> f64 {
    0.4 * r_grid.iter().copied().fold(0.0, f64::max)
}

/// Summarise evaluated rows into the train/validate remainder check.
pub fn lemma2_table(rows: Vec<Lemma2Evaluation>, split_r: f64) -> Lemma2Table {
    let c_hat = rows.iter().filter(|e| e.r <= split_r).map(|e| e.remainder_over_logr().abs()).fold(0.0, f64::max);
    let validated = rows.iter().filter(|e| e.r > split_r).all(|e| e.remainder.abs() <= 2.0 * c_hat * e.r.ln());
    Lemma2Table { rows, split_r, c_hat, validated }
}

pub fn lemma2_verify(l: &LFunctionSpec, theta: f64, r_grid: &[f64], delta: f64, split_r: f64) -> Result<Lemma2Table, AsymptoticsError> {
    let rows = r_grid.iter().map(|&r| lemma2_evaluate(l, theta, r, delta)).collect::<Result<Vec<_>, _>>()?;
    Ok(lemma2_table(rows, split_r))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prop1Row {
    pub sigma: f64,
    /// Max of `|L|` sampled on `Re s = -sigma`, `|Im s| <= height`.
    pub max_abs: f64,
    /// `Q^{1 + 2 sigma} sum |a(n)| n^{-sigma - 1}`.
    pub k0_bound: f64,
    pub within: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prop1Report {
    pub q: f64,
    pub q_gt_one: bool,
    pub rows: Vec<Prop1Row>,
}

/// One admissible boundedness constant on `Re s = -sigma`.
pub fn k0_bound(l: &LFunctionSpec, sigma: f64) -> Result<f64, AsymptoticsError> {
    let fe = l.functional_equation().ok_or(AsymptoticsError::MissingFunctionalEquation)?;
    let coeffs = match l.coefficients() {
        Coefficients::Polynomial(c) => c,
        _ => return Err(AsymptoticsError::NotPolynomial),
    };
    let sum: f64 = coeffs.iter().enumerate().map(|(i, a)| a.norm() * ((i + 1) as f64).powf(-sigma - 1.0)).sum();
    Ok(fe.omega().norm() * fe.q().powf(1.0 + 2.0 * sigma) * sum)
}

/// Reads `Q` for a non-constant degree-zero `L` and samples `|L|` on the
/// lines `Re s = -sigma` against [`k0_bound`].
pub fn prop1_check(l: &LFunctionSpec, sigmas: &[f64], height: f64, samples: usize) -> Result<Prop1Report, AsymptoticsError> {
    let fe = l.functional_equation().ok_or(AsymptoticsError::MissingFunctionalEquation)?;
    let d = fe.degree();
    if d != 0.0 {
        return Err(AsymptoticsError::PositiveDegree(d));
    }
    if l.is_constant() {
        return Err(AsymptoticsError::ConstantFunction);
    }
    let samples = samples.max(2);
    let mut rows = Vec::with_capacity(sigmas.len());
    for &sigma in sigmas {
        let bound = k0_bound(l, sigma)?;
        let mut max_abs: f64 = 0.0;
        for k in 0..samples {
            let t = -height + 2.0 * height * k as f64 / (samples - 1) as f64;
            max_abs = max_abs.max(l.ln_evaluate(c64(-sigma, t))?.abs());
        }
        rows.push(Prop1Row { sigma, max_abs, k0_bound: bound, within: max_abs <= bound * (1.0 + 1e-12) });
    }
    Ok(Prop1Report { q: fe.q(), q_gt_one: fe.q() > 1.0, rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lemma3Row {
    pub r: f64,
    /// `log max |f|` over sampled circle points outside the exceptional disks.
    pub ln_max_abs: f64,
    /// `r^{beta + eps}`, the logarithm of the bound.
    pub ln_bound: f64,
    pub pass: bool,
    /// Every sample point fell inside an exceptional disk.
    pub skipped: bool,
}

/// Radius of the exceptional disk about `p`: `|p|^{-(beta + eps/2)}`, at most 1.
pub fn exceptional_radius(p: Complex64, beta: f64, eps: f64) -> f64 {
    let a = p.norm();
    if a <= 1.0 {
        return 1.0;
    }
    a.powf(-(beta + 0.5 * eps)).min(1.0)
}

/// `max |f| <= exp(r^{beta + eps})` on circles with the exceptional disks removed.
pub fn lemma3_bound_check(f: &MeroFunction<'_>, beta: f64, eps: f64, r_grid: &[f64], n_theta: usize) -> Vec<Lemma3Row> {
    let disks: Vec<(Complex64, f64)> = f.poles().entries().iter().map(|&(p, _)| (p, exceptional_radius(p, beta, eps))).collect();
    let n = n_theta.max(16);
    r_grid
        .iter()
        .map(|&r| {
            let near: Vec<&(Complex64, f64)> = disks.iter().filter(|(p, rho)| (p.norm() - r).abs() <= *rho).collect();
            let mut best = f64::NEG_INFINITY;
            let mut any = false;
            for k in 0..n {
                let z = Complex64::from_polar(r, TAU * (k as f64 + 0.5) / n as f64);
                if near.iter().any(|(p, rho)| (z - *p).norm() <= *rho) {
                    continue;
                }
                any = true;
                best = best.max(f.ln_eval(z).ln_abs());
            }
            let ln_bound = r.powf(beta + eps);
            Lemma3Row { r, ln_max_abs: best, ln_bound, pass: !any || best <= ln_bound, skipped: !any }
        })
        .collect()
}

/// `A = 2 (log Q2 - log Q1) + 2 (sum lambda2 log lambda2 - sum lambda1 log lambda1)`.
pub fn constant_a(l1: &LFunctionSpec, l2: &LFunctionSpec) -> Result<f64, AsymptoticsError> {
    let f1 = l1.functional_equation().ok_or(AsymptoticsError::MissingFunctionalEquation)?;
    let f2 = l2.functional_equation().ok_or(AsymptoticsError::MissingFunctionalEquation)?;
    Ok(2.0 * (f2.q().ln() - f1.q().ln()) + 2.0 * (f2.lambda_log_lambda() - f1.lambda_log_lambda()))
}
