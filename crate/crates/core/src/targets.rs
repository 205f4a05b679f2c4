//! Moving targets and ray-direction sampling.
//!
//! `h_m = (exp(s^m) L2 - L1) / (exp(s^m) - 1)` is evaluated as
//! `L2 + (L2 - L1) / (exp(s^m) - 1)`, which stays finite when `exp(s^m)`
//! is huge.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::function::{Analytic, LnFn, MeroFunction, PoleLedger};
use crate::lfunction::LFunctionSpec;
use crate::logc::{exp_m1, LogComplex};
use crate::zeros::{winding_number, Contour};
use crate::{c64, Rect};

#[derive(Debug, Clone, PartialEq)]
pub enum TargetError {
    /// `m` must be a positive integer.
    Domain(i64),
    IdenticalSpecs,
    /// Evaluation outside the target's safe box.
    Overflow { at: Complex64 },
}

impl fmt::Display for TargetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetError::Domain(m) => write!(f, "m = {m} is not a positive integer"),
            TargetError::IdenticalSpecs => write!(f, "L1 and L2 must differ"),
            TargetError::Overflow { at } => write!(f, "evaluation at {at} is outside the safe box"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NominalOrder {
    Finite(f64),
    Infinite,
}

/// An evaluator with its pole ledger. `nominal_order` is documentation only.
pub struct MovingTarget<'a> {
    label: String,
    evaluator: Box<dyn Analytic + 'a>,
    poles: PoleLedger,
    nominal_order: NominalOrder,
    safe_box: Option<Rect>,
}

impl<'a> MovingTarget<'a> {
    pub fn new(label: &str, evaluator: impl Analytic + 'a, poles: PoleLedger, nominal_order: NominalOrder) -> Self {
        MovingTarget { label: label.to_string(), evaluator: Box::new(evaluator), poles, nominal_order, safe_box: None }
    }

    pub fn with_safe_box(mut self, rect: Rect) -> Self {
        self.safe_box = Some(rect);
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn poles(&self) -> &PoleLedger {
        &self.poles
    }

    pub fn nominal_order(&self) -> NominalOrder {
        self.nominal_order
    }

    pub fn safe_box(&self) -> Option<Rect> {
        self.safe_box
    }

    pub fn try_ln_eval(&self, s: Complex64) -> Result<LogComplex, TargetError> {
        if let Some(b) = self.safe_box {
            if !b.contains(s) {
                return Err(TargetError::Overflow { at: s });
            }
        }
        Ok(self.evaluator.ln_eval(s))
    }

    pub fn try_eval(&self, s: Complex64) -> Result<Complex64, TargetError> {
        self.try_ln_eval(s).map(|v| v.exp())
    }

    /// Borrowing view as a [`MeroFunction`].
    pub fn as_mero(&self) -> MeroFunction<'_> {
        MeroFunction::new(&self.label, LnFn(move |s| self.ln_eval(s)), self.poles.clone())
    }
}

/// Outside the safe box the value is NaN, which downstream routines reject.
impl Analytic for MovingTarget<'_> {
    fn ln_eval(&self, s: Complex64) -> LogComplex {
        self.try_ln_eval(s).unwrap_or(LogComplex(c64(f64::NAN, f64::NAN)))
    }
}

/// `exp(w) - 1` in log form, with `w` reduced modulo `2 pi i`.
fn ln_exp_minus_one(w: Complex64) -> LogComplex {
    let w = c64(w.re, w.im - TAU * (w.im / TAU).round());
    if w.re > 40.0 {
        // the -1 is below double precision
        return LogComplex(w);
    }
    LogComplex::from_value(exp_m1(w))
}

/// `L2 + (L2 - L1) / (exp(w) - 1)`.
fn stable_target(l1: &LFunctionSpec, l2: &LFunctionSpec, s: Complex64, w: Complex64) -> LogComplex {
    let a = l1.ln_eval(s);
    let b = l2.ln_eval(s);
    if a.is_infinite() || b.is_infinite() {
        return LogComplex::INFINITY;
    }
    let diff = b.sub(&a);
    b.add(&(diff / ln_exp_minus_one(w)))
}

/// Order of the zero of `f` at `p`, from the winding on a small circle.
fn zero_order_at<F: Analytic + ?Sized>(f: &F, p: Complex64, scale: f64) -> u32 {
    let v = f.ln_eval(p);
    if !(v.is_zero() || v.ln_abs() < (1e-10 * scale.max(1.0)).ln()) {
        return 0;
    }
    for rho in [1e-3, 3e-4, 1e-4] {
        if let Ok(w) = winding_number(f, &Contour::circle(p, rho)) {
            return w.max(0) as u32;
        }
    }
    0
}

/// Poles of a lattice target: each root of `exp(w(s)) = 1` of order `order`,
/// reduced by the order of the zero of `L2 - L1` there.
fn lattice_ledger(l1: &LFunctionSpec, l2: &LFunctionSpec, roots: Vec<(Complex64, u32)>, radius: f64) -> PoleLedger {
    let diff = LnFn(|s: Complex64| l2.ln_eval(s).sub(&l1.ln_eval(s)));
    let mut entries = Vec::with_capacity(roots.len() + 1);
    for (p, order) in roots {
        let scale = l1.ln_eval(p).abs().max(l2.ln_eval(p).abs());
        let z = zero_order_at(&diff, p, scale);
        if z < order {
            entries.push((p, order - z));
        }
    }
    let k = l1.pole_order().max(l2.pole_order());
    if k > 0 && radius >= 1.0 {
        entries.push((c64(1.0, 0.0), k));
    }
    PoleLedger::new(entries, radius)
}

fn same_spec(l1: &LFunctionSpec, l2: &LFunctionSpec) -> bool {
    l1.coefficients() == l2.coefficients() && l1.pole_order() == l2.pole_order()
}

/// Solutions of `s^m in 2 pi i Z` with `|s| <= radius`; the origin has order `m`.
pub fn hm_lattice(m: u32, radius: f64) -> Vec<(Complex64, u32)> {
    let mut out = alloc::vec![(c64(0.0, 0.0), m)];
    let kmax = (radius.powi(m as i32) / TAU).floor() as i64;
    for k in 1..=kmax {
        for sign in [1.0, -1.0] {
            let w = c64(0.0, sign * TAU * k as f64);
            let base = Complex64::from_polar(w.norm().powf(1.0 / m as f64), w.arg() / m as f64);
            for j in 0..m {
                let p = base * Complex64::from_polar(1.0, TAU * j as f64 / m as f64);
                if p.norm() <= radius {
                    out.push((p, 1));
                }
            }
        }
    }
    out
}

/// `h_m` with its poles inside `|s| <= radius`.
pub fn make_hm<'a>(l1: &'a LFunctionSpec, l2: &'a LFunctionSpec, m: i64, radius: f64) -> Result<MovingTarget<'a>, TargetError> {
    if m <= 0 {
        return Err(TargetError::Domain(m));
    }
    if same_spec(l1, l2) {
        return Err(TargetError::IdenticalSpecs);
    }
    let mu = m as u32;
    let poles = lattice_ledger(l1, l2, hm_lattice(mu, radius), radius);
    let label = alloc::format!("hm:m={m}:L1={}:L2={}", l1.name(), l2.name());
    let eval = LnFn(move |s: Complex64| stable_target(l1, l2, s, s.powu(mu)));
    Ok(MovingTarget::new(&label, eval, poles, NominalOrder::Finite(m as f64)))
}

/// Safe evaluation box for `h_inf`: `|Re s| <= 5`, `|Im s| <= height`.
pub fn hinf_safe_box(height: f64) -> Rect {
    Rect::new(-5.0, 5.0, -height, height)
}

/// Solutions of `e^s in 2 pi i Z \ {0}` inside `rect`.
pub fn hinf_lattice(rect: &Rect) -> Vec<(Complex64, u32)> {
    let mut out = Vec::new();
    let kmax = (rect.re_max.exp() / TAU).floor() as i64;
    for k in 1..=kmax {
        let re = (TAU * k as f64).ln();
        if re < rect.re_min {
            continue;
        }
        for base in [0.5 * PI, -0.5 * PI] {
            let jmin = ((rect.im_min - base) / TAU).ceil() as i64;
            let jmax = ((rect.im_max - base) / TAU).floor() as i64;
            for j in jmin..=jmax {
                out.push((c64(re, base + TAU * j as f64), 1));
            }
        }
    }
    out
}

/// `h_inf` restricted to its safe box `|Re s| <= 5`, `|Im s| <= height`.
pub fn make_hinf<'a>(l1: &'a LFunctionSpec, l2: &'a LFunctionSpec, height: f64) -> Result<MovingTarget<'a>, TargetError> {
    if same_spec(l1, l2) {
        return Err(TargetError::IdenticalSpecs);
    }
    let safe = hinf_safe_box(height);
    let radius = 5f64.hypot(height);
    let poles = lattice_ledger(l1, l2, hinf_lattice(&safe), radius);
    let label = alloc::format!("hinf:L1={}:L2={}", l1.name(), l2.name());
    let eval = LnFn(move |s: Complex64| stable_target(l1, l2, s, s.exp()));
    Ok(MovingTarget::new(&label, eval, poles, NominalOrder::Infinite).with_safe_box(safe))
}

/// `1 + 2^{-s} + 2 * 4^{-s} + 2^{-s} / (e^s - 1)`, the partial-fraction form of
/// `h_1` for `L1 = 1 + 2/4^s`, `L2 = 1 + 1/2^s + 2/4^s`.
pub fn h1_rewrite(s: Complex64) -> Complex64 {
    let two = (-s * core::f64::consts::LN_2).exp();
    let four = two * two;
    c64(1.0, 0.0) + four * 2.0 + two / (c64(1.0, 0.0) - (-s).exp())
}

/// `h_1` in the quotient form `(e^s L2 - L1) / (e^s - 1)`.
pub fn h1_quotient(s: Complex64) -> Complex64 {
    let two = (-s * core::f64::consts::LN_2).exp();
    let four = two * two;
    let l1 = c64(1.0, 0.0) + four * 2.0;
    let l2 = l1 + two;
    let e = s.exp();
    (e * l2 - l1) / (e - 1.0)
}

/// Distance from `s` to the lattice `2 pi i Z`.
pub fn exp_lattice_distance(s: Complex64) -> f64 {
    let k = (s.im / TAU).round();
    s.re.hypot(s.im - TAU * k)
}

/// Max of `|quotient - rewrite| / (1 + |h_1|)` over samples at least `1e-3`
/// from the poles; 0 for no samples.
pub fn h1_identity_residual(samples: &[Complex64]) -> f64 {
    samples
        .iter()
        .filter(|s| exp_lattice_distance(**s) >= 1e-3)
        .map(|&s| {
            let a = h1_quotient(s);
            (a - h1_rewrite(s)).norm() / (1.0 + a.norm())
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DirectionVerdict {
    Transcendental,
    AValueLimiting(Complex64),
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectionClassification {
    pub theta: f64,
    pub verdict: DirectionVerdict,
    /// `(|s_n|, log|f(s_n)| / log|s_n|)`.
    pub evidence: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionOptions {
    /// Minimum `log|f| / log r` at the largest radius.
    pub threshold: f64,
    /// Cauchy tolerance for the limiting-value test.
    pub cauchy_tol: f64,
}

impl Default for DirectionOptions {
    fn default() -> Self {
        DirectionOptions { threshold: 10.0, cauchy_tol: 1e-6 }
    }
}

/// Classify the ray `arg s = theta` from samples at `r_grid` (increasing, all `> 1`).
pub fn classify_direction<F: Analytic + ?Sized>(
    f: &F,
    poles: &PoleLedger,
    theta: f64,
    r_grid: &[f64],
    opts: &DirectionOptions,
) -> DirectionClassification {
    let theta = crate::angle_mod_tau(theta);
    let mut evidence = Vec::with_capacity(r_grid.len());
    let mut values = Vec::with_capacity(r_grid.len());
    for &r0 in r_grid {
        let mut r = r0;
        let dir = Complex64::from_polar(1.0, theta);
        for _ in 0..8 {
            if poles.entries().iter().all(|(p, _)| (*p - dir * r).norm() >= 1e-6) {
                break;
            }
            r += 1e-5 * r0;
        }
        let v = f.ln_eval(dir * r);
        evidence.push((r, v.ln_abs() / r.ln()));
        values.push(v);
    }
    let verdict = verdict_from(&evidence, &values, opts);
    DirectionClassification { theta, verdict, evidence }
}

fn verdict_from(evidence: &[(f64, f64)], values: &[LogComplex], opts: &DirectionOptions) -> DirectionVerdict {
    let n = evidence.len();
    if n < 2 || evidence.iter().any(|e| e.1.is_nan()) {
        return DirectionVerdict::Inconclusive;
    }
    let top = &evidence[n / 2..];
    let increasing = top.windows(2).all(|w| w[1].1 > w[0].1);
    if increasing && evidence[n - 1].1 >= opts.threshold {
        return DirectionVerdict::Transcendental;
    }
    let last = values[n - 1].exp();
    let prev = values[n - 2].exp();
    if last.re.is_finite() && last.im.is_finite() && (last - prev).norm() < opts.cauchy_tol {
        return DirectionVerdict::AValueLimiting(last);
    }
    DirectionVerdict::Inconclusive
}

/// Midpoint partition `theta_k = (k + 1/2) 2 pi / n` of `[0, 2 pi)`.
pub fn theta_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| (k as f64 + 0.5) * TAU / n as f64).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TdMeasure {
    pub measure_hat: f64,
    pub lower_bound: f64,
    /// `2 pi / |grid|`.
    pub resolution: f64,
    pub mu_hat: f64,
    pub delta_hat: f64,
    /// `mu_hat` is zero or infinite, or `delta_hat` is zero.
    pub out_of_hypothesis: bool,
    /// `measure_hat >= lower_bound - resolution`; `None` when out of hypothesis.
    pub pass: Option<bool>,
    /// `arcsin(sqrt(delta/2)) > mu pi / 4`.
    pub remark_condition: bool,
}

/// `min{2 pi, (4 / mu) arcsin sqrt(delta / 2)}`; `2 pi` when `mu = 0`.
pub fn td_lower_bound(mu_hat: f64, delta_hat: f64) -> f64 {
    if !(mu_hat > 0.0) {
        return TAU;
    }
    let b = 4.0 / mu_hat * (0.5 * delta_hat.clamp(0.0, 1.0)).sqrt().asin();
    b.min(TAU)
}

/// Combine per-direction verdicts with `(mu_hat, delta_hat)`.
pub fn summarize_td(verdicts: &[DirectionClassification], mu_hat: f64, delta_hat: f64) -> TdMeasure {
    let n = verdicts.len().max(1);
    let hits = verdicts.iter().filter(|v| v.verdict == DirectionVerdict::Transcendental).count();
    let resolution = TAU / n as f64;
    let measure_hat = resolution * hits as f64;
    let lower_bound = td_lower_bound(mu_hat, delta_hat);
    let out_of_hypothesis = !(mu_hat > 0.0 && mu_hat.is_finite() && delta_hat > 0.0);
    let remark_condition = (0.5 * delta_hat.clamp(0.0, 1.0)).sqrt().asin() > mu_hat * PI / 4.0;
    TdMeasure {
        measure_hat,
        lower_bound,
        resolution,
        mu_hat,
        delta_hat,
        out_of_hypothesis,
        pass: if out_of_hypothesis { None } else { Some(measure_hat >= lower_bound - resolution) },
        remark_condition,
    }
}

/// Classify every direction of `theta_grid(n_theta)` (`n_theta >= 64`) and compare with the bound.
pub fn td_measure_estimate<F: Analytic + ?Sized>(
    f: &F,
    poles: &PoleLedger,
    n_theta: usize,
    r_grid: &[f64],
    mu_hat: f64,
    delta_hat: f64,
) -> TdMeasure {
    let n = n_theta.max(64);
    let opts = DirectionOptions::default();
    let verdicts: Vec<DirectionClassification> = theta_grid(n).iter().map(|&t| classify_direction(f, poles, t, r_grid, &opts)).collect();
    summarize_td(&verdicts, mu_hat, delta_hat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunction::catalog_entry;

    #[test]
    fn hm_rejects_bad_input() {
        let e1 = catalog_entry("E1").unwrap();
        let e3 = catalog_entry("E3").unwrap();
        assert!(matches!(make_hm(&e1, &e3, 0, 10.0), Err(TargetError::Domain(0))));
        assert!(matches!(make_hm(&e1, &e1, 1, 10.0), Err(TargetError::IdenticalSpecs)));
    }

    #[test]
    fn h1_closed_forms_agree() {
        let s = c64(1.0, 0.0);
        let e1 = catalog_entry("E1").unwrap();
        let e3 = catalog_entry("E3").unwrap();
        let h = make_hm(&e1, &e3, 1, 10.0).unwrap();
        let v = h.eval(s);
        assert!((v - h1_rewrite(s)).norm() < 1e-14);
        assert!((v - h1_quotient(s)).norm() < 1e-14);
        // 1 + 1/2 + 2/4 + (1/2) / (e - 1)
        let expect = 2.0 + 0.5 / (1f64.exp() - 1.0);
        assert!((v.re - expect).abs() < 1e-14);
        assert_eq!(h1_identity_residual(&[]), 0.0);
    }

    #[test]
    fn sign_flipped_rewrite_differs() {
        // 1 + 2/4^s + 2^{-s}/(e^s - 1) drops a 2^{-s} term
        let s = c64(1.0, 0.0);
        let alt = 1.0 + 0.5 + 0.5 / (1f64.exp() - 1.0);
        assert!((h1_rewrite(s).re - alt - 0.5).abs() < 1e-14);
    }

    #[test]
    fn large_exponent_tends_to_l2() {
        let e1 = catalog_entry("E1").unwrap();
        let e3 = catalog_entry("E3").unwrap();
        let h = make_hm(&e1, &e3, 2, 10.0).unwrap();
        let s = c64(40.0, 0.1);
        let v = h.eval(s);
        assert!(v.re.is_finite());
        assert!((v - e3.evaluate(s).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn lattices() {
        let l = hm_lattice(1, 7.0);
        assert_eq!(l.len(), 3);
        assert_eq!(l[0], (c64(0.0, 0.0), 1));
        let l2 = hm_lattice(2, 3.0);
        // origin plus 4 roots for k = +-1
        assert_eq!(l2.len(), 5);
        for (p, _) in l2.iter().skip(1) {
            assert!(((p * p).exp() - 1.0).norm() < 1e-12);
        }
        let inf = hinf_lattice(&Rect::new(-5.0, 5.0, -10.0, 10.0));
        assert!(inf.iter().any(|(p, _)| (*p - c64(TAU.ln(), 0.5 * PI)).norm() < 1e-12));
        for (p, _) in inf {
            assert!((p.exp().re).abs() < 1e-9);
        }
    }

    #[test]
    fn hinf_safe_box_is_enforced() {
        let e1 = catalog_entry("E1").unwrap();
        let e3 = catalog_entry("E3").unwrap();
        let h = make_hinf(&e1, &e3, 20.0).unwrap();
        assert!(matches!(h.try_eval(c64(6.0, 0.0)), Err(TargetError::Overflow { .. })));
        assert!(h.try_eval(c64(0.0, PI)).unwrap().re.is_finite());
        assert!(h.ln_eval(c64(6.0, 0.0)).0.re.is_nan());
    }

    #[test]
    fn directions_of_exponential() {
        let f = |s: Complex64| s.exp();
        let grid = crate::nevanlinna::geometric_grid(10.0, 1e4, 16);
        let ledger = PoleLedger::empty();
        let exp_ln = LnFn(|s: Complex64| LogComplex(s));
        let r = classify_direction(&exp_ln, &ledger, 0.0, &grid, &DirectionOptions::default());
        assert_eq!(r.verdict, DirectionVerdict::Transcendental);
        let r = classify_direction(&f, &ledger, PI, &grid, &DirectionOptions::default());
        assert_eq!(r.verdict, DirectionVerdict::AValueLimiting(c64(0.0, 0.0)));
        let e1 = catalog_entry("E1").unwrap();
        let g = crate::nevanlinna::geometric_grid(10.0, 40.0, 8);
        let r = classify_direction(&e1, &ledger, 0.0, &g, &DirectionOptions::default());
        match r.verdict {
            DirectionVerdict::AValueLimiting(a) => assert!((a - 1.0).norm() < 1e-6),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn lower_bound_formula() {
        assert!((td_lower_bound(1.0, 1.0) - PI).abs() < 1e-15);
        assert!((td_lower_bound(2.0, 1.0) - 0.5 * PI).abs() < 1e-15);
        assert_eq!(td_lower_bound(0.0, 1.0), TAU);
        let t = summarize_td(&[], 0.0, 1.0);
        assert!(t.out_of_hypothesis && t.pass.is_none());
    }
}
