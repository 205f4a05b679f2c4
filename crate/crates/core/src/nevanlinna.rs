//! Nevanlinna functionals and finite-r growth estimates.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::function::{Analytic, MeroFunction, PoleLedger, ShiftedReciprocal};
use crate::lfunction::{LError, LFunctionSpec};
use crate::quadrature::{bisect_root, GaussLegendre};
use crate::zeros::{locate_zeros_excluding, ZeroError};
use crate::{c64, Rect};

#[derive(Debug, Clone, PartialEq)]
pub enum NevanlinnaError {
    /// `log |f|` was `+inf` or NaN at this angle of the circle.
    Overflow { r: f64, theta: f64 },
    /// The pole ledger is only trusted out to `ledger_radius`.
    LedgerTooShort { ledger_radius: f64, r: f64 },
    InsufficientData { usable: usize },
    /// Samples must span at least a decade of `r`.
    InsufficientSpan { r_min: f64, r_max: f64 },
    /// Degree fits need a grid reaching `r = 100`.
    GridTooShort { r_max: f64 },
    InvalidRadius(f64),
    TooFewTargets(usize),
    DuplicateTargets,
    Zeros(ZeroError),
    L(LError),
}

impl fmt::Display for NevanlinnaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NevanlinnaError::Overflow { r, theta } => write!(f, "evaluator overflow on |s| = {r} at theta = {theta}"),
            NevanlinnaError::LedgerTooShort { ledger_radius, r } => {
                write!(f, "pole ledger reliable only to {ledger_radius}; extend it to r = {r}")
            }
            NevanlinnaError::InsufficientData { usable } => write!(f, "only {usable} usable samples, need at least 8"),
            NevanlinnaError::InsufficientSpan { r_min, r_max } => write!(f, "samples span [{r_min}, {r_max}], less than a decade"),
            NevanlinnaError::GridTooShort { r_max } => write!(f, "grid ends at r = {r_max}; degree fits need r >= 100"),
            NevanlinnaError::InvalidRadius(r) => write!(f, "invalid radius {r}"),
            NevanlinnaError::TooFewTargets(q) => write!(f, "{q} targets given, need at least 3"),
            NevanlinnaError::DuplicateTargets => write!(f, "targets must be distinct"),
            NevanlinnaError::Zeros(e) => write!(f, "zero location failed: {e}"),
            NevanlinnaError::L(e) => write!(f, "{e}"),
        }
    }
}

impl From<ZeroError> for NevanlinnaError {
    fn from(e: ZeroError) -> Self {
        NevanlinnaError::Zeros(e)
    }
}

impl From<LError> for NevanlinnaError {
    fn from(e: LError) -> Self {
        NevanlinnaError::L(e)
    }
}

/// Quadrature controls for [`proximity_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub initial_points: usize,
    pub max_points: usize,
    /// Stop when successive estimates differ by less than `rel_tol * (1 + estimate)`.
    pub rel_tol: f64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions { initial_points: 256, max_points: 1 << 16, rel_tol: 1e-7 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSample {
    pub r: f64,
    pub m_val: f64,
    pub n_val: f64,
    pub t_val: f64,
    /// Radius actually used; differs from `r` when the circle was nudged off a pole.
    pub r_used: f64,
}

/// Finite-r growth estimates with the range they were fitted on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthFit {
    pub rho_hat: f64,
    pub mu_hat: f64,
    pub d_hat: f64,
    pub delta_inf_hat: f64,
    pub residual: f64,
    pub r_range: (f64, f64),
}

fn log_abs_on_circle<F: Analytic + ?Sized>(f: &F, r: f64, theta: f64) -> Result<f64, NevanlinnaError> {
    let v = f.ln_eval(Complex64::from_polar(r, theta)).ln_abs();
    if v.is_nan() || v == f64::INFINITY {
        return Err(NevanlinnaError::Overflow { r, theta });
    }
    Ok(v)
}

/// `(1/2pi) * integral of max(g, 0)` from uniform samples of `g`.
///
/// Without sign changes this is the periodic trapezoid rule. Otherwise the
/// roots of `g` are bisected and each positive arc is integrated with
/// Gauss-Legendre panels aligned to the sample cells.
fn positive_part_mean<G>(g: &mut G, samples: &[f64], gl: &GaussLegendre) -> Result<f64, NevanlinnaError>
where
    G: FnMut(f64) -> Result<f64, NevanlinnaError>,
{
    let n = samples.len();
    let h = TAU / n as f64;
    let start = match samples.iter().position(|&v| v < 0.0) {
        None => return Ok(samples.iter().sum::<f64>() / n as f64),
        Some(k) => k,
    };
    if samples.iter().all(|&v| v < 0.0) {
        return Ok(0.0);
    }
    let mut err = None;
    let mut eval = |t: f64| -> f64 {
        match g(t) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                0.0
            }
        }
    };
    let mut total = 0.0;
    let mut arc_start: Option<f64> = None;
    let mut breaks: Vec<f64> = Vec::new();
    for step in 0..n {
        let k = start + step;
        let (t0, t1) = (h * k as f64, h * (k + 1) as f64);
        let (v0, v1) = (samples[k % n], samples[(k + 1) % n]);
        if v0 < 0.0 && v1 >= 0.0 {
            let a = if v1 == 0.0 { t1 } else { bisect_root(|t| eval(t), t0, t1, 1e-14) };
            arc_start = Some(a);
            breaks.clear();
            breaks.push(a);
            breaks.push(t1);
        } else if v0 >= 0.0 && v1 < 0.0 {
            let b = if v0 == 0.0 { t0 } else { bisect_root(|t| eval(t), t0, t1, 1e-14) };
            if arc_start.is_some() {
                if breaks.last().map_or(true, |&l| l < b) {
                    breaks.push(b);
                } else if let Some(l) = breaks.last_mut() {
                    *l = b;
                }
                for w in breaks.windows(2) {
                    if w[1] > w[0] {
                        total += gl.integrate(|t| eval(t).max(0.0), w[0], w[1], 1);
                    }
                }
            }
            arc_start = None;
            breaks.clear();
        } else if v0 >= 0.0 && arc_start.is_some() {
            breaks.push(t1);
        }
    }
    if let Some(e) = err {
        return Err(e);
    }
    Ok(total / TAU)
}

/// `m(r, f)` for a bare evaluator.
pub fn proximity_of<F: Analytic + ?Sized>(f: &F, r: f64, opts: &QuadratureOptions) -> Result<f64, NevanlinnaError> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(NevanlinnaError::InvalidRadius(r));
    }
    let gl = GaussLegendre::new(16);
    let mut g = |t: f64| log_abs_on_circle(f, r, t);
    let mut n = opts.initial_points.max(8);
    let mut samples: Vec<f64> = (0..n).map(|k| log_abs_on_circle(f, r, TAU * k as f64 / n as f64)).collect::<Result<_, _>>()?;
    let mut prev: Option<f64> = None;
    loop {
        let est = positive_part_mean(&mut g, &samples, &gl)?;
        if let Some(p) = prev {
            if (est - p).abs() < opts.rel_tol * (1.0 + est.abs()) {
                return Ok(est);
            }
        }
        if 2 * n > opts.max_points {
            return Ok(est);
        }
        prev = Some(est);
        // doubling keeps the old samples at the even indices
        let mut next = Vec::with_capacity(2 * n);
        for (k, &v) in samples.iter().enumerate() {
            next.push(v);
            next.push(log_abs_on_circle(f, r, TAU * (2 * k + 1) as f64 / (2 * n) as f64)?);
        }
        samples = next;
        n *= 2;
    }
}

/// Radius used for `f` at nominal `r`: nudged outward when a ledger pole is within `1e-6`.
pub fn circle_radius(poles: &PoleLedger, r: f64) -> f64 {
    let mut rr = r;
    for _ in 0..8 {
        if poles.circle_clearance(rr) >= 1e-6 {
            break;
        }
        rr += 1e-5 * r;
    }
    rr
}

/// `m(r, f)`.
pub fn proximity(f: &MeroFunction<'_>, r: f64) -> Result<f64, NevanlinnaError> {
    proximity_of(f, circle_radius(f.poles(), r), &QuadratureOptions::default())
}

/// `N(r)` from a ledger.
pub fn counting_ledger(poles: &PoleLedger, r: f64) -> Result<f64, NevanlinnaError> {
    if !(r > 0.0) {
        return Err(NevanlinnaError::InvalidRadius(r));
    }
    if poles.reliable_radius() < r {
        return Err(NevanlinnaError::LedgerTooShort { ledger_radius: poles.reliable_radius(), r });
    }
    let mut total = 0.0;
    for &(p, m) in poles.entries() {
        let a = p.norm();
        if a > r {
            break;
        }
        total += m as f64 * if a <= 1e-14 { r.ln() } else { (r / a).ln() };
    }
    Ok(total)
}

/// `N(r, f)`.
pub fn counting(f: &MeroFunction<'_>, r: f64) -> Result<f64, NevanlinnaError> {
    counting_ledger(f.poles(), r)
}

/// `T(r, f) = m + N`, with the nudge applied to both parts.
pub fn characteristic_with(f: &MeroFunction<'_>, r: f64, opts: &QuadratureOptions) -> Result<RadialSample, NevanlinnaError> {
    let rr = circle_radius(f.poles(), r);
    let n_val = counting_ledger(f.poles(), rr)?;
    let m_val = proximity_of(f, rr, opts)?;
    Ok(RadialSample { r, m_val, n_val, t_val: m_val + n_val, r_used: rr })
}

pub fn characteristic(f: &MeroFunction<'_>, r: f64) -> Result<RadialSample, NevanlinnaError> {
    characteristic_with(f, r, &QuadratureOptions::default())
}

/// `T(r)` over a grid, sequentially.
pub fn sweep(f: &MeroFunction<'_>, r_grid: &[f64]) -> Result<Vec<RadialSample>, NevanlinnaError> {
    r_grid.iter().map(|&r| characteristic(f, r)).collect()
}

/// `n` radii spaced geometrically over `[r_min, r_max]`.
pub fn geometric_grid(r_min: f64, r_max: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return alloc::vec![r_min];
    }
    let q = (r_max / r_min).ln() / (n - 1) as f64;
    (0..n).map(|k| if k + 1 == n { r_max } else { r_min * (q * k as f64).exp() }).collect()
}

fn usable(samples: &[RadialSample]) -> Vec<RadialSample> {
    let mut v: Vec<RadialSample> = samples.iter().filter(|s| s.t_val > 0.0 && s.t_val.is_finite()).copied().collect();
    v.sort_by(|a, b| a.r.total_cmp(&b.r));
    v
}

fn check_span(v: &[RadialSample]) -> Result<(f64, f64), NevanlinnaError> {
    if v.len() < 8 {
        return Err(NevanlinnaError::InsufficientData { usable: v.len() });
    }
    let (lo, hi) = (v[0].r, v[v.len() - 1].r);
    if hi < 10.0 * lo * (1.0 - 1e-9) {
        return Err(NevanlinnaError::InsufficientSpan { r_min: lo, r_max: hi });
    }
    Ok((lo, hi))
}

/// Relative least squares of `T ~ r^rho (alpha log r + beta)` for fixed `rho`.
fn power_log_residual(pts: &[(f64, f64)], rho: f64) -> f64 {
    // rows (log r, 1) * r^rho / T, target 1
    let (mut s11, mut s12, mut s22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(r, t) in pts {
        let w = r.powf(rho) / t;
        let x1 = w * r.ln();
        let x2 = w;
        s11 += x1 * x1;
        s12 += x1 * x2;
        s22 += x2 * x2;
        b1 += x1;
        b2 += x2;
    }
    let det = s11 * s22 - s12 * s12;
    let (alpha, beta) = if det.abs() > 1e-300 * s11.max(1.0) * s22.max(1.0) {
        ((b1 * s22 - b2 * s12) / det, (s11 * b2 - s12 * b1) / det)
    } else {
        (0.0, b2 / s22)
    };
    let mut ss = 0.0;
    for &(r, t) in pts {
        let w = r.powf(rho) / t;
        let e = w * (alpha * r.ln() + beta) - 1.0;
        ss += e * e;
    }
    (ss / pts.len() as f64).sqrt()
}

/// Best `rho` in `[0, 12]` for the model `r^rho (alpha log r + beta)`.
fn fit_power_log(pts: &[(f64, f64)]) -> (f64, f64) {
    let mut best = (0.0, power_log_residual(pts, 0.0));
    let mut rho = 0.0;
    while rho <= 12.0 {
        let e = power_log_residual(pts, rho);
        if e < best.1 {
            best = (rho, e);
        }
        rho += 0.01;
    }
    // golden-section polish inside the bracketing grid cell
    let (mut a, mut b) = ((best.0 - 0.01).max(0.0), best.0 + 0.01);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..60 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if power_log_residual(pts, c) < power_log_residual(pts, d) {
            b = d;
        } else {
            a = c;
        }
    }
    let r = 0.5 * (a + b);
    let e = power_log_residual(pts, r);
    if e < best.1 {
        (r, e)
    } else {
        best
    }
}

/// Sliding-window envelopes over 5 consecutive samples, keyed by the window's centre radius.
fn envelopes(v: &[RadialSample]) -> (Vec<(f64, f64)>, Vec<(f64, f64)>) {
    let mut up = Vec::new();
    let mut lo = Vec::new();
    for w in v.windows(5) {
        let c = w[2].r;
        let max = w.iter().map(|s| s.t_val).fold(f64::NEG_INFINITY, f64::max);
        let min = w.iter().map(|s| s.t_val).fold(f64::INFINITY, f64::min);
        up.push((c, max));
        lo.push((c, min));
    }
    (up, lo)
}

/// `delta(inf)` estimate: `1 - max N/T` over the top decade, clamped to `[0, 1]`.
pub fn deficiency_infinity(samples: &[RadialSample]) -> Result<f64, NevanlinnaError> {
    let v = usable(samples);
    if v.len() < 8 {
        return Err(NevanlinnaError::InsufficientData { usable: v.len() });
    }
    let r_max = v[v.len() - 1].r;
    let worst = v.iter().filter(|s| s.r >= r_max / 10.0).map(|s| s.n_val / s.t_val).fold(0.0, f64::max);
    Ok((1.0 - worst).clamp(0.0, 1.0))
}

/// Order and lower order from the upper and lower envelopes of `T`.
///
/// Plain log-log slopes are biased for `T ~ r log r`, so each envelope is
/// fitted with `r^rho (alpha log r + beta)`.
pub fn order_fit(samples: &[RadialSample]) -> Result<GrowthFit, NevanlinnaError> {
    let v = usable(samples);
    let range = check_span(&v)?;
    let (up, lo) = envelopes(&v);
    let (rho, resid) = fit_power_log(&up);
    let (mu, _) = fit_power_log(&lo);
    Ok(GrowthFit {
        rho_hat: rho,
        mu_hat: mu.min(rho),
        d_hat: f64::NAN,
        delta_inf_hat: deficiency_infinity(&v)?,
        residual: resid,
        r_range: range,
    })
}

/// Least squares `T ~ alpha r log r + beta r + gamma`; `d_hat = pi alpha`.
pub fn fit_degree(samples: &[RadialSample]) -> Result<GrowthFit, NevanlinnaError> {
    let v: Vec<RadialSample> = {
        let mut v: Vec<RadialSample> = samples.iter().filter(|s| s.t_val.is_finite()).copied().collect();
        v.sort_by(|a, b| a.r.total_cmp(&b.r));
        v
    };
    let range = check_span(&v)?;
    let rows: Vec<([f64; 3], f64)> = v.iter().map(|s| ([s.r * s.r.ln(), s.r, 1.0], s.t_val)).collect();
    let (coef, resid) = least_squares3(&rows);
    let mut fit = match order_fit(&v) {
        Ok(f) => f,
        Err(_) => GrowthFit { rho_hat: 0.0, mu_hat: 0.0, d_hat: 0.0, delta_inf_hat: 1.0, residual: 0.0, r_range: range },
    };
    fit.d_hat = PI * coef[0];
    fit.residual = resid;
    Ok(fit)
}

/// Samples `L` on `r_grid` and fits its degree.
pub fn degree_fit(l: &LFunctionSpec, r_grid: &[f64]) -> Result<GrowthFit, NevanlinnaError> {
    let r_max = r_grid.iter().copied().fold(0.0, f64::max);
    if l.degree()? > 0.0 && r_max < 100.0 {
        return Err(NevanlinnaError::GridTooShort { r_max });
    }
    let f = MeroFunction::from_lfunction(l);
    fit_degree(&sweep(&f, r_grid)?)
}

/// Column-scaled normal equations for three regressors; returns RMS residual too.
fn least_squares3(rows: &[([f64; 3], f64)]) -> ([f64; 3], f64) {
    let mut scale = [0.0f64; 3];
    for (x, _) in rows {
        for j in 0..3 {
            scale[j] = scale[j].max(x[j].abs());
        }
    }
    for s in scale.iter_mut() {
        if *s == 0.0 {
            *s = 1.0;
        }
    }
    let mut a = [[0.0f64; 4]; 3];
    for (x, y) in rows {
        let xs = [x[0] / scale[0], x[1] / scale[1], x[2] / scale[2]];
        for i in 0..3 {
            for j in 0..3 {
                a[i][j] += xs[i] * xs[j];
            }
            a[i][3] += xs[i] * y;
        }
    }
    // Gaussian elimination with partial pivoting
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap_or(col);
        a.swap(col, piv);
        let p = a[col][col];
        if p.abs() < 1e-300 {
            continue;
        }
        for row in 0..3 {
            if row != col {
                let factor = a[row][col] / p;
                for k in col..4 {
                    a[row][k] -= factor * a[col][k];
                }
            }
        }
    }
    let mut coef = [0.0; 3];
    for i in 0..3 {
        coef[i] = if a[i][i].abs() < 1e-300 { 0.0 } else { a[i][3] / a[i][i] / scale[i] };
    }
    let ss: f64 = rows
        .iter()
        .map(|(x, y)| {
            let e = coef[0] * x[0] + coef[1] * x[1] + coef[2] * x[2] - y;
            e * e
        })
        .sum();
    (coef, (ss / rows.len().max(1) as f64).sqrt())
}

/// Ordinary least-squares slope of `y` against `x`.
pub fn regression_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return 0.0;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Where to look for `c`-points when a ledger for `1/(f - c)` is built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroSearch {
    pub tol: f64,
}

impl Default for ZeroSearch {
    fn default() -> Self {
        ZeroSearch { tol: 1e-8 }
    }
}

/// Ledger of the `c`-points of `f` in `|s| <= radius`, found by zero location.
pub fn c_point_ledger(f: &MeroFunction<'_>, c: Complex64, radius: f64, search: &ZeroSearch) -> Result<PoleLedger, NevanlinnaError> {
    let half = radius * (1.0 + 1e-3) + 1e-3;
    let rect = Rect::square(c64(0.0, 0.0), half);
    let shifted = crate::function::Shifted { f, c };
    let excluded: Vec<Complex64> = f.poles().entries().iter().map(|e| e.0).filter(|p| rect.contains(*p)).collect();
    let zs = locate_zeros_excluding(&shifted, &rect, search.tol, &excluded)?;
    let entries = zs.iter().filter(|z| z.location.norm() <= radius).map(|z| (z.location, z.multiplicity)).collect();
    Ok(PoleLedger::new(entries, radius))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FmtRow {
    pub r: f64,
    pub t_shifted: f64,
    pub t_f: f64,
    /// `T(r, 1/(f-c)) - T(r, f)`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FmtReport {
    pub rows: Vec<FmtRow>,
    pub max_abs: f64,
    pub slope: f64,
}

/// One row of the First Main Theorem table at radius `r`.
pub fn fmt_row(f: &MeroFunction<'_>, c: Complex64, c_points: &PoleLedger, r: f64) -> Result<FmtRow, NevanlinnaError> {
    let inv = MeroFunction::new("1/(f-c)", ShiftedReciprocal { f, c }, c_points.clone());
    let a = characteristic(&inv, r)?;
    let b = characteristic(f, r)?;
    Ok(FmtRow { r, t_shifted: a.t_val, t_f: b.t_val, residual: a.t_val - b.t_val })
}

pub fn summarize_fmt(rows: Vec<FmtRow>) -> FmtReport {
    let max_abs = rows.iter().map(|x| x.residual.abs()).fold(0.0, f64::max);
    let slope = regression_slope(&rows.iter().map(|x| (x.r, x.residual)).collect::<Vec<_>>());
    FmtReport { rows, max_abs, slope }
}

/// `T(r, 1/(f-c)) - T(r, f)` over the grid.
pub fn fmt_residual(f: &MeroFunction<'_>, c: Complex64, r_grid: &[f64], search: &ZeroSearch) -> Result<FmtReport, NevanlinnaError> {
    let r_max = r_grid.iter().copied().fold(0.0, f64::max);
    let ledger = c_point_ledger(f, c, r_max * 1.001, search)?;
    let rows = r_grid.iter().map(|&r| fmt_row(f, c, &ledger, r)).collect::<Result<Vec<_>, _>>()?;
    Ok(summarize_fmt(rows))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SmtTarget {
    Finite(Complex64),
    Infinity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmtRow {
    pub r: f64,
    pub lhs: f64,
    pub n_sum: f64,
    /// `(q - 2) T - sum N`, the unquantified remainder term.
    pub slack: f64,
}

pub fn check_smt_targets(targets: &[SmtTarget]) -> Result<(), NevanlinnaError> {
    if targets.len() < 3 {
        return Err(NevanlinnaError::TooFewTargets(targets.len()));
    }
    for i in 0..targets.len() {
        for j in i + 1..targets.len() {
            if targets[i] == targets[j] {
                return Err(NevanlinnaError::DuplicateTargets);
            }
        }
    }
    Ok(())
}

/// Report-only Second Main Theorem table.
pub fn smt_diagnostic(f: &MeroFunction<'_>, targets: &[SmtTarget], r_grid: &[f64], search: &ZeroSearch) -> Result<Vec<SmtRow>, NevanlinnaError> {
    check_smt_targets(targets)?;
    let r_max = r_grid.iter().copied().fold(0.0, f64::max);
    let mut ledgers = Vec::with_capacity(targets.len());
    for t in targets {
        ledgers.push(match t {
            SmtTarget::Infinity => f.poles().clone(),
            SmtTarget::Finite(c) => c_point_ledger(f, *c, r_max * 1.001, search)?,
        });
    }
    let q = targets.len() as f64;
    let mut rows = Vec::new();
    for &r in r_grid {
        let t = characteristic(f, r)?.t_val;
        let mut n_sum = 0.0;
        for l in ledgers.iter() {
            n_sum += counting_ledger(l, r)?;
        }
        let lhs = (q - 2.0) * t;
        rows.push(SmtRow { r, lhs, n_sum, slack: lhs - n_sum });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logc::LogComplex;

    #[test]
    fn proximity_of_constant_and_exponential() {
        let ten = MeroFunction::entire_ln("10", |_s| LogComplex::from_real(10.0));
        assert!((proximity(&ten, 3.0).unwrap() - 10f64.ln()).abs() < 1e-14);
        let e = MeroFunction::entire_ln("exp", |s| LogComplex(s));
        assert!((proximity(&e, 10.0).unwrap() - 10.0 / PI).abs() < 1e-9);
        let small = MeroFunction::entire_ln("1/2", |_s| LogComplex::from_real(0.5));
        assert_eq!(proximity(&small, 3.0).unwrap(), 0.0);
    }

    #[test]
    fn counting_closed_forms() {
        let l = PoleLedger::new(alloc::vec![(c64(1.0, 0.0), 1), (c64(2.0, 0.0), 1)], f64::INFINITY);
        assert!((counting_ledger(&l, 4.0).unwrap() - (4f64.ln() + 2f64.ln())).abs() < 1e-15);
        let short = PoleLedger::new(alloc::vec![], 3.0);
        assert!(matches!(counting_ledger(&short, 4.0), Err(NevanlinnaError::LedgerTooShort { .. })));
        let origin = PoleLedger::new(alloc::vec![(c64(0.0, 0.0), 2)], 10.0);
        assert!((counting_ledger(&origin, 5.0).unwrap() - 2.0 * 5f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn nudge_moves_off_poles() {
        let l = PoleLedger::new(alloc::vec![(c64(0.0, 5.0), 1)], f64::INFINITY);
        let rr = circle_radius(&l, 5.0);
        assert!(rr > 5.0 && (rr - 5.0 - 5e-5).abs() < 1e-12);
        assert_eq!(circle_radius(&PoleLedger::empty(), 5.0), 5.0);
    }

    #[test]
    fn order_of_exponential() {
        let e = MeroFunction::entire_ln("exp", |s| LogComplex(s));
        let samples = sweep(&e, &geometric_grid(10.0, 300.0, 16)).unwrap();
        let fit = order_fit(&samples).unwrap();
        assert!((fit.rho_hat - 1.0).abs() < 0.05, "{fit:?}");
        assert!(fit.mu_hat <= fit.rho_hat + 1e-9);
        assert_eq!(fit.delta_inf_hat, 1.0);
        assert!(matches!(order_fit(&samples[..5]), Err(NevanlinnaError::InsufficientData { .. })));
    }

    #[test]
    fn smt_rejects_bad_targets() {
        let t = [SmtTarget::Finite(c64(0.0, 0.0)), SmtTarget::Infinity];
        assert_eq!(check_smt_targets(&t), Err(NevanlinnaError::TooFewTargets(2)));
        let t = [SmtTarget::Infinity, SmtTarget::Finite(c64(1.0, 0.0)), SmtTarget::Infinity];
        assert_eq!(check_smt_targets(&t), Err(NevanlinnaError::DuplicateTargets));
    }

    #[test]
    fn least_squares_recovers_plane() {
        let rows: Vec<([f64; 3], f64)> = (1..20)
            .map(|k| {
                let r = 10.0 * k as f64;
                ([r * r.ln(), r, 1.0], 0.3 * r * r.ln() - 0.7 * r + 2.0)
            })
            .collect();
        let (c, e) = least_squares3(&rows);
        assert!((c[0] - 0.3).abs() < 1e-9 && (c[1] + 0.7).abs() < 1e-8 && (c[2] - 2.0).abs() < 1e-6);
        assert!(e < 1e-8);
    }
}
