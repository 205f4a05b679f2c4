//! Argument-principle zero location.
//!
//! Winding numbers come from unwrapping the phase of `f` along the contour,
//! so only evaluations of `f` are needed.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::function::Analytic;
use crate::logc::{wrap_phase, LogComplex};
use crate::{c64, Rect};

/// Phase steps must stay below this before they are trusted.
const MAX_STEP: f64 = 0.5 * PI;
const MAX_DEPTH: u32 = 52;

#[derive(Debug, Clone, PartialEq)]
pub enum ZeroError {
    /// `f` vanishes (or is singular) on or extremely close to the contour.
    NearZeroOnContour { at: Complex64 },
    /// The unwrapped phase did not settle near a multiple of `2 pi`.
    RefinementFailure { winding: f64 },
    InvalidContour,
    /// Jittered subdivision edges kept hitting zeros.
    PersistentEdgeFailure { rect: Rect },
    /// A sub-box winds negatively: a pole that was not declared.
    UndeclaredPole { rect: Rect, winding: i64 },
    /// No `|m| <= 10` makes `log phi - m log(s-1)` affine along the path.
    NonAffineExponent { best_m: i32, residual: f64 },
    /// `f / g` is zero or infinite somewhere on the path.
    DegeneratePath { at: Complex64 },
}

impl fmt::Display for ZeroError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZeroError::NearZeroOnContour { at } => write!(f, "function vanishes or is singular near {at} on the contour"),
            ZeroError::RefinementFailure { winding } => write!(f, "winding number {winding} is not within 1e-3 of an integer"),
            ZeroError::InvalidContour => write!(f, "degenerate contour"),
            ZeroError::PersistentEdgeFailure { rect } => write!(
                f,
                "zeros keep landing on subdivision edges of [{}, {}] x [{}, {}]",
                rect.re_min, rect.re_max, rect.im_min, rect.im_max
            ),
            ZeroError::UndeclaredPole { rect, winding } => write!(
                f,
                "winding {winding} on [{}, {}] x [{}, {}]: undeclared pole",
                rect.re_min, rect.re_max, rect.im_min, rect.im_max
            ),
            ZeroError::NonAffineExponent { best_m, residual } => {
                write!(f, "no affine exponent fits: best m = {best_m} leaves residual {residual:e}")
            }
            ZeroError::DegeneratePath { at } => write!(f, "quotient is zero or infinite at {at}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContourKind {
    Circle { center: Complex64, radius: f64 },
    Rectangle(Rect),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contour {
    pub kind: ContourKind,
    /// Initial number of sample points before adaptive refinement.
    pub sample_budget: usize,
}

impl Contour {
    pub fn circle(center: Complex64, radius: f64) -> Self {
        Contour { kind: ContourKind::Circle { center, radius }, sample_budget: 64 }
    }

    pub fn rectangle(rect: Rect) -> Self {
        Contour { kind: ContourKind::Rectangle(rect), sample_budget: 64 }
    }

    pub fn with_budget(mut self, n: usize) -> Self {
        self.sample_budget = n;
        self
    }

    pub fn is_valid(&self) -> bool {
        match self.kind {
            ContourKind::Circle { center, radius } => radius > 0.0 && radius.is_finite() && center.re.is_finite() && center.im.is_finite(),
            ContourKind::Rectangle(r) => r.is_valid(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub location: Complex64,
    pub multiplicity: u32,
    /// Radius of a circle about `location` on which the winding equals `multiplicity`.
    pub isolation_radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Unequal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchReport {
    pub matched_pairs: Vec<(ZeroRecord, ZeroRecord)>,
    pub unmatched_left: Vec<ZeroRecord>,
    pub unmatched_right: Vec<ZeroRecord>,
    pub verdict: Verdict,
    pub match_tolerance: f64,
    /// Smallest distance between two distinct zeros found on either side.
    pub min_gap: Option<f64>,
}

impl MatchReport {
    /// The same comparison seen from the other side.
    pub fn mirrored(&self) -> MatchReport {
        MatchReport {
            matched_pairs: self.matched_pairs.iter().map(|&(a, b)| (b, a)).collect(),
            unmatched_left: self.unmatched_right.clone(),
            unmatched_right: self.unmatched_left.clone(),
            verdict: self.verdict,
            match_tolerance: self.match_tolerance,
            min_gap: self.min_gap,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HadamardQuotientFit {
    pub m: i32,
    pub a: Complex64,
    pub b: Complex64,
    pub max_relative_residual: f64,
}

fn checked_ln<F: Analytic + ?Sized>(f: &F, s: Complex64) -> Result<LogComplex, ZeroError> {
    let v = f.ln_eval(s);
    if !v.is_finite() || v.is_zero() || v.0.re.is_nan() {
        return Err(ZeroError::NearZeroOnContour { at: s });
    }
    Ok(v)
}

/// `f` is close to linear between the samples relative to its size.
///
/// Phase checks alone miss a double zero passing between two samples (the
/// phase turns by almost `2 pi`); the second difference of `f` does not.
fn nearly_linear(fa: LogComplex, fm: LogComplex, fb: LogComplex) -> bool {
    let xa = fa.0 - fm.0;
    let xb = fb.0 - fm.0;
    if xa.re.abs() > 2.0 || xb.re.abs() > 2.0 {
        return false;
    }
    let (ra, rb) = (xa.exp(), xb.exp());
    (ra + rb - 2.0).norm() <= 0.5 * ra.norm().min(rb.norm()).min(1.0)
}

/// Cauchy-Riemann cross-check of a phase step `d` over a piece of contour
/// of length `len` with unit left normal `normal` at `mid`.
///
/// The tangential phase rate of `f` equals minus the normal derivative of
/// `log |f|`, which involves moduli only and so cannot alias by whole turns.
fn normal_rate_agrees<F: Analytic + ?Sized>(f: &F, mid: Complex64, normal: Complex64, h: f64, len: f64, d: f64) -> bool {
    let left = f.ln_eval(mid + normal * h).ln_abs();
    let right = f.ln_eval(mid - normal * h).ln_abs();
    if !(left.is_finite() && right.is_finite()) {
        return true;
    }
    let predicted = -len * (left - right) / (2.0 * h);
    (predicted - d).abs() <= 1.0
}

/// Phase change of `f` along the straight segment `a -> b`.
fn segment_phase<F: Analytic + ?Sized>(f: &F, a: Complex64, b: Complex64, fa: LogComplex, fb: LogComplex, depth: u32) -> Result<f64, ZeroError> {
    let d = wrap_phase(fb.phase() - fa.phase());
    let mid = (a + b) * 0.5;
    if depth >= MAX_DEPTH {
        if d.abs() < MAX_STEP {
            return Ok(d);
        }
        return Err(ZeroError::NearZeroOnContour { at: mid });
    }
    let fm = checked_ln(f, mid)?;
    let d1 = wrap_phase(fm.phase() - fa.phase());
    let d2 = wrap_phase(fb.phase() - fm.phase());
    if d.abs() < MAX_STEP && d1.abs() < MAX_STEP && d2.abs() < MAX_STEP && nearly_linear(fa, fm, fb) {
        let len = (b - a).norm();
        let normal = (b - a) * Complex64::i() / len;
        if normal_rate_agrees(f, mid, normal, 0.5 * len, len, d) {
            return Ok(d);
        }
    }
    Ok(segment_phase(f, a, mid, fa, fm, depth + 1)? + segment_phase(f, mid, b, fm, fb, depth + 1)?)
}

/// Phase change along a circular arc, parametrised by angle.
fn arc_phase<F: Analytic + ?Sized>(
    f: &F,
    center: Complex64,
    radius: f64,
    (t0, t1): (f64, f64),
    fa: LogComplex,
    fb: LogComplex,
    depth: u32,
) -> Result<f64, ZeroError> {
    let d = wrap_phase(fb.phase() - fa.phase());
    let tm = 0.5 * (t0 + t1);
    let mid = center + Complex64::from_polar(radius, tm);
    if depth >= MAX_DEPTH {
        if d.abs() < MAX_STEP {
            return Ok(d);
        }
        return Err(ZeroError::NearZeroOnContour { at: mid });
    }
    let fm = checked_ln(f, mid)?;
    let d1 = wrap_phase(fm.phase() - fa.phase());
    let d2 = wrap_phase(fb.phase() - fm.phase());
    if d.abs() < MAX_STEP && d1.abs() < MAX_STEP && d2.abs() < MAX_STEP && nearly_linear(fa, fm, fb) {
        let len = radius * (t1 - t0);
        // inward normal of a counter-clockwise circle
        let normal = -Complex64::from_polar(1.0, tm);
        if normal_rate_agrees(f, mid, normal, (0.5 * len).min(0.5 * radius), len, d) {
            return Ok(d);
        }
    }
    Ok(arc_phase(f, center, radius, (t0, tm), fa, fm, depth + 1)? + arc_phase(f, center, radius, (tm, t1), fm, fb, depth + 1)?)
}

/// Total phase change of `f` along `contour`, in radians.
pub fn total_phase_change<F: Analytic + ?Sized>(f: &F, contour: &Contour) -> Result<f64, ZeroError> {
    if !contour.is_valid() {
        return Err(ZeroError::InvalidContour);
    }
    let budget = contour.sample_budget.max(8);
    let mut total = 0.0;
    match contour.kind {
        ContourKind::Circle { center, radius } => {
            let ts: Vec<f64> = (0..=budget).map(|k| TAU * k as f64 / budget as f64).collect();
            let mut prev = checked_ln(f, center + radius)?;
            let first = prev;
            for k in 0..budget {
                let next = if k + 1 == budget { first } else { checked_ln(f, center + Complex64::from_polar(radius, ts[k + 1]))? };
                total += arc_phase(f, center, radius, (ts[k], ts[k + 1]), prev, next, 0)?;
                prev = next;
            }
        }
        ContourKind::Rectangle(rect) => {
            let corners = rect.corners();
            let perimeter = 2.0 * (rect.width() + rect.height());
            let first = checked_ln(f, corners[0])?;
            let mut prev = first;
            for side in 0..4 {
                let a = corners[side];
                let b = corners[(side + 1) % 4];
                let n = (((b - a).norm() / perimeter) * budget as f64).ceil().max(2.0) as usize;
                for k in 0..n {
                    let p0 = a + (b - a) * (k as f64 / n as f64);
                    let p1 = a + (b - a) * ((k + 1) as f64 / n as f64);
                    let next = if side == 3 && k + 1 == n { first } else { checked_ln(f, p1)? };
                    total += segment_phase(f, p0, p1, prev, next, 0)?;
                    prev = next;
                }
            }
        }
    }
    Ok(total)
}

/// Zeros minus poles of `f` inside `contour`, counted with multiplicity.
pub fn winding_number<F: Analytic + ?Sized>(f: &F, contour: &Contour) -> Result<i64, ZeroError> {
    let w = total_phase_change(f, contour)? / TAU;
    let n = w.round();
    if (w - n).abs() > 1e-3 {
        return Err(ZeroError::RefinementFailure { winding: w });
    }
    Ok(n as i64)
}

fn rect_winding<F: Analytic + ?Sized>(f: &F, rect: &Rect) -> Result<i64, ZeroError> {
    winding_number(f, &Contour::rectangle(*rect))
}

/// `f'(z)` from the Cauchy integral over 16 points on `|s - z| = rho`.
pub fn cauchy_derivative<F: Analytic + ?Sized>(f: &F, z: Complex64, rho: f64) -> Complex64 {
    const N: usize = 16;
    let mut acc = c64(0.0, 0.0);
    for k in 0..N {
        let w = Complex64::from_polar(1.0, TAU * (k as f64 + 0.5) / N as f64);
        acc += f.eval(z + w * rho) / w;
    }
    acc / (N as f64 * rho)
}

fn newton<F: Analytic + ?Sized>(f: &F, start: Complex64, rho: f64) -> Option<Complex64> {
    let mut z = start;
    for _ in 0..60 {
        let fz = f.eval(z);
        if fz.norm() == 0.0 {
            return Some(z);
        }
        let d = cauchy_derivative(f, z, rho);
        if d.norm() == 0.0 || !d.re.is_finite() || !d.im.is_finite() {
            return None;
        }
        let step = fz / d;
        if !step.re.is_finite() || !step.im.is_finite() {
            return None;
        }
        z -= step;
        if (z - start).norm() > 8.0 * rho {
            // left the box being searched
            return None;
        }
        if step.norm() <= 1e-15 * z.norm().max(1.0) {
            return Some(z);
        }
    }
    None
}

fn split_rect(rect: &Rect, fx: f64, fy: f64) -> [Rect; 4] {
    let x = rect.re_min + fx * rect.width();
    let y = rect.im_min + fy * rect.height();
    [
        Rect::new(rect.re_min, x, rect.im_min, y),
        Rect::new(x, rect.re_max, rect.im_min, y),
        Rect::new(rect.re_min, x, y, rect.im_max),
        Rect::new(x, rect.re_max, y, rect.im_max),
    ]
}

fn touches_excluded(rect: &Rect, excluded: &[Complex64], margin: f64) -> bool {
    excluded.iter().any(|p| {
        p.re >= rect.re_min - margin && p.re <= rect.re_max + margin && p.im >= rect.im_min - margin && p.im <= rect.im_max + margin
    })
}

// off-centre split points keep the lines Re = 0, 1/2 and Im = 0 off the grid
const SPLIT: f64 = 0.512_3;

struct Locator<'a, F: ?Sized> {
    f: &'a F,
    tol: f64,
    excluded: &'a [Complex64],
    found: Vec<ZeroRecord>,
}

impl<F: Analytic + ?Sized> Locator<'_, F> {
    fn excluded_in(&self, rect: &Rect) -> bool {
        touches_excluded(rect, self.excluded, 2.0 * self.tol)
    }

    /// Windings of the four children, jittering the split point when an edge hits a zero.
    fn children(&self, rect: &Rect) -> Result<Vec<(Rect, Option<i64>)>, ZeroError> {
        let jitter = self.tol / 10.0;
        for attempt in 0..10 {
            let shift = if attempt == 0 { 0.0 } else { jitter * 3f64.powi(attempt as i32 - 1) * if attempt % 2 == 0 { -1.0 } else { 1.0 } };
            let fx = SPLIT + shift / rect.width();
            let fy = SPLIT + shift / rect.height();
            if !(0.05..=0.95).contains(&fx) || !(0.05..=0.95).contains(&fy) {
                break;
            }
            let quads = split_rect(rect, fx, fy);
            let mut out = Vec::with_capacity(4);
            let mut ok = true;
            for q in quads.iter() {
                if self.excluded_in(q) {
                    out.push((*q, None));
                    continue;
                }
                match rect_winding(self.f, q) {
                    Ok(w) => out.push((*q, Some(w))),
                    Err(ZeroError::NearZeroOnContour { .. }) | Err(ZeroError::RefinementFailure { .. }) => {
                        ok = false;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            if ok {
                return Ok(out);
            }
        }
        Err(ZeroError::PersistentEdgeFailure { rect: *rect })
    }

    fn process(&mut self, rect: Rect, winding: Option<i64>) -> Result<(), ZeroError> {
        let side = rect.width().max(rect.height());
        match winding {
            None => {
                // box holds an excluded point: cut it out once it is small
                if side <= 4.0 * self.tol {
                    return Ok(());
                }
            }
            Some(0) => return Ok(()),
            Some(w) if w < 0 => return Err(ZeroError::UndeclaredPole { rect, winding: w }),
            Some(1) => {
                if let Some(rec) = self.try_newton(&rect) {
                    self.found.push(rec);
                    return Ok(());
                }
                if rect.diameter() < self.tol {
                    self.found.push(self.centre_record(&rect, 1));
                    return Ok(());
                }
            }
            Some(w) => {
                if rect.diameter() < self.tol {
                    self.found.push(self.centre_record(&rect, w as u32));
                    return Ok(());
                }
            }
        }
        let kids = self.children(&rect)?;
        if let Some(w) = winding {
            if kids.iter().all(|k| k.1.is_some()) {
                let sum: i64 = kids.iter().map(|k| k.1.unwrap_or(0)).sum();
                if sum != w {
                    return Err(ZeroError::RefinementFailure { winding: sum as f64 });
                }
            }
        }
        for (q, w) in kids {
            self.process(q, w)?;
        }
        Ok(())
    }

    fn try_newton(&self, rect: &Rect) -> Option<ZeroRecord> {
        let rho = rect.diameter() / 4.0;
        let z = newton(self.f, rect.center(), rho)?;
        if !rect.contains(z) {
            return None;
        }
        let mut radius = rect.inner_distance(z).min(rect.diameter());
        for _ in 0..8 {
            if radius <= 1e-15 * z.norm().max(1.0) {
                break;
            }
            if winding_number(self.f, &Contour::circle(z, radius)) == Ok(1) {
                return Some(ZeroRecord { location: z, multiplicity: 1, isolation_radius: radius });
            }
            radius *= 0.5;
        }
        None
    }

    fn centre_record(&self, rect: &Rect, w: u32) -> ZeroRecord {
        let c = rect.center();
        let mut radius = 0.5 * rect.diameter();
        for _ in 0..4 {
            if winding_number(self.f, &Contour::circle(c, radius)) == Ok(w as i64) {
                break;
            }
            radius *= 1.5;
        }
        ZeroRecord { location: c, multiplicity: w, isolation_radius: radius }
    }
}

fn jittered_outer<F: Analytic + ?Sized>(f: &F, rect: &Rect, tol: f64) -> Result<(Rect, i64), ZeroError> {
    let step = tol / 10.0;
    for attempt in 0..10 {
        let g = step * 3f64.powi(attempt) * if attempt == 0 { 0.0 } else { 1.0 };
        let r = Rect::new(rect.re_min - g, rect.re_max + g, rect.im_min - g, rect.im_max + g);
        match rect_winding(f, &r) {
            Ok(w) => return Ok((r, w)),
            Err(ZeroError::NearZeroOnContour { .. }) | Err(ZeroError::RefinementFailure { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(ZeroError::PersistentEdgeFailure { rect: *rect })
}

/// Zeros of `f` in `rect`, sorted by real then imaginary part.
///
/// `excluded` lists poles of `f`; boxes containing one are split down to
/// side `4 tol` and then dropped.
pub fn locate_zeros_excluding<F: Analytic + ?Sized>(f: &F, rect: &Rect, tol: f64, excluded: &[Complex64]) -> Result<Vec<ZeroRecord>, ZeroError> {
    if !rect.is_valid() || !(tol > 0.0) {
        return Err(ZeroError::InvalidContour);
    }
    let mut loc = Locator { f, tol, excluded, found: Vec::new() };
    let (outer, w) = if touches_excluded(rect, excluded, 2.0 * tol) {
        (*rect, None)
    } else {
        let (r, w) = jittered_outer(f, rect, tol)?;
        (r, Some(w))
    };
    loc.process(outer, w)?;
    let mut out = loc.found;
    out.sort_by(|a, b| a.location.re.total_cmp(&b.location.re).then(a.location.im.total_cmp(&b.location.im)));
    Ok(out)
}

pub fn locate_zeros<F: Analytic + ?Sized>(f: &F, rect: &Rect, tol: f64) -> Result<Vec<ZeroRecord>, ZeroError> {
    locate_zeros_excluding(f, rect, tol, &[])
}

fn min_gap(zs: &[ZeroRecord]) -> Option<f64> {
    let mut best: Option<f64> = None;
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            let d = (zs[i].location - zs[j].location).norm();
            best = Some(best.map_or(d, |b| b.min(d)));
        }
    }
    best
}

/// Greedy nearest-neighbour matching of two zero lists.
pub fn match_zero_sets(left: &[ZeroRecord], right: &[ZeroRecord], match_tol: f64) -> MatchReport {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, a) in left.iter().enumerate() {
        for (j, b) in right.iter().enumerate() {
            let d = (a.location - b.location).norm();
            if d <= match_tol {
                pairs.push((d, i, j));
            }
        }
    }
    // ties broken by location so the result does not depend on argument order
    pairs.sort_by(|x, y| {
        x.0.total_cmp(&y.0)
            .then(left[x.1].location.re.total_cmp(&left[y.1].location.re))
            .then(left[x.1].location.im.total_cmp(&left[y.1].location.im))
    });
    let mut used_l = alloc::vec![false; left.len()];
    let mut used_r = alloc::vec![false; right.len()];
    let mut matched = Vec::new();
    for (_, i, j) in pairs {
        if used_l[i] || used_r[j] {
            continue;
        }
        used_l[i] = true;
        used_r[j] = true;
        matched.push((left[i], right[j]));
    }
    matched.sort_by(|a, b| a.0.location.re.total_cmp(&b.0.location.re).then(a.0.location.im.total_cmp(&b.0.location.im)));
    let unmatched_left: Vec<ZeroRecord> = left.iter().zip(used_l.iter()).filter(|(_, u)| !**u).map(|(z, _)| *z).collect();
    let unmatched_right: Vec<ZeroRecord> = right.iter().zip(used_r.iter()).filter(|(_, u)| !**u).map(|(z, _)| *z).collect();
    let equal = unmatched_left.is_empty() && unmatched_right.is_empty() && matched.iter().all(|(a, b)| a.multiplicity == b.multiplicity);
    let gaps = [min_gap(left), min_gap(right)];
    let min_gap = gaps.iter().flatten().copied().fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.min(v))));
    MatchReport {
        matched_pairs: matched,
        unmatched_left,
        unmatched_right,
        verdict: if equal { Verdict::Equal } else { Verdict::Unequal },
        match_tolerance: match_tol,
        min_gap,
    }
}

/// Locate the zeros of `f` and `g` in `rect` and compare them as multisets.
///
/// Locations match when they are within `10 tol`.
pub fn compare_zero_sets<F, G>(f: &F, g: &G, rect: &Rect, tol: f64, excluded: &[Complex64]) -> Result<MatchReport, ZeroError>
where
    F: Analytic + ?Sized,
    G: Analytic + ?Sized,
{
    let zf = locate_zeros_excluding(f, rect, tol, excluded)?;
    let zg = locate_zeros_excluding(g, rect, tol, excluded)?;
    Ok(match_zero_sets(&zf, &zg, 10.0 * tol))
}

/// Walk the path adding midpoints until every phase step of `phi` and of
/// `s - 1` is below `pi/2`. Returns the points with both unwrapped logs.
fn unwrap_along<F: Analytic + ?Sized>(phi: &F, path: &[Complex64]) -> Result<Vec<(Complex64, Complex64, Complex64)>, ZeroError> {
    let eval = |s: Complex64| -> Result<(LogComplex, Complex64), ZeroError> {
        let v = phi.ln_eval(s);
        if !v.is_finite() || v.is_zero() {
            return Err(ZeroError::DegeneratePath { at: s });
        }
        let d = s - 1.0;
        if d.norm() == 0.0 {
            return Err(ZeroError::DegeneratePath { at: s });
        }
        Ok((v, d.ln()))
    };
    let mut out = Vec::new();
    let (v0, l0) = eval(path[0])?;
    let mut cur_phi = v0.0;
    let mut cur_l = l0;
    out.push((path[0], cur_phi, cur_l));
    for w in path.windows(2) {
        let mut stack: Vec<(Complex64, Complex64, u32)> = alloc::vec![(w[0], w[1], 0)];
        let mut last = (w[0], v0, l0);
        last.1 = LogComplex(cur_phi);
        last.2 = cur_l;
        while let Some((a, b, depth)) = stack.pop() {
            let (vb, lb) = eval(b)?;
            let dphi = wrap_phase(vb.phase() - last.1.phase());
            let dl = wrap_phase(lb.im - last.2.im);
            if (dphi.abs() >= MAX_STEP || dl.abs() >= MAX_STEP) && depth < 40 {
                let mid = (a + b) * 0.5;
                stack.push((mid, b, depth + 1));
                stack.push((a, mid, depth + 1));
                continue;
            }
            cur_phi = c64(vb.ln_abs(), last.1.phase() + dphi);
            cur_l = c64(lb.re, last.2.im + dl);
            out.push((b, cur_phi, cur_l));
            last = (b, LogComplex(cur_phi), cur_l);
        }
    }
    Ok(out)
}

/// Complex least squares for `y = a s + b`.
fn affine_fit(pts: &[(Complex64, Complex64)]) -> (Complex64, Complex64) {
    let n = pts.len() as f64;
    let ms = pts.iter().fold(c64(0.0, 0.0), |acc, p| acc + p.0) / n;
    let my = pts.iter().fold(c64(0.0, 0.0), |acc, p| acc + p.1) / n;
    let mut num = c64(0.0, 0.0);
    let mut den = 0.0;
    for (s, y) in pts {
        let ds = *s - ms;
        num += ds.conj() * (*y - my);
        den += ds.norm_sqr();
    }
    let a = if den > 0.0 { num / den } else { c64(0.0, 0.0) };
    (a, my - a * ms)
}

/// Fit `f/g = (s-1)^m exp(a s + b)` along `path`.
///
/// Even-indexed points (after densification) train the affine fit and
/// odd-indexed points are held out for the residual.
pub fn fit_hadamard_quotient<F, G>(f: &F, g: &G, path: &[Complex64]) -> Result<HadamardQuotientFit, ZeroError>
where
    F: Analytic + ?Sized,
    G: Analytic + ?Sized,
{
    if path.len() < 2 {
        return Err(ZeroError::InvalidContour);
    }
    let phi = crate::function::Quotient { f, g };
    let pts = unwrap_along(&phi, path)?;
    if pts.len() < 4 {
        return Err(ZeroError::InvalidContour);
    }
    let scale = path.iter().map(|s| s.norm()).fold(1.0, f64::max);
    let mut best: Option<(f64, i32, Complex64, Complex64)> = None;
    for m in -10..=10 {
        let ys: Vec<(Complex64, Complex64)> = pts.iter().map(|(s, lp, l1)| (*s, *lp - *l1 * m as f64)).collect();
        let train: Vec<(Complex64, Complex64)> = ys.iter().step_by(2).copied().collect();
        let (a, b) = affine_fit(&train);
        let resid = ys.iter().skip(1).step_by(2).map(|(s, y)| (*y - (a * s + b)).norm()).fold(0.0, f64::max);
        if best.map_or(true, |bst| resid < bst.0) {
            best = Some((resid, m, a, b));
        }
    }
    let (resid, m, a, mut b) = best.unwrap_or((f64::INFINITY, 0, c64(0.0, 0.0), c64(0.0, 0.0)));
    if !(resid < 1e-6 * scale) {
        return Err(ZeroError::NonAffineExponent { best_m: m, residual: resid });
    }
    b.im = wrap_phase(b.im);
    // held-out relative error of the reconstruction, exp(fit - y) - 1
    let rel = pts
        .iter()
        .skip(1)
        .step_by(2)
        .map(|(s, lp, l1)| crate::logc::exp_m1(a * s + b + *l1 * m as f64 - *lp).norm())
        .fold(0.0, f64::max);
    Ok(HadamardQuotientFit { m, a, b, max_relative_residual: rel })
}

/// A polyline through `[lo, hi]` in general position: `n` points on a
/// gently curved arc, avoiding `s = 1`.
pub fn default_fit_path(lo: Complex64, hi: Complex64, n: usize) -> Vec<Complex64> {
    let n = n.max(4);
    let d = hi - lo;
    let normal = c64(-d.im, d.re) * 0.15;
    (0..n)
        .map(|k| {
            let t = k as f64 / (n - 1) as f64;
            lo + d * t + normal * (PI * t).sin()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn winding_of_monomials() {
        let f = |s: Complex64| s * s * s;
        assert_eq!(winding_number(&f, &Contour::circle(c64(0.0, 0.0), 1.0)), Ok(3));
        let g = |s: Complex64| (s - 1.0) / ((s - 2.0) * (s - 2.0));
        assert_eq!(winding_number(&g, &Contour::circle(c64(0.0, 0.0), 3.0)), Ok(-1));
        let r = Rect::new(-1.0, 1.0, -1.0, 1.0);
        assert_eq!(winding_number(&f, &Contour::rectangle(r)), Ok(3));
    }

    #[test]
    fn zero_on_contour_is_reported() {
        let f = |s: Complex64| s - 1.0;
        let e = winding_number(&f, &Contour::circle(c64(0.0, 0.0), 1.0));
        assert!(matches!(e, Err(ZeroError::NearZeroOnContour { .. })));
    }

    #[test]
    fn fast_phase_rotation_is_not_aliased() {
        // exp(s^3) - 1 turns by tens of radians between initial samples;
        // the lattice s^3 in 2 pi i Z has 83 points (origin triple) in the box
        let f = |s: Complex64| crate::logc::exp_m1(s * s * s);
        let rect = Rect::new(-4.0, 4.013, -4.0, 4.017);
        assert_eq!(winding_number(&f, &Contour::rectangle(rect)), Ok(83));
    }

    #[test]
    fn double_zero() {
        let f = |s: Complex64| (s - 3.0) * (s - 3.0);
        let z = locate_zeros(&f, &Rect::new(2.0, 4.5, -1.0, 1.0), 1e-9).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].multiplicity, 2);
        assert!((z[0].location - c64(3.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn simple_zeros_with_excluded_pole() {
        let f = |s: Complex64| (s * s + 1.0) / (s - 0.25);
        let z = locate_zeros_excluding(&f, &Rect::new(-2.0, 2.0, -2.0, 2.0), 1e-10, &[c64(0.25, 0.0)]).unwrap();
        assert_eq!(z.len(), 2);
        assert!((z[0].location - c64(0.0, -1.0)).norm() < 1e-12);
        assert!((z[1].location - c64(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn quotient_fit_synthetic() {
        let f = |s: Complex64| (s - 1.0).powi(3) * (s * 2.0 + 1.0).exp();
        let g = |_s: Complex64| c64(1.0, 0.0);
        let path = default_fit_path(c64(-2.0, -2.0), c64(2.5, 2.0), 40);
        let fit = fit_hadamard_quotient(&f, &g, &path).unwrap();
        assert_eq!(fit.m, 3);
        assert!((fit.a - c64(2.0, 0.0)).norm() < 1e-8);
        assert!((fit.b - c64(1.0, 0.0)).norm() < 1e-8);
        let q = |s: Complex64| (s * s).exp();
        assert!(matches!(fit_hadamard_quotient(&q, &g, &path), Err(ZeroError::NonAffineExponent { .. })));
    }

    #[test]
    fn matching_is_symmetric() {
        let z = |x: f64, m| ZeroRecord { location: c64(x, 0.0), multiplicity: m, isolation_radius: 0.1 };
        let l = [z(0.0, 1), z(1.0, 2)];
        let r = [z(1.0 + 1e-10, 2), z(5.0, 1)];
        let a = match_zero_sets(&l, &r, 1e-8);
        let b = match_zero_sets(&r, &l, 1e-8);
        assert_eq!(a.verdict, Verdict::Unequal);
        assert_eq!(a.mirrored(), b);
        assert_eq!(a.matched_pairs.len(), 1);
    }
}
