//! Evaluatable functions and pole ledgers.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::lfunction::LFunctionSpec;
use crate::logc::LogComplex;

/// Something the library can evaluate at a complex point.
///
/// `ln_eval` is the primary entry point so that values far outside the
/// `f64` range keep a usable modulus and phase. Plain closures
/// `Fn(Complex64) -> Complex64` implement the trait directly.
pub trait Analytic: Sync {
    /// `log f(s)` on any branch.
    fn ln_eval(&self, s: Complex64) -> LogComplex;

    fn eval(&self, s: Complex64) -> Complex64 {
        self.ln_eval(s).exp()
    }
}

impl<F> Analytic for F
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    fn ln_eval(&self, s: Complex64) -> LogComplex {
        LogComplex::from_value(self(s))
    }

    fn eval(&self, s: Complex64) -> Complex64 {
        self(s)
    }
}

/// Wraps a closure that already returns `log f(s)`.
pub struct LnFn<F>(pub F);

impl<F> Analytic for LnFn<F>
where
    F: Fn(Complex64) -> LogComplex + Sync,
{
    fn ln_eval(&self, s: Complex64) -> LogComplex {
        (self.0)(s)
    }
}

/// `L(s)` as an [`Analytic`]; the pole at `s = 1` evaluates to infinity.
impl Analytic for LFunctionSpec {
    fn ln_eval(&self, s: Complex64) -> LogComplex {
        self.ln_evaluate(s).unwrap_or(LogComplex::INFINITY)
    }
}

/// Poles with multiplicities, trusted inside `reliable_radius`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleLedger {
    entries: Vec<(Complex64, u32)>,
    reliable_radius: f64,
}

impl PoleLedger {
    pub fn empty() -> Self {
        PoleLedger { entries: Vec::new(), reliable_radius: f64::INFINITY }
    }

    /// Merges entries closer than `1e-12` and sorts by modulus.
    pub fn new(entries: Vec<(Complex64, u32)>, reliable_radius: f64) -> Self {
        let mut merged: Vec<(Complex64, u32)> = Vec::with_capacity(entries.len());
        for (p, m) in entries {
            if m == 0 {
                continue;
            }
            if let Some(slot) = merged.iter_mut().find(|(q, _)| (*q - p).norm() <= 1e-12) {
                slot.1 += m;
            } else {
                merged.push((p, m));
            }
        }
        merged.sort_by(|a, b| {
            a.0.norm()
                .total_cmp(&b.0.norm())
                .then(a.0.re.total_cmp(&b.0.re))
                .then(a.0.im.total_cmp(&b.0.im))
        });
        PoleLedger { entries: merged, reliable_radius }
    }

    pub fn entries(&self) -> &[(Complex64, u32)] {
        &self.entries
    }

    pub fn reliable_radius(&self) -> f64 {
        self.reliable_radius
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn locations(&self) -> Vec<Complex64> {
        self.entries.iter().map(|e| e.0).collect()
    }

    /// `n(r)`: poles in `|z| <= r` with multiplicity.
    pub fn count_within(&self, r: f64) -> u32 {
        self.entries.iter().filter(|(p, _)| p.norm() <= r).map(|e| e.1).sum()
    }

    /// Smallest distance from the circle `|z| = r` to a ledger pole.
    pub fn circle_clearance(&self, r: f64) -> f64 {
        self.entries.iter().map(|(p, _)| (p.norm() - r).abs()).fold(f64::INFINITY, f64::min)
    }

    /// Every modulus scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        PoleLedger {
            entries: self.entries.iter().map(|&(p, m)| (p * factor, m)).collect(),
            reliable_radius: self.reliable_radius * factor,
        }
    }
}

/// A meromorphic function: evaluator, pole ledger and label.
pub struct MeroFunction<'a> {
    label: String,
    evaluator: Box<dyn Analytic + 'a>,
    poles: PoleLedger,
}

impl<'a> MeroFunction<'a> {
    pub fn new(label: &str, evaluator: impl Analytic + 'a, poles: PoleLedger) -> Self {
        MeroFunction { label: label.to_string(), evaluator: Box::new(evaluator), poles }
    }

    /// Entire function given in log form.
    pub fn entire_ln(label: &str, f: impl Fn(Complex64) -> LogComplex + Sync + 'a) -> Self {
        Self::new(label, LnFn(f), PoleLedger::empty())
    }

    /// `L(s)` with its pole of order `k` at `s = 1`.
    pub fn from_lfunction(l: &'a LFunctionSpec) -> Self {
        let poles = if l.pole_order() > 0 {
            PoleLedger::new(alloc::vec![(Complex64::new(1.0, 0.0), l.pole_order())], f64::INFINITY)
        } else {
            PoleLedger::empty()
        };
        MeroFunction::new(l.name(), LnFn(move |s| l.ln_eval(s)), poles)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn poles(&self) -> &PoleLedger {
        &self.poles
    }

    pub fn with_poles(mut self, poles: PoleLedger) -> Self {
        self.poles = poles;
        self
    }
}

impl Analytic for MeroFunction<'_> {
    fn ln_eval(&self, s: Complex64) -> LogComplex {
        self.evaluator.ln_eval(s)
    }
}

/// `1 / (f - c)`: its poles are the `c`-points of `f`, supplied by the caller.
pub struct ShiftedReciprocal<'f, F: ?Sized> {
    pub f: &'f F,
    pub c: Complex64,
}

impl<F: Analytic + ?Sized> Analytic for ShiftedReciprocal<'_, F> {
    fn ln_eval(&self, s: Complex64) -> LogComplex {
        shifted(self.f, self.c, s).recip()
    }
}

/// `f - c`.
pub struct Shifted<'f, F: ?Sized> {
    pub f: &'f F,
    pub c: Complex64,
}

impl<F: Analytic + ?Sized> Analytic for Shifted<'_, F> {
    fn ln_eval(&self, s: Complex64) -> LogComplex {
        shifted(self.f, self.c, s)
    }
}

fn shifted<F: Analytic + ?Sized>(f: &F, c: Complex64, s: Complex64) -> LogComplex {
    let v = f.ln_eval(s);
    if c.norm() == 0.0 {
        return v;
    }
    // |c| / |f| below 1e-17 leaves f unchanged in double precision
    if v.ln_abs() > c.norm().ln() + 40.0 {
        return v;
    }
    v.sub_value(c)
}

/// `f / g` pointwise.
pub struct Quotient<'a, F: ?Sized, G: ?Sized> {
    pub f: &'a F,
    pub g: &'a G,
}

impl<F: Analytic + ?Sized, G: Analytic + ?Sized> Analytic for Quotient<'_, F, G> {
    fn ln_eval(&self, s: Complex64) -> LogComplex {
        self.f.ln_eval(s) / self.g.ln_eval(s)
    }
}
