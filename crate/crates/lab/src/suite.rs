//! The fixed example suite: every worked example in one pass, with a
//! seeded generator for the random sample points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use selberg_core::asymptotics::{lemma3_bound_check, prop1_check};
use selberg_core::function::LnFn;
use selberg_core::nevanlinna::{counting, counting_ledger, geometric_grid};
use selberg_core::targets::{
    classify_direction, h1_identity_residual, hm_lattice, make_hinf, make_hm, DirectionOptions, DirectionVerdict, MovingTarget,
};
use selberg_core::zeros::ZeroError;
use selberg_core::{c64, Analytic, Complex64, LogComplex, PoleLedger, Rect};

use crate::commands::{fit_quotient, uniqueness_check, UniquenessParams};
use crate::config::Registry;
use crate::error::LabError;
use crate::output::{num, Outcome, Record, Table};

pub const SEED: u64 = 20_240_601;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, pass: bool, detail: String) -> Self {
        Check { name, pass, detail }
    }

    fn failed(name: &'static str, e: impl std::fmt::Display) -> Self {
        Check { name, pass: false, detail: format!("error: {e}") }
    }

    pub fn line(&self) -> String {
        format!("{} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

fn uniform(rng: &mut ChaCha8Rng, rect: &Rect) -> Complex64 {
    c64(rng.random_range(rect.re_min..rect.re_max), rng.random_range(rect.im_min..rect.im_max))
}

/// Random points of `rect` at least `clearance` from every pole of `ledger`.
fn clear_points(rng: &mut ChaCha8Rng, rect: &Rect, n: usize, ledger: &PoleLedger, clearance: f64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let s = uniform(rng, rect);
        if ledger.entries().iter().all(|(p, _)| (s - *p).norm() >= clearance) {
            out.push(s);
        }
    }
    out
}

/// Max relative deviation of `(L1 - h) / (L2 - h)` from `exp(w(s))`.
fn quotient_identity(reg: &Registry, h: &MovingTarget<'_>, points: &[Complex64], w: impl Fn(Complex64) -> Complex64) -> Result<f64, LabError> {
    let l1 = reg.get("E1")?;
    let l2 = reg.get("E3")?;
    Ok(points
        .iter()
        .map(|&s| {
            let hv = h.ln_eval(s);
            let q = l1.ln_eval(s).sub(&hv) / l2.ln_eval(s).sub(&hv);
            ((q / LogComplex(w(s))).exp() - 1.0).norm()
        })
        .fold(0.0, f64::max))
}

fn sharpness_triple(reg: &Registry) -> Check {
    const NAME: &str = "sharpness triple E1, E2, h = 1+2/4^s+3/9^s";
    let p = UniquenessParams { l1: "E1", l2: "E2", target: "1+2/4^s+3/9^s", rect: Rect::new(-5.0, 5.0, -5.0, 5.0), tol: 1e-8 };
    match uniqueness_check(reg, &p) {
        Ok(o) => {
            let zl = o.record.get("zeros_left").unwrap_or("?").to_string();
            let zr = o.record.get("zeros_right").unwrap_or("?").to_string();
            let pass = o.pass && zl == "0" && zr == "0";
            Check::new(NAME, pass, format!("verdict {}, zeros {zl} and {zr}", o.record.get("verdict").unwrap_or("?")))
        }
        Err(e) => Check::failed(NAME, e),
    }
}

fn example1_m1(reg: &Registry) -> Vec<Check> {
    const NAME: &str = "h_1 zero sets on [-5,5]x[-15,15]";
    const FIT: &str = "h_1 quotient fit recovers e^s";
    let rect = Rect::new(-5.0, 5.0, -15.0, 15.0);
    let p = UniquenessParams { l1: "E1", l2: "E3", target: "hm:m=1", rect, tol: 1e-8 };
    let cmp = match uniqueness_check(reg, &p) {
        Ok(o) => Check::new(
            NAME,
            o.pass,
            format!(
                "verdict {}, {} matched, {} poles excluded",
                o.record.get("verdict").unwrap_or("?"),
                o.record.get("matched_pairs").unwrap_or("?"),
                o.record.get("excluded_points").unwrap_or("?")
            ),
        ),
        Err(e) => Check::failed(NAME, e),
    };
    let fit = (|| -> Result<Check, LabError> {
        let l1 = reg.get("E1")?;
        let l2 = reg.get("E3")?;
        let h = make_hm(l1, l2, 1, 20.0)?;
        let f = LnFn(|s| l1.ln_eval(s).sub(&h.ln_eval(s)));
        let g = LnFn(|s| l2.ln_eval(s).sub(&h.ln_eval(s)));
        let q = fit_quotient(&f, &g, &rect)?;
        let pass = q.m == 0 && (q.a - 1.0).norm() <= 1e-8 && q.b.norm() <= 1e-8;
        Ok(Check::new(FIT, pass, format!("m = {}, |a - 1| = {}, |b| = {}", q.m, num((q.a - 1.0).norm()), num(q.b.norm()))))
    })();
    vec![cmp, fit.unwrap_or_else(|e| Check::failed(FIT, e))]
}

fn example1_m2(reg: &Registry, rng: &mut ChaCha8Rng) -> Vec<Check> {
    const IDENT: &str = "h_2 quotient equals exp(s^2) on 50 points";
    const FIT: &str = "h_2 affine quotient fit is rejected";
    let rect = Rect::new(-2.0, 2.0, -2.0, 2.0);
    let run = |rng: &mut ChaCha8Rng| -> Result<Vec<Check>, LabError> {
        let l1 = reg.get("E1")?;
        let l2 = reg.get("E3")?;
        let h = make_hm(l1, l2, 2, 4.0)?;
        let lattice = PoleLedger::new(hm_lattice(2, 4.0), 4.0);
        let pts = clear_points(rng, &rect, 50, &lattice, 0.05);
        let err = quotient_identity(reg, &h, &pts, |s| s * s)?;
        let f = LnFn(|s| l1.ln_eval(s).sub(&h.ln_eval(s)));
        let g = LnFn(|s| l2.ln_eval(s).sub(&h.ln_eval(s)));
        let fit = match fit_quotient(&f, &g, &rect) {
            Err(ZeroError::NonAffineExponent { best_m, residual }) => {
                Check::new(FIT, true, format!("no affine exponent (best m = {best_m}, residual {})", num(residual)))
            }
            Err(e) => Check::failed(FIT, e),
            Ok(q) => Check::new(FIT, false, format!("unexpected fit m = {}", q.m)),
        };
        Ok(vec![Check::new(IDENT, err <= 1e-9, format!("max relative error {}", num(err))), fit])
    };
    run(rng).unwrap_or_else(|e| vec![Check::failed(IDENT, e)])
}

fn hinf_identity(reg: &Registry, rng: &mut ChaCha8Rng) -> Check {
    const NAME: &str = "h_inf quotient equals exp(e^s)";
    let rect = Rect::new(-2.0, 2.0, -3.0, 3.0);
    let run = |rng: &mut ChaCha8Rng| -> Result<Check, LabError> {
        let h = make_hinf(reg.get("E1")?, reg.get("E3")?, 3.0)?;
        let pts = clear_points(rng, &rect, 50, h.poles(), 0.05);
        let err = quotient_identity(reg, &h, &pts, |s| s.exp())?;
        Ok(Check::new(NAME, err <= 1e-9, format!("max relative error {}", num(err))))
    };
    run(rng).unwrap_or_else(|e| Check::failed(NAME, e))
}

fn example2(reg: &Registry, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut out = Vec::new();
    let pts: Vec<Complex64> = (0..100).map(|_| uniform(rng, &Rect::new(-3.0, 3.0, -3.0, 3.0))).collect();
    let r = h1_identity_residual(&pts);
    out.push(Check::new("h_1 two-form identity on 100 points", r <= 1e-10, format!("max residual {}", num(r))));

    let fe_pts: Vec<Complex64> = (0..20).map(|_| uniform(rng, &Rect::new(-3.0, 4.0, -10.0, 10.0))).collect();
    for name in ["E1", "E3"] {
        let label = if name == "E1" { "functional equation of E1" } else { "functional equation of E3" };
        out.push(match reg.get(name).and_then(|l| Ok(l.functional_equation_residual(&fe_pts)?)) {
            Ok(fe) => Check::new(label, fe.max_residual <= 1e-10, format!("max residual {} on 20 points", num(fe.max_residual))),
            Err(e) => Check::failed(label, e),
        });
    }
    for name in ["E1", "E3"] {
        let label = if name == "E1" { "Q > 1 for E1" } else { "Q > 1 for E3" };
        out.push(match reg.get(name).and_then(|l| Ok(prop1_check(l, &[2.0, 5.0, 10.0], 10.0, 64)?)) {
            Ok(rep) => Check::new(
                label,
                rep.q == 2.0 && rep.q_gt_one && rep.rows.iter().all(|r| r.within),
                format!("Q = {}, bound holds on {} lines", num(rep.q), rep.rows.iter().filter(|r| r.within).count()),
            ),
            Err(e) => Check::failed(label, e),
        });
    }
    let degrees = ["E1", "E3"].iter().map(|n| reg.get(n).and_then(|l| Ok(l.degree()?))).collect::<Result<Vec<_>, _>>();
    out.push(match degrees {
        Ok(d) => Check::new("E1 and E3 have degree 0", d.iter().all(|x| *x == 0.0), format!("degrees {} and {}", num(d[0]), num(d[1]))),
        Err(e) => Check::failed("E1 and E3 have degree 0", e),
    });

    let counting_check = (|| -> Result<Check, LabError> {
        let h = make_hm(reg.get("E1")?, reg.get("E3")?, 1, 60.0)?;
        let lattice: Vec<_> = hm_lattice(1, 60.0).into_iter().filter(|(p, _)| p.norm() > 0.0).collect();
        let ledger = PoleLedger::new(lattice, 60.0);
        let mut worst: f64 = 0.0;
        for r in [5.0, 12.5, 30.0, 50.0] {
            let n = counting(&h.as_mero(), r)?;
            let star = counting_ledger(&ledger, r)?;
            worst = worst.max((n - star - f64::ln(r)).abs());
        }
        Ok(Check::new("N(r, h_1) = N* + log r", worst <= 1e-10, format!("max deviation {}", num(worst))))
    })();
    out.push(counting_check.unwrap_or_else(|e| Check::failed("N(r, h_1) = N* + log r", e)));

    let growth = (|| -> Result<Check, LabError> {
        let h = make_hm(reg.get("E1")?, reg.get("E3")?, 1, 45.0)?;
        let rows = lemma3_bound_check(&h.as_mero(), 1.0, 0.5, &geometric_grid(5.0, 40.0, 8), 64);
        let pass = rows.iter().all(|r| r.pass);
        let slack = rows.iter().filter(|r| !r.skipped).map(|r| r.ln_bound - r.ln_max_abs).fold(f64::INFINITY, f64::min);
        Ok(Check::new("growth bound for h_1 off exceptional disks", pass, format!("min log slack {}", num(slack))))
    })();
    out.push(growth.unwrap_or_else(|e| Check::failed("growth bound for h_1 off exceptional disks", e)));
    out
}

/// `(s - 1)^m exp(a s + b)`: positive `Re(a e^{i theta})` is transcendental,
/// negative is 0-value limiting.
fn example3() -> Vec<Check> {
    let cases: [(u32, Complex64, Complex64); 4] =
        [(0, c64(1.0, 0.0), c64(0.0, 0.0)), (1, c64(1.0, 2.0), c64(0.5, -1.0)), (2, c64(-0.5, 0.3), c64(1.0, 0.0)), (3, c64(0.0, -1.5), c64(0.0, 2.0))];
    let rays = geometric_grid(10.0, 1e4, 16);
    let opts = DirectionOptions::default();
    let none = PoleLedger::empty();
    let mut out = Vec::new();
    for (m, a, b) in cases {
        let f = LnFn(move |s: Complex64| {
            let base = if m == 0 { c64(0.0, 0.0) } else { (s - 1.0).ln() * m as f64 };
            LogComplex(base + a * s + b)
        });
        let mut thetas: Vec<f64> = selberg_core::targets::theta_grid(32);
        thetas.extend([0.0, std::f64::consts::PI]);
        let (mut checked, mut wrong) = (0, 0);
        for theta in thetas {
            let lead = (a * Complex64::from_polar(1.0, theta)).re;
            if lead.abs() < 0.05 * a.norm() {
                continue;
            }
            checked += 1;
            let v = classify_direction(&f, &none, theta, &rays, &opts).verdict;
            let ok = match v {
                DirectionVerdict::Transcendental => lead > 0.0,
                DirectionVerdict::AValueLimiting(z) => lead < 0.0 && z.norm() < 1e-12,
                DirectionVerdict::Inconclusive => false,
            };
            if !ok {
                wrong += 1;
            }
        }
        out.push(Check {
            name: "directions of (s-1)^m exp(as+b)",
            pass: wrong == 0 && checked > 0,
            detail: format!("m = {m}, a = {}, {checked} rays, {wrong} misclassified", crate::output::cnum(a)),
        });
    }
    out
}

/// Every example check in order; deterministic for a fixed [`SEED`].
pub fn run_checks(reg: &Registry) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = vec![sharpness_triple(reg)];
    out.extend(example1_m1(reg));
    out.extend(example1_m2(reg, &mut rng));
    out.push(hinf_identity(reg, &mut rng));
    out.extend(example2(reg, &mut rng));
    out.extend(example3());
    out
}

pub fn example_suite(reg: &Registry) -> Outcome {
    let checks = run_checks(reg);
    let mut table = Table::new(&["check", "pass", "detail"]);
    let mut rec = Record::default();
    rec.put("command", "example-suite").put("seed", SEED);
    for (i, c) in checks.iter().enumerate() {
        rec.put(&format!("check_{i:02}"), c.line());
        table.push(vec![c.name.to_string(), c.pass.to_string(), c.detail.clone()]);
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    rec.put("passed", format!("{passed}/{}", checks.len()));
    let pass = passed == checks.len();
    Outcome { pass, record: rec, table: Some(table) }
}
