//! One function per subcommand. Each returns an [`Outcome`]; module
//! failures come back as [`LabError`].

use std::f64::consts::TAU;

use rayon::prelude::*;

use selberg_core::asymptotics::{lemma2_evaluate, lemma2_table, prop1_check, default_split};
use selberg_core::function::LnFn;
use selberg_core::lfunction::Coefficients;
use selberg_core::nevanlinna::{characteristic, fit_degree, fmt_row, c_point_ledger, order_fit, smt_diagnostic, summarize_fmt, RadialSample, SmtTarget, ZeroSearch};
use selberg_core::targets::{classify_direction, summarize_td, theta_grid, DirectionClassification, DirectionOptions, DirectionVerdict};
use selberg_core::zeros::{compare_zero_sets, default_fit_path, fit_hadamard_quotient, HadamardQuotientFit, Verdict, ZeroError, ZeroRecord};
use selberg_core::{c64, Analytic, Complex64, LFunctionSpec, Rect};

use crate::config::Registry;
use crate::error::LabError;
use crate::expr::Expr;
use crate::output::{cnum, num, Outcome, Record, Table};
use crate::target::{parse_target, TargetContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Geometric,
}

/// `steps` radii from `r_min` to `r_max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub steps: usize,
    pub spacing: Spacing,
}

impl RadialGrid {
    pub fn points(&self) -> Result<Vec<f64>, LabError> {
        if !(self.r_min > 0.0 && self.r_max > self.r_min && self.r_max.is_finite()) {
            return Err(LabError::config(format!("radial grid needs 0 < r_min < r_max, got [{}, {}]", self.r_min, self.r_max)));
        }
        if self.steps < 2 {
            return Err(LabError::config("radial grid needs at least 2 steps"));
        }
        let n = self.steps - 1;
        Ok((0..=n)
            .map(|k| {
                let t = k as f64 / n as f64;
                if k == n {
                    self.r_max
                } else {
                    match self.spacing {
                        Spacing::Linear => self.r_min + t * (self.r_max - self.r_min),
                        Spacing::Geometric => self.r_min * (self.r_max / self.r_min).powf(t),
                    }
                }
            })
            .collect())
    }
}

/// `re_min,re_max,im_min,im_max`.
pub fn parse_box(src: &str) -> Result<Rect, LabError> {
    let v: Vec<f64> = src
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| LabError::config(format!("bad box {src:?}"))))
        .collect::<Result<_, _>>()?;
    if v.len() != 4 {
        return Err(LabError::config(format!("box needs 4 numbers, got {src:?}")));
    }
    let r = Rect::new(v[0], v[1], v[2], v[3]);
    if !r.is_valid() {
        return Err(LabError::config(format!("degenerate box {src:?}")));
    }
    Ok(r)
}

/// Comma-separated constant expressions.
pub fn parse_values(src: &str, reg: &Registry) -> Result<Vec<Complex64>, LabError> {
    src.split(',')
        .map(|x| {
            let e = Expr::parse(x, reg)?;
            e.const_value(reg).filter(|z| z.re.is_finite() && z.im.is_finite()).ok_or_else(|| LabError::config(format!("{x:?} is not a finite constant")))
        })
        .collect()
}

pub fn parse_reals(src: &str) -> Result<Vec<f64>, LabError> {
    src.split(',').map(|x| x.trim().parse::<f64>().map_err(|_| LabError::config(format!("bad number {x:?}")))).collect()
}

fn positive(name: &str, x: f64) -> Result<f64, LabError> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(LabError::config(format!("{name} must be positive, got {x}")))
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Equal => "equal",
        Verdict::Unequal => "unequal",
    }
}

fn zero_row(table: &mut Table, side: &str, idx: usize, z: &ZeroRecord, matched: bool) {
    table.push(vec![
        side.to_string(),
        idx.to_string(),
        num(z.location.re),
        num(z.location.im),
        z.multiplicity.to_string(),
        num(z.isolation_radius),
        matched.to_string(),
    ]);
}

pub fn fit_quotient<F, G>(f: &F, g: &G, rect: &Rect) -> Result<HadamardQuotientFit, ZeroError>
where
    F: selberg_core::Analytic + ?Sized,
    G: selberg_core::Analytic + ?Sized,
{
    // fractions of the box chosen off every symmetry line of the examples
    const PATHS: [(f64, f64, f64, f64); 4] =
        [(0.31, 0.43, 0.69, 0.61), (0.23, 0.57, 0.77, 0.39), (0.37, 0.29, 0.63, 0.71), (0.41, 0.53, 0.59, 0.47)];
    let at = |fx: f64, fy: f64| c64(rect.re_min + fx * rect.width(), rect.im_min + fy * rect.height());
    let mut last = ZeroError::InvalidContour;
    for (a, b, c, d) in PATHS {
        let path = default_fit_path(at(a, b), at(c, d), 64);
        match fit_hadamard_quotient(f, g, &path) {
            Ok(fit) => return Ok(fit),
            Err(e @ ZeroError::NonAffineExponent { .. }) => return Err(e),
            Err(e) => last = e,
        }
    }
    Err(last)
}

pub struct UniquenessParams<'a> {
    pub l1: &'a str,
    pub l2: &'a str,
    pub target: &'a str,
    pub rect: Rect,
    pub tol: f64,
}

/// Zeros of `L1 - h` and `L2 - h` in the box, their comparison, and the
/// quotient fit. Passes iff the verdict is equal.
pub fn uniqueness_check(reg: &Registry, p: &UniquenessParams<'_>) -> Result<Outcome, LabError> {
    let tol = positive("tol", p.tol)?;
    let l1 = reg.get(p.l1)?;
    let l2 = reg.get(p.l2)?;
    let radius = p.rect.corners().iter().map(|c| c.norm()).fold(0.0, f64::max) + 1.0;
    let ctx = TargetContext { l1: p.l1, l2: p.l2, radius };
    let h = parse_target(p.target, reg, &ctx)?;
    if let Some(safe) = h.safe_box() {
        if !p.rect.corners().iter().all(|c| safe.contains(*c)) {
            return Err(LabError::config(format!("box leaves the safe box of {}", h.label())));
        }
    }
    let poles = h.poles();
    if poles.reliable_radius() < radius - 1.0 {
        return Err(LabError::config("the target's pole ledger does not cover the box"));
    }
    let f = LnFn(|s| l1.ln_eval(s).sub(&h.ln_eval(s)));
    let g = LnFn(|s| l2.ln_eval(s).sub(&h.ln_eval(s)));
    let mut excluded: Vec<Complex64> = poles.locations();
    if l1.pole_order() > 0 || l2.pole_order() > 0 {
        excluded.push(c64(1.0, 0.0));
    }
    let margin = 4.0 * tol;
    excluded.retain(|z| {
        z.re >= p.rect.re_min - margin && z.re <= p.rect.re_max + margin && z.im >= p.rect.im_min - margin && z.im <= p.rect.im_max + margin
    });
    let report = compare_zero_sets(&f, &g, &p.rect, tol, &excluded)?;
    let fit = fit_quotient(&f, &g, &p.rect);

    let mut table = Table::new(&["set", "index", "re", "im", "multiplicity", "isolation_radius", "matched"]);
    for (i, (a, b)) in report.matched_pairs.iter().enumerate() {
        zero_row(&mut table, "left", i, a, true);
        zero_row(&mut table, "right", i, b, true);
    }
    for (i, z) in report.unmatched_left.iter().enumerate() {
        zero_row(&mut table, "left", report.matched_pairs.len() + i, z, false);
    }
    for (i, z) in report.unmatched_right.iter().enumerate() {
        zero_row(&mut table, "right", report.matched_pairs.len() + i, z, false);
    }

    let count = |v: &mut dyn Iterator<Item = &ZeroRecord>| v.map(|z| z.multiplicity).sum::<u32>();
    let n_left = count(&mut report.matched_pairs.iter().map(|p| &p.0).chain(report.unmatched_left.iter()));
    let n_right = count(&mut report.matched_pairs.iter().map(|p| &p.1).chain(report.unmatched_right.iter()));
    let same_l = l1.coefficients() == l2.coefficients() && l1.pole_order() == l2.pole_order();
    let mut rec = Record::default();
    rec.put("command", "uniqueness-check")
        .put("L1", l1.name())
        .put("L2", l2.name())
        .put("target", h.label())
        .put("box", format!("{},{},{},{}", num(p.rect.re_min), num(p.rect.re_max), num(p.rect.im_min), num(p.rect.im_max)))
        .num("tol", tol)
        .num("match_tolerance", report.match_tolerance)
        .put("excluded_points", excluded.len())
        .put("zeros_left", n_left)
        .put("zeros_right", n_right)
        .put("matched_pairs", report.matched_pairs.len())
        .put("unmatched_left", report.unmatched_left.len())
        .put("unmatched_right", report.unmatched_right.len())
        .put("min_gap", report.min_gap.map_or("none".to_string(), num))
        .put("verdict", verdict_str(report.verdict))
        .put("l1_equals_l2", same_l);
    match &fit {
        Ok(q) => {
            rec.put("fit_m", q.m).put("fit_a", cnum(q.a)).put("fit_b", cnum(q.b)).num("fit_max_relative_residual", q.max_relative_residual);
        }
        Err(e) => {
            rec.put("fit_error", e);
        }
    }
    if report.verdict == Verdict::Equal && !same_l {
        rec.put("note", "equal zero sets although L1 != L2");
    }
    Ok(Outcome { pass: report.verdict == Verdict::Equal, record: rec, table: Some(table) })
}

fn parallel_sweep(f: &selberg_core::MeroFunction<'_>, grid: &[f64]) -> Result<Vec<RadialSample>, LabError> {
    Ok(grid.par_iter().map(|&r| characteristic(f, r)).collect::<Result<Vec<_>, _>>()?)
}

/// Radial samples of `m`, `N`, `T` and the growth fits.
pub fn growth(reg: &Registry, target: &str, grid: &RadialGrid) -> Result<Outcome, LabError> {
    let radii = grid.points()?;
    let ctx = TargetContext { radius: grid.r_max * 1.01, ..TargetContext::default() };
    let h = parse_target(target, reg, &ctx)?;
    let f = h.mero();
    let samples = parallel_sweep(&f, &radii)?;
    let fit = fit_degree(&samples)?;

    let mut table = Table::new(&["r", "r_used", "m", "N", "T"]);
    for s in &samples {
        table.push(vec![num(s.r), num(s.r_used), num(s.m_val), num(s.n_val), num(s.t_val)]);
    }
    let identity = samples.iter().all(|s| s.t_val == s.m_val + s.n_val);
    let monotone = samples.windows(2).all(|w| w[1].t_val >= w[0].t_val - 1e-6 * (1.0 + w[0].t_val.abs()));
    let ordered = fit.mu_hat <= fit.rho_hat + 1e-9 && (0.0..=1.0).contains(&fit.delta_inf_hat);

    let mut rec = Record::default();
    rec.put("command", "growth").put("target", h.label());
    rec.num("r_min", fit.r_range.0).num("r_max", fit.r_range.1);
    rec.num("rho_hat", fit.rho_hat).num("mu_hat", fit.mu_hat).num("delta_inf_hat", fit.delta_inf_hat);
    if let crate::target::Target::L(l) = &h {
        if let Ok(d) = l.degree() {
            rec.num("d_hat", fit.d_hat).num("degree", d).num("degree_fit_residual", fit.residual);
        }
    }
    rec.put("t_identity", identity).put("t_monotone", monotone).put("fit_ordering", ordered);
    Ok(Outcome { pass: identity && monotone && ordered, record: rec, table: Some(table) })
}

/// The left-half-plane asymptotic on rays `thetas`.
pub fn lemma2(reg: &Registry, l: &str, thetas: &[f64], delta: f64, grid: &RadialGrid, split: Option<f64>) -> Result<Outcome, LabError> {
    let l = reg.get(l)?;
    let radii = grid.points()?;
    let split = split.unwrap_or_else(|| default_split(&radii));
    let mut table = Table::new(&["r", "theta", "predicted", "actual", "remainder", "remainder_over_logr"]);
    let mut rec = Record::default();
    rec.put("command", "lemma2").put("L", l.name()).num("delta", delta).num("split_r", split);
    let mut pass = true;
    for (k, &theta) in thetas.iter().enumerate() {
        let rows = radii.par_iter().map(|&r| lemma2_evaluate(l, theta, r, delta)).collect::<Result<Vec<_>, _>>()?;
        let t = lemma2_table(rows, split);
        for e in &t.rows {
            table.push(vec![num(e.r), num(e.theta), num(e.predicted), num(e.actual), num(e.remainder), num(e.remainder_over_logr())]);
        }
        let last = t.rows.last().expect("grid has at least two radii");
        rec.num(&format!("theta_{k}"), theta)
            .num(&format!("c_hat_{k}"), t.c_hat)
            .put(&format!("validated_{k}"), t.validated)
            .num(&format!("relative_error_at_r_max_{k}"), last.relative_error());
        pass &= t.validated;
    }
    Ok(Outcome { pass, record: rec, table: Some(table) })
}

/// `Q > 1` and the left-half-plane bound for a degree-zero L-function.
pub fn prop1(reg: &Registry, l: &str, sigmas: &[f64], height: f64, samples: usize) -> Result<Outcome, LabError> {
    let l = reg.get(l)?;
    let rep = prop1_check(l, sigmas, positive("height", height)?, samples)?;
    let mut table = Table::new(&["sigma", "max_abs", "k0_bound", "within"]);
    for r in &rep.rows {
        table.push(vec![num(r.sigma), num(r.max_abs), num(r.k0_bound), r.within.to_string()]);
    }
    let within = rep.rows.iter().all(|r| r.within);
    let mut rec = Record::default();
    rec.put("command", "prop1").put("L", l.name()).num("Q", rep.q).put("q_gt_one", rep.q_gt_one).put("bound_holds", within);
    if !rep.q_gt_one {
        rec.put("note", "Q <= 1 is inconsistent with a genuine degree-zero L-function");
    }
    Ok(Outcome { pass: rep.q_gt_one && within, record: rec, table: Some(table) })
}

pub struct Lemma1Params<'a> {
    pub target: &'a str,
    /// Sweep used for the order and deficiency estimates.
    pub growth_grid: RadialGrid,
    /// Radii sampled along each ray.
    pub ray_grid: RadialGrid,
    pub n_theta: usize,
}

/// Transcendental directions against the measure lower bound.
pub fn lemma1(reg: &Registry, p: &Lemma1Params<'_>) -> Result<Outcome, LabError> {
    let ctx = TargetContext { radius: p.growth_grid.r_max.max(p.ray_grid.r_max) * 1.01, ..TargetContext::default() };
    let h = parse_target(p.target, reg, &ctx)?;
    let f = h.mero();
    let samples = parallel_sweep(&f, &p.growth_grid.points()?)?;
    let fit = order_fit(&samples)?;
    let rays = p.ray_grid.points()?;
    if rays[0] <= 1.0 {
        return Err(LabError::config("ray radii must exceed 1"));
    }
    let n = p.n_theta.max(64);
    let opts = DirectionOptions::default();
    let poles = h.poles();
    let verdicts: Vec<DirectionClassification> =
        theta_grid(n).par_iter().map(|&t| classify_direction(&h, &poles, t, &rays, &opts)).collect();
    let td = summarize_td(&verdicts, fit.mu_hat, fit.delta_inf_hat);

    let mut table = Table::new(&["theta", "verdict", "limit_re", "limit_im", "ratio_at_r_max"]);
    for v in &verdicts {
        let (name, lim) = match v.verdict {
            DirectionVerdict::Transcendental => ("transcendental", None),
            DirectionVerdict::AValueLimiting(a) => ("a-value-limiting", Some(a)),
            DirectionVerdict::Inconclusive => ("inconclusive", None),
        };
        let ratio = v.evidence.last().map_or(f64::NAN, |e| e.1);
        table.push(vec![
            num(v.theta),
            name.to_string(),
            lim.map_or(String::new(), |a| num(a.re)),
            lim.map_or(String::new(), |a| num(a.im)),
            num(ratio),
        ]);
    }
    let mut rec = Record::default();
    rec.put("command", "lemma1").put("target", h.label());
    rec.num("rho_hat", fit.rho_hat).num("mu_hat", td.mu_hat).num("delta_hat", td.delta_hat);
    rec.num("measure_hat", td.measure_hat).num("lower_bound", td.lower_bound).num("resolution", td.resolution);
    rec.put("out_of_hypothesis", td.out_of_hypothesis);
    rec.put("pass", td.pass.map_or("n/a".to_string(), |b| b.to_string()));
    rec.put("remark_condition", td.remark_condition);
    Ok(Outcome { pass: td.pass.unwrap_or(true), record: rec, table: Some(table) })
}

/// `T(r, 1/(f - c)) - T(r, f)` for each `c`; passes when every slope is within `slope_tol`.
pub fn fmt(reg: &Registry, target: &str, cs: &[Complex64], grid: &RadialGrid, slope_tol: f64) -> Result<Outcome, LabError> {
    let radii = grid.points()?;
    let ctx = TargetContext { radius: grid.r_max * 1.01, ..TargetContext::default() };
    let h = parse_target(target, reg, &ctx)?;
    let f = h.mero();
    let search = ZeroSearch::default();
    let mut table = Table::new(&["c", "r", "t_shifted", "t_f", "residual"]);
    let mut rec = Record::default();
    rec.put("command", "fmt").put("target", h.label()).num("slope_tol", slope_tol);
    let mut pass = true;
    for (k, &c) in cs.iter().enumerate() {
        let ledger = c_point_ledger(&f, c, grid.r_max * 1.001, &search)?;
        let rows = radii.par_iter().map(|&r| fmt_row(&f, c, &ledger, r)).collect::<Result<Vec<_>, _>>()?;
        let rep = summarize_fmt(rows);
        for row in &rep.rows {
            table.push(vec![cnum(c), num(row.r), num(row.t_shifted), num(row.t_f), num(row.residual)]);
        }
        rec.put(&format!("c_{k}"), cnum(c)).num(&format!("slope_{k}"), rep.slope).num(&format!("max_abs_{k}"), rep.max_abs);
        pass &= rep.slope.abs() <= slope_tol;
    }
    Ok(Outcome { pass, record: rec, table: Some(table) })
}

/// `inf` or a constant expression.
pub fn parse_smt_targets(src: &str, reg: &Registry) -> Result<Vec<SmtTarget>, LabError> {
    src.split(',')
        .map(|x| {
            if x.trim() == "inf" {
                Ok(SmtTarget::Infinity)
            } else {
                Ok(SmtTarget::Finite(parse_values(x, reg)?[0]))
            }
        })
        .collect()
}

/// Report-only table of `(q - 2) T(r, f)` against the counting functions.
pub fn smt(reg: &Registry, target: &str, values: &str, grid: &RadialGrid) -> Result<Outcome, LabError> {
    let radii = grid.points()?;
    let targets = parse_smt_targets(values, reg)?;
    let ctx = TargetContext { radius: grid.r_max * 1.01, ..TargetContext::default() };
    let h = parse_target(target, reg, &ctx)?;
    let rows = smt_diagnostic(&h.mero(), &targets, &radii, &ZeroSearch::default())?;
    let mut table = Table::new(&["r", "lhs", "n_sum", "slack"]);
    for r in &rows {
        table.push(vec![num(r.r), num(r.lhs), num(r.n_sum), num(r.slack)]);
    }
    let mut rec = Record::default();
    rec.put("command", "smt").put("target", h.label()).put("values", values).put("q", targets.len());
    rec.put("note", "report only: the remainder term has no finite-r bound");
    Ok(Outcome { pass: true, record: rec, table: Some(table) })
}

fn describe_coefficients(l: &LFunctionSpec) -> String {
    match l.coefficients() {
        Coefficients::Zeta => "zeta".into(),
        Coefficients::DirichletMod4 => "chi4".into(),
        Coefficients::Polynomial(c) => c
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() != 0.0)
            .map(|(i, a)| format!("{}:{}", i + 1, cnum(*a)))
            .collect::<Vec<_>>()
            .join(" "),
    }
}

/// Every registry entry with its functional-equation data.
pub fn catalog(reg: &Registry) -> Outcome {
    let mut table = Table::new(&["name", "coefficients", "pole_order_k", "Q", "omega", "factors", "degree"]);
    for l in reg.entries() {
        let (q, omega, factors, degree) = match l.functional_equation() {
            Some(fe) => (
                num(fe.q()),
                cnum(fe.omega()),
                fe.factors().iter().map(|g| format!("({},{})", num(g.lambda()), cnum(g.mu()))).collect::<Vec<_>>().join(" "),
                num(fe.degree()),
            ),
            None => (String::new(), String::new(), String::new(), String::new()),
        };
        table.push(vec![l.name().to_string(), describe_coefficients(l), l.pole_order().to_string(), q, omega, factors, degree]);
    }
    let mut rec = Record::default();
    rec.put("command", "catalog").put("entries", reg.entries().len());
    Outcome { pass: true, record: rec, table: Some(table) }
}

/// `2 pi k / n` for `k < n`, used where a plain uniform partition is wanted.
pub fn uniform_angles(n: usize) -> Vec<f64> {
    (0..n).map(|k| TAU * k as f64 / n as f64).collect()
}
