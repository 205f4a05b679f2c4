//! The target grammar.
//!
//! ```text
//! hm[:m=<int>][:L1=<name>][:L2=<name>][:radius=<r>]   (exp(s^m) L2 - L1) / (exp(s^m) - 1)
//! h1[:radius=<r>]                                     hm with m = 1, L1 = E1, L2 = E3
//! hinf[:L1=<name>][:L2=<name>][:height=<h>]           (exp(e^s) L2 - L1) / (exp(e^s) - 1), |Re s| <= 5
//! expr:<expression>[:poles=<z>[@k];...][:radius=<r>]  closed form, poles declared explicitly
//! <name>                                              an L-function of the registry
//! <expression>                                        an entire closed form
//! ```
//!
//! `L1`/`L2` default to the pair given on the command line, or `E1`/`E3`.

use selberg_core::function::LnFn;
use selberg_core::targets::{make_hinf, make_hm, MovingTarget};
use selberg_core::{Analytic, Complex64, LFunctionSpec, LogComplex, MeroFunction, PoleLedger, Rect};

use crate::config::Registry;
use crate::error::LabError;
use crate::expr::{Expr, ExprFn};

/// Defaults taken from the command line.
#[derive(Debug, Clone, Copy)]
pub struct TargetContext<'a> {
    pub l1: &'a str,
    pub l2: &'a str,
    /// Pole-ledger radius for lattice targets when `radius=` is absent.
    pub radius: f64,
}

impl Default for TargetContext<'_> {
    fn default() -> Self {
        TargetContext { l1: "E1", l2: "E3", radius: 50.0 }
    }
}

pub enum Target<'r> {
    Moving(MovingTarget<'r>),
    L(&'r LFunctionSpec),
    Expr { label: String, f: ExprFn<'r>, poles: PoleLedger },
}

impl<'r> Target<'r> {
    pub fn label(&self) -> String {
        match self {
            Target::Moving(t) => t.label().to_string(),
            Target::L(l) => l.name().to_string(),
            Target::Expr { label, .. } => label.clone(),
        }
    }

    pub fn poles(&self) -> PoleLedger {
        match self {
            Target::Moving(t) => t.poles().clone(),
            Target::L(l) => MeroFunction::from_lfunction(l).poles().clone(),
            Target::Expr { poles, .. } => poles.clone(),
        }
    }

    pub fn safe_box(&self) -> Option<Rect> {
        match self {
            Target::Moving(t) => t.safe_box(),
            _ => None,
        }
    }

    pub fn ln_eval(&self, s: Complex64) -> LogComplex {
        match self {
            Target::Moving(t) => t.ln_eval(s),
            Target::L(l) => l.ln_eval(s),
            Target::Expr { f, .. } => f.ln_eval(s),
        }
    }

    pub fn mero(&self) -> MeroFunction<'_> {
        MeroFunction::new(&self.label(), LnFn(move |s| self.ln_eval(s)), self.poles())
    }
}

impl Analytic for Target<'_> {
    fn ln_eval(&self, s: Complex64) -> LogComplex {
        Target::ln_eval(self, s)
    }
}

fn key_values(fields: &[&str]) -> Result<Vec<(String, String)>, LabError> {
    fields
        .iter()
        .map(|f| {
            f.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| LabError::config(format!("expected key=value, got {f:?}")))
        })
        .collect()
}

fn parse_f64(key: &str, v: &str) -> Result<f64, LabError> {
    v.parse::<f64>().map_err(|_| LabError::config(format!("{key} must be a number, got {v:?}")))
}

/// `z[@k];z[@k];...` with each `z` a constant expression.
pub fn parse_poles(src: &str, reg: &Registry) -> Result<Vec<(Complex64, u32)>, LabError> {
    let mut out = Vec::new();
    for item in src.split(';').map(str::trim).filter(|x| !x.is_empty()) {
        let (z, k) = match item.split_once('@') {
            Some((z, k)) => (z, k.trim().parse::<u32>().map_err(|_| LabError::config(format!("bad pole multiplicity in {item:?}")))?),
            None => (item, 1),
        };
        let e = Expr::parse(z, reg)?;
        if !e.is_const() {
            return Err(LabError::config(format!("pole location {z:?} is not a constant")));
        }
        let v = e.ln_eval(Complex64::new(0.0, 0.0), reg).exp();
        if !(v.re.is_finite() && v.im.is_finite()) || k == 0 {
            return Err(LabError::config(format!("bad pole {item:?}")));
        }
        out.push((v, k));
    }
    Ok(out)
}

pub fn parse_target<'r>(spec: &str, reg: &'r Registry, ctx: &TargetContext<'_>) -> Result<Target<'r>, LabError> {
    let spec = spec.trim();
    let fields: Vec<&str> = spec.split(':').collect();
    match fields[0] {
        "hm" | "h1" | "hinf" => {
            let kind = fields[0];
            let mut m: i64 = 1;
            let mut l1 = if kind == "h1" { "E1" } else { ctx.l1 }.to_string();
            let mut l2 = if kind == "h1" { "E3" } else { ctx.l2 }.to_string();
            let mut radius = ctx.radius;
            let mut height = 20.0;
            for (k, v) in key_values(&fields[1..])? {
                match (kind, k.as_str()) {
                    ("hm", "m") => m = v.parse().map_err(|_| LabError::config(format!("m must be an integer, got {v:?}")))?,
                    ("hm" | "hinf", "L1") => l1 = v,
                    ("hm" | "hinf", "L2") => l2 = v,
                    ("hm" | "h1", "radius") => radius = parse_f64("radius", &v)?,
                    ("hinf", "height") => height = parse_f64("height", &v)?,
                    _ => return Err(LabError::config(format!("unknown key {k:?} for target {kind}"))),
                }
            }
            if !(radius > 0.0 && height > 0.0) {
                return Err(LabError::config("radius and height must be positive"));
            }
            let a = reg.get(&l1)?;
            let b = reg.get(&l2)?;
            let t = if kind == "hinf" { make_hinf(a, b, height)? } else { make_hm(a, b, m, radius)? };
            Ok(Target::Moving(t))
        }
        "expr" => {
            let src = fields.get(1).ok_or_else(|| LabError::config("expr: needs an expression"))?;
            let expr = Expr::parse(src, reg)?;
            let mut poles = None;
            let mut radius = f64::INFINITY;
            for (k, v) in key_values(&fields[2..])? {
                match k.as_str() {
                    "poles" => poles = Some(parse_poles(&v, reg)?),
                    "radius" => radius = parse_f64("radius", &v)?,
                    _ => return Err(LabError::config(format!("unknown key {k:?} for target expr"))),
                }
            }
            if poles.is_none() && expr.may_have_poles(reg) {
                return Err(LabError::config(format!("expression {src:?} may have poles; declare them with :poles=")));
            }
            let label = spec.to_string();
            Ok(Target::Expr { label, f: ExprFn { expr, reg }, poles: PoleLedger::new(poles.unwrap_or_default(), radius) })
        }
        name if fields.len() == 1 && reg.index_of(name).is_some() => Ok(Target::L(reg.get(name)?)),
        _ => {
            if fields.len() > 1 {
                return Err(LabError::config(format!("unknown target kind {:?}", fields[0])));
            }
            let expr = Expr::parse(spec, reg)?;
            if expr.may_have_poles(reg) {
                return Err(LabError::config(format!("expression {spec:?} may have poles; use expr:<e>:poles=...")));
            }
            Ok(Target::Expr { label: spec.to_string(), f: ExprFn { expr, reg }, poles: PoleLedger::empty() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use selberg_core::c64;

    #[test]
    fn grammar_forms() {
        let reg = Registry::default();
        let ctx = TargetContext::default();
        let h = parse_target("hm:m=2:L1=E1:L2=E3:radius=5", &reg, &ctx).unwrap();
        assert_eq!(h.label(), "hm:m=2:L1=E1:L2=E3");
        assert!(!h.poles().is_empty());
        let h1 = parse_target("h1", &reg, &ctx).unwrap();
        let v = h1.ln_eval(c64(1.0, 0.0)).exp();
        assert!((v.re - 2.290_988_353_434_663).abs() < 1e-12);
        assert!(parse_target("hinf", &reg, &ctx).unwrap().safe_box().is_some());
        assert!(matches!(parse_target("zeta", &reg, &ctx).unwrap(), Target::L(_)));
        let e = parse_target("expr:1/(s-2):poles=2", &reg, &ctx).unwrap();
        assert_eq!(e.poles().entries(), &[(c64(2.0, 0.0), 1)]);
        assert!(parse_target("1+2/4^s+3/9^s", &reg, &ctx).is_ok());
    }

    #[test]
    fn grammar_errors() {
        let reg = Registry::default();
        let ctx = TargetContext::default();
        for bad in ["hm:m=0", "hm:m=x", "hm:q=1", "hm:L1=E1:L2=E1", "hm:L1=nope", "expr:1/s", "1/s", "foo:bar", "expr:s:poles=s", "expr:s:poles=1@0"] {
            assert!(matches!(parse_target(bad, &reg, &ctx), Err(LabError::Config(_))), "{bad}");
        }
    }

    #[test]
    fn pole_lists() {
        let reg = Registry::default();
        let p = parse_poles("1@2; 2*pi*i ;-1-i", &reg).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p[0], (c64(1.0, 0.0), 2));
        assert!((p[1].0 - c64(0.0, std::f64::consts::TAU)).norm() < 1e-15);
    }
}
