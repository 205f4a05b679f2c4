use std::f64::consts::{PI, TAU};

use proptest::prelude::*;

use selberg_core::asymptotics::*;
use selberg_core::lfunction::{builtin_catalog, catalog_entry, Coefficients, CoeffGrowth, FunctionalEquationData, GammaFactor};
use selberg_core::nevanlinna::*;
use selberg_core::special::*;
use selberg_core::targets::*;
use selberg_core::zeros::*;
use selberg_core::*;

fn cat(name: &str) -> LFunctionSpec {
    catalog_entry(name).unwrap()
}

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn point(re: std::ops::Range<f64>, im: std::ops::Range<f64>) -> impl Strategy<Value = Complex64> {
    (re, im).prop_map(|(a, b)| c64(a, b))
}

fn poly_from_roots(roots: Vec<Complex64>) -> impl Fn(Complex64) -> Complex64 + Sync {
    move |s: Complex64| roots.iter().fold(c64(1.0, 0.0), |acc, r| acc * (s - r))
}

fn quadrants(r: &Rect) -> [Rect; 4] {
    let c = r.center();
    [
        Rect::new(r.re_min, c.re, r.im_min, c.im),
        Rect::new(c.re, r.re_max, r.im_min, c.im),
        Rect::new(r.re_min, c.re, c.im, r.im_max),
        Rect::new(c.re, r.re_max, c.im, r.im_max),
    ]
}

fn clear_of(rect: &Rect, roots: &[Complex64], gap: f64) -> bool {
    let c = rect.center();
    roots.iter().all(|z| {
        let on_cross = (z.re - c.re).abs() < gap || (z.im - c.im).abs() < gap;
        let outer = (z.re - rect.re_min).abs() < gap
            || (z.re - rect.re_max).abs() < gap
            || (z.im - rect.im_min).abs() < gap
            || (z.im - rect.im_max).abs() < gap;
        !on_cross && !outer
    })
}

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn log_gamma_conjugate_symmetry(z in point(-30.0..30.0, 0.01..40.0)) {
        prop_assume!(z.norm() > 0.5);
        let a = log_gamma(z.conj()).unwrap();
        let b = log_gamma(z).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0));
    }

    #[test]
    fn gamma_recurrence(r in 1.0f64..100.0, arg in -3.0f64..3.0) {
        let z = Complex64::from_polar(r, arg);
        prop_assume!(gamma_pole(z + 1.0).is_none() && gamma_pole(z).is_none());
        // log Gamma(z+1) - log Gamma(z) - log z vanishes modulo 2 pi i
        let d = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap() - z.ln();
        let wrapped = c64(d.re, d.im - TAU * (d.im / TAU).round());
        prop_assert!(wrapped.norm() <= 1e-10 * (1.0 + log_gamma(z).unwrap().norm()), "{z}: {d}");
    }

    #[test]
    fn l_function_conjugate_symmetry(idx in 0usize..5, s in point(-10.0..10.0, -50.0..50.0)) {
        let l = &builtin_catalog()[idx];
        prop_assume!((s - c64(1.0, 0.0)).norm() > 1e-3);
        let a = l.evaluate(s.conj()).unwrap();
        let b = l.evaluate(s).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0), "{} {s}", l.name());
    }

    #[test]
    fn reflection_consistency(idx in 0usize..5, s in point(-1.0..2.0, -30.0..30.0)) {
        let l = &builtin_catalog()[idx];
        prop_assume!((s - c64(1.0, 0.0)).norm() > 0.1 && s.norm() > 0.1);
        let fwd = l.evaluate(s).unwrap();
        let refl = l.evaluate_reflected(s).unwrap();
        prop_assert!((fwd - refl).norm() <= 1e-9 * fwd.norm().max(1.0), "{} {s}: {fwd} vs {refl}", l.name());
    }

    #[test]
    fn right_half_plane_normalisation(idx in 0usize..5, sigma in 3.0f64..30.0, t in -100.0f64..100.0) {
        let l = &builtin_catalog()[idx];
        let v = l.evaluate(c64(sigma, t)).unwrap();
        prop_assert!((v - c64(1.0, 0.0)).norm() <= l.right_half_plane_bound(sigma));
    }

    #[test]
    fn degree_zero_left_half_plane_bound(e3 in any::<bool>(), s in point(-10.0..-0.5, -30.0..30.0)) {
        let l = cat(if e3 { "E3" } else { "E1" });
        let fe = l.functional_equation().unwrap();
        let Coefficients::Polynomial(a) = l.coefficients() else { unreachable!() };
        let sum: f64 = a.iter().enumerate().map(|(i, c)| c.norm() * ((i + 1) as f64).powf(s.re - 1.0)).sum();
        let bound = fe.q().powf(1.0 - 2.0 * s.re) * sum;
        prop_assert!(l.evaluate(s).unwrap().norm() <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn counting_scaling_covariance(
        raw in prop::collection::vec((0.1f64..20.0, 0.0f64..TAU, 1u32..4), 1..8),
        lambda in 1.01f64..3.0,
        r in 0.5f64..25.0,
    ) {
        let ledger = PoleLedger::new(raw.iter().map(|&(m, a, k)| (Complex64::from_polar(m, a), k)).collect(), f64::INFINITY);
        let before = counting_ledger(&ledger, r).unwrap();
        let after = counting_ledger(&ledger.scaled(lambda), r).unwrap();
        if ledger.count_within(r) > 0 {
            prop_assert!(after < before);
        } else {
            prop_assert!(after <= before);
        }
    }

    #[test]
    fn constant_a_is_antisymmetric(
        q1 in 0.1f64..5.0,
        q2 in 0.1f64..5.0,
        l1 in prop::collection::vec(0.1f64..2.0, 0..3),
        l2 in prop::collection::vec(0.1f64..2.0, 0..3),
    ) {
        let mk = |q: f64, ls: &[f64]| {
            let factors = ls.iter().map(|&l| GammaFactor::new(l, c64(0.0, 0.0)).unwrap()).collect();
            let fe = FunctionalEquationData::new(q, c64(1.0, 0.0), factors).unwrap();
            LFunctionSpec::new("syn", Coefficients::Zeta, 1, Some(fe), CoeffGrowth { c: 1.0, eps: 0.0 }).unwrap()
        };
        let a = mk(q1, &l1);
        let b = mk(q2, &l2);
        let ab = constant_a(&a, &b).unwrap();
        let ba = constant_a(&b, &a).unwrap();
        prop_assert!((ab + ba).abs() <= 1e-14 * ab.abs().max(1.0));
    }

    #[test]
    fn hm_quotient_identity(m in 1i64..4, pair in 0usize..2, s in point(-3.0..3.0, -3.0..3.0)) {
        let (a, b) = [("E1", "E3"), ("E1", "E2")][pair];
        let l1 = cat(a);
        let l2 = cat(b);
        let h = make_hm(&l1, &l2, m, 10.0).unwrap();
        let w = s.powi(m as i32);
        // L1 - h loses about log10(e^|Re w|) digits to cancellation in double precision
        prop_assume!(w.re.abs() <= 12.0);
        prop_assume!(h.poles().entries().iter().all(|(p, _)| (*p - s).norm() > 1e-3));
        prop_assume!((w.exp() - c64(1.0, 0.0)).norm() > 1e-6);
        let hv = h.ln_eval(s);
        let num = l1.ln_eval(s).sub(&hv);
        let den = l2.ln_eval(s).sub(&hv);
        let q = (num / den).0;
        // compare logs: |q - w| mod 2 pi i bounds the relative error of exp
        let diff = c64(q.re - w.re, selberg_core::logc::wrap_phase(q.im - w.im));
        prop_assert!(diff.norm() <= 1e-9, "m={m} s={s} diff={diff}");
    }
}

proptest! {
    #![proptest_config(cfg(32))]

    #[test]
    fn stirling_residual_decays(delta in 0.05f64..1.5, frac in -1.0f64..1.0) {
        let sector = AngularSector::new(delta).unwrap();
        let arg = frac * sector.max_arg();
        let res = |r: f64| {
            let z = Complex64::from_polar(r, arg);
            (log_gamma(z).unwrap() - stirling_log_gamma(z).unwrap()).norm()
        };
        prop_assert!(res(100.0) <= res(10.0));
    }

    #[test]
    fn winding_additivity(
        roots in prop::collection::vec(point(-2.0..2.0, -2.0..2.0), 1..6),
        x0 in -2.5f64..0.0, y0 in -2.5f64..0.0, w in 1.0f64..4.0, h in 1.0f64..4.0,
    ) {
        let rect = Rect::new(x0, x0 + w, y0, y0 + h);
        prop_assume!(clear_of(&rect, &roots, 1e-3));
        let f = poly_from_roots(roots.clone());
        let outer = winding_number(&f, &Contour::rectangle(rect)).unwrap();
        let parts: i64 = quadrants(&rect).iter().map(|q| winding_number(&f, &Contour::rectangle(*q)).unwrap()).sum();
        prop_assert_eq!(outer, parts);
        prop_assert_eq!(outer as usize, roots.iter().filter(|z| rect.contains(**z)).count());
    }

    #[test]
    fn multiplicity_conservation(
        roots in prop::collection::vec((point(-1.5..1.5, -1.5..1.5), 1u32..3), 1..4),
    ) {
        let mut all = Vec::new();
        for &(z, k) in &roots {
            for _ in 0..k {
                all.push(z);
            }
        }
        let rect = Rect::new(-2.0, 2.0, -2.0, 2.0);
        let distinct = roots.iter().enumerate().all(|(i, a)| roots[..i].iter().all(|b| (a.0 - b.0).norm() > 0.05));
        prop_assume!(distinct);
        let f = poly_from_roots(all.clone());
        let found = locate_zeros(&f, &rect, 1e-9).unwrap();
        let total: u32 = found.iter().map(|z| z.multiplicity).sum();
        prop_assert_eq!(total as i64, winding_number(&f, &Contour::rectangle(rect)).unwrap());
        prop_assert_eq!(total as usize, all.len());
    }

    #[test]
    fn comparator_symmetry(
        shared in prop::collection::vec(point(-1.5..1.5, -1.5..1.5), 0..3),
        extra in prop::collection::vec(point(-1.5..1.5, -1.5..1.5), 0..2),
    ) {
        let mut all: Vec<Complex64> = shared.clone();
        all.extend(extra.iter().copied());
        let distinct = all.iter().enumerate().all(|(i, a)| all[..i].iter().all(|b| (a - b).norm() > 0.05));
        prop_assume!(distinct);
        let f = poly_from_roots(shared.clone());
        let g = poly_from_roots(all);
        let rect = Rect::new(-2.0, 2.0, -2.0, 2.0);
        let fg = compare_zero_sets(&f, &g, &rect, 1e-9, &[]).unwrap();
        let gf = compare_zero_sets(&g, &f, &rect, 1e-9, &[]).unwrap();
        prop_assert_eq!(fg.verdict, gf.verdict);
        prop_assert_eq!(fg.verdict == Verdict::Equal, extra.is_empty());
        let m = fg.mirrored();
        prop_assert_eq!(m.unmatched_left.len(), gf.unmatched_left.len());
        prop_assert_eq!(m.unmatched_right.len(), gf.unmatched_right.len());
        prop_assert_eq!(m.matched_pairs.len(), gf.matched_pairs.len());
        for ((a, b), (c, d)) in m.matched_pairs.iter().zip(gf.matched_pairs.iter()) {
            prop_assert!((a.location - c.location).norm() < 1e-8 && (b.location - d.location).norm() < 1e-8);
        }
    }

    #[test]
    fn conjugate_pairing(
        pairs in prop::collection::vec(point(-1.5..1.5, 0.05..1.5), 1..3),
        reals in prop::collection::vec(-1.5f64..1.5, 0..2),
    ) {
        let mut roots = Vec::new();
        for z in &pairs {
            roots.push(*z);
            roots.push(z.conj());
        }
        roots.extend(reals.iter().map(|&x| c64(x, 0.0)));
        let distinct = roots.iter().enumerate().all(|(i, a)| roots[..i].iter().all(|b| (a - b).norm() > 0.05));
        prop_assume!(distinct);
        let f = poly_from_roots(roots);
        let found = locate_zeros(&f, &Rect::new(-2.0, 2.0, -2.0, 2.0), 1e-9).unwrap();
        for z in &found {
            let twin = found.iter().find(|w| (w.location - z.location.conj()).norm() < 1e-8);
            prop_assert!(twin.is_some_and(|w| w.multiplicity == z.multiplicity), "{:?}", z);
        }
    }

    #[test]
    fn quotient_fit_soundness(
        m in -2i32..=3,
        a in point(-1.0..1.0, -1.0..1.0),
        b in point(-1.0..1.0, -1.0..1.0),
    ) {
        prop_assume!(a.norm() <= 1.0 && b.norm() <= 1.0);
        let g = |s: Complex64| c64(1.0, 0.0) + s * s;
        let f = move |s: Complex64| g(s) * (s - 1.0).powi(m) * (a * s + b).exp();
        let path = default_fit_path(c64(2.0, -3.0), c64(4.0, 3.0), 64);
        let fit = fit_hadamard_quotient(&f, &g, &path).unwrap();
        prop_assert_eq!(fit.m, m);
        prop_assert!((fit.a - a).norm() <= 1e-8, "{:?}", fit);
        prop_assert!((fit.b - b).norm() <= 1e-8, "{:?}", fit);
    }

    #[test]
    fn h1_counting_law(r in 5.0f64..50.0) {
        let e1 = cat("E1");
        let e3 = cat("E3");
        let h1 = make_hm(&e1, &e3, 1, 60.0).unwrap();
        let n_h1 = counting(&h1.as_mero(), r).unwrap();
        let lattice: Vec<(Complex64, u32)> = hm_lattice(1, 60.0).into_iter().filter(|(p, _)| p.norm() > 0.0).collect();
        let n_star = counting_ledger(&PoleLedger::new(lattice, 60.0), r).unwrap();
        prop_assert!((n_h1 - n_star - r.ln()).abs() <= 1e-12 * n_h1.max(1.0));
    }

    #[test]
    fn left_half_plane_conjugate_rays(chi in any::<bool>(), frac in 0.0f64..1.0, r in 50.0f64..500.0) {
        let l = if chi { cat("chi4") } else { LFunctionSpec::zeta() };
        let d = DEFAULT_DELTA;
        let theta = PI / 2.0 + d + 1e-9 + frac * (PI / 2.0 - 2.0 * d - 2e-9);
        let up = lemma2_evaluate(&l, theta, r, d).unwrap();
        let down = lemma2_evaluate(&l, TAU - theta, r, d).unwrap();
        prop_assert!((up.actual - down.actual).abs() <= 1e-9 * up.actual.abs().max(1.0));
        prop_assert!((up.remainder.abs() - down.remainder.abs()).abs() <= 1e-9 * up.predicted.abs().max(1.0));
    }

    #[test]
    fn direction_verdicts_agree_on_conjugate_rays(which in 0usize..4, theta in 0.0f64..PI) {
        let grid = geometric_grid(10.0, 1e4, 16);
        let opts = DirectionOptions::default();
        let none = PoleLedger::empty();
        let e1 = cat("E1");
        let zeta = LFunctionSpec::zeta();
        let exp1 = selberg_core::function::LnFn(|s: Complex64| LogComplex(s));
        let exp2 = selberg_core::function::LnFn(|s: Complex64| LogComplex(s * s));
        let (up, down) = match which {
            0 => (classify_direction(&e1, &none, theta, &grid, &opts), classify_direction(&e1, &none, TAU - theta, &grid, &opts)),
            1 => (classify_direction(&zeta, &none, theta, &grid, &opts), classify_direction(&zeta, &none, TAU - theta, &grid, &opts)),
            2 => (classify_direction(&exp1, &none, theta, &grid, &opts), classify_direction(&exp1, &none, TAU - theta, &grid, &opts)),
            _ => (classify_direction(&exp2, &none, theta, &grid, &opts), classify_direction(&exp2, &none, TAU - theta, &grid, &opts)),
        };
        match (up.verdict, down.verdict) {
            (DirectionVerdict::AValueLimiting(a), DirectionVerdict::AValueLimiting(b)) => prop_assert!((a - b.conj()).norm() < 1e-6),
            (x, y) => prop_assert_eq!(x, y),
        }
    }
}

proptest! {
    #![proptest_config(cfg(12))]

    #[test]
    fn characteristic_is_monotone(idx in 0usize..5, r0 in 5.0f64..20.0, ratio in 1.05f64..1.6) {
        let l = &builtin_catalog()[idx];
        let f = MeroFunction::from_lfunction(l);
        let grid: Vec<f64> = (0..4).map(|k| r0 * ratio.powi(k)).collect();
        let s = sweep(&f, &grid).unwrap();
        for x in &s {
            prop_assert_eq!(x.t_val, x.m_val + x.n_val);
            prop_assert!(x.m_val >= -1e-12 && x.n_val >= 0.0);
        }
        for w in s.windows(2) {
            prop_assert!(w[1].t_val >= w[0].t_val - 1e-6 * (1.0 + w[0].t_val), "{:?}", w);
        }
    }
}

#[test]
fn exponential_proximity_closed_form() {
    for a in [c64(1.0, 0.0), c64(2.0, 0.0), c64(0.0, 1.0), c64(-1.0, 0.0)] {
        let f = MeroFunction::entire_ln("exp", move |s| LogComplex(a * s));
        for r in [10.0, 50.0] {
            let m = proximity(&f, r).unwrap();
            let want = a.norm() * r / PI;
            assert!((m - want).abs() <= 1e-5 * want, "a={a} r={r}: {m} vs {want}");
        }
    }
}

#[test]
fn hm_pole_ledger_is_complete() {
    let e1 = cat("E1");
    let e3 = cat("E3");
    for m in 1..=3u32 {
        let radius = 6.0;
        let h = make_hm(&e1, &e3, m as i64, radius).unwrap();
        let denom = move |s: Complex64| selberg_core::logc::exp_m1(s.powu(m));
        for &(p, k) in h.poles().entries() {
            let w = winding_number(&denom, &Contour::circle(p, 1e-3)).unwrap();
            assert_eq!(w as u32, if p.norm() == 0.0 { m } else { 1 });
            assert_eq!(k, w as u32);
        }
        // L2 - L1 = 2^{-s} never vanishes, so every root must be listed
        let half = radius / 2f64.sqrt() - 0.01;
        let found = locate_zeros(&denom, &Rect::new(-half, half + 0.013, -half, half + 0.017), 1e-9).unwrap();
        for z in &found {
            let listed = h.poles().entries().iter().find(|(p, _)| (*p - z.location).norm() < 1e-7);
            assert!(listed.is_some_and(|(_, k)| *k == z.multiplicity), "m={m} {:?}", z);
        }
    }
}
