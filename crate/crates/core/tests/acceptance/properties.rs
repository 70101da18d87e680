//! Property tests of the invariants.

use proptest::prelude::*;

use fractal_calculus::expr::Expr;
use fractal_calculus::falpha::{f_alpha_integral, FractalFn};
use fractal_calculus::operators::{apply, power_rule_derivative, power_rule_integral, OperatorSpec, Side};
use fractal_calculus::output::Table;
use fractal_calculus::solutions::{gap_plateau_spread, ExampleProblem};
use fractal_calculus::special::{
    beta_fractal, beta_fractal_quadrature, beta_fractal_quadrature_reflected, gamma, ml,
};
use fractal_calculus::staircase::StaircaseFn;

fn sf() -> StaircaseFn {
    StaircaseFn::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn staircase_monotone(x in 0.0..=1.0f64, y in 0.0..=1.0f64) {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        prop_assert!(sf().eval(lo).unwrap() <= sf().eval(hi).unwrap());
    }

    #[test]
    fn staircase_symmetric(x in 0.0..=1.0f64) {
        let s = sf();
        prop_assert!((s.eval(x).unwrap() + s.eval(1.0 - x).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn staircase_self_similar(x in 0.0..=1.0f64) {
        let s = sf();
        prop_assert!((s.eval(x / 3.0).unwrap() - s.eval(x).unwrap() / 2.0).abs() < 1e-9);
    }

    #[test]
    fn staircase_tiles(x in 0.0..5.0f64) {
        let s = sf();
        prop_assert!((s.eval(x + 1.0).unwrap() - s.eval(x).unwrap() - 1.0).abs() < 1e-9);
        prop_assert!((s.eval(-x).unwrap() + s.eval(x).unwrap()).abs() == 0.0);
    }

    #[test]
    fn staircase_constant_on_gaps(a in 0.0..1.0f64, b in 0.0..1.0f64) {
        let s = sf();
        let mid = |t: f64| 1.0 / 3.0 + (1.0 / 3.0) * (0.001 + 0.998 * t);
        prop_assert_eq!(s.eval(mid(a)).unwrap(), s.eval(mid(b)).unwrap());
        let small = |t: f64| 1.0 / 9.0 + (1.0 / 9.0) * (0.001 + 0.998 * t);
        prop_assert_eq!(s.eval(small(a)).unwrap(), s.eval(small(b)).unwrap());
    }

    /// f64 carries ~33 ternary digits, so the round trip holds to ~1e-10
    /// rather than to 2^-53.
    #[test]
    fn quantile_round_trip(u in 0.0..=1.0f64) {
        let s = sf();
        let t = s.quantile(u).unwrap();
        prop_assert!((s.eval(t).unwrap() - u).abs() < 1e-10);
    }

    #[test]
    fn quantile_lands_in_set(u in 0.0..=1.0f64) {
        prop_assert!(sf().contains(sf().quantile(u).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integral_linear(c1 in -3.0..3.0f64, c2 in -3.0..3.0f64, b in 0.05..1.0f64) {
        let s = sf();
        let f1 = FractalFn::of_x(|x| x.sin());
        let f2 = FractalFn::of_x(|x| x * x);
        let comb = {
            let (f1, f2) = (f1.clone(), f2.clone());
            FractalFn::of_x(move |x| {
                let s = StaircaseFn::default();
                c1 * f1.at_x(&s, x).unwrap() + c2 * f2.at_x(&s, x).unwrap()
            })
        };
        let lhs = f_alpha_integral(&comb, &s, 0.0, b, 64).unwrap();
        let rhs = c1 * f_alpha_integral(&f1, &s, 0.0, b, 64).unwrap() + c2 * f_alpha_integral(&f2, &s, 0.0, b, 64).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn integral_additive(a in 0.0..0.5f64, m in 0.0..1.0f64, c in 0.5..1.5f64) {
        let s = sf();
        let b = a + m * (c - a);
        let f = FractalFn::of_staircase(|u| (-u).exp() + u * u);
        let whole = f_alpha_integral(&f, &s, a, c, 64).unwrap();
        let parts = f_alpha_integral(&f, &s, a, b, 64).unwrap() + f_alpha_integral(&f, &s, b, c, 64).unwrap();
        prop_assert!((whole - parts).abs() < 1e-10);
    }

    /// For `f = φ∘S` the integral is ordinary integration of `φ` on `[S(a), S(b)]`;
    /// cubic `φ` makes the reference exact.
    #[test]
    fn integral_conjugacy(k in prop::array::uniform4(-2.0..2.0f64), a in 0.0..1.0f64, b in 1.0..2.0f64) {
        let s = sf();
        let f = FractalFn::of_staircase(move |u| k[0] + k[1] * u + k[2] * u * u + k[3] * u * u * u);
        let anti = |u: f64| k[0] * u + k[1] * u * u / 2.0 + k[2] * u.powi(3) / 3.0 + k[3] * u.powi(4) / 4.0;
        let (ua, ub) = (s.eval(a).unwrap(), s.eval(b).unwrap());
        let v = f_alpha_integral(&f, &s, a, b, 64).unwrap();
        prop_assert!((v - (anti(ub) - anti(ua))).abs() < 1e-10);
    }

    #[test]
    fn beta_symmetric(r in 0.3..3.0f64, w in 0.3..3.0f64) {
        prop_assert_eq!(beta_fractal(r, w).unwrap(), beta_fractal(w, r).unwrap());
        let s = sf();
        let q = beta_fractal_quadrature(&s, r, w).unwrap();
        let reflected = beta_fractal_quadrature_reflected(&s, w, r).unwrap();
        prop_assert!((q - reflected).abs() / q < 1e-4);
        prop_assert!((q - beta_fractal(r, w).unwrap()).abs() / q < 1e-4);
    }

    #[test]
    fn operators_linear(c in -2.0..2.0f64, u in 0.2..1.0f64) {
        let s = sf();
        let x = s.quantile(u).unwrap();
        let spec = OperatorSpec::rl_integral(Side::Left, 0.0, 0.6).unwrap();
        let f = FractalFn::of_staircase(|u| u.cos());
        let g = FractalFn::of_staircase(|u| u * u);
        let h = FractalFn::of_staircase(move |u| c * u.cos() + u * u);
        let lhs = apply(&spec, &h, &s, x).unwrap();
        let rhs = c * apply(&spec, &f, &s, x).unwrap() + apply(&spec, &g, &s, x).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gamma_recurrence(z in 0.01..10.0f64) {
        let lhs = gamma(z + 1.0).unwrap();
        prop_assert!((lhs - z * gamma(z).unwrap()).abs() / lhs.abs() < 1e-12);
    }

    /// `E_{η,ν}(z) = 1/Γ(ν) + z·E_{η,η+ν}(z)` splits off the first partial sum.
    #[test]
    fn ml_recurrence(eta in 0.5..2.5f64, nu in 0.2..3.0f64, z in -3.0..3.0f64) {
        let lhs = ml(eta, nu, z).unwrap();
        let rhs = 1.0 / gamma(nu).unwrap() + z * ml(eta, eta + nu, z).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10 * lhs.abs().max(1.0));
    }

    /// For `z > 0` and `ν > 0` every term is positive: partial sums increase,
    /// so the value grows with `z` and is at least `1/Γ(ν)`.
    #[test]
    fn ml_partial_sums_increase(eta in 0.5..2.5f64, nu in 0.1..3.0f64, z in 0.0..3.0f64, dz in 0.01..1.0f64) {
        let v = ml(eta, nu, z).unwrap();
        prop_assert!(v >= 1.0 / gamma(nu).unwrap());
        prop_assert!(ml(eta, nu, z + dz).unwrap() > v);
    }

    #[test]
    fn expression_arithmetic(a in -100.0..100.0f64, b in -100.0..100.0f64, x in -2.0..2.0f64) {
        let e = Expr::parse(&format!("({a}) + ({b}) * x - x^2")).unwrap();
        prop_assert_eq!(e.eval(x, 0.0), a + b * x - x * x);
    }

    #[test]
    fn csv_round_trips(values in prop::collection::vec(-1e6..1e6f64, 1..20)) {
        let xs: Vec<f64> = (0..values.len()).map(|i| i as f64 / 7.0).collect();
        let t = Table::new(xs.clone()).with_column("v", values.clone()).unwrap();
        let csv = t.to_csv();
        let parsed: Vec<(f64, f64)> = csv
            .lines()
            .skip(1)
            .map(|l| {
                let mut it = l.split(',').map(|s| s.parse::<f64>().unwrap());
                (it.next().unwrap(), it.next().unwrap())
            })
            .collect();
        prop_assert_eq!(parsed, xs.into_iter().zip(values).collect::<Vec<_>>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn power_rules_hold(beta in 0.3..0.9f64, eta in 0.0..2.0f64, u in 0.2..1.0f64) {
        let s = sf();
        let x = s.quantile(u).unwrap();
        let f = FractalFn::of_staircase(move |u| u.powf(eta));
        let int = OperatorSpec::rl_integral(Side::Left, 0.0, beta).unwrap();
        let want = power_rule_integral(beta, eta, &s, 0.0, x).unwrap();
        prop_assert!((apply(&int, &f, &s, x).unwrap() - want).abs() < 1e-3 * want.abs());
        let der = OperatorSpec::rl_derivative(Side::Left, 0.0, beta).unwrap();
        let want = power_rule_derivative(beta, eta, &s, 0.0, x).unwrap();
        prop_assert!((apply(&der, &f, &s, x).unwrap() - want).abs() < 1e-3 * want.abs().max(1.0));
    }
}

#[test]
fn solutions_plateau_on_the_middle_gap() {
    let s = sf();
    for id in 1..=4 {
        let p = ExampleProblem::paper(id, -0.5).unwrap();
        assert_eq!(gap_plateau_spread(&p, &s).unwrap(), 0.0, "example {id}");
    }
}
