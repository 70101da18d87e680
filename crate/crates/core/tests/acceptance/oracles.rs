//! Reference values checked against independent computations: exact
//! rational digit algorithms, closed forms, an independent Gamma, and the
//! Grünwald–Letnikov classical operators.

use fractal_calculus::classical::{classical_caputo, classical_rl_derivative, classical_rl_integral};
use fractal_calculus::falpha::{
    f_alpha_derivative, f_alpha_integral, fractal_exp, stieltjes_sum, FractalFn, DEFAULT_DERIVATIVE_STEP,
};
use fractal_calculus::laplace::{
    convolve, inverse_laplace, laplace_numeric, laplace_rule, Image, LaplaceExpr, LaplaceOptions, LaplaceTerm,
    TransformRule,
};
use fractal_calculus::operators::{
    apply, composition_residual, power_rule_derivative, power_rule_integral, CompositionKind, OperatorKind,
    OperatorSpec, Side,
};
use fractal_calculus::solutions::{
    alpha_one_degeneration, alpha_one_degeneration_for, derive, solve_example, solve_problem, ExampleProblem,
    DEFAULT_LAMBDA,
};
use fractal_calculus::special::{
    beta_fractal, gamma, gamma_classical, gamma_fractal, gamma_fractal_quadrature, ln_gamma, ml,
    ml_special_case_residuals, GammaMode,
};
use fractal_calculus::staircase::{prefractal_intervals, StaircaseFn};
use fractal_calculus::GridFunction;

use crate::exact;

fn sf() -> StaircaseFn {
    StaircaseFn::default()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

// ---------------------------------------------------------------- staircase

#[test]
fn staircase_reference_points() {
    let s = sf();
    for (p, q, want) in [(0, 1, 0.0), (1, 3, 0.5), (1, 4, 1.0 / 3.0), (2, 3, 0.5), (1, 1, 1.0)] {
        assert_eq!(exact::staircase(p, q), want);
        assert!(close(s.eval(p as f64 / q as f64).unwrap(), want, 2f64.powi(-50)), "{p}/{q}");
    }
}

#[test]
fn staircase_matches_exact_rationals() {
    let s = sf();
    let mut worst: f64 = 0.0;
    for q in 2..=243u64 {
        for p in 0..=q {
            let v = s.eval(p as f64 / q as f64).unwrap();
            worst = worst.max((v - exact::staircase(p, q)).abs());
        }
    }
    // rounding p/q to f64 moves x by ~1e-16, which S can amplify to ~1e-10
    assert!(worst < 1e-9, "{worst}");
}

#[test]
fn staircase_exact_on_dyadic_arguments() {
    // p/2^k is exact in f64 and 3r stays on the 2^-k grid
    let s = sf();
    for p in 0..=1024u64 {
        let x = p as f64 / 1024.0;
        assert!(close(s.eval(x).unwrap(), exact::staircase(p, 1024), 1e-15), "{p}");
        assert_eq!(s.contains(x), exact::in_prefractal(p, 1024, 53), "{p}");
    }
}

#[test]
fn quantile_reference_points() {
    let s = sf();
    for (p, q, want) in [(0, 1, 0.0), (1, 2, 2.0 / 3.0), (1, 3, 0.25)] {
        assert!(close(exact::quantile(p, q), want, 1e-15));
        assert!(close(s.quantile(p as f64 / q as f64).unwrap(), want, 1e-15), "{p}/{q}");
    }
    for q in 2..=97u64 {
        for p in 0..=q {
            let t = s.quantile(p as f64 / q as f64).unwrap();
            assert!(close(t, exact::quantile(p, q), 1e-14), "{p}/{q}");
        }
    }
}

#[test]
fn membership_reference_points() {
    let s = sf();
    assert!(s.contains(1.0 / 3.0));
    assert!(!s.contains(0.5));
    assert!(s.contains(2.0 / 3.0));
    assert!(exact::in_prefractal(1, 3, 53) && !exact::in_prefractal(1, 2, 53) && exact::in_prefractal(2, 3, 53));
}

#[test]
fn prefractal_reference_stages() {
    assert_eq!(prefractal_intervals(0).unwrap(), vec![(0.0, 1.0)]);
    let one = prefractal_intervals(1).unwrap();
    assert!(close(one[0].1, 1.0 / 3.0, 1e-16) && close(one[1].0, 2.0 / 3.0, 1e-16));
    let two = prefractal_intervals(2).unwrap();
    let want = [(0.0, 1.0 / 9.0), (2.0 / 9.0, 1.0 / 3.0), (2.0 / 3.0, 7.0 / 9.0), (8.0 / 9.0, 1.0)];
    for (got, w) in two.iter().zip(want) {
        assert!(close(got.0, w.0, 1e-15) && close(got.1, w.1, 1e-15));
    }
    let five = prefractal_intervals(5).unwrap();
    assert_eq!(five.len(), 32);
    assert!(five.iter().all(|(a, b)| close(b - a, 3f64.powi(-5), 1e-15)));
    assert!(prefractal_intervals(21).is_err());
}

// -------------------------------------------------------------- falpha-core

#[test]
fn f_alpha_derivative_reference_values() {
    let s = sf();
    let h = DEFAULT_DERIVATIVE_STEP;
    let stair = FractalFn::of_staircase(|u| u);
    assert!(close(f_alpha_derivative(&stair, &s, 0.25, h).unwrap(), 1.0, 1e-6));
    let c = FractalFn::constant(3.5);
    for x in [0.0, 0.25, 2.0 / 3.0, 1.0] {
        assert_eq!(f_alpha_derivative(&c, &s, x, h).unwrap(), 0.0);
    }
    let sq = FractalFn::of_staircase(|u| u * u);
    assert!(close(f_alpha_derivative(&sq, &s, 0.25, h).unwrap(), 2.0 / 3.0, 1e-5));
    // off the Cantor set the derivative is zero
    assert_eq!(f_alpha_derivative(&sq, &s, 0.5, h).unwrap(), 0.0);
}

#[test]
fn f_alpha_integral_reference_values() {
    let s = sf();
    assert!(close(f_alpha_integral(&FractalFn::constant(1.0), &s, 0.0, 1.0, 64).unwrap(), 1.0, 1e-14));
    let u = FractalFn::of_staircase(|u| u);
    assert!(close(f_alpha_integral(&u, &s, 0.0, 1.0, 64).unwrap(), 0.5, 1e-8));
    let e = FractalFn::of_staircase(|u| (-u).exp());
    assert!(close(f_alpha_integral(&e, &s, 0.0, 1.0, 64).unwrap(), 1.0 - (-1f64).exp(), 1e-6));
    // the slow x-partition Stieltjes sum agrees
    assert!(close(stieltjes_sum(&u, &s, 0.0, 1.0, 3usize.pow(9)).unwrap(), 0.5, 1e-3));
}

#[test]
fn fundamental_theorem() {
    let s = sf();
    for k in 1..=3 {
        let big_f = FractalFn::of_staircase(move |u| u.powi(k));
        let df = {
            let big_f = big_f.clone();
            FractalFn::of_x(move |x| f_alpha_derivative(&big_f, &StaircaseFn::default(), x, DEFAULT_DERIVATIVE_STEP).unwrap())
        };
        for i in 1..=20 {
            let x = i as f64 / 20.0;
            let lhs = f_alpha_integral(&df, &s, 0.0, x, 64).unwrap();
            let rhs = big_f.at_x(&s, x).unwrap() - big_f.at_x(&s, 0.0).unwrap();
            assert!(close(lhs, rhs, 1e-4), "k={k} x={x}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn fractal_exp_reference_values() {
    let s = sf();
    assert_eq!(fractal_exp(&s, 0.0).unwrap(), 1.0);
    assert!(close(fractal_exp(&s, 1.0).unwrap(), 0.367879441171, 1e-12));
    assert!(close(fractal_exp(&s, 2.0 / 3.0).unwrap(), 0.606530659713, 1e-12));
    // the limit definition (1 - S/n)^n
    let u = s.eval(0.4).unwrap();
    let n = 1e7;
    assert!(close(fractal_exp(&s, 0.4).unwrap(), (1.0 - u / n).powf(n), 1e-7));
}

// -------------------------------------------------------- special functions

/// Gamma by the Stirling series after shifting the argument above 20.
fn stirling_gamma(z: f64) -> f64 {
    let mut shift = 1.0;
    let mut x = z;
    while x < 20.0 {
        shift *= x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let series = inv / 12.0 - inv.powi(3) / 360.0 + inv.powi(5) / 1260.0 - inv.powi(7) / 1680.0;
    let ln = (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series;
    ln.exp() / shift
}

#[test]
fn gamma_against_independent_stirling() {
    assert_eq!(gamma_classical(1.0).unwrap(), 1.0);
    assert!(close(gamma_classical(3.0).unwrap(), 2.0, 1e-14));
    assert!(close(gamma_classical(0.5).unwrap(), 1.7724538509055159, 1e-10));
    let mut worst: f64 = 0.0;
    for i in 1..300 {
        let z = i as f64 * 0.1;
        worst = worst.max((gamma_classical(z).unwrap() / stirling_gamma(z) - 1.0).abs());
    }
    assert!(worst < 1e-12, "{worst}");
    // reflection below zero: Γ(-1/2) = -2√π
    assert!(close(gamma(-0.5).unwrap(), -2.0 * std::f64::consts::PI.sqrt(), 1e-12));
    assert!(gamma(0.0).is_err() && gamma(-3.0).is_err());
    let direct: f64 = (1..180).map(|k| (k as f64).ln()).sum();
    assert!(close(ln_gamma(180.0).unwrap(), direct, 1e-9));
}

#[test]
fn fractal_gamma_reference_values() {
    let s = sf();
    assert!(close(gamma_fractal(1.5, GammaMode::RawArgument, &s).unwrap(), 0.886226925453, 1e-10));
    assert!(close(gamma_fractal(1.0, GammaMode::StaircaseComposed, &s).unwrap(), 1.0, 1e-14));
    assert!(close(gamma_fractal(4.0 / 3.0, GammaMode::StaircaseComposed, &s).unwrap(), 0.886226925453, 1e-8));
    for x in [0.5, 1.0, 4.0 / 3.0, 2.5] {
        let q = gamma_fractal_quadrature(x, &s, 40.0).unwrap();
        let g = gamma_fractal(x, GammaMode::StaircaseComposed, &s).unwrap();
        assert!(close(q, g, 1e-4), "{x}: {q} vs {g}");
    }
}

#[test]
fn beta_reference_values() {
    assert!(close(beta_fractal(1.0, 1.0).unwrap(), 1.0, 1e-14));
    assert!(close(beta_fractal(0.5, 0.5).unwrap(), std::f64::consts::PI, 1e-9));
    assert!(close(beta_fractal(2.0, 3.0).unwrap(), 1.0 / 12.0, 1e-10));
    assert!(beta_fractal(0.0, 1.0).is_err() && beta_fractal(1.0, -2.0).is_err());
}

#[test]
fn mittag_leffler_reference_values() {
    assert!(close(ml(1.0, 1.0, 1.0).unwrap(), std::f64::consts::E, 1e-10));
    assert!(close(ml(2.0, 1.0, 1.0).unwrap(), 1f64.cosh(), 1e-10));
    for (eta, nu) in [(0.5, 0.5), (1.3, 2.7), (4.0 / 3.0, 13.0 / 3.0)] {
        assert!(close(ml(eta, nu, 0.0).unwrap(), 1.0 / gamma(nu).unwrap(), 1e-15));
    }
    // identities outside the four listed cases
    for u in [0.3f64, 1.0, 2.5] {
        assert!(close(ml(2.0, 1.0, -u * u).unwrap(), u.cos(), 1e-12));
        assert!(close(ml(2.0, 2.0, -u * u).unwrap(), u.sin() / u, 1e-12));
        assert!(close(ml(1.0, 3.0, u).unwrap(), (u.exp() - 1.0 - u) / (u * u), 1e-12));
    }
    // E_{1,2}(1) is (e - 1)/1, not the e^{0}/1 = 1 of the shifted-exponent form
    assert!(close(ml(1.0, 2.0, 1.0).unwrap(), std::f64::consts::E - 1.0, 1e-12));
    assert!((ml(1.0, 2.0, 1.0).unwrap() - 1.0).abs() > 0.5);
}

#[test]
fn mittag_leffler_special_case_grid() {
    let s = sf();
    let at_zero = GridFunction::new(vec![0.0], vec![0.0], "x").unwrap();
    assert!(ml_special_case_residuals(&s, &at_zero).unwrap().max_abs() < 1e-15);
    let at_one = GridFunction::new(vec![1.0], vec![0.0], "x").unwrap();
    assert!(ml_special_case_residuals(&s, &at_one).unwrap().max_abs() < 1e-9);
    let grid = GridFunction::linspace(0.0, 3.0, 64, "x").unwrap();
    assert!(ml_special_case_residuals(&s, &grid).unwrap().max_abs() < 1e-8);
}

// ------------------------------------------------------ nonlocal operators

#[test]
fn rl_integral_reference_values() {
    let s = sf();
    let spec = OperatorSpec::rl_integral(Side::Left, 0.0, 0.5).unwrap();
    assert_eq!(apply(&spec, &FractalFn::constant(0.0), &s, 0.7).unwrap(), 0.0);
    let v = apply(&spec, &FractalFn::constant(1.0), &s, 1.0).unwrap();
    assert!(close(v, 1.0 / gamma(1.5).unwrap(), 1e-3), "{v}");
    let one = OperatorSpec::rl_integral(Side::Left, 0.0, 1.0).unwrap();
    let t = FractalFn::of_x(|x| x);
    assert!(close(apply(&one, &t, &StaircaseFn::Identity, 1.0).unwrap(), 0.5, 1e-6));
    // a point in the closure of the gap at the terminal: zero-length u-interval
    let right = OperatorSpec::rl_integral(Side::Right, 2.0 / 3.0, 0.5).unwrap();
    assert_eq!(apply(&right, &FractalFn::constant(1.0), &s, 0.5).unwrap(), 0.0);
}

#[test]
fn rl_derivative_reference_values() {
    let s = sf();
    let spec = OperatorSpec::rl_derivative(Side::Left, 0.0, 0.5).unwrap();
    let sq = FractalFn::of_staircase(|u| u * u);
    let want = gamma(3.0).unwrap() / gamma(2.5).unwrap();
    assert!(close(apply(&spec, &sq, &s, 1.0).unwrap(), want, 1e-2));
    let t2 = FractalFn::of_x(|x| x * x);
    assert!(close(apply(&spec, &t2, &StaircaseFn::Identity, 1.0).unwrap(), 1.5045, 1e-3));
    for c in [1.0, -2.5] {
        let v = apply(&spec, &FractalFn::constant(c), &s, 1.0).unwrap();
        assert!(close(v, 0.5641896 * c, 1e-3), "{v}");
    }
}

#[test]
fn caputo_reference_values() {
    let s = sf();
    let spec = OperatorSpec::caputo(Side::Left, 0.0, 0.5).unwrap();
    assert!(apply(&spec, &FractalFn::constant(4.0), &s, 0.8).unwrap().abs() < 1e-8);
    let u = FractalFn::of_staircase(|u| u);
    assert!(close(apply(&spec, &u, &s, 1.0).unwrap(), std::f64::consts::FRAC_2_SQRT_PI, 1e-3));
    let t2 = FractalFn::of_x(|x| x * x);
    assert!(close(apply(&spec, &t2, &StaircaseFn::Identity, 1.0).unwrap(), 1.5045, 1e-3));
}

#[test]
fn power_rule_reference_values() {
    let s = sf();
    let x1 = 1.0; // S(1) − S(0) = 1
    assert!(close(power_rule_integral(1.0, 0.0, &s, 0.0, x1).unwrap(), 1.0, 1e-14));
    assert!(close(power_rule_integral(0.5, 1.0, &s, 0.0, x1).unwrap(), 0.7522527, 1e-7));
    assert!(close(power_rule_integral(0.5, 0.5, &s, 0.0, x1).unwrap(), 0.8862269, 1e-7));
    assert!(close(power_rule_derivative(0.5, 0.5, &s, 0.0, x1).unwrap(), 0.8862269, 1e-7));
    assert!(close(power_rule_derivative(0.5, 2.0, &s, 0.0, x1).unwrap(), 1.5045055, 1e-7));
    for n in 1..=3 {
        assert_eq!(power_rule_derivative(n as f64, 0.0, &s, 0.0, 0.7).unwrap(), 0.0);
    }
}

#[test]
fn power_rule_agreement_including_integer_order() {
    let s = sf();
    let mut worst: f64 = 0.0;
    for &eta in &[0.0, 0.5, 1.0, 2.0] {
        let f = FractalFn::of_staircase(move |u| u.powf(eta));
        for &beta in &[0.3, 0.5, 1.0] {
            let int = OperatorSpec::rl_integral(Side::Left, 0.0, beta).unwrap();
            let der = OperatorSpec::rl_derivative(Side::Left, 0.0, beta).unwrap();
            for i in 1..=10 {
                let x = s.quantile(i as f64 / 10.0).unwrap();
                let a = apply(&int, &f, &s, x).unwrap();
                let b = power_rule_integral(beta, eta, &s, 0.0, x).unwrap();
                worst = worst.max((a - b).abs() / b.abs().max(1e-300));
                let a = apply(&der, &f, &s, x).unwrap();
                let b = power_rule_derivative(beta, eta, &s, 0.0, x).unwrap();
                worst = worst.max((a - b).abs() / b.abs().max(1.0));
            }
        }
    }
    assert!(worst < 1e-3, "{worst}");
}

/// Every operator on `φ∘S` equals the classical operator on `φ` at `u = S(x)`.
#[test]
fn conjugacy_oracle_equivalence() {
    let s = sf();
    let mut worst: f64 = 0.0;
    for k in 0..=2 {
        let phi = move |u: f64| u.powi(k);
        let f = FractalFn::of_staircase(phi);
        for &beta in &[0.3, 0.5, 0.8] {
            for kind in [OperatorKind::RLIntegral, OperatorKind::RLDerivative, OperatorKind::Caputo] {
                let spec = OperatorSpec::new(kind, Side::Left, 0.0, beta).unwrap();
                for &u in &[0.2, 0.5, 0.9] {
                    let x = s.quantile(u).unwrap();
                    let ours = apply(&spec, &f, &s, x).unwrap();
                    let oracle = match kind {
                        OperatorKind::RLIntegral => classical_rl_integral(&phi, beta, Side::Left, 0.0, u),
                        OperatorKind::RLDerivative => classical_rl_derivative(&phi, beta, Side::Left, 0.0, u),
                        OperatorKind::Caputo => classical_caputo(&phi, beta, Side::Left, 0.0, u),
                    }
                    .unwrap();
                    worst = worst.max((ours - oracle).abs() / oracle.abs().max(1.0));
                }
            }
        }
    }
    assert!(worst < 1e-3, "{worst}");
}

#[test]
fn caputo_equals_rl_when_function_vanishes_at_terminal() {
    let s = sf();
    let f = FractalFn::of_staircase(|u| u * (1.0 + u));
    for &beta in &[0.3, 0.7] {
        let c = OperatorSpec::caputo(Side::Left, 0.0, beta).unwrap();
        let r = OperatorSpec::rl_derivative(Side::Left, 0.0, beta).unwrap();
        for x in [0.3, 0.7, 1.0] {
            assert!(close(apply(&c, &f, &s, x).unwrap(), apply(&r, &f, &s, x).unwrap(), 1e-3));
        }
    }
}

#[test]
fn left_right_mirror_on_the_line() {
    let line = StaircaseFn::Identity;
    let f = FractalFn::of_x(|t| (1.0 + t).powi(2));
    let mirrored = FractalFn::of_x(|t| (2.0 - t).powi(2));
    for kind in [OperatorKind::RLIntegral, OperatorKind::RLDerivative, OperatorKind::Caputo] {
        let right = OperatorSpec::new(kind, Side::Right, 1.0, 0.5).unwrap();
        let left = OperatorSpec::new(kind, Side::Left, 0.0, 0.5).unwrap();
        for x in [0.2, 0.5, 0.8] {
            let a = apply(&right, &f, &line, x).unwrap();
            let b = apply(&left, &mirrored, &line, 1.0 - x).unwrap();
            assert!(close(a, b, 1e-3), "{kind:?} {x}: {a} vs {b}");
        }
    }
}

#[test]
fn composition_reference_cases() {
    let s = sf();
    let grid: Vec<f64> = (1..=16).map(|i| s.quantile(i as f64 / 17.0).unwrap()).collect();
    let sq = FractalFn::of_staircase(|u| u * u);
    assert!(composition_residual(CompositionKind::CaputoLeft, &sq, 0.5, &s, (0.0, 1.0), &grid).unwrap() < 5e-3);
    let zero = FractalFn::constant(0.0);
    for kind in CompositionKind::ALL {
        assert_eq!(composition_residual(kind, &zero, 0.5, &s, (0.0, 1.0), &grid).unwrap(), 0.0);
    }
    let root = FractalFn::of_staircase(|u| u.sqrt());
    assert!(composition_residual(CompositionKind::RLLeft, &root, 0.5, &s, (0.0, 1.0), &grid).unwrap() < 5e-3);
}

// ------------------------------------------------------------------ laplace

#[test]
fn laplace_numeric_reference_values() {
    let s = sf();
    let opts = LaplaceOptions::default();
    let v = laplace_numeric(&FractalFn::constant(1.0), &s, 1.0, opts).unwrap();
    assert!(close(v.value, 1.0, 1e-6));
    let v = laplace_numeric(&FractalFn::of_staircase(|u| u), &s, 2.0, opts).unwrap();
    assert!(close(v.value, 0.25, 1e-6));
    let v = laplace_numeric(&FractalFn::of_staircase(|u| u.sqrt()), &s, 1.0, opts).unwrap();
    assert!(close(v.value, 0.8862269, 1e-4));
    // a truncation too short for the requested tail tolerance is refused
    let short = LaplaceOptions { truncation: Some(2.0), tail_tol: 1e-8 };
    assert!(laplace_numeric(&FractalFn::constant(1.0), &s, 1.0, short).is_err());
}

#[test]
fn convolution_reference_values() {
    let s = sf();
    assert!(close(convolve(&|_| 1.0, &|_| 1.0, &s, 1.0).unwrap(), 1.0, 1e-12));
    assert!(close(convolve(&|u| u, &|_| 1.0, &s, 1.0).unwrap(), 0.5, 1e-8));
    let conv = FractalFn::of_x(move |x| convolve(&|u| u, &|_| 1.0, &StaircaseFn::default(), x).unwrap());
    let opts = LaplaceOptions::default();
    for sigma in [1.0, 2.0] {
        let lhs = laplace_numeric(&conv, &s, sigma, opts).unwrap().value;
        let rhs = sigma.powi(-2) * sigma.powi(-1);
        assert!(close(lhs, rhs, 1e-4), "{lhs} vs {rhs}");
    }
}

#[test]
fn transform_rule_reference_values() {
    let one = laplace_rule(&TransformRule::Power(0.0), &Image::scalar(1.0)).unwrap();
    assert!(close(one.known_part().eval(3.0), 1.0 / 3.0, 1e-15));
    let lemma = laplace_rule(&TransformRule::RLIntegral(0.5), &one).unwrap();
    assert!(close(lemma.known_part().eval(2.0), 2f64.powf(-1.5), 1e-15));
    let caputo = laplace_rule(&TransformRule::Caputo { beta: 0.5, boundary: vec![1.0] }, &Image::unknown()).unwrap();
    assert_eq!(caputo.unknown_part(), &[(1.0, 0.5)]);
    assert!(close(caputo.known_part().eval(4.0), -0.5, 1e-15));
    let rl = laplace_rule(&TransformRule::RLDerivative { beta: 1.5, boundary: vec![2.0, 3.0] }, &Image::unknown()).unwrap();
    // σ^{3/2} Y − 2σ − 3
    assert!(close(rl.known_part().eval(4.0), -11.0, 1e-14));
}

#[test]
fn inverse_transform_reference_values() {
    let s = sf();
    let inv = inverse_laplace(&LaplaceExpr::power(1.0, -1.0), &s).unwrap();
    for x in [0.1, 0.5, 1.7] {
        assert!(close(inv.eval(x).unwrap(), 1.0, 1e-14));
    }
    let lambda = -0.5;
    let e = 4.0 / 3.0;
    let res = LaplaceExpr::new(vec![LaplaceTerm::resolvent(1.0, 0.0, e, lambda)]).unwrap();
    let inv = inverse_laplace(&res, &s).unwrap();
    for x in [0.3, 1.0] {
        let u = s.eval(x).unwrap();
        let want = u.powf(1.0 / 3.0) * ml(e, e, lambda * u.powf(e)).unwrap();
        assert!(close(inv.eval(x).unwrap(), want, 1e-13));
    }
    let half = LaplaceExpr::power(gamma(1.5).unwrap(), -1.5);
    let f = inverse_laplace(&half, &s).unwrap();
    for x in [0.25, 0.8] {
        assert!(close(f.eval(x).unwrap(), s.eval(x).unwrap().sqrt(), 1e-12));
    }
    let back = laplace_numeric(&f.to_fractal_fn(), &s, 2.0, LaplaceOptions::default()).unwrap();
    assert!(close(back.value, half.eval(2.0), 1e-4));
}

#[test]
fn inversion_consistency_for_example_four_terms() {
    let s = sf();
    let e = 4.0 / 3.0;
    for p in [1.0, 0.0, -3.0] {
        let expr = LaplaceExpr::new(vec![LaplaceTerm::resolvent(1.0, p, e, DEFAULT_LAMBDA)]).unwrap();
        let f = inverse_laplace(&expr, &s).unwrap().to_fractal_fn();
        for sigma in [2.0, 4.0] {
            let v = laplace_numeric(&f, &s, sigma, LaplaceOptions::default()).unwrap().value;
            assert!(close(v, expr.eval(sigma), 1e-3 * expr.eval(sigma).abs().max(1.0)), "p={p} σ={sigma}");
        }
    }
}

// ---------------------------------------------------------------- solutions

#[test]
fn homogeneous_variant_is_identically_zero() {
    let s = sf();
    for id in 1..=4 {
        let p = ExampleProblem::homogeneous(id, DEFAULT_LAMBDA).unwrap();
        let grid = fractal_calculus::solutions::default_grid(&p, &s, 8).unwrap();
        let r = solve_problem(&p, &s, &grid).unwrap();
        assert!(r.solution.values().iter().all(|v| *v == 0.0));
        assert_eq!(r.max_residual, 0.0);
        assert_eq!(alpha_one_degeneration_for(&p, &[0.2, 0.6, 1.0]).unwrap(), 0.0);
    }
}

#[test]
fn example_three_sign_is_decided_by_the_residual() {
    let s = sf();
    let r = solve_example(3, &s, DEFAULT_LAMBDA, None).unwrap();
    for (x, y) in r.solution.iter() {
        let u = s.eval(x).unwrap();
        assert!(close(y, u.powf(-0.5) * ml(0.5, 0.5, u.sqrt()).unwrap(), 1e-12));
    }
    assert!(r.max_residual < 1e-2);
    assert!(r.paper_formula_residual > 0.5);
}

#[test]
fn example_one_derived_solution() {
    let s = sf();
    let r = solve_example(1, &s, DEFAULT_LAMBDA, None).unwrap();
    for (x, y) in r.solution.iter() {
        let w = s.eval(x).unwrap();
        assert!(close(y, 1.0 + 2.0 * w.sqrt() / gamma(1.5).unwrap(), 1e-12));
    }
    assert!(r.max_residual < 1e-2);
}

#[test]
fn example_two_matches_printed_solution() {
    let s = sf();
    let r = solve_example(2, &s, DEFAULT_LAMBDA, None).unwrap();
    assert!(r.paper_formula_discrepancy < 1e-12);
    assert!(r.max_residual < 1e-2);
    assert!(r.solution.xs().iter().all(|&x| x >= 1.0));
}

#[test]
fn example_four_solves_its_equation() {
    let s = sf();
    let r = solve_example(4, &s, DEFAULT_LAMBDA, None).unwrap();
    assert_eq!(r.derivation.terms.len(), 3);
    assert!(r.max_residual < 2e-2);
    assert!(derive(&ExampleProblem::paper(4, -0.25).unwrap()).is_ok());
}

#[test]
fn dimension_one_degeneration() {
    let w: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
    for id in 1..=4 {
        let d = alpha_one_degeneration(id, &w).unwrap();
        assert!(d < 1e-3, "example {id}: {d}");
    }
}
