//! Gamma, Beta and Mittag-Leffler functions, classical and on the fractal.
//!
//! Two readings of the fractal Gamma function coexist (see [`GammaMode`]):
//! the integral definition depends on `t` only through `u = S(t)`, so its
//! value at `x` is the classical `Γ(S(x))`; the nonlocal operators, on the
//! other hand, apply it to plain real orders such as `Γ(β)`.

use std::f64::consts::PI;

use crate::error::{finite, Error, Result};
use crate::falpha::{FractalFn, GridFunction, QuadratureRule};
use crate::quadrature::tanh_sinh;
use crate::staircase::StaircaseFn;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(z: f64) -> f64 {
    // z is the shifted argument (Γ(z + 1))
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    acc
}

fn is_nonpositive_integer(z: f64) -> bool {
    z <= 0.0 && z == z.floor()
}

/// Classical Γ(z) for real `z`; an error at the poles `0, -1, -2, …`.
pub fn gamma(z: f64) -> Result<f64> {
    if z.is_nan() {
        return Err(Error::NonFinite("gamma"));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(z));
    }
    if z == z.floor() && z <= 171.0 {
        // exact factorials for small integers
        let n = z as u32;
        return Ok((1..n).fold(1.0, |acc, k| acc * k as f64));
    }
    if z < 0.5 {
        let s = (PI * z).sin();
        return Ok(PI / (s * gamma(1.0 - z)?));
    }
    if z > 171.7 {
        return Ok(f64::INFINITY);
    }
    let x = z - 1.0;
    let t = x + LANCZOS_G + 0.5;
    // split t^(x+0.5) to delay overflow
    let half = t.powf(0.5 * (x + 0.5));
    Ok((2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_sum(x))
}

/// Alias kept for callers that want to stress the classical kernel.
pub fn gamma_classical(z: f64) -> Result<f64> {
    gamma(z)
}

/// ln Γ(z) for `z > 0`.
pub fn ln_gamma(z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain {
            what: "ln_gamma",
            value: z,
        });
    }
    if z < 0.5 {
        // Γ(z) = Γ(z + 1) / z
        return Ok(ln_gamma(z + 1.0)? - z.ln());
    }
    let x = z - 1.0;
    let t = x + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + lanczos_sum(x).ln())
}

/// 1/Γ(z), continued by zero at the poles.
pub fn rgamma(z: f64) -> f64 {
    if is_nonpositive_integer(z) {
        return 0.0;
    }
    if z > 171.0 {
        return match ln_gamma(z) {
            Ok(lg) => (-lg).exp(),
            Err(_) => 0.0,
        };
    }
    match gamma(z) {
        Ok(g) => 1.0 / g,
        Err(_) => 0.0,
    }
}

/// Which argument the fractal Gamma function receives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaMode {
    /// `Γ(x)`: the reading used for real orders such as `Γ(β)` or `Γ(η + 1)`.
    RawArgument,
    /// `Γ(S(x))`: the integral definition pulled back through the staircase.
    StaircaseComposed,
}

pub fn gamma_fractal(x: f64, mode: GammaMode, sf: &StaircaseFn) -> Result<f64> {
    match mode {
        GammaMode::RawArgument => gamma(x),
        GammaMode::StaircaseComposed => {
            let s = sf.eval(x)?;
            if s <= 0.0 {
                return Err(Error::Domain {
                    what: "fractal gamma (S(x) must be positive)",
                    value: x,
                });
            }
            gamma(s)
        }
    }
}

/// The defining integral of the fractal Gamma function, truncated at `t_max`:
/// `∫₀^T e^{-S(t)} S(t)^{S(x)-1} d_F t`.
pub fn gamma_fractal_quadrature(x: f64, sf: &StaircaseFn, t_max: f64) -> Result<f64> {
    let s = sf.eval(x)?;
    if s <= 0.0 {
        return Err(Error::Domain {
            what: "fractal gamma quadrature",
            value: x,
        });
    }
    let integrand = FractalFn::of_staircase(move |u| (-u).exp() * u.powf(s - 1.0));
    crate::falpha::f_alpha_integral_with(&integrand, sf, 0.0, t_max, QuadratureRule::TanhSinh)
}

/// `B(r, w) = Γ(r)Γ(w)/Γ(r + w)`.
pub fn beta_fractal(r: f64, w: f64) -> Result<f64> {
    check_beta_args(r, w)?;
    if r + w > 170.0 {
        let lb = ln_gamma(r)? + ln_gamma(w)? - ln_gamma(r + w)?;
        return Ok(lb.exp());
    }
    finite(gamma(r)? * gamma(w)? / gamma(r + w)?, "beta")
}

fn check_beta_args(r: f64, w: f64) -> Result<()> {
    if !(r > 0.0) {
        return Err(Error::Domain {
            what: "beta (r must be positive)",
            value: r,
        });
    }
    if !(w > 0.0) {
        return Err(Error::Domain {
            what: "beta (w must be positive)",
            value: w,
        });
    }
    Ok(())
}

/// Direct conjugated quadrature of the fractal Beta integral
/// `∫₀¹ S(ζ)^{r-1} (1 - S(ζ))^{w-1} d_F ζ` over `u ∈ [S(0), S(1)]`.
pub fn beta_fractal_quadrature(sf: &StaircaseFn, r: f64, w: f64) -> Result<f64> {
    check_beta_args(r, w)?;
    let lo = sf.eval(0.0)?;
    let hi = sf.eval(1.0)?;
    let value = tanh_sinh().integrate_with_distances(
        |_, dl, dr| dl.powf(r - 1.0) * dr.powf(w - 1.0),
        lo,
        hi,
    );
    finite(value, "beta quadrature")
}

/// The same integral after the substitution `S(x) = 1 - S(y)`:
/// `∫₀¹ (1 - S(y))^{r-1} S(y)^{w-1} d_F y`.
pub fn beta_fractal_quadrature_reflected(sf: &StaircaseFn, r: f64, w: f64) -> Result<f64> {
    check_beta_args(r, w)?;
    let lo = sf.eval(0.0)?;
    let hi = sf.eval(1.0)?;
    let value = tanh_sinh().integrate_with_distances(
        |_, dl, dr| dr.powf(r - 1.0) * dl.powf(w - 1.0),
        lo,
        hi,
    );
    finite(value, "beta quadrature")
}

/// Largest |z| accepted by [`mittag_leffler`].
pub const ML_Z_MAX: f64 = 50.0;
const ML_MIN_TERMS: usize = 16;

/// Parameters and truncation policy of the two-parameter Mittag-Leffler series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    eta: f64,
    nu: f64,
    tol: f64,
    max_terms: usize,
}

impl MLParams {
    pub fn new(eta: f64, nu: f64) -> Result<Self> {
        Self::with_policy(eta, nu, 1e-15, 512)
    }

    pub fn with_policy(eta: f64, nu: f64, tol: f64, max_terms: usize) -> Result<Self> {
        if !(eta > 0.0) || !eta.is_finite() {
            return Err(Error::InvalidParameter(format!("eta must be positive, got {eta}")));
        }
        if !nu.is_finite() {
            return Err(Error::InvalidParameter(format!("nu must be finite, got {nu}")));
        }
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tol must be positive, got {tol}")));
        }
        if max_terms < ML_MIN_TERMS {
            return Err(Error::InvalidParameter(format!(
                "max_terms must be at least {ML_MIN_TERMS}, got {max_terms}"
            )));
        }
        Ok(MLParams {
            eta,
            nu,
            tol,
            max_terms,
        })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }
}

fn ml_term(z: f64, k: usize, arg: f64) -> Result<f64> {
    if k == 0 {
        return Ok(rgamma(arg));
    }
    if z == 0.0 || is_nonpositive_integer(arg) {
        return Ok(0.0);
    }
    if arg < 20.0 {
        return Ok(z.powi(k as i32) * rgamma(arg));
    }
    let sign = if z < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
    let log = k as f64 * z.abs().ln() - ln_gamma(arg)?;
    Ok(sign * log.exp())
}

/// `E_{η,ν}(z) = Σ_k z^k / Γ(ηk + ν)`.
///
/// Summation stops once two consecutive terms fall below `tol·|partial sum|`
/// (never before 16 terms).
pub fn mittag_leffler(p: &MLParams, z: f64) -> Result<f64> {
    if !z.is_finite() || z.abs() > ML_Z_MAX {
        return Err(Error::Domain {
            what: "Mittag-Leffler series",
            value: z,
        });
    }
    let mut sum = 0.0;
    let mut quiet = 0;
    let mut last = 0.0;
    for k in 0..p.max_terms {
        let term = ml_term(z, k, p.eta * k as f64 + p.nu)?;
        sum += term;
        if !sum.is_finite() {
            return Err(Error::NonFinite("Mittag-Leffler series"));
        }
        last = term;
        if k + 1 >= ML_MIN_TERMS && term.abs() <= p.tol * sum.abs() {
            quiet += 1;
            if quiet >= 2 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        terms: p.max_terms,
        last_term: last,
    })
}

/// Shorthand for `mittag_leffler` with the default policy.
pub fn ml(eta: f64, nu: f64, z: f64) -> Result<f64> {
    mittag_leffler(&MLParams::new(eta, nu)?, z)
}

/// Per-point maximum of the four closed-form special-case residuals
/// `E_{1,1}(u) = e^u`, `E_{1,2}(u) = (e^u - 1)/u`, `E_{2,1}(u²) = cosh u`,
/// `E_{2,2}(u²) = sinh(u)/u`, with `u = S(x)`.
///
/// The η = 2 cases hold at `u²`: the series `Σ z^k/(2k)!` is `cosh √z`.
pub fn ml_special_case_residuals(sf: &StaircaseFn, grid: &GridFunction) -> Result<GridFunction> {
    let e11 = MLParams::new(1.0, 1.0)?;
    let e12 = MLParams::new(1.0, 2.0)?;
    let e21 = MLParams::new(2.0, 1.0)?;
    let e22 = MLParams::new(2.0, 2.0)?;
    let values = grid
        .xs()
        .iter()
        .map(|&x| {
            let u = sf.eval(x)?;
            let expm1_over = if u == 0.0 { 1.0 } else { u.exp_m1() / u };
            let sinh_over = if u == 0.0 { 1.0 } else { u.sinh() / u };
            let r = [
                (mittag_leffler(&e11, u)? - u.exp()).abs(),
                (mittag_leffler(&e12, u)? - expm1_over).abs(),
                (mittag_leffler(&e21, u * u)? - u.cosh()).abs(),
                (mittag_leffler(&e22, u * u)? - sinh_over).abs(),
            ];
            Ok(r.into_iter().fold(0.0, f64::max))
        })
        .collect::<Result<Vec<f64>>>()?;
    GridFunction::new(grid.xs().to_vec(), values, "ml_special_case_residual")
}
