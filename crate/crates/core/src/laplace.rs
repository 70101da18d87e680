//! Fractal Laplace transform `∫₀^∞ f(x) e^{-σ S(x)} d_F x` in the transform
//! variable `σ = S(s)`: numeric forward transform, symbolic transform rules,
//! rule-based inversion into Mittag-Leffler terms, and convolution.

use std::fmt;

use crate::error::{finite, Error, Result};
use crate::falpha::FractalFn;
use crate::quadrature::tanh_sinh;
use crate::special::{gamma, mittag_leffler, rgamma, MLParams};
use crate::staircase::StaircaseFn;

/// `coeff · σ^p / (σ^q − λ)`; with `q = 0` and `λ = 0` the term is `coeff · σ^p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceTerm {
    pub coeff: f64,
    pub p: f64,
    pub q: f64,
    pub lambda: f64,
}

impl LaplaceTerm {
    pub fn power(coeff: f64, p: f64) -> Self {
        LaplaceTerm {
            coeff,
            p,
            q: 0.0,
            lambda: 0.0,
        }
    }

    pub fn resolvent(coeff: f64, p: f64, q: f64, lambda: f64) -> Self {
        LaplaceTerm { coeff, p, q, lambda }
    }

    pub fn is_power(&self) -> bool {
        self.q == 0.0 && self.lambda == 0.0
    }

    pub fn eval(&self, sigma: f64) -> f64 {
        let num = self.coeff * sigma.powf(self.p);
        if self.is_power() {
            num
        } else {
            num / (sigma.powf(self.q) - self.lambda)
        }
    }

    fn validate(&self) -> Result<()> {
        let finite_fields = [self.coeff, self.p, self.q, self.lambda]
            .iter()
            .all(|v| v.is_finite());
        if !finite_fields {
            return Err(Error::NonFinite("Laplace term"));
        }
        if self.q < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "resolvent exponent must be non-negative, got {}",
                self.q
            )));
        }
        if self.q == 0.0 && self.lambda != 0.0 {
            return Err(Error::InvalidParameter(
                "a constant denominator belongs in the coefficient".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for LaplaceTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_power() {
            write!(f, "{}·σ^{}", self.coeff, self.p)
        } else {
            write!(f, "{}·σ^{}/(σ^{} - ({}))", self.coeff, self.p, self.q, self.lambda)
        }
    }
}

/// A finite sum of [`LaplaceTerm`]s.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LaplaceExpr {
    terms: Vec<LaplaceTerm>,
}

impl LaplaceExpr {
    pub fn new(terms: Vec<LaplaceTerm>) -> Result<Self> {
        for t in &terms {
            t.validate()?;
        }
        Ok(LaplaceExpr { terms }.simplified())
    }

    pub fn zero() -> Self {
        LaplaceExpr::default()
    }

    pub fn power(coeff: f64, p: f64) -> Self {
        LaplaceExpr {
            terms: vec![LaplaceTerm::power(coeff, p)],
        }
        .simplified()
    }

    pub fn terms(&self) -> &[LaplaceTerm] {
        &self.terms
    }

    pub fn eval(&self, sigma: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(sigma)).sum()
    }

    pub fn plus(&self, other: &LaplaceExpr) -> LaplaceExpr {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        LaplaceExpr { terms }.simplified()
    }

    pub fn scaled(&self, c: f64) -> LaplaceExpr {
        LaplaceExpr {
            terms: self
                .terms
                .iter()
                .map(|t| LaplaceTerm { coeff: c * t.coeff, ..*t })
                .collect(),
        }
        .simplified()
    }

    /// Multiplies every term by `σ^p`.
    pub fn times_power(&self, p: f64) -> LaplaceExpr {
        LaplaceExpr {
            terms: self.terms.iter().map(|t| LaplaceTerm { p: t.p + p, ..*t }).collect(),
        }
    }

    /// Merges terms with identical shape and drops zero coefficients.
    fn simplified(self) -> LaplaceExpr {
        let mut out: Vec<LaplaceTerm> = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            match out
                .iter_mut()
                .find(|o| o.p == t.p && o.q == t.q && o.lambda == t.lambda)
            {
                Some(o) => o.coeff += t.coeff,
                None => out.push(t),
            }
        }
        out.retain(|t| t.coeff != 0.0);
        LaplaceExpr { terms: out }
    }
}

impl fmt::Display for LaplaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// A transform image that may contain the unknown transform `Y`:
/// `Σ c·σ^p·Y + known`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Image {
    unknown: Vec<(f64, f64)>,
    known: LaplaceExpr,
}

impl Image {
    /// The unknown transform `Y` itself.
    pub fn unknown() -> Self {
        Image {
            unknown: vec![(1.0, 0.0)],
            known: LaplaceExpr::zero(),
        }
    }

    pub fn known(expr: LaplaceExpr) -> Self {
        Image {
            unknown: Vec::new(),
            known: expr,
        }
    }

    /// The constant `c`, as operand of the power rule.
    pub fn scalar(c: f64) -> Self {
        Image::known(LaplaceExpr::power(c, 0.0))
    }

    pub fn unknown_part(&self) -> &[(f64, f64)] {
        &self.unknown
    }

    pub fn known_part(&self) -> &LaplaceExpr {
        &self.known
    }

    pub fn plus(&self, other: &Image) -> Image {
        let mut unknown = self.unknown.clone();
        for &(c, p) in &other.unknown {
            match unknown.iter_mut().find(|(_, q)| *q == p) {
                Some(slot) => slot.0 += c,
                None => unknown.push((c, p)),
            }
        }
        unknown.retain(|&(c, _)| c != 0.0);
        Image {
            unknown,
            known: self.known.plus(&other.known),
        }
    }

    pub fn scaled(&self, c: f64) -> Image {
        Image {
            unknown: self.unknown.iter().map(|&(k, p)| (c * k, p)).collect(),
            known: self.known.scaled(c),
        }
    }

    pub fn minus(&self, other: &Image) -> Image {
        self.plus(&other.scaled(-1.0))
    }

    pub fn times_power(&self, p: f64) -> Image {
        Image {
            unknown: self.unknown.iter().map(|&(c, q)| (c, q + p)).collect(),
            known: self.known.times_power(p),
        }
    }
}

impl fmt::Display for Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, p) in &self.unknown {
            write!(f, "{c}·σ^{p}·Y + ")?;
        }
        write!(f, "{}", self.known)
    }
}

/// Which transform rule to apply.
#[derive(Debug, Clone, PartialEq)]
pub enum TransformRule {
    /// Image of `S^β`; the operand is the scalar coefficient.
    Power(f64),
    /// Left RL integral of order β from 0.
    RLIntegral(f64),
    /// Left RL derivative of order β from 0. `boundary[k-1]` is
    /// `D^{β-n+k-1} f` at the origin, `k = 1..=n`, `n = ⌈β⌉`.
    RLDerivative { beta: f64, boundary: Vec<f64> },
    /// Left Caputo derivative of order β from 0. `boundary[k-1]` is the
    /// `(k-1)`-th F^α-derivative of `f` at the origin.
    Caputo { beta: f64, boundary: Vec<f64> },
}

fn derivative_order(beta: f64, boundary: &[f64]) -> Result<u32> {
    if !(beta > 0.0) {
        return Err(Error::InvalidParameter(format!("order must be positive, got {beta}")));
    }
    let n = beta.ceil() as u32;
    if boundary.len() != n as usize {
        return Err(Error::InvalidParameter(format!(
            "order {beta} needs {n} boundary values, got {}",
            boundary.len()
        )));
    }
    Ok(n)
}

/// Transform image of an operator applied to a function with image `operand`.
pub fn laplace_rule(rule: &TransformRule, operand: &Image) -> Result<Image> {
    match rule {
        TransformRule::Power(beta) => {
            if !(*beta > -1.0) {
                return Err(Error::InvalidParameter(format!("power must exceed -1, got {beta}")));
            }
            let scalar = match (operand.unknown.is_empty(), operand.known.terms()) {
                (true, []) => 0.0,
                (true, [t]) if t.is_power() && t.p == 0.0 => t.coeff,
                _ => {
                    return Err(Error::Unsupported(
                        "the power rule takes a scalar coefficient".into(),
                    ))
                }
            };
            Ok(Image::known(LaplaceExpr::power(
                scalar * gamma(1.0 + beta)?,
                -beta - 1.0,
            )))
        }
        TransformRule::RLIntegral(beta) => {
            if !(*beta > 0.0) {
                return Err(Error::InvalidParameter(format!("order must be positive, got {beta}")));
            }
            Ok(operand.times_power(-beta))
        }
        TransformRule::RLDerivative { beta, boundary } => {
            let n = derivative_order(*beta, boundary)?;
            let data = boundary
                .iter()
                .enumerate()
                .map(|(i, &c)| LaplaceTerm::power(c, n as f64 - (i + 1) as f64))
                .collect();
            Ok(operand
                .times_power(*beta)
                .minus(&Image::known(LaplaceExpr::new(data)?)))
        }
        TransformRule::Caputo { beta, boundary } => {
            derivative_order(*beta, boundary)?;
            let data = boundary
                .iter()
                .enumerate()
                .map(|(i, &c)| LaplaceTerm::power(c, beta - (i + 1) as f64))
                .collect();
            Ok(operand
                .times_power(*beta)
                .minus(&Image::known(LaplaceExpr::new(data)?)))
        }
    }
}

/// Solves `lhs = rhs` for the unknown transform `Y`.
///
/// Supported shapes: a single multiplier `c·σ^q`, or `c·σ^q + d` with `q > 0`
/// and only pure powers on the known side (which yields resolvent terms).
pub fn solve_linear(lhs: &Image, rhs: &Image) -> Result<LaplaceExpr> {
    let eq = lhs.minus(rhs);
    let source = eq.known.scaled(-1.0);
    let mut mult = eq.unknown.clone();
    mult.sort_by(|a, b| b.1.total_cmp(&a.1));
    match mult.as_slice() {
        [] => Err(Error::Unsupported("equation does not contain the unknown".into())),
        [(c, q)] => Ok(source.scaled(1.0 / c).times_power(-q)),
        [(c, q), (d, 0.0)] if *q > 0.0 => {
            let lambda = -d / c;
            let terms = source
                .terms()
                .iter()
                .map(|t| {
                    if !t.is_power() {
                        return Err(Error::Unsupported(
                            "resolvent terms on the known side of a resolvent equation".into(),
                        ));
                    }
                    Ok(LaplaceTerm::resolvent(t.coeff / c, t.p, *q, lambda))
                })
                .collect::<Result<Vec<_>>>()?;
            LaplaceExpr::new(terms)
        }
        _ => Err(Error::Unsupported(format!("multiplier of the unknown: {:?}", eq.unknown))),
    }
}

/// `coeff · u^ρ · E_{η,ν}(λ u^η)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlTerm {
    pub coeff: f64,
    pub rho: f64,
    pub eta: f64,
    pub nu: f64,
    pub lambda: f64,
}

impl MlTerm {
    pub fn eval_u(&self, u: f64) -> Result<f64> {
        let power = u.powf(self.rho);
        let series = if self.lambda == 0.0 {
            rgamma(self.nu)
        } else {
            mittag_leffler(&MLParams::new(self.eta, self.nu)?, self.lambda * u.powf(self.eta))?
        };
        if series == 0.0 {
            return Ok(0.0);
        }
        finite(self.coeff * power * series, "Mittag-Leffler term")
    }
}

impl fmt::Display for MlTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}·S^{}·E_{{{},{}}}({}·S^{})",
            self.coeff, self.rho, self.eta, self.nu, self.lambda, self.eta
        )
    }
}

/// The inverse transform: a sum of Mittag-Leffler terms in `S(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseLaplace {
    terms: Vec<MlTerm>,
    sf: StaircaseFn,
}

impl InverseLaplace {
    pub fn terms(&self) -> &[MlTerm] {
        &self.terms
    }

    pub fn eval_u(&self, u: f64) -> Result<f64> {
        self.terms.iter().map(|t| t.eval_u(u)).sum()
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.eval_u(self.sf.eval(x)?)
    }

    /// The inverse as a function of `S(x)`; evaluation errors become NaN.
    pub fn to_fractal_fn(&self) -> FractalFn {
        let terms = self.terms.clone();
        FractalFn::of_staircase(move |u| {
            terms
                .iter()
                .map(|t| t.eval_u(u))
                .sum::<Result<f64>>()
                .unwrap_or(f64::NAN)
        })
    }
}

/// Term-by-term inversion: `σ^p/(σ^q − λ)` becomes `S^{q-p-1} E_{q,q-p}(λ S^q)`
/// and `σ^p` (p < 0) becomes `S^{-p-1}/Γ(-p)`.
pub fn inverse_laplace(expr: &LaplaceExpr, sf: &StaircaseFn) -> Result<InverseLaplace> {
    let terms = expr
        .terms()
        .iter()
        .map(|t| {
            if t.is_power() {
                if !(t.p < 0.0) {
                    return Err(Error::Unsupported(format!(
                        "σ^{} does not decay and has no pointwise inverse",
                        t.p
                    )));
                }
                Ok(MlTerm {
                    coeff: t.coeff,
                    rho: -t.p - 1.0,
                    eta: 1.0,
                    nu: -t.p,
                    lambda: 0.0,
                })
            } else {
                if !(t.p < t.q) {
                    return Err(Error::Unsupported(format!(
                        "resolvent term {t} needs p < q to be invertible"
                    )));
                }
                Ok(MlTerm {
                    coeff: t.coeff,
                    rho: t.q - t.p - 1.0,
                    eta: t.q,
                    nu: t.q - t.p,
                    lambda: t.lambda,
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InverseLaplace { terms, sf: *sf })
}

/// Result of a numeric transform and the estimated size of the neglected tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceValue {
    pub value: f64,
    pub tail_bound: f64,
    pub truncation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceOptions {
    /// Upper limit `T` in x; by default the smallest integer with `σ·T ≥ 36`.
    pub truncation: Option<f64>,
    /// Largest acceptable tail bound, relative to `max(1, |value|)`.
    pub tail_tol: f64,
}

impl Default for LaplaceOptions {
    fn default() -> Self {
        LaplaceOptions {
            truncation: None,
            tail_tol: 1e-8,
        }
    }
}

/// Default truncation: `σ S(T) ≥ 36` with `S(n) = n` on the tiled staircase.
pub fn default_truncation(sigma: f64) -> f64 {
    (36.0 / sigma).ceil().max(1.0)
}

/// `∫₀^T f(x) e^{-σ S(x)} d_F x`, computed as `∫₀^{S(T)} g(u) e^{-σu} du` with
/// tanh–sinh on unit u-panels.
pub fn laplace_numeric(
    f: &FractalFn,
    sf: &StaircaseFn,
    sigma: f64,
    options: LaplaceOptions,
) -> Result<LaplaceValue> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::Domain {
            what: "Laplace transform variable",
            value: sigma,
        });
    }
    let truncation = options.truncation.unwrap_or_else(|| default_truncation(sigma));
    let top = sf.eval(truncation)?;
    if !(top > 0.0) {
        return Err(Error::InvalidParameter(format!("truncation {truncation} maps to S = {top}")));
    }
    let panels = top.ceil() as usize;
    let width = top / panels as f64;
    let rule = tanh_sinh();
    let mut failure = None;
    let mut value = 0.0;
    for k in 0..panels {
        let lo = k as f64 * width;
        let hi = if k + 1 == panels { top } else { lo + width };
        value += rule.integrate(
            |u| match f.at_u(sf, u) {
                Ok(g) => g * (-sigma * u).exp(),
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            },
            lo,
            hi,
        );
    }
    if let Some(e) = failure {
        return Err(e);
    }
    let value = finite(value, "Laplace transform")?;
    // ∫_U^∞ g e^{-σu} for g of polynomial growth, doubled for safety
    let edge = f.at_u(sf, top)?.abs().max(1.0);
    let tail_bound = 2.0 * edge * (-sigma * top).exp() / sigma;
    if tail_bound > options.tail_tol * value.abs().max(1.0) {
        return Err(Error::TailBound {
            bound: tail_bound,
            tol: options.tail_tol,
        });
    }
    Ok(LaplaceValue {
        value,
        tail_bound,
        truncation,
    })
}

/// Fractal convolution `∫₀^x φ_f(S(x) − S(τ)) φ_g(S(τ)) d_F τ`, with both
/// factors given as functions of the measure coordinate.
pub fn convolve(
    phi_f: &dyn Fn(f64) -> f64,
    phi_g: &dyn Fn(f64) -> f64,
    sf: &StaircaseFn,
    x: f64,
) -> Result<f64> {
    let top = sf.eval(x)?;
    if top < 0.0 {
        return Err(Error::Domain {
            what: "convolution upper limit (S(x) must be non-negative)",
            value: x,
        });
    }
    if top == 0.0 {
        return Ok(0.0);
    }
    let panels = top.ceil() as usize;
    let width = top / panels as f64;
    let rule = tanh_sinh();
    let mut total = 0.0;
    for k in 0..panels {
        let lo = k as f64 * width;
        let hi = if k + 1 == panels { top } else { lo + width };
        let gap = top - hi;
        total += rule.integrate_with_distances(|v, _, dr| phi_f(gap + dr) * phi_g(v), lo, hi);
    }
    finite(total, "convolution")
}
