//! F^α-differentiation and F^α-integration.
//!
//! Both are computed in the measure coordinate `u = S(x)`: a function `f` of
//! `x` is pulled back to `g(u) = f(quantile(u))`, which is an ordinary function
//! on the u-line. Integrals against the staircase become Lebesgue integrals in
//! `u`, immune to the flat gaps of `S`.

use std::fmt;
use std::sync::Arc;

use crate::error::{finite, Error, Result};
use crate::quadrature::{composite_gauss_legendre, tanh_sinh, trapezoid};
use crate::staircase::{ExtensionRule, StaircaseFn};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Repr {
    OfX(RealFn),
    OfStaircase(RealFn),
}

/// A real function with fractal support.
///
/// `of_x` wraps an arbitrary `x ↦ f(x)`; its pull-back goes through the
/// staircase quantile. `of_staircase(φ)` represents `f = φ ∘ S` and pulls back
/// to `φ` exactly, which is the natural form for everything built from powers
/// of `S`.
#[derive(Clone)]
pub struct FractalFn {
    repr: Repr,
}

impl fmt::Debug for FractalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.repr {
            Repr::OfX(_) => f.write_str("FractalFn::OfX"),
            Repr::OfStaircase(_) => f.write_str("FractalFn::OfStaircase"),
        }
    }
}

impl FractalFn {
    pub fn of_x(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        FractalFn {
            repr: Repr::OfX(Arc::new(f)),
        }
    }

    pub fn of_staircase(phi: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        FractalFn {
            repr: Repr::OfStaircase(Arc::new(phi)),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::of_staircase(move |_| c)
    }

    pub fn is_staircase_composed(&self) -> bool {
        matches!(self.repr, Repr::OfStaircase(_))
    }

    pub fn at_x(&self, sf: &StaircaseFn, x: f64) -> Result<f64> {
        match &self.repr {
            Repr::OfX(f) => Ok(f(x)),
            Repr::OfStaircase(phi) => Ok(phi(sf.eval(x)?)),
        }
    }

    /// The pull-back `g(u)`.
    pub fn at_u(&self, sf: &StaircaseFn, u: f64) -> Result<f64> {
        match &self.repr {
            Repr::OfX(f) => Ok(f(sf.quantile(u)?)),
            Repr::OfStaircase(phi) => Ok(phi(u)),
        }
    }
}

/// A [`FractalFn`] bound to a staircase and viewed as a function of `u`.
#[derive(Debug, Clone)]
pub struct ConjugatedFn {
    underlying: FractalFn,
    sf: StaircaseFn,
}

impl ConjugatedFn {
    pub fn new(underlying: FractalFn, sf: StaircaseFn) -> Self {
        ConjugatedFn { underlying, sf }
    }

    pub fn eval(&self, u: f64) -> Result<f64> {
        self.underlying.at_u(&self.sf, u)
    }

    pub fn staircase(&self) -> &StaircaseFn {
        &self.sf
    }

    pub fn underlying(&self) -> &FractalFn {
        &self.underlying
    }
}

/// A sampled function: strictly ascending abscissae and finite values.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    xs: Vec<f64>,
    values: Vec<f64>,
    label: String,
}

impl GridFunction {
    pub fn new(xs: Vec<f64>, values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        if xs.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "grid has {} abscissae but {} values",
                xs.len(),
                values.len()
            )));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParameter(
                "grid abscissae must be strictly ascending".into(),
            ));
        }
        if values.iter().chain(&xs).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("grid function"));
        }
        Ok(GridFunction {
            xs,
            values,
            label: label.into(),
        })
    }

    /// `count` equally spaced points on `[start, stop]`, all values zero.
    pub fn linspace(start: f64, stop: f64, count: usize, label: impl Into<String>) -> Result<Self> {
        let xs = linspace(start, stop, count)?;
        let values = vec![0.0; xs.len()];
        Self::new(xs, values, label)
    }

    pub fn from_fn(
        xs: Vec<f64>,
        label: impl Into<String>,
        f: impl Fn(f64) -> Result<f64>,
    ) -> Result<Self> {
        let values = xs.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
        Self::new(xs, values, label)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.values.iter().copied())
    }
}

pub fn linspace(start: f64, stop: f64, count: usize) -> Result<Vec<f64>> {
    if count < 2 || !(start < stop) {
        return Err(Error::InvalidParameter(format!(
            "grid needs start < stop and at least two points (got {start}, {stop}, {count})"
        )));
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i + 1 == count { stop } else { start + i as f64 * step })
        .collect())
}

/// Default u-step of the F^α-derivative.
pub const DEFAULT_DERIVATIVE_STEP: f64 = 1e-6;

/// Finite-difference derivative of order `order` of `g` at `u`, staying inside
/// `[lo, hi]`: central where the stencil fits, one-sided (second order for
/// orders 1 and 2) otherwise.
pub(crate) fn derivative_u<G>(g: G, u: f64, h: f64, order: u32, lo: f64, hi: f64) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    if order == 0 {
        return g(u);
    }
    // a power of two keeps the stencil points u ± k·h/2 exactly representable
    let h = 2f64.powi(h.log2().floor() as i32);
    let reach = order as f64 * h;
    let value = if u - 0.5 * reach >= lo && u + 0.5 * reach <= hi {
        // central stencil Σ (-1)^k C(n,k) g(u + (n/2 - k) h)
        let mut acc = 0.0;
        let mut binom = 1.0;
        for k in 0..=order {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binom * g(u + (0.5 * order as f64 - k as f64) * h)?;
            binom = binom * (order - k) as f64 / (k + 1) as f64;
        }
        acc / h.powi(order as i32)
    } else {
        let dir = if u - 0.5 * reach < lo { 1.0 } else { -1.0 };
        let s = dir * h;
        match order {
            1 => (-3.0 * g(u)? + 4.0 * g(u + s)? - g(u + 2.0 * s)?) / (2.0 * s),
            2 => (2.0 * g(u)? - 5.0 * g(u + s)? + 4.0 * g(u + 2.0 * s)? - g(u + 3.0 * s)?) / (h * h),
            n => {
                let mut acc = 0.0;
                let mut binom = 1.0;
                for k in 0..=n {
                    let sign = if (n - k) % 2 == 0 { 1.0 } else { -1.0 };
                    acc += sign * binom * g(u + k as f64 * s)?;
                    binom = binom * (n - k) as f64 / (k + 1) as f64;
                }
                acc / s.powi(n as i32)
            }
        }
    };
    finite(value, "finite difference")
}

/// The u-range on which the pull-back of a function can be evaluated.
pub(crate) fn u_domain(sf: &StaircaseFn) -> (f64, f64) {
    match sf {
        StaircaseFn::Cantor(spec) if spec.extension_rule() == ExtensionRule::UnitInterval => {
            (0.0, 1.0)
        }
        _ => (f64::NEG_INFINITY, f64::INFINITY),
    }
}

fn u_bounds(sf: &StaircaseFn) -> (f64, f64) {
    match sf {
        StaircaseFn::Cantor(spec) if spec.extension_rule() == ExtensionRule::UnitInterval => {
            (0.0, 1.0)
        }
        _ => (0.0, f64::INFINITY),
    }
}

/// `D_F^α f(x)`: zero off the Cantor set, otherwise the derivative of the
/// pull-back at `u = S(x)` by central differences of step `h`.
pub fn f_alpha_derivative(f: &FractalFn, sf: &StaircaseFn, x: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!("step must be positive, got {h}")));
    }
    if !sf.contains(x) {
        return Ok(0.0);
    }
    let u = sf.eval(x)?;
    f_alpha_derivative_u(f, sf, u, h)
}

/// The F^α-derivative expressed at a measure coordinate `u`.
pub fn f_alpha_derivative_u(f: &FractalFn, sf: &StaircaseFn, u: f64, h: f64) -> Result<f64> {
    let (lo, hi) = u_bounds(sf);
    // negative u is reachable through the odd extension; only clamp at the origin
    // when we start on its right
    let lo = if u >= lo { lo } else { f64::NEG_INFINITY };
    derivative_u(|v| f.at_u(sf, v), u, h, 1, lo, hi)
}

/// Quadrature used for F^α-integrals in the u-coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadratureRule {
    /// `nodes`-point Gauss–Legendre on every unit u-panel.
    GaussLegendre { nodes: usize },
    /// Trapezoid rule with `nodes` points per unit u-panel.
    Trapezoid { nodes: usize },
    /// Tanh–sinh on every unit u-panel (endpoint singularities).
    TanhSinh,
}

impl Default for QuadratureRule {
    fn default() -> Self {
        QuadratureRule::GaussLegendre { nodes: 64 }
    }
}

/// Integrates `g` over `[lo, hi]` of the u-line with the given rule, turning
/// evaluation errors into an early `Err`.
pub(crate) fn integrate_u<G>(g: G, lo: f64, hi: f64, rule: QuadratureRule) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    if lo == hi {
        return Ok(0.0);
    }
    let mut failure: Option<Error> = None;
    let mut eval = |u: f64| match g(u) {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            f64::NAN
        }
    };
    let value = match rule {
        QuadratureRule::GaussLegendre { nodes } => {
            composite_gauss_legendre(&mut eval, lo, hi, nodes.max(1), 1.0)
        }
        QuadratureRule::Trapezoid { nodes } => {
            let panels = ((hi - lo).ceil() as usize).max(1);
            let n = (panels * nodes.max(2)).max(2);
            trapezoid(&mut eval, lo, hi, n)
        }
        QuadratureRule::TanhSinh => {
            let panels = ((hi - lo).ceil() as usize).max(1);
            let h = (hi - lo) / panels as f64;
            let rule = tanh_sinh();
            (0..panels)
                .map(|k| {
                    let a = lo + k as f64 * h;
                    let b = if k + 1 == panels { hi } else { a + h };
                    rule.integrate(&mut eval, a, b)
                })
                .sum()
        }
    };
    if let Some(e) = failure {
        return Err(e);
    }
    finite(value, "F-alpha integral")
}

/// `∫_a^b f(t) d_F^α t` with `n`-point Gauss–Legendre per unit u-panel.
pub fn f_alpha_integral(f: &FractalFn, sf: &StaircaseFn, a: f64, b: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 nodes, got {n}")));
    }
    f_alpha_integral_with(f, sf, a, b, QuadratureRule::GaussLegendre { nodes: n })
}

pub fn f_alpha_integral_with(
    f: &FractalFn,
    sf: &StaircaseFn,
    a: f64,
    b: f64,
    rule: QuadratureRule,
) -> Result<f64> {
    if !(a <= b) {
        return Err(Error::InvalidParameter(format!(
            "integration bounds must satisfy a <= b (got {a}, {b})"
        )));
    }
    let lo = sf.eval(a)?;
    let hi = sf.eval(b)?;
    integrate_u(|u| f.at_u(sf, u), lo, hi, rule)
}

/// Riemann–Stieltjes sum `Σ f(m_i) (S(x_{i+1}) - S(x_i))` on a uniform
/// x-partition with midpoint tags. Slow to converge near Cantor points; kept
/// as an independent cross-check of the conjugated integral.
pub fn stieltjes_sum(f: &FractalFn, sf: &StaircaseFn, a: f64, b: f64, n: usize) -> Result<f64> {
    let xs = linspace(a, b, n.max(1) + 1)?;
    let mut total = 0.0;
    let mut s_prev = sf.eval(xs[0])?;
    for w in xs.windows(2) {
        let s_next = sf.eval(w[1])?;
        if s_next != s_prev {
            total += f.at_x(sf, 0.5 * (w[0] + w[1]))? * (s_next - s_prev);
        }
        s_prev = s_next;
    }
    finite(total, "Stieltjes sum")
}

/// `e^{-S(t)}`, the limit `(1 - S(t)/n)^n`.
pub fn fractal_exp(sf: &StaircaseFn, t: f64) -> Result<f64> {
    Ok((-sf.eval(t)?).exp())
}
