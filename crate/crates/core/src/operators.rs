//! Nonlocal fractal operators: Riemann–Liouville integrals and derivatives and
//! Caputo derivatives, left and right sided.
//!
//! Everything is computed in the measure coordinate. With `A = S(a)` and
//! `U = S(x)` the left integral of order β is
//! `1/Γ(β) ∫_A^U g(v) (U - v)^{β-1} dv` where `g` is the pull-back of `f`.
//! Derivatives differentiate such an integral in `U` (Riemann–Liouville) or
//! integrate the derivative of `g` (Caputo).

use std::sync::OnceLock;

use crate::error::{finite, Error, Result};
use crate::falpha::{derivative_u, u_domain, FractalFn};
use crate::quadrature::{tanh_sinh, TanhSinh};
use crate::special::{gamma, rgamma};
use crate::staircase::StaircaseFn;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    RLIntegral,
    RLDerivative,
    Caputo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Terminal `a` below the evaluation point.
    Left,
    /// Terminal `b` above the evaluation point.
    Right,
}

/// Exponent of the staircase-difference kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum KernelConvention {
    /// `β - 1` for integrals, `n - β - 1` inside derivatives.
    #[default]
    ConjugacyBeta1,
    /// `β - α` for integrals, `n - β - α` inside derivatives.
    DimensionShifted,
}

/// How the kernel integral is discretized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Scheme {
    /// Piecewise-linear interpolation of the integrand on a graded u-grid,
    /// integrated against the kernel with exact moments.
    #[default]
    ProductTrapezoid,
    /// Tanh–sinh quadrature; tolerates integrands that blow up at the terminal.
    DoubleExponential,
}

pub const DEFAULT_NODES_PER_UNIT: usize = 256;
pub const DEFAULT_FD_STEP: f64 = 1e-4;
pub const DEFAULT_OPERATOR_TOL: f64 = 1e-3;
const MIN_NODES: usize = 128;

/// A fully specified nonlocal operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorSpec {
    kind: OperatorKind,
    side: Side,
    terminal: f64,
    beta: f64,
    convention: KernelConvention,
    scheme: Scheme,
    nodes_per_unit: usize,
    fd_step: f64,
    tol: f64,
}

impl OperatorSpec {
    pub fn new(kind: OperatorKind, side: Side, terminal: f64, beta: f64) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::InvalidParameter(format!("order must be positive, got {beta}")));
        }
        if !terminal.is_finite() {
            return Err(Error::InvalidParameter(format!("terminal must be finite, got {terminal}")));
        }
        Ok(OperatorSpec {
            kind,
            side,
            terminal,
            beta,
            convention: KernelConvention::default(),
            scheme: Scheme::default(),
            nodes_per_unit: DEFAULT_NODES_PER_UNIT,
            fd_step: DEFAULT_FD_STEP,
            tol: DEFAULT_OPERATOR_TOL,
        })
    }

    pub fn rl_integral(side: Side, terminal: f64, beta: f64) -> Result<Self> {
        Self::new(OperatorKind::RLIntegral, side, terminal, beta)
    }

    pub fn rl_derivative(side: Side, terminal: f64, beta: f64) -> Result<Self> {
        Self::new(OperatorKind::RLDerivative, side, terminal, beta)
    }

    pub fn caputo(side: Side, terminal: f64, beta: f64) -> Result<Self> {
        Self::new(OperatorKind::Caputo, side, terminal, beta)
    }

    pub fn with_convention(mut self, convention: KernelConvention) -> Self {
        self.convention = convention;
        self
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_nodes_per_unit(mut self, nodes: usize) -> Result<Self> {
        if nodes < 2 {
            return Err(Error::InvalidParameter(format!("need at least 2 nodes per unit, got {nodes}")));
        }
        self.nodes_per_unit = nodes;
        Ok(self)
    }

    pub fn with_fd_step(mut self, step: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::InvalidParameter(format!("step must be positive, got {step}")));
        }
        self.fd_step = step;
        Ok(self)
    }

    /// Tolerance behind the differentiation-noise check.
    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter(format!("tol must be positive, got {tol}")));
        }
        self.tol = tol;
        Ok(self)
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn terminal(&self) -> f64 {
        self.terminal
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn convention(&self) -> KernelConvention {
        self.convention
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    /// Number of outer (RL) or inner (Caputo) derivatives: `⌈β⌉`, or β itself
    /// when β is an integer. Zero for integrals.
    pub fn order(&self) -> u32 {
        match self.kind {
            OperatorKind::RLIntegral => 0,
            _ => self.beta.ceil() as u32,
        }
    }

    /// Order of the kernel integral and its exponent, for a support of dimension `alpha`.
    fn kernel(&self, alpha: f64) -> (f64, f64) {
        let order = match self.kind {
            OperatorKind::RLIntegral => self.beta,
            _ => self.order() as f64 - self.beta,
        };
        let shift = match self.convention {
            KernelConvention::ConjugacyBeta1 => 1.0,
            KernelConvention::DimensionShifted => alpha,
        };
        (order, order - shift)
    }
}

type UFn<'a> = dyn Fn(f64) -> Result<f64> + 'a;

/// `∫_a^u g(v) (u - v)^mu dv`.
fn left_kernel_integral(
    g: &UFn<'_>,
    a: f64,
    u: f64,
    mu: f64,
    scheme: Scheme,
    nodes: usize,
) -> Result<f64> {
    if u == a {
        return Ok(0.0);
    }
    match scheme {
        Scheme::ProductTrapezoid => product_integral(g, a, u, mu, nodes, false),
        Scheme::DoubleExponential => de_integral(tanh_sinh(), a, u, |v, _, dr| Ok(g(v)? * dr.powf(mu))),
    }
}

/// Graded nodes `a + L (j/n)²` of `[a, u]`, returned as distances to `u`.
fn graded_distance(len: f64, j: usize, n: usize) -> f64 {
    if j >= n {
        return 0.0;
    }
    let r = j as f64 / n as f64;
    len * (1.0 - r) * (1.0 + r)
}

/// Product integration on the graded grid. With `l1` the integrand is the
/// derivative of the interpolant of `g` (Caputo of order below one).
fn product_integral(g: &UFn<'_>, a: f64, u: f64, mu: f64, nodes: usize, l1: bool) -> Result<f64> {
    let len = u - a;
    let n = nodes.max(2);
    let p1 = mu + 1.0;
    let p2 = mu + 2.0;
    let mut acc = 0.0;
    let mut s_lo = len;
    let mut g_lo = g(a)?;
    for j in 0..n {
        let s_hi = graded_distance(len, j + 1, n);
        let v_hi = if j + 1 == n { u } else { u - s_hi };
        let g_hi = g(v_hi)?;
        let h = s_lo - s_hi;
        let k0 = (s_lo.powf(p1) - s_hi.powf(p1)) / p1;
        if l1 {
            acc += (g_hi - g_lo) / h * k0;
        } else {
            let k1 = s_lo * k0 - (s_lo.powf(p2) - s_hi.powf(p2)) / p2;
            acc += g_lo * (k0 - k1 / h) + g_hi * (k1 / h);
        }
        s_lo = s_hi;
        g_lo = g_hi;
    }
    finite(acc, "product integration")
}

fn de_integral<F>(rule: &TanhSinh, a: f64, b: f64, f: F) -> Result<f64>
where
    F: Fn(f64, f64, f64) -> Result<f64>,
{
    let mut failure = None;
    let value = rule.integrate_with_distances(
        |v, dl, dr| match f(v, dl, dr) {
            Ok(y) => y,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        a,
        b,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    finite(value, "double-exponential quadrature")
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

fn node_count(nodes_per_unit: usize, len: f64) -> usize {
    ((nodes_per_unit as f64 * len).ceil() as usize).max(MIN_NODES)
}

/// Applies `spec` to the u-function `g` at `u`, with terminal `t = S(terminal)`.
///
/// `domain` bounds the u-values at which `g` may be evaluated; finite-difference
/// stencils turn one-sided at its edges.
pub fn apply_u(
    spec: &OperatorSpec,
    alpha: f64,
    g: &UFn<'_>,
    t: f64,
    u: f64,
    domain: (f64, f64),
) -> Result<f64> {
    let room = match spec.side {
        Side::Left => u - t,
        Side::Right => t - u,
    };
    if !(room >= 0.0) {
        return Err(Error::Precondition(format!(
            "{:?}-sided operator needs the evaluation point on the {} side of the terminal (S(x) = {u}, S(terminal) = {t})",
            spec.side,
            if spec.side == Side::Left { "upper" } else { "lower" }
        )));
    }
    // reflect right-sided problems onto left-sided ones, v -> -v; the left
    // derivative d/dv of the reflection is the -d/du of the right-sided form
    let (a, x, dom) = match spec.side {
        Side::Left => (t, u, domain),
        Side::Right => (-t, -u, (-domain.1, -domain.0)),
    };
    let reflected = |v: f64| g(-v);
    let h: &UFn<'_> = match spec.side {
        Side::Left => g,
        Side::Right => &reflected,
    };
    let (order, mu) = spec.kernel(alpha);
    let n = spec.order();
    match spec.kind {
        OperatorKind::RLIntegral => {
            let nodes = node_count(spec.nodes_per_unit, room);
            Ok(left_kernel_integral(h, a, x, mu, spec.scheme, nodes)? * rgamma(order))
        }
        OperatorKind::RLDerivative => {
            if room == 0.0 {
                return Err(Error::Precondition(
                    "derivative requested at the terminal itself".into(),
                ));
            }
            if order == 0.0 {
                return derivative_u(h, x, spec.fd_step.min(room / 4.0), n, a, dom.1);
            }
            // the node count is fixed at the base point so that the
            // discretization varies smoothly along the stencil
            let nodes = node_count(spec.nodes_per_unit, room);
            let scale = rgamma(order);
            let big = |w: f64| Ok(left_kernel_integral(h, a, w, mu, spec.scheme, nodes)? * scale);
            let step = spec.fd_step.min(room / (16.0 * n as f64));
            let coarse = derivative_u(big, x, step, n, a, dom.1)?;
            let fine = derivative_u(big, x, 0.5 * step, n, a, dom.1)?;
            if (fine - coarse).abs() > 10.0 * spec.tol * fine.abs().max(1.0) {
                return Err(Error::DifferentiationNoise { coarse, fine });
            }
            finite((4.0 * fine - coarse) / 3.0, "RL derivative")
        }
        OperatorKind::Caputo => {
            if room == 0.0 {
                return Err(Error::Precondition(
                    "derivative requested at the terminal itself".into(),
                ));
            }
            if order == 0.0 {
                return derivative_u(h, x, spec.fd_step.min(room / 4.0), n, a, dom.1);
            }
            let scale = rgamma(order);
            let value = match spec.scheme {
                Scheme::ProductTrapezoid => {
                    // RL derivative of g minus its Taylor polynomial at the
                    // terminal: the same operator, without inner differences
                    let taylor = (0..n)
                        .map(|k| Ok(derivative_u(h, a, spec.fd_step, k, a, dom.1)? / factorial(k)))
                        .collect::<Result<Vec<f64>>>()?;
                    let reduced = |v: f64| {
                        let d = v - a;
                        let poly = taylor.iter().rev().fold(0.0, |acc, c| acc * d + c);
                        Ok(h(v)? - poly)
                    };
                    let rl = OperatorSpec { kind: OperatorKind::RLDerivative, side: Side::Left, ..*spec };
                    return apply_u(&rl, alpha, &reduced, a, x, dom);
                }
                Scheme::DoubleExponential => {
                    let fd = spec.fd_step;
                    let inner = |v: f64, dl: f64, dr: f64| {
                        // keep the stencil well inside the distance to the terminal
                        let step = fd.min(dl / 32.0).max(64.0 * f64::EPSILON * v.abs().max(1.0));
                        Ok(derivative_u(h, v, step, n, a, dom.1)? * dr.powf(mu))
                    };
                    de_integral(tanh_sinh(), a, x, inner)? * scale
                }
            };
            Ok(value)
        }
    }
}

/// Applies any operator to `f` at `x`.
pub fn apply(spec: &OperatorSpec, f: &FractalFn, sf: &StaircaseFn, x: f64) -> Result<f64> {
    let t = sf.eval(spec.terminal)?;
    let u = sf.eval(x)?;
    let g = |v: f64| f.at_u(sf, v);
    apply_u(spec, sf.alpha(), &g, t, u, u_domain(sf))
}

fn expect_kind(spec: &OperatorSpec, kind: OperatorKind) -> Result<()> {
    if spec.kind != kind {
        return Err(Error::InvalidParameter(format!(
            "operator spec is {:?}, expected {kind:?}",
            spec.kind
        )));
    }
    Ok(())
}

pub fn rl_integral(spec: &OperatorSpec, f: &FractalFn, sf: &StaircaseFn, x: f64) -> Result<f64> {
    expect_kind(spec, OperatorKind::RLIntegral)?;
    apply(spec, f, sf, x)
}

pub fn rl_derivative(spec: &OperatorSpec, f: &FractalFn, sf: &StaircaseFn, x: f64) -> Result<f64> {
    expect_kind(spec, OperatorKind::RLDerivative)?;
    apply(spec, f, sf, x)
}

pub fn caputo_derivative(
    spec: &OperatorSpec,
    f: &FractalFn,
    sf: &StaircaseFn,
    x: f64,
) -> Result<f64> {
    expect_kind(spec, OperatorKind::Caputo)?;
    apply(spec, f, sf, x)
}

fn power_base(eta: f64, sf: &StaircaseFn, a: f64, x: f64) -> Result<f64> {
    if !(eta > -1.0) {
        return Err(Error::InvalidParameter(format!("power must exceed -1, got {eta}")));
    }
    let d = sf.eval(x)? - sf.eval(a)?;
    if d < 0.0 {
        return Err(Error::Precondition(format!(
            "S(x) - S(a) must be non-negative, got {d}"
        )));
    }
    Ok(d)
}

/// Closed form of the left RL integral of `(S - S(a))^η`.
pub fn power_rule_integral(beta: f64, eta: f64, sf: &StaircaseFn, a: f64, x: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::InvalidParameter(format!("order must be positive, got {beta}")));
    }
    let d = power_base(eta, sf, a, x)?;
    finite(
        gamma(eta + 1.0)? * rgamma(eta + beta + 1.0) * d.powf(eta + beta),
        "power rule",
    )
}

/// Closed form of the left RL derivative of `(S - S(a))^η`; zero where
/// `Γ(η + 1 - β)` has a pole.
pub fn power_rule_derivative(
    beta: f64,
    eta: f64,
    sf: &StaircaseFn,
    a: f64,
    x: f64,
) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::InvalidParameter(format!("order must be positive, got {beta}")));
    }
    let d = power_base(eta, sf, a, x)?;
    let r = rgamma(eta + 1.0 - beta);
    if r == 0.0 {
        return Ok(0.0);
    }
    finite(gamma(eta + 1.0)? * r * d.powf(eta - beta), "power rule")
}

/// Which composition identity to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompositionKind {
    RLLeft,
    RLRight,
    CaputoLeft,
    CaputoRight,
}

impl CompositionKind {
    pub const ALL: [CompositionKind; 4] = [
        CompositionKind::RLLeft,
        CompositionKind::RLRight,
        CompositionKind::CaputoLeft,
        CompositionKind::CaputoRight,
    ];
}

/// Tanh–sinh rule for outer integrals whose integrand is itself an operator
/// value: truncated so that no node comes closer to an end than ~1e-13 of
/// the interval, where inner stencils would no longer resolve.
fn outer_rule() -> &'static TanhSinh {
    static RULE: OnceLock<TanhSinh> = OnceLock::new();
    RULE.get_or_init(|| TanhSinh::new(1.0 / 32.0, 3.0))
}

const TERMINAL_CUT: f64 = 1e-10;

/// Largest violation over `grid` of the identity `I^β D^β f = f - (boundary terms)`
/// on the interval `[a, b]`.
///
/// RL kinds subtract `Σ_j [D^{β-j} f](terminal) / Γ(β - j + 1) · dist^{β-j}`;
/// Caputo kinds subtract the Taylor polynomial of degree `n - 1` at the
/// terminal. Both sides use the module's own operators; the outer integral is
/// tanh–sinh.
pub fn composition_residual(
    kind: CompositionKind,
    f: &FractalFn,
    beta: f64,
    sf: &StaircaseFn,
    interval: (f64, f64),
    grid: &[f64],
) -> Result<f64> {
    let (a, b) = interval;
    if !(a < b) {
        return Err(Error::InvalidParameter(format!("interval must satisfy a < b (got {a}, {b})")));
    }
    let (side, op_kind) = match kind {
        CompositionKind::RLLeft => (Side::Left, OperatorKind::RLDerivative),
        CompositionKind::RLRight => (Side::Right, OperatorKind::RLDerivative),
        CompositionKind::CaputoLeft => (Side::Left, OperatorKind::Caputo),
        CompositionKind::CaputoRight => (Side::Right, OperatorKind::Caputo),
    };
    let terminal = if side == Side::Left { a } else { b };
    let spec = OperatorSpec::new(op_kind, side, terminal, beta)?;
    let n = spec.order();
    let alpha = sf.alpha();
    let domain = u_domain(sf);
    let (au, bu) = (sf.eval(a)?, sf.eval(b)?);
    let t = if side == Side::Left { au } else { bu };
    let g = |v: f64| f.at_u(sf, v);
    let inner = |v: f64| apply_u(&spec, alpha, &g, t, v, domain);
    let scale = rgamma(beta);

    // terminal data, independent of the evaluation point
    let boundary: Vec<(f64, f64)> = match op_kind {
        OperatorKind::RLDerivative => {
            let delta = 1e-12 * (bu - au).max(1.0);
            let near = if side == Side::Left { t + delta } else { t - delta };
            (1..=n)
                .map(|j| {
                    let order = beta - j as f64;
                    let value = if order < 0.0 {
                        let s = OperatorSpec::rl_integral(side, terminal, -order)?;
                        apply_u(&s, alpha, &g, t, near, domain)?
                    } else if order == 0.0 {
                        g(t)?
                    } else {
                        let s = OperatorSpec::rl_derivative(side, terminal, order)?;
                        apply_u(&s, alpha, &g, t, near, domain)?
                    };
                    Ok((value * rgamma(order + 1.0), order))
                })
                .collect::<Result<_>>()?
        }
        _ => {
            let mut factorial = 1.0;
            (0..n)
                .map(|k| {
                    if k > 0 {
                        factorial *= k as f64;
                    }
                    let lo = if side == Side::Left { t } else { domain.0 };
                    let hi = if side == Side::Left { domain.1 } else { t };
                    let dk = derivative_u(g, t, spec.fd_step, k, lo, hi)?;
                    // Taylor terms in the distance to the terminal
                    let sign = if side == Side::Right && k % 2 == 1 { -1.0 } else { 1.0 };
                    Ok((sign * dk / factorial, k as f64))
                })
                .collect::<Result<_>>()?
        }
    };

    let mut worst: f64 = 0.0;
    for &x in grid {
        let u = sf.eval(x)?;
        let dist = if side == Side::Left { u - au } else { bu - u };
        if !(dist > 0.0) {
            continue;
        }
        // f64 cannot resolve a stencil within ~1e-10 (relative) of the terminal;
        // that sliver is left out of the outer integral
        let cut = TERMINAL_CUT * t.abs().max(1.0);
        if dist <= 2.0 * cut {
            continue;
        }
        let lhs = match side {
            Side::Left => de_integral(outer_rule(), au + cut, u, |v, _, dr| {
                Ok(inner(v)? * dr.powf(beta - 1.0))
            })?,
            Side::Right => de_integral(outer_rule(), u, bu - cut, |v, dl, _| {
                Ok(inner(v)? * dl.powf(beta - 1.0))
            })?,
        } * scale;
        let correction: f64 = boundary.iter().map(|&(c, p)| c * dist.powf(p)).sum();
        let rhs = g(u)? - correction;
        worst = worst.max((lhs - rhs).abs());
    }
    finite(worst, "composition residual")
}
