//! Classical fractional calculus by Grünwald–Letnikov sums.
//!
//! Shares no code with the product-integration operators, so it serves as an
//! independent reference for the identity-map (dimension one) case.

use crate::error::{finite, Error, Result};
use crate::operators::Side;

/// Default number of GL steps on the coarse level; the fine level doubles it.
pub const DEFAULT_GL_STEPS: usize = 2000;

/// `w_k = (-1)^k C(order, k)`, computed by the recurrence `w_k = w_{k-1}(1 - (order + 1)/k)`.
pub fn gl_weights(order: f64, count: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(count);
    let mut prev = 1.0;
    for k in 0..count {
        if k > 0 {
            prev *= 1.0 - (order + 1.0) / k as f64;
        }
        w.push(prev);
    }
    w
}

fn gl_sum(phi: &dyn Fn(f64) -> f64, order: f64, side: Side, x: f64, len: f64, steps: usize) -> f64 {
    let h = len / steps as f64;
    let w = gl_weights(order, steps + 1);
    let dir = match side {
        Side::Left => -1.0,
        Side::Right => 1.0,
    };
    let sum: f64 = w
        .iter()
        .enumerate()
        .map(|(k, wk)| wk * phi(x + dir * k as f64 * h))
        .sum();
    sum * h.powf(-order)
}

/// GL approximation of the operator of order `order` (derivative for positive
/// orders, integral for negative ones), Richardson-extrapolated over `steps`
/// and `2·steps`.
pub fn grunwald_letnikov(
    phi: &dyn Fn(f64) -> f64,
    order: f64,
    side: Side,
    terminal: f64,
    x: f64,
    steps: usize,
) -> Result<f64> {
    let len = match side {
        Side::Left => x - terminal,
        Side::Right => terminal - x,
    };
    if !(len > 0.0) {
        return Err(Error::Precondition(format!(
            "GL sum needs x strictly inside the terminal's side (x = {x}, terminal = {terminal})"
        )));
    }
    if steps < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 GL steps, got {steps}")));
    }
    let coarse = gl_sum(phi, order, side, x, len, steps);
    let fine = gl_sum(phi, order, side, x, len, 2 * steps);
    finite(2.0 * fine - coarse, "Grunwald-Letnikov sum")
}

pub fn classical_rl_integral(
    phi: &dyn Fn(f64) -> f64,
    beta: f64,
    side: Side,
    terminal: f64,
    x: f64,
) -> Result<f64> {
    grunwald_letnikov(phi, -beta, side, terminal, x, DEFAULT_GL_STEPS)
}

pub fn classical_rl_derivative(
    phi: &dyn Fn(f64) -> f64,
    beta: f64,
    side: Side,
    terminal: f64,
    x: f64,
) -> Result<f64> {
    grunwald_letnikov(phi, beta, side, terminal, x, DEFAULT_GL_STEPS)
}

/// Caputo derivative as the GL derivative of `φ` minus its Taylor polynomial
/// at the terminal (orders up to 2).
pub fn classical_caputo(
    phi: &dyn Fn(f64) -> f64,
    beta: f64,
    side: Side,
    terminal: f64,
    x: f64,
) -> Result<f64> {
    let n = beta.ceil() as usize;
    if n > 2 {
        return Err(Error::Unsupported(format!("classical Caputo oracle of order {beta}")));
    }
    let p0 = phi(terminal);
    let slope = if n == 2 {
        // one-sided second-order difference into the interval
        let h = match side {
            Side::Left => 1e-3,
            Side::Right => -1e-3,
        };
        (-3.0 * p0 + 4.0 * phi(terminal + h) - phi(terminal + 2.0 * h)) / (2.0 * h)
    } else {
        0.0
    };
    let reduced = |t: f64| phi(t) - p0 - slope * (t - terminal);
    grunwald_letnikov(&reduced, beta, side, terminal, x, DEFAULT_GL_STEPS)
}

/// Solves the Caputo problem `D^β y = rhs(x)`, `y(a) = y0`, `0 < β < 1`, on
/// `[a, b]` by the implicit GL recursion, Richardson-extrapolated over `steps`
/// and `2·steps`. Returns the values at `a + k (b - a)/steps`.
pub fn gl_solve_caputo(
    beta: f64,
    rhs: &dyn Fn(f64) -> f64,
    y0: f64,
    a: f64,
    b: f64,
    steps: usize,
) -> Result<Vec<(f64, f64)>> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::Unsupported(format!("GL solver needs 0 < beta < 1, got {beta}")));
    }
    if !(a < b) || steps < 2 {
        return Err(Error::InvalidParameter("GL solver needs a < b and at least 2 steps".into()));
    }
    let march = |m: usize| -> Vec<f64> {
        let h = (b - a) / m as f64;
        let hb = h.powf(beta);
        let w = gl_weights(beta, m + 1);
        let mut z = vec![0.0; m + 1];
        for j in 1..=m {
            let memory: f64 = (1..=j).map(|k| w[k] * z[j - k]).sum();
            z[j] = hb * rhs(a + j as f64 * h) - memory;
        }
        z
    };
    let coarse = march(steps);
    let fine = march(2 * steps);
    (0..=steps)
        .map(|j| {
            let x = a + (b - a) * j as f64 / steps as f64;
            let y = y0 + 2.0 * fine[2 * j] - coarse[j];
            Ok((x, finite(y, "GL solver")?))
        })
        .collect()
}
