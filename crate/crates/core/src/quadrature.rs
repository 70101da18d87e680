//! Plain quadrature on the u-line: Gauss–Legendre panels, trapezoid and
//! tanh–sinh. The fractal integrals hand these rules an already conjugated
//! integrand.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

/// Nodes and weights of the n-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi's initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let n = n as f64;
    let d = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Shared, lazily built Gauss–Legendre rules.
pub fn gauss_legendre(n: usize) -> Arc<GaussLegendre> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(GaussLegendre::new(n)))
        .clone()
}

/// Composite Gauss–Legendre: `[a, b]` is cut into panels no longer than
/// `panel_len`, each integrated with the `n`-point rule.
pub fn composite_gauss_legendre<F: FnMut(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    n: usize,
    panel_len: f64,
) -> f64 {
    let rule = gauss_legendre(n);
    let panels = (((b - a) / panel_len).ceil() as usize).max(1);
    let h = (b - a) / panels as f64;
    let mut f = f;
    (0..panels)
        .map(|k| {
            let lo = a + k as f64 * h;
            let hi = if k + 1 == panels { b } else { lo + h };
            rule.integrate(&mut f, lo, hi)
        })
        .sum()
}

/// Composite trapezoid rule on `n` equally spaced nodes.
pub fn trapezoid<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = n.max(2);
    let h = (b - a) / (n - 1) as f64;
    let inner: f64 = (1..n - 1).map(|i| f(a + i as f64 * h)).sum();
    h * (0.5 * (f(a) + f(b)) + inner)
}

/// One tanh–sinh abscissa, stored with its distances to both ends of `[-1, 1]`
/// so that endpoint singularities can be evaluated without cancellation.
#[derive(Debug, Clone, Copy)]
struct DeNode {
    one_plus_x: f64,
    one_minus_x: f64,
    weight: f64,
}

/// Tanh–sinh (double exponential) rule. Handles integrable algebraic
/// singularities at either endpoint; the integrand never sees the endpoints.
#[derive(Debug, Clone)]
pub struct TanhSinh {
    nodes: Vec<DeNode>,
    step: f64,
}

impl TanhSinh {
    /// `step` is the spacing in the transformed variable; `t_max` truncates it.
    pub fn new(step: f64, t_max: f64) -> Self {
        let count = (t_max / step).floor() as i64;
        let mut nodes = Vec::with_capacity(2 * count as usize + 1);
        for k in -count..=count {
            let t = k as f64 * step;
            let y = FRAC_PI_2 * t.sinh();
            let ey = (-2.0 * y.abs()).exp();
            // 1 - tanh|y| = 2 e^{-2|y|} / (1 + e^{-2|y|})
            let small = 2.0 * ey / (1.0 + ey);
            let big = 2.0 - small;
            let (one_plus_x, one_minus_x) = if y >= 0.0 { (big, small) } else { (small, big) };
            // sech² y = (1 - x)(1 + x)
            let weight = FRAC_PI_2 * t.cosh() * one_plus_x * one_minus_x;
            if one_plus_x > 0.0 && one_minus_x > 0.0 && weight > 0.0 {
                nodes.push(DeNode {
                    one_plus_x,
                    one_minus_x,
                    weight,
                });
            }
        }
        TanhSinh { nodes, step }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integrates over `[a, b]`. The closure receives the abscissa `v`, its
    /// distance from `a` and its distance from `b`.
    pub fn integrate_with_distances<F>(&self, mut f: F, a: f64, b: f64) -> f64
    where
        F: FnMut(f64, f64, f64) -> f64,
    {
        let half = 0.5 * (b - a);
        let mut sum = 0.0;
        for node in &self.nodes {
            let dl = half * node.one_plus_x;
            let dr = half * node.one_minus_x;
            if dl <= 0.0 || dr <= 0.0 {
                continue;
            }
            let v = if dl <= dr { a + dl } else { b - dr };
            sum += node.weight * f(v, dl, dr);
        }
        sum * half * self.step
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64) -> f64 {
        self.integrate_with_distances(|v, _, _| f(v), a, b)
    }
}

/// The default tanh–sinh rule (step 1/16, about 190 nodes).
pub fn tanh_sinh() -> &'static TanhSinh {
    static RULE: OnceLock<TanhSinh> = OnceLock::new();
    RULE.get_or_init(|| TanhSinh::new(1.0 / 16.0, 6.0))
}
