//! Calculus on the triadic Cantor set.
//!
//! Every operator works in the measure coordinate `u = S(x)`, where `S` is
//! the Cantor staircase ([`staircase::StaircaseFn`]). Replacing `S` by the
//! identity map turns each fractal operator into its classical counterpart.
//!
//! | module | content |
//! |--------|---------|
//! | [`staircase`] | staircase, quantile, membership, pre-fractal stages |
//! | [`falpha`] | F^α-derivative and F^α-integral, sampled functions |
//! | [`special`] | Gamma, fractal Gamma and Beta, Mittag-Leffler |
//! | [`operators`] | Riemann–Liouville and Caputo fractal operators, power rules, composition identities |
//! | [`classical`] | Grünwald–Letnikov reference implementation |
//! | [`laplace`] | transform algebra, rule-based inversion, numeric transform, convolution |
//! | [`solutions`] | worked examples: derivation, residuals, printed formulas |
//! | [`expr`], [`output`], [`figures`], [`verify`], [`cli`] | command-line support |

// `!(a < b)` is used deliberately so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod cli;
pub mod error;
pub mod expr;
pub mod falpha;
pub mod figures;
pub mod laplace;
pub mod operators;
pub mod output;
pub mod quadrature;
pub mod solutions;
pub mod special;
pub mod staircase;
pub mod verify;

pub use error::{Error, Result};
pub use falpha::{f_alpha_derivative, f_alpha_integral, fractal_exp, FractalFn, GridFunction};
pub use laplace::{inverse_laplace, laplace_numeric, laplace_rule, LaplaceExpr, TransformRule};
pub use operators::{caputo_derivative, rl_derivative, rl_integral, KernelConvention, OperatorKind, OperatorSpec, Side};
pub use solutions::{solve_example, SolutionReport};
pub use special::{beta_fractal, gamma_classical, gamma_fractal, mittag_leffler, GammaMode, MLParams};
pub use staircase::{cantor_eval, cantor_membership, cantor_quantile, prefractal_intervals, CantorSpec, ExtensionRule, StaircaseFn};
