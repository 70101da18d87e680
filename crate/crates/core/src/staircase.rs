//! The triadic Cantor set and its integral staircase.
//!
//! Everything here works on digit expansions: the staircase value of `x` is read
//! off the ternary digits of `x`, and the quantile of `u` is assembled from the
//! binary digits of `u`. Both are O(`digit_depth`) and deterministic.

use crate::error::{Error, Result};

/// Similarity dimension of the middle-third Cantor set, `ln 2 / ln 3`.
pub const CANTOR_DIMENSION: f64 = std::f64::consts::LN_2 / 1.098_612_288_668_109_6;

/// Largest supported digit depth. An `f64` carries at most 53 significant bits,
/// so deeper expansions only read rounding noise.
pub const MAX_DIGIT_DEPTH: u32 = 64;

/// Distance, in units of `ε·|x|`, within which a point next to a gap edge
/// counts as a member.
pub const MEMBERSHIP_ULPS: f64 = 8.0;

/// Largest construction stage accepted by [`prefractal_intervals`].
pub const MAX_PREFRACTAL_DEPTH: u32 = 20;

/// How the staircase is continued outside `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtensionRule {
    /// Arguments outside `[0, 1]` are rejected.
    UnitInterval,
    /// `S(x + 1) = S(x) + 1` on `x >= 0` and `S(-x) = -S(x)`.
    SelfSimilarTiling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CantorSpec {
    digit_depth: u32,
    extension_rule: ExtensionRule,
}

impl CantorSpec {
    pub fn new(digit_depth: u32, extension_rule: ExtensionRule) -> Result<Self> {
        if digit_depth == 0 || digit_depth > MAX_DIGIT_DEPTH {
            return Err(Error::InvalidParameter(format!(
                "digit_depth must lie in 1..={MAX_DIGIT_DEPTH}, got {digit_depth}"
            )));
        }
        Ok(CantorSpec {
            digit_depth,
            extension_rule,
        })
    }

    pub fn digit_depth(&self) -> u32 {
        self.digit_depth
    }

    pub fn extension_rule(&self) -> ExtensionRule {
        self.extension_rule
    }
}

impl Default for CantorSpec {
    fn default() -> Self {
        CantorSpec {
            digit_depth: 53,
            extension_rule: ExtensionRule::SelfSimilarTiling,
        }
    }
}

/// The measure coordinate `u = S(x)` used by every fractal operator.
///
/// `Cantor` is the integral staircase of the triadic Cantor set. `Identity`
/// replaces it by `S(x) = x`, which turns every fractal operator into its
/// classical counterpart (dimension 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StaircaseFn {
    Cantor(CantorSpec),
    Identity,
}

impl Default for StaircaseFn {
    fn default() -> Self {
        StaircaseFn::Cantor(CantorSpec::default())
    }
}

impl StaircaseFn {
    pub fn cantor(digit_depth: u32, extension_rule: ExtensionRule) -> Result<Self> {
        Ok(StaircaseFn::Cantor(CantorSpec::new(digit_depth, extension_rule)?))
    }

    /// Dimension of the support: `ln 2 / ln 3` for the Cantor set, 1 for the identity map.
    pub fn alpha(&self) -> f64 {
        match self {
            StaircaseFn::Cantor(_) => CANTOR_DIMENSION,
            StaircaseFn::Identity => 1.0,
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, StaircaseFn::Identity)
    }

    /// `S(x)`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            StaircaseFn::Identity => finite_arg(x, "staircase"),
            StaircaseFn::Cantor(spec) => {
                extend(spec, x, "staircase", |r| unit_staircase(r, spec.digit_depth))
            }
        }
    }

    /// A point `t` of the Cantor set with `S(t) = u`.
    ///
    /// Dyadic `u` have two binary expansions; the terminating one is used, which
    /// selects the right endpoint of the corresponding gap.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        match self {
            StaircaseFn::Identity => finite_arg(u, "staircase quantile"),
            StaircaseFn::Cantor(spec) => extend(spec, u, "staircase quantile", |r| {
                unit_quantile(r, spec.digit_depth)
            }),
        }
    }

    /// Membership in the depth-`digit_depth` pre-fractal.
    pub fn contains(&self, x: f64) -> bool {
        match self {
            StaircaseFn::Identity => x.is_finite(),
            StaircaseFn::Cantor(spec) => {
                if !x.is_finite() {
                    return false;
                }
                let y = match spec.extension_rule {
                    ExtensionRule::UnitInterval if !(0.0..=1.0).contains(&x) => return false,
                    ExtensionRule::UnitInterval => x,
                    ExtensionRule::SelfSimilarTiling => {
                        // the reflection x -> -x preserves the tiled set
                        let y = x.abs();
                        y - y.floor()
                    }
                };
                if y == 1.0 {
                    return true;
                }
                unit_membership(y, spec.digit_depth, MEMBERSHIP_ULPS * f64::EPSILON * x.abs())
            }
        }
    }
}

/// `S(x)` for the default staircase (depth 53, tiling extension).
pub fn cantor_eval(sf: &StaircaseFn, x: f64) -> Result<f64> {
    sf.eval(x)
}

pub fn cantor_quantile(sf: &StaircaseFn, u: f64) -> Result<f64> {
    sf.quantile(u)
}

pub fn cantor_membership(sf: &StaircaseFn, x: f64) -> bool {
    sf.contains(x)
}

/// The `2^depth` closed intervals left after `depth` middle-third removals,
/// sorted ascending.
pub fn prefractal_intervals(depth: u32) -> Result<Vec<(f64, f64)>> {
    if depth > MAX_PREFRACTAL_DEPTH {
        return Err(Error::InvalidParameter(format!(
            "prefractal depth {depth} exceeds {MAX_PREFRACTAL_DEPTH}"
        )));
    }
    let denom = 3u64.pow(depth) as f64;
    let count = 1u64 << depth;
    let intervals = (0..count)
        .map(|k| {
            // bit i of k (most significant first) selects the left or right third
            let numerator = (0..depth).fold(0u64, |acc, i| {
                let bit = (k >> (depth - 1 - i)) & 1;
                acc * 3 + 2 * bit
            });
            (numerator as f64 / denom, (numerator + 1) as f64 / denom)
        })
        .collect();
    Ok(intervals)
}

fn finite_arg(x: f64, what: &'static str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Domain { what, value: x })
    }
}

fn extend(
    spec: &CantorSpec,
    x: f64,
    what: &'static str,
    unit: impl Fn(f64) -> f64,
) -> Result<f64> {
    let x = finite_arg(x, what)?;
    match spec.extension_rule {
        ExtensionRule::UnitInterval => {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::Domain { what, value: x });
            }
            Ok(if x == 1.0 { 1.0 } else { unit(x) })
        }
        ExtensionRule::SelfSimilarTiling => {
            let y = x.abs();
            let whole = y.floor();
            let value = whole + unit(y - whole);
            Ok(if x < 0.0 { -value } else { value })
        }
    }
}

/// Ternary digit of `r * 3` and the remainder. `3r` rounds once; the
/// subtraction of the digit is exact.
#[inline]
fn ternary_step(r: f64) -> (u8, f64) {
    let t = 3.0 * r;
    let d = t.floor().min(2.0);
    (d as u8, t - d)
}

fn unit_staircase(mut r: f64, depth: u32) -> f64 {
    let mut value = 0.0;
    let mut weight = 0.5;
    for _ in 0..depth {
        if r == 0.0 {
            break;
        }
        let (digit, rest) = ternary_step(r);
        match digit {
            0 => {}
            1 => return value + weight,
            _ => value += weight,
        }
        r = rest;
        weight *= 0.5;
    }
    value
}

fn unit_quantile(mut r: f64, depth: u32) -> f64 {
    let mut bits = 0u64;
    let mut used = 0;
    for _ in 0..depth {
        if r == 0.0 {
            break;
        }
        let t = 2.0 * r;
        let b = t.floor();
        bits = (bits << 1) | b as u64;
        r = t - b;
        used += 1;
    }
    // Horner from the least significant ternary digit keeps the sum accurate.
    let mut acc = 0.0;
    for i in 0..used {
        let bit = (bits >> i) & 1;
        acc = (2.0 * bit as f64 + acc) / 3.0;
    }
    acc
}

/// Ternary digits of `r` to `depth`, accepting a first digit 1 whose point
/// lies within `tol` of an edge of the gap it opens: the edges belong to the
/// set (`0.…1000…` is `0.…0222…`), and an f64 near a set point can round
/// to either side of it.
fn unit_membership(mut r: f64, depth: u32, tol: f64) -> bool {
    let mut cell = 1.0;
    for _ in 0..depth {
        if r == 0.0 {
            return true;
        }
        let (digit, rest) = ternary_step(r);
        cell /= 3.0;
        if digit == 1 {
            return rest.min(1.0 - rest) * cell <= tol;
        }
        r = rest;
    }
    true
}
