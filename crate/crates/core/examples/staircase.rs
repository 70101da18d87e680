//! Staircase values, the quantile inverse, membership and pre-fractal stages.

use fractal_calculus::staircase::{prefractal_intervals, ExtensionRule, StaircaseFn};

fn main() -> fractal_calculus::Result<()> {
    let sf = StaircaseFn::default();
    println!("alpha = ln2/ln3 = {:.10}", sf.alpha());
    for x in [0.0, 0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0, 4.0 / 3.0] {
        println!("S({x:.6}) = {:.12}   in Cantor set: {}", sf.eval(x)?, sf.contains(x));
    }
    for u in [0.0, 1.0 / 3.0, 0.5, 0.75] {
        let t = sf.quantile(u)?;
        println!("quantile({u:.6}) = {t:.12}   S back = {:.12}", sf.eval(t)?);
    }
    for depth in 0..=2 {
        println!("stage {depth}: {:?}", prefractal_intervals(depth)?);
    }
    let unit = StaircaseFn::cantor(53, ExtensionRule::UnitInterval)?;
    println!("unit-interval rule at x = 1.5: {}", unit.eval(1.5).unwrap_err());
    Ok(())
}
