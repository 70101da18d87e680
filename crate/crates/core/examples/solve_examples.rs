//! The four worked examples: derivation, residual, comparison with the
//! printed formulas, and the dimension-one limit.

use fractal_calculus::solutions::{
    alpha_one_degeneration, example4_printed_transform, residual_max, solve_example, ExampleProblem, DEFAULT_LAMBDA,
};
use fractal_calculus::staircase::StaircaseFn;

fn main() -> fractal_calculus::Result<()> {
    let sf = StaircaseFn::default();
    let w: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
    for id in 1..=4 {
        let r = solve_example(id, &sf, DEFAULT_LAMBDA, None)?;
        println!("example {id}: Y(σ) = {}", r.derivation.transform);
        for t in &r.derivation.terms {
            println!("    y ⊃ {t}");
        }
        println!(
            "    residual {:.2e}; printed formula: residual {:.2e}, max deviation {:.3}; dimension-one deviation {:.1e}",
            r.max_residual,
            r.paper_formula_residual,
            r.paper_formula_discrepancy,
            alpha_one_degeneration(id, &w)?
        );
    }
    let problem = ExampleProblem::paper(4, DEFAULT_LAMBDA)?;
    let grid = fractal_calculus::solutions::default_grid(&problem, &sf, 16)?;
    let printed = example4_printed_transform(DEFAULT_LAMBDA)?;
    println!(
        "example 4 with the printed (η, ν) structure: residual {:.2}",
        residual_max(&problem, &sf, &|w| printed.eval_w(w), &grid)?
    );
    Ok(())
}
