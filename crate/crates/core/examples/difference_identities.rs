//! Generalized finite differences: the recursion, its identities and the
//! equal-step sign test.
//!
//! Run with `cargo run --example difference_identities`.

use tame_analysis::diff::{check_diff_identities, gen_diff, hk_test, StepVector};
use tame_analysis::{parse_function_spec, Interval, Result};

fn main() -> Result<()> {
    let f = parse_function_spec("poly:[1,0,0,0] on (0,2)")?;
    let g = parse_function_spec("sin on (0,2)")?;

    // A cubic has constant third differences: 6 h1 h2 h3.
    let h = StepVector::new(vec![0.1, 0.2, 0.3])?;
    let d3 = gen_diff(&f, 0.4, &h)?;
    println!("Δ³ x³ at 0.4 with h = {:?}: {d3:.12} (6·h1·h2·h3 = {:.12})", h.0, 6.0 * 0.1 * 0.2 * 0.3);

    let rep = check_diff_identities(&f, &g, 0.4, &h)?;
    println!("split residual {:e}, additivity residual {:e}", rep.split_residual, rep.additivity_residual);

    let j = Interval::closed(0.0, 1.0)?;
    for (name, spec) in [("x^3", "poly:[1,0,0,0] on (-1,2)"), ("sin", "sin on (-1,2)"), ("|x-1/2|", "abs-shift:0.5 on (-1,2)")] {
        let v = hk_test(&parse_function_spec(spec)?, &j, 2, 256, 1e-9)?;
        println!("H_2 on [0,1] for {name:<8} -> {:?} over {} pairs", v.verdict, v.pairs_tested);
    }
    Ok(())
}
