//! Base-r expansions, the digit predicate V_r and the Nerode growth signal
//! separating recognizable graphs from non-recognizable ones.
//!
//! Run with `cargo run --release --example base_r_recognizability`.

use tame_analysis::base_r::{encode, recognizability_trend, v_r, FunctionGraph, DEFAULT_SAMPLES};
use tame_analysis::{parse_function_spec, Result};

fn main() -> Result<()> {
    for (x, r, p) in [(0.5, 2, 4), (-1.0, 2, 4), (0.3, 3, 6), (5.0, 10, 3)] {
        let words: Vec<String> = encode(x, r, p)?.iter().map(|w| w.to_string()).collect();
        println!("{x:>5} base {r:>2}: {}", words.join("  "));
    }
    println!("V_2(0.5, 2^-1, 1) = {}", v_r(0.5, 0.5, 1, 2, 8)?);
    println!("V_2(0.5, 2^-2, 1) = {}", v_r(0.5, 0.25, 1, 2, 8)?);
    println!("V_2(0.75, 2^0, 1) = {}", v_r(0.75, 1.0, 1, 2, 8)?);

    for (name, spec) in [("y = x", "affine:1,0 on (-1,2)"), ("y = x/2", "affine:0.5,0 on (-1,2)"), ("y = x^2", "poly:[1,0,0] on (-1,2)")] {
        let graph = FunctionGraph::new(parse_function_spec(spec)?)?;
        let t = recognizability_trend(&graph, 2, 4..=10, DEFAULT_SAMPLES, 0)?;
        let counts: Vec<usize> = t.counts.iter().map(|c| c.classes).collect();
        println!("{name:<8} classes for p = 4..10: {counts:?} -> {:?} ({})", t.verdict, t.label);
    }
    Ok(())
}
