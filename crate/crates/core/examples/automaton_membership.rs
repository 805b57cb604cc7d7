//! Weak Büchi real-vector automata: JSON documents, SCC validation and
//! lasso membership on eventually periodic words.
//!
//! Run with `cargo run --example automaton_membership`.

use tame_analysis::base_r::{encode, equality_automaton, order_automaton, parse_word, Rva};
use tame_analysis::Result;

fn main() -> Result<()> {
    let eq = equality_automaton(2);
    let json = serde_json::to_string_pretty(eq.spec())?;
    println!("equality automaton ({} transitions)", eq.spec().transitions.len());
    let reloaded = Rva::from_json(&json)?;

    let pairs = [("0⋆10", "0⋆10"), ("0⋆10", "0⋆01"), ("0⋆(01)", "00⋆0101(01)")];
    for (a, b) in pairs {
        let m = reloaded.membership(&[parse_word(a, 2)?, parse_word(b, 2)?])?;
        println!("  {a} = {b}: {} (loop {:?})", m.accepted, m.loop_states);
    }

    let lt = order_automaton(2);
    for (x, y) in [(0.25, 0.5), (0.5, 0.25), (-1.5, 0.25)] {
        let words = [encode(x, 2, 8)?.remove(0), encode(y, 2, 8)?.remove(0)];
        println!("  {x} < {y}: {}", lt.membership(&words)?.accepted);
    }
    Ok(())
}
