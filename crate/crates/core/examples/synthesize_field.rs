//! Ordered-field synthesis from x²: normalization, τ, ⊕ and ⊗, the axiom
//! check and derivative-free slope comparison.
//!
//! Run with `cargo run --release --example synthesize_field`.

use tame_analysis::field::{compare_slopes, field_add, field_mul, normalize, verify_field_axioms, FieldStructure};
use tame_analysis::{parse_function_spec, Interval, Result, ToleranceConfig};

fn main() -> Result<()> {
    let cfg = ToleranceConfig::default();
    let f = parse_function_spec("poly:[1,0,0] on (-1,2)")?;
    let nf = normalize(&f, &Interval::closed(0.0, 1.0)?, &cfg)?;
    println!("normalized model {} restricted to [0, {}]", nf.f.to_spec(), nf.b);
    println!("provenance: {}", serde_json::to_string(&nf.provenance)?);

    let fs = FieldStructure::build(nf.clone(), cfg.grid_n, &cfg)?;
    println!("|E| = {}, F ⊂ ({}, {}), τ range ±{:.1}", fs.e.len(), -2.0 * fs.b, 2.0 * fs.b, fs.t_max);
    for x in [0.0, 0.25, fs.b, 0.75, -0.25] {
        println!("  τ({x:>7.4}) = {:.9}  [{:?}]", fs.tau(x)?, fs.branch(x)?);
    }
    println!("  1/4 ⊕ 3/8 = {:.9}", field_add(&fs, 0.25, 0.375)?);
    println!("  1/4 ⊗ 1/4 = {:.9}", field_mul(&fs, 0.25, 0.25)?);

    let report = verify_field_axioms(&fs, 1000, &cfg)?;
    println!(
        "axioms over {} trials: max residual {:e}, order violations {}, passed {}",
        report.trials, report.max_residual, report.order_violations, report.passed
    );

    let gx = f.increment_at(0.1)?;
    let gy = f.increment_at(0.2)?;
    let c = compare_slopes(&nf, &gx, &gy, &cfg)?;
    println!("slope of increments at 0.1 vs 0.2: {:?} (witness z = {:?})", c.order, c.z);
    Ok(())
}
