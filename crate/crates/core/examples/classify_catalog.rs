//! Function classifiers over the catalog: convexity, repetition,
//! local affineness, the combined report, weak poles and continuity moduli.
//!
//! Run with `cargo run --release --example classify_catalog`.

use tame_analysis::classify::{
    classify_function, find_repetition_witness, uniform_continuity_modulus, weak_pole_check, FamilyModel,
    DEFAULT_AFFINE_DEPTH,
};
use tame_analysis::{parse_function_spec, Result, ToleranceConfig};

fn main() -> Result<()> {
    let cfg = ToleranceConfig::default();
    println!("{:<26} {:<18} {:>9} {:>9}  verdict", "function", "convexity", "affine", "witness");
    for spec in ["poly:[1,0,0] on (0,1)", "sin on (0.1,6)", "sawtooth:0.125 on (0,1)", "cantor on (0,1)", "weier:8 on (0,1)"] {
        let f = parse_function_spec(spec)?;
        let r = classify_function(&f, &f.domain(), DEFAULT_AFFINE_DEPTH, &cfg)?;
        let found = r.repetition.iter().filter(|w| w.witness.is_some()).count();
        println!(
            "{spec:<26} {:<18} {:>9.3} {:>6}/{}  {:?}",
            format!("{:?}", r.convexity),
            r.affine_coverage,
            found,
            r.repetition.len(),
            r.verdict
        );
    }

    let saw = parse_function_spec("sawtooth:0.25 on (0,1)")?;
    if let Some(w) = find_repetition_witness(&saw, &saw.domain(), 0.01, &cfg)? {
        println!("sawtooth increments agree at x = {} and y = {} up to {:e}", w.x, w.y, w.max_residual);
    }

    let base = parse_function_spec("sininv on (0,1)")?;
    let index: Vec<f64> = (8..=160).map(|n| 1.0 / n as f64).collect();
    let family = FamilyModel::from_fn(&index, |d| Ok(base.translate(d)))?;
    let pole = weak_pole_check(&family, 0.9, &cfg.with_grid(512))?;
    println!("sin(1/(t+d)) family: {:?}, common segment [0, {:.3}]", pole.verdict, pole.delta);

    for spec in ["affine:3,1 on (0,1)", "sininv on (0.001,1)"] {
        let f = parse_function_spec(spec)?;
        let m = uniform_continuity_modulus(&f, &f.domain(), &cfg)?;
        let finest = m.rows.last().expect("rows");
        println!("{spec:<22} δ(ε = {}) = {:e}, collapse: {}", finest.eps, finest.delta, m.collapse);
    }
    Ok(())
}
