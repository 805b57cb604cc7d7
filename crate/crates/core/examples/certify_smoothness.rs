//! Smoothness certificates from the equal-step sign test at order k+2.
//!
//! Run with `cargo run --release --example certify_smoothness`.

use tame_analysis::diff::certify_smoothness;
use tame_analysis::{parse_function_spec, Result, ToleranceConfig};

fn main() -> Result<()> {
    let cases = [
        ("poly:[1,0,0,0,0] on (0,1)", 2, 1024),
        ("abs-shift:0.5 on (0,1)", 1, 4096),
        ("weier:12 on (0,1)", 2, 4096),
    ];
    for (spec, k, grid) in cases {
        let f = parse_function_spec(spec)?;
        let cfg = ToleranceConfig::default().with_grid(grid);
        let cert = certify_smoothness(&f, &f.domain(), k, &cfg)?;
        println!("{spec:<28} C^{k}: coverage {:.3} in {} region(s) [{}]", cert.coverage, cert.regions.len(), cert.label);
        for r in cert.regions.iter().take(4) {
            println!("    [{:.6}, {:.6}] sign {:?}", r.lo, r.hi, r.sign);
        }
    }
    Ok(())
}
