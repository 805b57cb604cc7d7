//! Sequence sets: decay class, ω-order, Assouad and box dimension, and
//! difference-set intersections.
//!
//! Run with `cargo run --release --example sequence_dimension`.

use tame_analysis::seqset::{
    assouad_estimate, box_dimension_estimate, difference_set_intersection, omega_order, PointSet, SequenceSet,
};
use tame_analysis::Result;

fn cantor_endpoints(depth: u32) -> Vec<f64> {
    let mut ivs = vec![(0.0, 1.0)];
    for _ in 0..depth {
        ivs = ivs.into_iter().flat_map(|(a, b): (f64, f64)| {
            let t = (b - a) / 3.0;
            [(a, a + t), (b - t, b)]
        }).collect();
    }
    ivs.into_iter().flat_map(|(a, b)| [a, b]).collect()
}

fn main() -> Result<()> {
    let harmonic = SequenceSet::from_fn(|n| 1.0 / n, 512)?;
    let geometric = SequenceSet::from_fn(|n| 2f64.powf(-n), 40)?;
    let root = SequenceSet::from_fn(|n| 2f64.powf(-n.sqrt()), 512)?;
    for (name, s) in [("1/n", &harmonic), ("2^-n", &geometric), ("2^-sqrt(n)", &root)] {
        println!("{name:<11} decay {:?}", s.decay);
    }

    let w = omega_order(&[1.0, 0.5, 1.0 / 3.0, 0.25]);
    println!("ω-order of {{1/n : n <= 4}}: {:?} with δ {:?}", w.elements, w.delta_values);

    let sets = [
        ("1/n, n <= 1e4", PointSet::Line((1..=10_000).map(|n| 1.0 / n as f64).collect())),
        ("2^-n, n <= 40", PointSet::Line((1..=40).map(|n| 2f64.powi(-n)).collect())),
        ("Cantor depth 12", PointSet::Line(cantor_endpoints(12))),
    ];
    for (name, pts) in &sets {
        let a = assouad_estimate(pts, 0, 40)?;
        let b = box_dimension_estimate(pts, 0, 40)?;
        println!("{name:<16} assouad {:.3}  box {:.3}", a.estimate, b.estimate);
    }
    println!("log 2 / log 3 = {:.4}", 2f64.ln() / 3f64.ln());

    let rationals: Vec<f64> = (1..=20u32)
        .flat_map(|q| (0..=q).map(move |p| p as f64 / q as f64))
        .collect();
    let scaled: Vec<f64> = rationals.iter().map(|x| x * std::f64::consts::SQRT_2).collect();
    println!(
        "(C - C) ∩ (√2 C - √2 C) above 0: {} matches; (C - C) ∩ (C - C): {} matches",
        difference_set_intersection(&rationals, &scaled, 1e-12).len(),
        difference_set_intersection(&rationals, &rationals, 1e-12).len()
    );
    Ok(())
}
