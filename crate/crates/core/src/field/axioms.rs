use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::structure::{field_add, field_mul, FieldStructure};
use crate::config::ToleranceConfig;
use crate::error::{Error, Result};

/// Residual bound for the algebraic identities, in `τ` coordinates.
pub const AXIOM_TOL: f64 = 1e-6;
/// Slack allowed before an order comparison counts as a violation.
pub const ORDER_TOL: f64 = 1e-8;
pub const MIN_TRIALS: usize = 100;
/// Trials draw table points with `|τ| <= SAMPLE_BOUND`.
pub const SAMPLE_BOUND: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub points: Vec<f64>,
    pub residual: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct AxiomResiduals {
    pub add_commutative: f64,
    pub mul_commutative: f64,
    pub add_associative: f64,
    pub mul_associative: f64,
    pub distributive: f64,
    pub add_identity: f64,
    pub mul_identity: f64,
    pub add_inverse: f64,
    pub mul_inverse: f64,
    pub add_homomorphism: f64,
    pub mul_homomorphism: f64,
}

impl AxiomResiduals {
    pub fn max(&self) -> f64 {
        [
            self.add_commutative,
            self.mul_commutative,
            self.add_associative,
            self.mul_associative,
            self.distributive,
            self.add_identity,
            self.mul_identity,
            self.add_inverse,
            self.mul_inverse,
            self.add_homomorphism,
            self.mul_homomorphism,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub trials: usize,
    pub seed: u64,
    pub residuals: AxiomResiduals,
    pub max_residual: f64,
    pub order_checks: usize,
    pub order_violations: usize,
    /// Inverse checks skipped because the inverse left the `τ` range.
    pub skipped_inverses: usize,
    pub failures: Vec<AxiomFailure>,
    pub passed: bool,
}

/// Randomized check of the ordered-field axioms on table points of `F`.
pub fn verify_field_axioms(fs: &FieldStructure, trials: usize, cfg: &ToleranceConfig) -> Result<AxiomReport> {
    if trials < MIN_TRIALS {
        return Err(Error::Precondition(format!("need at least {MIN_TRIALS} trials, got {trials}")));
    }
    let pool: Vec<f64> = fs.table.iter().filter(|p| p.tau.abs() <= SAMPLE_BOUND).map(|p| p.x).collect();
    if pool.len() < 3 {
        return Err(Error::Precondition("too few table points for axiom trials".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut res = AxiomResiduals::default();
    let mut failures = Vec::new();
    let (mut order_checks, mut order_violations, mut skipped) = (0, 0, 0);
    let zero = fs.zero();
    let one = fs.one();

    for _ in 0..trials {
        let x = *pool.choose(&mut rng).expect("non-empty");
        let y = *pool.choose(&mut rng).expect("non-empty");
        let z = *pool.choose(&mut rng).expect("non-empty");
        let mut record = |name: &str, slot: &mut f64, value: Result<f64>, pts: &[f64]| match value {
            Ok(r) => {
                *slot = slot.max(r);
                if !(r <= AXIOM_TOL) {
                    failures.push(AxiomFailure { axiom: name.into(), points: pts.to_vec(), residual: Some(r), error: None });
                }
            }
            Err(e) => failures.push(AxiomFailure {
                axiom: name.into(),
                points: pts.to_vec(),
                residual: None,
                error: Some(e.to_string()),
            }),
        };
        let t = |p: f64| fs.tau(p);
        let add = |p: f64, q: f64| field_add(fs, p, q);
        let mul = |p: f64, q: f64| field_mul(fs, p, q);
        let gap = |p: Result<f64>, q: Result<f64>| -> Result<f64> { Ok((t(p?)? - t(q?)?).abs()) };

        record("add_commutative", &mut res.add_commutative, gap(add(x, y), add(y, x)), &[x, y]);
        record("mul_commutative", &mut res.mul_commutative, gap(mul(x, y), mul(y, x)), &[x, y]);
        record(
            "add_associative",
            &mut res.add_associative,
            gap(add(x, y).and_then(|s| add(s, z)), add(y, z).and_then(|s| add(x, s))),
            &[x, y, z],
        );
        record(
            "mul_associative",
            &mut res.mul_associative,
            gap(mul(x, y).and_then(|s| mul(s, z)), mul(y, z).and_then(|s| mul(x, s))),
            &[x, y, z],
        );
        record(
            "distributive",
            &mut res.distributive,
            gap(
                add(y, z).and_then(|s| mul(x, s)),
                mul(x, y).and_then(|p| mul(x, z).and_then(|q| add(p, q))),
            ),
            &[x, y, z],
        );
        record("add_identity", &mut res.add_identity, gap(add(x, zero), Ok(x)), &[x]);
        record("mul_identity", &mut res.mul_identity, gap(mul(x, one), Ok(x)), &[x]);
        let neg = t(x).and_then(|tx| fs.tau_inv(-tx));
        record(
            "add_inverse",
            &mut res.add_inverse,
            neg.and_then(|n| add(x, n)).and_then(t).map(f64::abs),
            &[x],
        );
        if let Ok(tx) = t(x) {
            if tx != 0.0 {
                match fs.tau_inv(1.0 / tx) {
                    Ok(inv) => record(
                        "mul_inverse",
                        &mut res.mul_inverse,
                        mul(x, inv).and_then(t).map(|v| (v - 1.0).abs()),
                        &[x],
                    ),
                    Err(Error::Range { .. }) => skipped += 1,
                    Err(e) => record("mul_inverse", &mut res.mul_inverse, Err(e), &[x]),
                }
            }
        }
        let hom = |op: Result<f64>, expect: Result<f64>| -> Result<f64> { Ok((t(op?)? - expect?).abs()) };
        record(
            "add_homomorphism",
            &mut res.add_homomorphism,
            hom(add(x, y), t(x).and_then(|a| t(y).map(|b| a + b))),
            &[x, y],
        );
        record(
            "mul_homomorphism",
            &mut res.mul_homomorphism,
            hom(mul(x, y), t(x).and_then(|a| t(y).map(|b| a * b))),
            &[x, y],
        );

        // x < y implies x ⊕ z < y ⊕ z; 0 < x, 0 < y implies 0 < x ⊗ y.
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        if lo < hi {
            order_checks += 1;
            match (add(lo, z), add(hi, z)) {
                (Ok(p), Ok(q)) if p - q <= ORDER_TOL => {}
                (p, q) => {
                    order_violations += 1;
                    failures.push(AxiomFailure {
                        axiom: "order_add".into(),
                        points: vec![lo, hi, z],
                        residual: p.as_ref().ok().zip(q.as_ref().ok()).map(|(p, q)| p - q),
                        error: p.err().or(q.err()).map(|e| e.to_string()),
                    });
                }
            }
        }
        if x > zero && y > zero {
            order_checks += 1;
            match mul(x, y) {
                Ok(p) if p > zero - ORDER_TOL => {}
                r => {
                    order_violations += 1;
                    failures.push(AxiomFailure {
                        axiom: "order_mul".into(),
                        points: vec![x, y],
                        residual: r.as_ref().ok().map(|p| zero - p),
                        error: r.err().map(|e| e.to_string()),
                    });
                }
            }
        }
    }
    let max_residual = res.max();
    Ok(AxiomReport {
        trials,
        seed: cfg.seed,
        residuals: res,
        max_residual,
        order_checks,
        order_violations,
        skipped_inverses: skipped,
        passed: failures.is_empty(),
        failures,
    })
}
