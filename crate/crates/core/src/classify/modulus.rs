use serde::{Deserialize, Serialize};

use crate::config::ToleranceConfig;
use crate::error::Result;
use crate::interval::Interval;
use crate::model::FunctionModel;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulusRow {
    pub eps: f64,
    /// Largest grid lag `δ` with every `|f(t) - f(t')| < eps` for `|t - t'| <= δ`.
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModulusReport {
    pub rows: Vec<ModulusRow>,
    pub grid_n: usize,
    /// `δ(ε)` hits zero, or `δ(ε)/ε` at the finest ε is below 1/8 of its
    /// value at the coarsest.
    pub collapse: bool,
}

pub const MODULUS_LEVELS: i32 = 8;
const MIN_POINTS: usize = 4096;

/// Tabulates `δ(ε)` for `ε = 2^-1, ..., 2^-8` on a uniform grid of `I`.
pub fn uniform_continuity_modulus(f: &FunctionModel, i: &Interval, cfg: &ToleranceConfig) -> Result<ModulusReport> {
    f.require_within(i)?;
    let n = cfg.grid_n.max(MIN_POINTS);
    let xs = i.grid(n);
    let ys: Vec<f64> = xs.iter().map(|&x| f.eval_raw(x)).collect();
    let spacing = (xs[n - 1] - xs[0]) / (n - 1) as f64;
    let epsilons: Vec<f64> = (1..=MODULUS_LEVELS).map(|j| 2f64.powi(-j)).collect();
    let coarsest = epsilons[0];
    // running[l-1] = sup gap over lags <= l, computed until it reaches the coarsest ε.
    let mut running = Vec::new();
    let mut sup = 0.0f64;
    for lag in 1..n {
        let gap = (0..n - lag).fold(0.0f64, |m, a| m.max((ys[a + lag] - ys[a]).abs()));
        sup = sup.max(gap);
        running.push(sup);
        if sup >= coarsest {
            break;
        }
    }
    let rows: Vec<ModulusRow> = epsilons
        .iter()
        .map(|&eps| {
            let lags = running.partition_point(|&g| g < eps);
            ModulusRow {
                eps,
                delta: lags as f64 * spacing,
            }
        })
        .collect();
    let first = rows[0].delta / rows[0].eps;
    let last = rows[rows.len() - 1].delta / rows[rows.len() - 1].eps;
    let collapse = rows.iter().any(|r| r.delta == 0.0) || last * 8.0 < first;
    Ok(ModulusReport { rows, grid_n: n, collapse })
}
