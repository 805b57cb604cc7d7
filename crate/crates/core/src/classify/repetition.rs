use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::ToleranceConfig;
use crate::error::Result;
use crate::interval::Interval;
use crate::model::FunctionModel;

/// Points `x < y` whose increment functions agree on `[0, delta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RepetitionWitness {
    pub x: f64,
    pub y: f64,
    pub delta: f64,
    pub max_residual: f64,
}

/// Number of ε samples in `[0, delta)`.
pub const EPS_GRID: usize = 64;
const MAX_X_POINTS: usize = 256;

/// Searches separations `y - x = |J| 2^-j` (`j >= 2`, largest first, down to
/// `min_delta`) for an `x` with `|f(x+ε) - f(x) - f(y+ε) + f(y)| <= eps_value`
/// on an ε-grid of `[0, delta)`, `delta = min(min_delta, (y - x)/2)`.
///
/// `None` means no witness at this resolution.
pub fn find_repetition_witness(
    f: &FunctionModel,
    j: &Interval,
    min_delta: f64,
    cfg: &ToleranceConfig,
) -> Result<Option<RepetitionWitness>> {
    f.require_within(j)?;
    if !(min_delta > 0.0) {
        return Ok(None);
    }
    let xs = j.grid(cfg.grid_n.min(MAX_X_POINTS));
    let mut level = 2;
    loop {
        let offset = j.len() * 2f64.powi(-level);
        if offset < min_delta {
            return Ok(None);
        }
        let delta = min_delta.min(offset / 2.0);
        let eps: Vec<f64> = (0..EPS_GRID).map(|i| delta * i as f64 / EPS_GRID as f64).collect();
        let last = eps[EPS_GRID - 1];
        let hit = xs.par_iter().find_map_first(|&x| {
            let y = x + offset;
            if !j.contains(y + last) {
                return None;
            }
            let (fx, fy) = (f.eval_raw(x), f.eval_raw(y));
            let mut worst = 0.0f64;
            for &e in &eps {
                let r = (f.eval_raw(x + e) - fx - f.eval_raw(y + e) + fy).abs();
                if !(r <= cfg.eps_value) {
                    return None;
                }
                worst = worst.max(r);
            }
            Some(RepetitionWitness {
                x,
                y,
                delta,
                max_residual: worst,
            })
        });
        if hit.is_some() {
            return Ok(hit);
        }
        level += 1;
    }
}
