use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::ToleranceConfig;
use crate::error::Result;
use crate::interval::Interval;
use crate::model::FunctionModel;

/// `max |(f(x) + f(y))/2 - f((x + y)/2)|` over all grid pairs of `J`.
pub fn midpoint_affine_defect(f: &FunctionModel, j: &Interval, grid_n: usize) -> Result<f64> {
    f.require_within(j)?;
    Ok(defect_unchecked(f, j, grid_n))
}

fn defect_unchecked(f: &FunctionModel, j: &Interval, grid_n: usize) -> f64 {
    let xs = j.grid(grid_n.max(2));
    let ys: Vec<f64> = xs.iter().map(|&x| f.eval_raw(x)).collect();
    (0..xs.len())
        .into_par_iter()
        .map(|a| {
            (a + 1..xs.len()).fold(0.0f64, |m, b| {
                let mid = f.eval_raw(0.5 * (xs[a] + xs[b]));
                m.max((0.5 * (ys[a] + ys[b]) - mid).abs())
            })
        })
        .reduce(|| 0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineRegions {
    pub regions: Vec<Interval>,
    pub coverage: f64,
    pub depth: u32,
}

pub const DEFAULT_AFFINE_DEPTH: u32 = 12;
/// Grid size of the per-piece defect test.
pub const LEAF_POINTS: usize = 16;

/// Dyadic pieces of `I` (down to `depth`) on which `f` is affine at
/// resolution; adjacent pieces merge while the union stays affine.
pub fn locally_affine_regions(f: &FunctionModel, i: &Interval, depth: u32, cfg: &ToleranceConfig) -> Result<AffineRegions> {
    f.require_within(i)?;
    let mut leaves = affine_leaves(f, i, *i, 0, depth, cfg.eps_value);
    leaves.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut regions: Vec<Interval> = Vec::new();
    for leaf in leaves {
        if let Some(last) = regions.last_mut() {
            if last.hi == leaf.lo {
                if let Ok(union) = i.sub(last.lo, leaf.hi) {
                    if defect_unchecked(f, &union, LEAF_POINTS) <= cfg.eps_value {
                        *last = union;
                        continue;
                    }
                }
            }
        }
        regions.push(leaf);
    }
    let covered = regions.iter().fold(0.0, |acc, r| acc + r.len());
    Ok(AffineRegions {
        coverage: (covered / i.len()).clamp(0.0, 1.0),
        regions,
        depth,
    })
}

fn affine_leaves(f: &FunctionModel, whole: &Interval, node: Interval, d: u32, depth: u32, eps: f64) -> Vec<Interval> {
    if defect_unchecked(f, &node, LEAF_POINTS) <= eps {
        return vec![node];
    }
    if d >= depth {
        return Vec::new();
    }
    let mid = node.lo + node.len() / 2.0;
    let (Ok(left), Ok(right)) = (whole.sub(node.lo, mid), whole.sub(mid, node.hi)) else {
        return Vec::new();
    };
    let (mut a, b) = rayon::join(
        || affine_leaves(f, whole, left, d + 1, depth, eps),
        || affine_leaves(f, whole, right, d + 1, depth, eps),
    );
    a.extend(b);
    a
}
