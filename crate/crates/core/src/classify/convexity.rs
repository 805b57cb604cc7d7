use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::model::FunctionModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convexity {
    StrictlyConvex,
    StrictlyConcave,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub class: Convexity,
    /// Smallest `slope(x', y') - slope(x, y)` seen.
    pub min_slack: f64,
    /// Largest such slack.
    pub max_slack: f64,
    pub quadruples: usize,
    pub exhaustive: bool,
}

pub const MAX_QUADRUPLES: usize = 1_000_000;

/// Four-point slope test over grid quadruples `x < y <= x' < y'`.
///
/// All quadruples are used when there are at most [`MAX_QUADRUPLES`];
/// otherwise that many are drawn with the configured seed, together with
/// every run of consecutive grid points.
pub fn strict_convexity_test(f: &FunctionModel, j: &Interval, grid_n: usize, cfg: &ToleranceConfig) -> Result<ConvexityReport> {
    if grid_n < 8 {
        return Err(Error::Precondition(format!("grid_n must be >= 8, got {grid_n}")));
    }
    f.require_within(j)?;
    let xs = j.grid(grid_n);
    let ys: Vec<f64> = xs.iter().map(|&x| f.eval_raw(x)).collect();
    let slope = |a: usize, b: usize| (ys[b] - ys[a]) / (xs[b] - xs[a]);
    let n = grid_n as u128;
    let total = n * (n - 1) * (n - 2) * (n - 3) / 24 + n * (n - 1) * (n - 2) / 6;
    let mut acc = (f64::INFINITY, f64::NEG_INFINITY, 0usize);
    let mut visit = |i: usize, k: usize, l: usize, m: usize| {
        let s = slope(l, m) - slope(i, k);
        acc.0 = acc.0.min(s);
        acc.1 = acc.1.max(s);
        acc.2 += 1;
    };
    let exhaustive = total <= MAX_QUADRUPLES as u128;
    if exhaustive {
        for a in 0..grid_n {
            for b in a + 1..grid_n {
                for c in b..grid_n {
                    for d in c + 1..grid_n {
                        visit(a, b, c, d);
                    }
                }
            }
        }
    } else {
        for a in 0..grid_n - 2 {
            visit(a, a + 1, a + 1, a + 2);
        }
        for a in 0..grid_n - 3 {
            visit(a, a + 1, a + 2, a + 3);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut drawn = 0;
        while drawn < MAX_QUADRUPLES {
            let mut q = [0usize; 4];
            for v in &mut q {
                *v = rng.gen_range(0..grid_n);
            }
            q.sort_unstable();
            if q[0] == q[1] || q[2] == q[3] {
                continue;
            }
            visit(q[0], q[1], q[2], q[3]);
            drawn += 1;
        }
    }
    let (min_slack, max_slack, quadruples) = acc;
    let class = if min_slack > cfg.eps_value {
        Convexity::StrictlyConvex
    } else if max_slack < -cfg.eps_value {
        Convexity::StrictlyConcave
    } else {
        Convexity::Neither
    };
    Ok(ConvexityReport {
        class,
        min_slack,
        max_slack,
        quadruples,
        exhaustive,
    })
}
