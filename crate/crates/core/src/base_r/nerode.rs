use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::FunctionModel;

pub const PROBES: usize = 64;
pub const MAX_NERODE_P: u32 = 12;
pub const DEFAULT_SAMPLES: usize = 1 << 14;
pub const TREND_LABEL: &str = "empirical evidence";

/// A subset of `[0, 1)^n` queried through sample points and box tests.
pub trait RealSet: Sync {
    fn dim(&self) -> usize;
    /// A random point of the set, `None` when the set is empty.
    fn sample(&self, rng: &mut ChaCha8Rng) -> Option<Vec<f64>>;
    /// Whether the half-open cube `lo + [0, side)^n` meets the set.
    fn meets_box(&self, lo: &[f64], side: f64) -> bool;
}

#[derive(Debug, Clone, Copy)]
pub struct FullCube(pub usize);

impl RealSet for FullCube {
    fn dim(&self) -> usize {
        self.0
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Option<Vec<f64>> {
        Some((0..self.0).map(|_| rng.gen::<f64>()).collect())
    }

    fn meets_box(&self, lo: &[f64], side: f64) -> bool {
        lo.iter().all(|&l| l < 1.0 && l + side > 0.0)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EmptySet(pub usize);

impl RealSet for EmptySet {
    fn dim(&self) -> usize {
        self.0
    }

    fn sample(&self, _: &mut ChaCha8Rng) -> Option<Vec<f64>> {
        None
    }

    fn meets_box(&self, _: &[f64], _: f64) -> bool {
        false
    }
}

/// Graph of a monotone function restricted to `[0, 1)^2`.
#[derive(Debug, Clone)]
pub struct FunctionGraph {
    f: FunctionModel,
    increasing: bool,
}

impl FunctionGraph {
    pub fn new(f: FunctionModel) -> Result<Self> {
        let vals: Vec<f64> = (0..=256).map(|i| f.eval_raw(i as f64 / 256.0)).collect();
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::Precondition("graph function must be finite on [0, 1]".into()));
        }
        let inc = vals.windows(2).all(|w| w[1] >= w[0]);
        let dec = vals.windows(2).all(|w| w[1] <= w[0]);
        if !inc && !dec {
            return Err(Error::Precondition("graph function must be monotone on [0, 1]".into()));
        }
        Ok(FunctionGraph { f, increasing: inc })
    }
}

impl RealSet for FunctionGraph {
    fn dim(&self) -> usize {
        2
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Option<Vec<f64>> {
        // Rejection keeps the point inside the unit square.
        for _ in 0..64 {
            let x: f64 = rng.gen();
            let y = self.f.eval_raw(x);
            if (0.0..1.0).contains(&y) {
                return Some(vec![x, y]);
            }
        }
        None
    }

    fn meets_box(&self, lo: &[f64], side: f64) -> bool {
        let (x0, y0) = (lo[0], lo[1]);
        let (y1, fa, fb) = (y0 + side, self.f.eval_raw(x0), self.f.eval_raw(x0 + side));
        if fa == fb {
            y0 <= fa && fa < y1
        } else if self.increasing {
            fa < y1 && fb > y0
        } else {
            fa >= y0 && fb < y1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NerodeCount {
    pub p: u32,
    pub prefixes: usize,
    pub classes: usize,
}

struct Probe {
    len: u32,
    offset: Vec<u64>,
}

/// Largest usable prefix and probe length in base `r`: prefix plus probe
/// digits must stay within double precision.
pub fn nerode_depth(r: u32) -> u32 {
    MAX_NERODE_P.min(super::expansion::max_precision(r) / 2)
}

/// Number of distinct acceptance vectors over a fixed probe set among the
/// digit prefixes of length at most `p` reached by sampled points.
///
/// Probe `j` has length `1 + j mod D` with `D = nerode_depth(r)`: a block of
/// digits read from a seeded set point after its first `1 + (j / D) mod D`
/// digits. A finite word is accepted when its cube meets the set. Neither
/// the samples nor the probes depend on `p`, so the prefix sets are nested
/// and the count is nondecreasing in `p`. Probes can only merge classes, so
/// the count is a lower bound on the true residual count.
pub fn nerode_residual_count(set: &dyn RealSet, r: u32, p: u32, samples: usize, seed: u64) -> Result<NerodeCount> {
    super::word::check_base(r)?;
    let n = set.dim();
    if !(1..=2).contains(&n) {
        return Err(Error::Precondition(format!("arity must be 1 or 2, got {n}")));
    }
    let depth = nerode_depth(r);
    if !(1..=depth).contains(&p) {
        return Err(Error::Precondition(format!("p must be in 1..={depth} for base {r}, got {p}")));
    }
    let rf = r as f64;
    let index = |x: f64, scale: f64| ((x * scale).floor().max(0.0) as u64).min(scale as u64 - 1);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Vec<f64>> = (0..samples).filter_map(|_| set.sample(&mut rng)).collect();
    let mut prefixes: Vec<(u32, Vec<u64>)> = (1..=p)
        .flat_map(|len| {
            let scale = rf.powi(len as i32);
            points.iter().map(move |pt| (len, pt.iter().map(|&x| index(x, scale)).collect()))
        })
        .collect();
    prefixes.sort_unstable();
    prefixes.dedup();
    if prefixes.len() < 2 {
        return Err(Error::Sample(format!("{} distinct prefixes at p = {p}; need at least 2", prefixes.len())));
    }

    let mut probe_rng = ChaCha8Rng::seed_from_u64(seed);
    probe_rng.set_stream(1);
    let probes: Vec<Probe> = (0..PROBES as u32)
        .filter_map(|j| {
            let len = 1 + j % depth;
            let skip = rf.powi((1 + (j / depth) % depth) as i32);
            let pt = set.sample(&mut probe_rng)?;
            let rl = rf.powi(len as i32);
            let offset = pt.iter().map(|&x| index((x * skip).fract(), rl)).collect();
            Some(Probe { len, offset })
        })
        .collect();

    let mut sigs: Vec<u64> = prefixes
        .par_iter()
        .map(|(len, u)| {
            let rp = rf.powi(*len as i32);
            let mut lo = vec![0.0; n];
            probes.iter().enumerate().fold(0u64, |acc, (j, pr)| {
                let rl = rf.powi(pr.len as i32);
                for k in 0..n {
                    lo[k] = (u[k] as f64 + pr.offset[k] as f64 / rl) / rp;
                }
                if set.meets_box(&lo, 1.0 / (rp * rl)) {
                    acc | (1 << j)
                } else {
                    acc
                }
            })
        })
        .collect();
    sigs.sort_unstable();
    sigs.dedup();
    Ok(NerodeCount { p, prefixes: prefixes.len(), classes: sigs.len() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Bounded,
    Growing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendReport {
    /// `None` when the last three counts are neither constant nor strictly increasing.
    pub verdict: Option<Trend>,
    pub counts: Vec<NerodeCount>,
    pub label: String,
}

/// Bounded when the count is constant on the last three `p`, growing when
/// it strictly increases there.
pub fn recognizability_trend(
    set: &dyn RealSet,
    r: u32,
    p_range: RangeInclusive<u32>,
    samples: usize,
    seed: u64,
) -> Result<TrendReport> {
    if p_range.clone().count() < 3 {
        return Err(Error::Precondition("trend needs at least three values of p".into()));
    }
    let empty = set.sample(&mut ChaCha8Rng::seed_from_u64(seed)).is_none();
    let counts = p_range
        .map(|p| {
            if empty {
                Ok(NerodeCount { p, prefixes: 0, classes: 1 })
            } else {
                nerode_residual_count(set, r, p, samples, seed)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let tail: Vec<usize> = counts[counts.len() - 3..].iter().map(|c| c.classes).collect();
    let verdict = if tail.windows(2).all(|w| w[0] == w[1]) {
        Some(Trend::Bounded)
    } else if tail.windows(2).all(|w| w[0] < w[1]) {
        Some(Trend::Growing)
    } else {
        None
    };
    Ok(TrendReport { verdict, counts, label: TREND_LABEL.into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_function_spec;

    fn graph(spec: &str) -> FunctionGraph {
        FunctionGraph::new(parse_function_spec(spec).unwrap()).unwrap()
    }

    #[test]
    fn identity_graph_has_few_classes() {
        let g = graph("affine:1,0 on (-1,2)");
        let c: Vec<usize> = (4..=10)
            .map(|p| nerode_residual_count(&g, 2, p, DEFAULT_SAMPLES, 0).unwrap().classes)
            .collect();
        assert!(c.iter().all(|&k| k == c[0] && k <= 4), "{c:?}");
    }

    #[test]
    fn trends() {
        let half = recognizability_trend(&graph("affine:0.5,0 on (-1,2)"), 2, 4..=10, DEFAULT_SAMPLES, 0).unwrap();
        assert_eq!(half.verdict, Some(Trend::Bounded));
        let sq = recognizability_trend(&graph("poly:[1,0,0] on (-1,2)"), 2, 4..=10, DEFAULT_SAMPLES, 0).unwrap();
        assert_eq!(sq.verdict, Some(Trend::Growing));
        assert!(sq.counts.windows(2).all(|w| w[0].classes < w[1].classes));
        let empty = recognizability_trend(&EmptySet(2), 2, 4..=10, DEFAULT_SAMPLES, 0).unwrap();
        assert_eq!(empty.verdict, Some(Trend::Bounded));
        assert!(empty.counts.iter().all(|c| c.classes == 1));
    }

    #[test]
    fn full_square_is_one_class() {
        for (r, p) in [(2, 6), (3, 4), (10, 2)] {
            assert!(p <= nerode_depth(r));
            assert_eq!(nerode_residual_count(&FullCube(2), r, p, 4096, 3).unwrap().classes, 1);
        }
        assert!(matches!(nerode_residual_count(&EmptySet(1), 2, 4, 100, 0), Err(Error::Sample(_))));
        assert_eq!(nerode_depth(10), 7);
        assert!(matches!(nerode_residual_count(&FullCube(1), 10, 8, 100, 0), Err(Error::Precondition(_))));
    }
}
