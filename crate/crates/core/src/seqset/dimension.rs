use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite point cloud in the line or the plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointSet {
    Line(Vec<f64>),
    Plane(Vec<[f64; 2]>),
}

impl PointSet {
    pub fn dim(&self) -> usize {
        match self {
            PointSet::Line(_) => 1,
            PointSet::Plane(_) => 2,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            PointSet::Line(p) => p.len(),
            PointSet::Plane(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn scaled(&self, lambda: f64) -> PointSet {
        match self {
            PointSet::Line(p) => PointSet::Line(p.iter().map(|v| v * lambda).collect()),
            PointSet::Plane(p) => PointSet::Plane(p.iter().map(|[x, y]| [x * lambda, y * lambda]).collect()),
        }
    }

    /// Sorted, deduplicated copy.
    fn normalized(&self) -> PointSet {
        match self {
            PointSet::Line(p) => {
                let mut v: Vec<f64> = p.iter().copied().filter(|x| x.is_finite()).collect();
                v.sort_by(f64::total_cmp);
                v.dedup();
                PointSet::Line(v)
            }
            PointSet::Plane(p) => {
                let mut v: Vec<[f64; 2]> = p.iter().copied().filter(|q| q.iter().all(|c| c.is_finite())).collect();
                v.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
                v.dedup();
                PointSet::Plane(v)
            }
        }
    }

    /// Smallest sup-norm distance between distinct points.
    fn min_gap(&self) -> Option<f64> {
        match self {
            PointSet::Line(p) => p.windows(2).map(|w| w[1] - w[0]).min_by(f64::total_cmp),
            PointSet::Plane(p) => {
                let mut best = f64::INFINITY;
                for i in 0..p.len() {
                    for q in &p[i + 1..] {
                        let dx = q[0] - p[i][0];
                        if dx >= best {
                            break;
                        }
                        best = best.min(dx.max((q[1] - p[i][1]).abs()));
                    }
                }
                best.is_finite().then_some(best)
            }
        }
    }
}

/// Counts behind one scale of an estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleCount {
    /// Outer scale `R = 2^-j_outer` (for box counting, the box side).
    pub j_outer: u32,
    /// Inner scales; empty for box counting.
    pub j_inner: Vec<u32>,
    pub counts: Vec<usize>,
    /// Ball centre realizing the largest local slope at this scale.
    pub centre: Option<Vec<f64>>,
    pub slope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionEstimate {
    pub estimate: f64,
    pub scales_used: Vec<u32>,
    pub per_scale_counts: Vec<ScaleCount>,
    /// Finest admissible level: `2^-j_cap` is no smaller than the smallest gap.
    pub j_cap: u32,
}

/// Offsets of the two inner scales below the ball radius.
pub const INNER_COARSE: u32 = 6;
pub const INNER_FINE: u32 = 12;
const MAX_CENTRES_1D: usize = 512;
const MAX_CENTRES_2D: usize = 128;

fn j_cap(points: &PointSet) -> Result<u32> {
    let gap = points
        .min_gap()
        .ok_or_else(|| Error::Scale("fewer than two distinct points".into()))?;
    Ok((-gap.log2()).floor().clamp(0.0, 60.0) as u32)
}

fn check_range(j_min: u32, j_max: u32) -> Result<()> {
    if j_min >= j_max || j_max > 40 {
        return Err(Error::Precondition(format!(
            "scale range needs 0 <= j_min < j_max <= 40, got ({j_min}, {j_max})"
        )));
    }
    Ok(())
}

fn box_id(v: f64, j: u32) -> i64 {
    (v * 2f64.powi(j as i32)).floor() as i64
}

fn centres(n: usize, m: usize) -> Vec<usize> {
    if n <= m {
        return (0..n).collect();
    }
    let mut idx: Vec<usize> = (0..m).map(|i| ((i * (n - 1)) as f64 / (m - 1) as f64).round() as usize).collect();
    idx.dedup();
    idx
}

/// Assouad-type estimate from local two-scale covering slopes.
///
/// For each dyadic radius `R = 2^-j` and each ball `B(x, R)` centred at a
/// data point, the slope `log(N(B, R 2^-12) / N(B, R 2^-6)) / log(2^6)`
/// measures how the covering number grows between two scales well inside
/// the ball; the estimate is the supremum of these slopes, clipped to
/// `[0, ambient dimension]`. Scales finer than the smallest gap are skipped.
pub fn assouad_estimate(points: &PointSet, j_min: u32, j_max: u32) -> Result<DimensionEstimate> {
    check_range(j_min, j_max)?;
    let pts = points.normalized();
    let cap = j_cap(&pts)?;
    let top = j_max.min(cap);
    if top < j_min + INNER_FINE {
        return Err(Error::Scale(format!(
            "need j_min + {INNER_FINE} <= min(j_max, {cap}), got j_min = {j_min}"
        )));
    }
    let outer: Vec<u32> = (j_min..=top - INNER_FINE).collect();
    let per_scale: Vec<ScaleCount> = match &pts {
        PointSet::Line(p) => {
            let counter = LineCounter::new(p, top);
            outer
                .par_iter()
                .map(|&j| best_slope(j, &centres(p.len(), MAX_CENTRES_1D), |c, jr| counter.count(p[c], j, jr), |c| vec![p[c]]))
                .collect()
        }
        PointSet::Plane(p) => outer
            .par_iter()
            .map(|&j| {
                best_slope(
                    j,
                    &centres(p.len(), MAX_CENTRES_2D),
                    |c, jr| plane_ball_count(p, p[c], j, jr),
                    |c| p[c].to_vec(),
                )
            })
            .collect(),
    };
    let admissible: Vec<&ScaleCount> = per_scale.iter().filter(|s| s.counts[1] >= 2).collect();
    if admissible.is_empty() {
        return Err(Error::Scale("no ball meets two boxes at the inner scales".into()));
    }
    let dim = pts.dim() as f64;
    let estimate = admissible.iter().map(|s| s.slope).fold(0.0, f64::max).clamp(0.0, dim);
    Ok(DimensionEstimate {
        estimate,
        scales_used: admissible.iter().map(|s| s.j_outer).collect(),
        per_scale_counts: per_scale,
        j_cap: cap,
    })
}

fn best_slope(
    j: u32,
    centre_idx: &[usize],
    count: impl Fn(usize, u32) -> usize,
    coords: impl Fn(usize) -> Vec<f64>,
) -> ScaleCount {
    let (jc, jf) = (j + INNER_COARSE, j + INNER_FINE);
    let mut best: Option<(f64, usize, usize, usize)> = None;
    for &c in centre_idx {
        let (nc, nf) = (count(c, jc), count(c, jf));
        let slope = ((nf as f64) / (nc as f64)).log2() / (INNER_FINE - INNER_COARSE) as f64;
        if best.is_none_or(|b| slope > b.0) {
            best = Some((slope, c, nc, nf));
        }
    }
    let (slope, c, nc, nf) = best.expect("at least one centre");
    ScaleCount {
        j_outer: j,
        j_inner: vec![jc, jf],
        counts: vec![nc, nf],
        centre: Some(coords(c)),
        slope,
    }
}

/// Prefix counts of box changes along sorted points, one array per level.
struct LineCounter<'a> {
    pts: &'a [f64],
    starts: Vec<Vec<u32>>,
}

impl<'a> LineCounter<'a> {
    fn new(pts: &'a [f64], top: u32) -> Self {
        let starts = (0..=top)
            .map(|j| {
                let mut acc = 0u32;
                let mut prev = None;
                pts.iter()
                    .map(|&v| {
                        let id = box_id(v, j);
                        if prev != Some(id) {
                            acc += 1;
                        }
                        prev = Some(id);
                        acc
                    })
                    .collect()
            })
            .collect();
        LineCounter { pts, starts }
    }

    /// Boxes of side `2^-j_box` met by the points in `[x - 2^-j, x + 2^-j]`.
    fn count(&self, x: f64, j: u32, j_box: u32) -> usize {
        let r = 2f64.powi(-(j as i32));
        let lo = self.pts.partition_point(|&v| v < x - r);
        let hi = self.pts.partition_point(|&v| v <= x + r);
        if lo >= hi {
            return 0;
        }
        let s = &self.starts[j_box as usize];
        (s[hi - 1] - s[lo] + 1) as usize
    }
}

fn plane_ball_count(pts: &[[f64; 2]], c: [f64; 2], j: u32, j_box: u32) -> usize {
    let r = 2f64.powi(-(j as i32));
    let lo = pts.partition_point(|p| p[0] < c[0] - r);
    let boxes: HashSet<(i64, i64)> = pts[lo..]
        .iter()
        .take_while(|p| p[0] <= c[0] + r)
        .filter(|p| (p[1] - c[1]).abs() <= r)
        .map(|p| (box_id(p[0], j_box), box_id(p[1], j_box)))
        .collect();
    boxes.len()
}

fn global_count(pts: &PointSet, j: u32) -> usize {
    match pts {
        PointSet::Line(p) => {
            let mut ids: Vec<i64> = p.iter().map(|&v| box_id(v, j)).collect();
            ids.dedup();
            ids.len()
        }
        PointSet::Plane(p) => p
            .iter()
            .map(|q| (box_id(q[0], j), box_id(q[1], j)))
            .collect::<HashSet<_>>()
            .len(),
    }
}

/// Box-counting dimension: least-squares slope of `log N(2^-j)` against
/// `j log 2` over `j_min..=min(j_max, j_cap)`.
pub fn box_dimension_estimate(points: &PointSet, j_min: u32, j_max: u32) -> Result<DimensionEstimate> {
    check_range(j_min, j_max)?;
    let pts = points.normalized();
    let cap = j_cap(&pts)?;
    let top = j_max.min(cap);
    if top < j_min + 1 {
        return Err(Error::Scale(format!(
            "need at least two box scales in [{j_min}, min({j_max}, {cap})]"
        )));
    }
    let js: Vec<u32> = (j_min..=top).collect();
    let counts: Vec<usize> = js.par_iter().map(|&j| global_count(&pts, j)).collect();
    if counts.iter().all(|&n| n < 2) {
        return Err(Error::Scale("every box scale sees a single box".into()));
    }
    let xs: Vec<f64> = js.iter().map(|&j| j as f64).collect();
    let ys: Vec<f64> = counts.iter().map(|&n| (n as f64).log2()).collect();
    let xbar = xs.iter().sum::<f64>() / xs.len() as f64;
    let ybar = ys.iter().sum::<f64>() / ys.len() as f64;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    let per_scale_counts = js
        .iter()
        .zip(&counts)
        .map(|(&j, &n)| ScaleCount {
            j_outer: j,
            j_inner: Vec::new(),
            counts: vec![n],
            centre: None,
            slope: f64::NAN,
        })
        .collect();
    Ok(DimensionEstimate {
        estimate: (sxy / sxx).clamp(0.0, pts.dim() as f64),
        scales_used: js,
        per_scale_counts,
        j_cap: cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_has_no_scale() {
        let p = PointSet::Line(vec![0.5]);
        assert!(matches!(assouad_estimate(&p, 0, 40), Err(Error::Scale(_))));
        assert!(matches!(box_dimension_estimate(&p, 0, 40), Err(Error::Scale(_))));
    }

    #[test]
    fn uniform_grid_is_one_dimensional() {
        let p = PointSet::Line((0..4096).map(|i| i as f64 / 4095.0).collect());
        let b = box_dimension_estimate(&p, 3, 40).unwrap();
        assert!((b.estimate - 1.0).abs() < 0.05, "{}", b.estimate);
    }

    #[test]
    fn ball_counts_match_brute_force() {
        let pts: Vec<f64> = (1..=300).map(|n| 1.0 / n as f64).collect();
        let mut sorted = pts.clone();
        sorted.sort_by(f64::total_cmp);
        let counter = LineCounter::new(&sorted, 20);
        for &c in sorted.iter().step_by(17) {
            for (j, jb) in [(2, 7), (4, 9), (6, 15)] {
                let r = 2f64.powi(-j);
                let mut ids: Vec<i64> = sorted
                    .iter()
                    .filter(|&&v| (v - c).abs() <= r)
                    .map(|&v| box_id(v, jb))
                    .collect();
                ids.dedup();
                assert_eq!(counter.count(c, j as u32, jb), ids.len());
            }
        }
    }
}
