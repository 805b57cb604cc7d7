use serde::{Deserialize, Serialize};

use crate::classify::midpoint_affine_defect;
use crate::config::ToleranceConfig;
use crate::deriv::slope;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::model::FunctionModel;

/// Which branch of the endpoint selection produced `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    /// `f'` strictly monotone on a scanned run of at least 8 grid points.
    StrictlyMonotone,
    /// No such run: `a`, `b` are the extreme points of `f'`; `E` is expected
    /// to have empty interior and the field checks to fail.
    NowhereMonotone,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub case: Case,
    pub case_ii_warning: bool,
    /// Chosen endpoints in the original coordinates.
    pub a0: f64,
    pub b0: f64,
    pub fprime_a: f64,
    pub fprime_b: f64,
    pub flipped: bool,
    /// Subtracted slope `q = q_num / q_den`; zero when skipped.
    pub q: f64,
    pub q_num: i64,
    pub q_den: u64,
    pub q_skipped: bool,
    /// Largest point of `[a, b]` where the flipped derivative equals `q`.
    pub c: f64,
    pub n_scale: u32,
    /// Smallest point of `[c, b]` where the scaled derivative reaches 1.
    pub d: f64,
    pub trimmed: bool,
    /// Grid check of `f'(0) ≈ 0`, `f'(b) ≈ 1`, `0 <= f' <= 1`, `f` increasing.
    pub invariants_hold: bool,
}

/// `F(t) = N (s f(t + c) - s f(c) - q t)` on `[0, b]` with `F'(0) = 0`, `F'(b) = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedFunction {
    /// The model on its full translated domain, which contains a stencil
    /// neighbourhood of `[0, b]`.
    pub f: FunctionModel,
    pub b: f64,
    pub provenance: Provenance,
}

impl NormalizedFunction {
    pub fn slope(&self, x: f64, cfg: &ToleranceConfig) -> Result<f64> {
        slope(&self.f, x, cfg)
    }

    pub fn interval(&self) -> Interval {
        Interval::closed(0.0, self.b).expect("b > 0")
    }
}

pub const Q_DENOMINATOR: u64 = 1 << 16;
const MIN_RUN: usize = 8;

/// Normalizes a non-affine C¹ model on `I`.
pub fn normalize(f: &FunctionModel, i: &Interval, cfg: &ToleranceConfig) -> Result<NormalizedFunction> {
    cfg.validate()?;
    f.require_within(i)?;
    let defect = midpoint_affine_defect(f, i, 64)?;
    if defect <= cfg.eps_value {
        return Err(Error::AffineInput { defect });
    }
    let pts: Vec<(f64, f64)> = i
        .grid(cfg.grid_n)
        .into_iter()
        .filter_map(|x| slope(f, x, cfg).ok().map(|d| (x, d)))
        .collect();
    let (dmin, dmax) = pts
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.1), b.max(p.1)));
    if pts.len() < 2 || !(dmax - dmin > cfg.eps_deriv) {
        return Err(Error::Monotonicity);
    }

    let (case, lo_idx, hi_idx, s) = match longest_run(&pts) {
        Some((lo, hi, increasing)) => (Case::StrictlyMonotone, lo, hi, if increasing { 1.0 } else { -1.0 }),
        None => {
            let arg = |better: fn(f64, f64) -> bool| {
                (0..pts.len()).fold(0, |best, k| if better(pts[k].1, pts[best].1) { k } else { best })
            };
            let (pmin, pmax) = (arg(|a, b| a < b), arg(|a, b| a > b));
            if pmin < pmax {
                (Case::NowhereMonotone, pmin, pmax, 1.0)
            } else {
                (Case::NowhereMonotone, pmax, pmin, -1.0)
            }
        }
    };
    let run = &pts[lo_idx..=hi_idx];
    let (a, b) = (run[0].0, run[run.len() - 1].0);
    let g = |x: f64| slope(f, x, cfg).map(|d| s * d);
    let (ga, gb) = (s * run[0].1, s * run[run.len() - 1].1);

    let (q, q_num, q_skipped, c) = if ga.abs() <= cfg.eps_deriv {
        (0.0, 0, true, a)
    } else {
        let (q, num) = dyadic_inside(ga, gb);
        // Largest grid point with g <= q, then bisection towards the next one.
        let k = (0..run.len() - 1).rev().find(|&k| s * run[k].1 <= q).unwrap_or(0);
        let c = bisect(&g, run[k].0, run[k + 1].0, q)?;
        (q, num, false, c)
    };
    let gb_shift = gb - q;
    let n_scale = if gb_shift >= 1.0 - cfg.eps_deriv {
        1
    } else {
        (1.0 / gb_shift).ceil().min(u32::MAX as f64) as u32
    };
    let nf = n_scale as f64;
    let scaled = |x: f64| g(x).map(|v| nf * (v - q));
    let trimmed = nf * gb_shift > 1.0 + cfg.eps_deriv;
    let d = if trimmed {
        let start = run.iter().position(|p| p.0 > c).unwrap_or(run.len() - 1);
        let k = (start..run.len())
            .find(|&k| nf * (s * run[k].1 - q) >= 1.0)
            .unwrap_or(run.len() - 1);
        let prev = if k == start { c } else { run[k - 1].0 };
        bisect(&scaled, prev, run[k].0, 1.0)?
    } else {
        b
    };
    if !(d > c) {
        return Err(Error::Monotonicity);
    }

    let fc = f.eval(c)?;
    let mut model = f.clone();
    if s < 0.0 {
        model = model.neg();
    }
    if c != 0.0 {
        model = model.translate(c);
    }
    if q != 0.0 || fc != 0.0 {
        model = model.add_affine(-q, -s * fc);
    }
    if n_scale != 1 {
        model = model.scale(nf);
    }
    let mut out = NormalizedFunction {
        f: model,
        b: d - c,
        provenance: Provenance {
            case,
            case_ii_warning: case == Case::NowhereMonotone,
            a0: a,
            b0: b,
            fprime_a: run[0].1,
            fprime_b: run[run.len() - 1].1,
            flipped: s < 0.0,
            q,
            q_num,
            q_den: Q_DENOMINATOR,
            q_skipped,
            c,
            n_scale,
            d,
            trimmed,
            invariants_hold: false,
        },
    };
    out.provenance.invariants_hold = check_invariants(&out, cfg);
    Ok(out)
}

/// Longest run of strictly monotone derivative values: `(first, last, increasing)`.
fn longest_run(pts: &[(f64, f64)]) -> Option<(usize, usize, bool)> {
    let mut best: Option<(usize, usize, bool)> = None;
    for increasing in [true, false] {
        let mut start = 0;
        for k in 1..=pts.len() {
            let continues = k < pts.len()
                && if increasing { pts[k].1 > pts[k - 1].1 } else { pts[k].1 < pts[k - 1].1 };
            if !continues {
                let len = k - start;
                if len >= MIN_RUN && best.is_none_or(|(lo, hi, _)| len > hi - lo + 1) {
                    best = Some((start, k - 1, increasing));
                }
                start = k;
            }
        }
    }
    best
}

/// The dyadic `m / 2^16` nearest the midpoint of `(lo, hi)`, or the exact
/// midpoint when no such dyadic lies strictly inside.
fn dyadic_inside(lo: f64, hi: f64) -> (f64, i64) {
    let mid = 0.5 * (lo + hi);
    let num = (mid * Q_DENOMINATOR as f64).round();
    let q = num / Q_DENOMINATOR as f64;
    if q > lo && q < hi {
        (q, num as i64)
    } else {
        (mid, (mid * Q_DENOMINATOR as f64).round() as i64)
    }
}

/// Point of `[lo, hi]` where the increasing map `g` crosses `target`.
pub(crate) fn bisect(g: &impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, target: f64) -> Result<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (glo, ghi) = (g(lo)?, g(hi)?);
    Ok(if (target - glo).abs() <= (ghi - target).abs() { lo } else { hi })
}

fn check_invariants(nf: &NormalizedFunction, cfg: &ToleranceConfig) -> bool {
    let tol = cfg.eps_deriv;
    let xs = nf.interval().grid(64);
    let Ok(ds) = xs.iter().map(|&x| nf.slope(x, cfg)).collect::<Result<Vec<_>>>() else {
        return false;
    };
    let vals: Vec<f64> = xs.iter().map(|&x| nf.f.eval_raw(x)).collect();
    ds[0].abs() <= tol
        && (ds[ds.len() - 1] - 1.0).abs() <= tol
        && ds.iter().all(|&d| d > -tol && d < 1.0 + tol)
        && vals.windows(2).all(|w| w[1] > w[0])
}
