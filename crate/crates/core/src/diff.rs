//! Generalized k-th differences, the H_k sign test and smoothness certificates.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::model::FunctionModel;
use crate::seqset::SequenceSet;

/// Steps `h = (h_1, ..., h_k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepVector(pub Vec<f64>);

impl StepVector {
    pub fn new(steps: Vec<f64>) -> Result<Self> {
        if steps.is_empty() || steps.iter().any(|h| !h.is_finite()) {
            return Err(Error::Precondition("a step vector needs k >= 1 finite steps".into()));
        }
        Ok(StepVector(steps))
    }

    /// `(h, ..., h)` with `k` entries.
    pub fn equal(h: f64, k: usize) -> Self {
        StepVector(vec![h; k])
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// Sup norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().fold(0.0, |m, h| m.max(h.abs()))
    }
}

/// `(u, x)` is `(J, k)`-suitable: `x ∈ J`, `u_i >= 0`, `x + k‖u‖ ∈ J`.
pub fn is_suitable(j: &Interval, k: usize, u: &[f64], x: f64) -> bool {
    let norm = u.iter().fold(0.0f64, |m, h| m.max(h.abs()));
    j.contains(x) && u.iter().all(|&h| h >= 0.0) && j.contains(x + k as f64 * norm)
}

/// `Δ^k_h f(x)` by the recursion `Δ^k f(x) = Δ^{k-1} f(x + h_k) - Δ^{k-1} f(x)`.
pub fn gen_diff(f: &FunctionModel, x: f64, h: &StepVector) -> Result<f64> {
    if !is_suitable(&f.domain(), h.k(), &h.0, x) {
        return Err(Error::Suitability(format!(
            "x = {x}, h = {:?} on {}",
            h.0,
            f.domain()
        )));
    }
    Ok(diff_with(&|t| f.eval_raw(t), x, &h.0))
}

/// The difference recursion over an arbitrary evaluator. Arguments are
/// accumulated as `((x + h_k) + h_{k-1}) + ...`.
pub fn diff_with(eval: &(impl Fn(f64) -> f64 + ?Sized), x: f64, h: &[f64]) -> f64 {
    match h.split_last() {
        None => eval(x),
        Some((&last, rest)) => diff_with(eval, x + last, rest) - diff_with(eval, x, rest),
    }
}

/// Residuals of the splitting and additivity identities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    /// `|Δ^k_h f - Δ^{k-1}_{(h_2..h_k)} Δ^1_{h_1} f|` at `x`.
    pub split_residual: f64,
    /// `|Δ^k_h (f+g) - Δ^k_h f - Δ^k_h g|` at `x`.
    pub additivity_residual: f64,
    pub value_f: f64,
    pub value_g: f64,
}

pub fn check_diff_identities(f: &FunctionModel, g: &FunctionModel, x: f64, h: &StepVector) -> Result<IdentityReport> {
    let common = f
        .domain()
        .intersect(&g.domain())
        .ok_or_else(|| Error::Suitability("models have disjoint domains".into()))?;
    if !is_suitable(&common, h.k(), &h.0, x) {
        return Err(Error::Suitability(format!("x = {x}, h = {:?} on {common}", h.0)));
    }
    let ef = |t: f64| f.eval_raw(t);
    let eg = |t: f64| g.eval_raw(t);
    let value_f = diff_with(&ef, x, &h.0);
    let value_g = diff_with(&eg, x, &h.0);
    let h1 = h.0[0];
    let first = |t: f64| f.eval_raw(t + h1) - f.eval_raw(t);
    let split = diff_with(&first, x, &h.0[1..]);
    let sum = |t: f64| f.eval_raw(t) + g.eval_raw(t);
    let additive = diff_with(&sum, x, &h.0);
    Ok(IdentityReport {
        split_residual: (value_f - split).abs(),
        additivity_residual: (additive - (value_f + value_g)).abs(),
        value_f,
        value_g,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Nonneg,
    Nonpos,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: f64,
    pub h: f64,
    pub value: f64,
}

/// Outcome of an equal-step sign scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignVerdict {
    pub verdict: Sign,
    /// For `mixed`: the first negative difference in (x index, h index) order.
    pub witness: Option<Witness>,
    pub min_value: f64,
    pub max_value: f64,
    pub pairs_tested: usize,
}

/// Dyadic step ladder `(hi - lo) 2^-j / k` for `1 <= j <= log2(grid_n)`.
pub fn step_ladder(j: &Interval, k: usize, grid_n: usize) -> Vec<f64> {
    let levels = (usize::BITS - 1 - grid_n.max(2).leading_zeros()) as i32;
    (1..=levels).map(|l| j.len() * 2f64.powi(-l) / k as f64).collect()
}

/// Scans `Δ^k_{(h,...,h)} f(x)` over grid points `x ∈ J` and the dyadic step ladder.
pub fn hk_test(f: &FunctionModel, j: &Interval, k: usize, grid_n: usize, eps_value: f64) -> Result<SignVerdict> {
    if grid_n < 8 {
        return Err(Error::Precondition(format!("grid_n must be >= 8, got {grid_n}")));
    }
    f.require_within(j)?;
    let xs = j.grid(grid_n);
    let hs = step_ladder(j, k, grid_n);
    let eval = |t: f64| f.eval_raw(t);
    let per_x: Vec<Scan> = xs
        .par_iter()
        .enumerate()
        .map(|(xi, &x)| {
            let mut s = Scan::default();
            for (hi, &h) in hs.iter().enumerate() {
                if !j.contains(x + k as f64 * h) {
                    continue;
                }
                let steps = vec![h; k];
                let v = diff_with(&eval, x, &steps);
                s.push(v, (xi, hi), Witness { x, h, value: v }, eps_value);
            }
            s
        })
        .collect();
    let total = per_x.into_iter().fold(Scan::default(), Scan::merge);
    if total.count == 0 {
        return Err(Error::EmptyWindow(j.to_text()));
    }
    Ok(total.verdict(eps_value))
}

#[derive(Debug, Clone)]
struct Scan {
    min: f64,
    max: f64,
    count: usize,
    first_negative: Option<((usize, usize), Witness)>,
}

impl Default for Scan {
    fn default() -> Self {
        Scan {
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            count: 0,
            first_negative: None,
        }
    }
}

impl Scan {
    fn push(&mut self, v: f64, key: (usize, usize), w: Witness, eps: f64) {
        self.min = self.min.min(v);
        self.max = self.max.max(v);
        self.count += 1;
        if v < -eps && self.first_negative.as_ref().is_none_or(|(k, _)| key < *k) {
            self.first_negative = Some((key, w));
        }
    }

    fn merge(a: Scan, b: Scan) -> Scan {
        let first_negative = match (a.first_negative, b.first_negative) {
            (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
            (x, y) => x.or(y),
        };
        Scan {
            min: a.min.min(b.min),
            max: a.max.max(b.max),
            count: a.count + b.count,
            first_negative,
        }
    }

    fn verdict(self, eps: f64) -> SignVerdict {
        let verdict = if self.min < -eps && self.max > eps {
            Sign::Mixed
        } else if self.min >= -eps {
            Sign::Nonneg
        } else {
            Sign::Nonpos
        };
        SignVerdict {
            verdict,
            witness: if verdict == Sign::Mixed { self.first_negative.map(|(_, w)| w) } else { None },
            min_value: self.min,
            max_value: self.max,
            pairs_tested: self.count,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertifiedRegion {
    pub lo: f64,
    pub hi: f64,
    pub sign: Sign,
}

/// Regions of `I` on which the order-`k+2` sign condition held at the tested resolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessCertificate {
    pub k: usize,
    pub regions: Vec<CertifiedRegion>,
    pub coverage: f64,
    pub grid_n: usize,
    pub eps_value: f64,
    pub label: String,
}

pub const CERTIFICATE_LABEL: &str = "necessary-condition at resolution";

impl SmoothnessCertificate {
    pub fn intervals(&self, within: &Interval) -> Vec<Interval> {
        self.regions
            .iter()
            .filter_map(|r| within.sub(r.lo, r.hi).ok())
            .collect()
    }
}

/// Certifies `C^k` on dyadic pieces of `I` where `H_{k+2}` holds.
///
/// Pieces are refined down to depth `log2(grid_n) - 4`. A piece passes when
/// the sign scan on the piece widened by half its length on each side
/// (clipped to `I`) is one-signed; adjacent passing pieces of the same sign
/// are merged.
pub fn certify_smoothness(f: &FunctionModel, i: &Interval, k: usize, cfg: &ToleranceConfig) -> Result<SmoothnessCertificate> {
    cfg.validate()?;
    f.require_within(i)?;
    let max_depth = (usize::BITS - 1 - cfg.grid_n.leading_zeros()).saturating_sub(4);
    let mut leaves = Vec::new();
    certify_node(f, i, i, k + 2, 0, max_depth, cfg, &mut leaves);
    leaves.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut regions: Vec<CertifiedRegion> = Vec::new();
    for leaf in leaves {
        match regions.last_mut() {
            Some(last) if last.hi == leaf.lo && last.sign == leaf.sign => last.hi = leaf.hi,
            _ => regions.push(leaf),
        }
    }
    let covered = regions.iter().fold(0.0, |acc, r| acc + (r.hi - r.lo));
    Ok(SmoothnessCertificate {
        k,
        regions,
        coverage: (covered / i.len()).clamp(0.0, 1.0),
        grid_n: cfg.grid_n,
        eps_value: cfg.eps_value,
        label: CERTIFICATE_LABEL.into(),
    })
}

#[allow(clippy::too_many_arguments)]
fn certify_node(
    f: &FunctionModel,
    whole: &Interval,
    node: &Interval,
    order: usize,
    depth: u32,
    max_depth: u32,
    cfg: &ToleranceConfig,
    out: &mut Vec<CertifiedRegion>,
) {
    let pad = node.len() / 2.0;
    let window = whole
        .sub((node.lo - pad).max(whole.lo), (node.hi + pad).min(whole.hi))
        .unwrap_or(*node);
    let points = ((cfg.grid_n as f64 * window.len() / whole.len()).round() as usize).max(8);
    if let Ok(v) = hk_test(f, &window, order, points, cfg.eps_value) {
        if v.verdict != Sign::Mixed {
            out.push(CertifiedRegion {
                lo: node.lo,
                hi: node.hi,
                sign: v.verdict,
            });
            return;
        }
    }
    if depth >= max_depth {
        return;
    }
    let mid = node.lo + node.len() / 2.0;
    let halves = [whole.sub(node.lo, mid), whole.sub(mid, node.hi)];
    let results: Vec<Vec<CertifiedRegion>> = halves
        .par_iter()
        .filter_map(|h| h.as_ref().ok())
        .map(|h| {
            let mut sub = Vec::new();
            certify_node(f, whole, h, order, depth + 1, max_depth, cfg, &mut sub);
            sub
        })
        .collect();
    out.extend(results.into_iter().flatten());
}

/// Anchored versus unrestricted scans for the sequence-set reduction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnchorReport {
    pub anchored_min: f64,
    pub unrestricted_min: f64,
    pub anchored_holds: bool,
    pub unrestricted_holds: bool,
    /// False only when the anchored condition held but the unrestricted one failed.
    pub implication_held: bool,
    /// `max(0, -unrestricted_min)` when the anchored condition held, else 0.
    pub worst_violation: f64,
    pub worst_point: Option<(f64, Vec<f64>)>,
    pub anchored_pairs: usize,
    pub unrestricted_pairs: usize,
}

/// Checks `Δ^k_{(d, h_2, ..., h_k)} f(x) >= 0` for first steps `d ∈ D`, then
/// brute-forces `Δ^k_u f(x) >= 0` over all suitable pairs of an independent grid.
pub fn seqset_anchor_check(
    f: &FunctionModel,
    j: &Interval,
    k: usize,
    d: &SequenceSet,
    grid_n: usize,
    eps_value: f64,
) -> Result<AnchorReport> {
    if k == 0 || grid_n < 8 {
        return Err(Error::Precondition("need k >= 1 and grid_n >= 8".into()));
    }
    f.require_within(j)?;
    let eval = |t: f64| f.eval_raw(t);
    let ladder = step_ladder(j, k, grid_n);
    let rest = multisets(&ladder, k - 1);
    let xs = j.grid(grid_n);
    let (a_min, a_count, _) = min_scan(&xs, &eval, j, k, |out| {
        for &dv in &d.values {
            for r in &rest {
                let mut u = Vec::with_capacity(k);
                u.push(dv);
                u.extend_from_slice(r);
                out.push(u);
            }
        }
    });
    if a_count == 0 {
        return Err(Error::EmptyWindow(format!("no anchored pair on {j}")));
    }
    let m = grid_n;
    let offset_xs: Vec<f64> = (0..m).map(|i| j.lo + (i as f64 + 0.5) * j.len() / m as f64).collect();
    let steps: Vec<f64> = (1..=8).map(|s| j.len() * s as f64 / (8.0 * k as f64)).collect();
    let all = multisets(&steps, k);
    let (u_min, u_count, u_worst) = min_scan(&offset_xs, &eval, j, k, |out| out.extend(all.iter().cloned()));
    let anchored_holds = a_min >= -eps_value;
    let unrestricted_holds = u_min >= -eps_value;
    let violation = if anchored_holds { (-u_min).max(0.0) } else { 0.0 };
    Ok(AnchorReport {
        anchored_min: a_min,
        unrestricted_min: u_min,
        anchored_holds,
        unrestricted_holds,
        implication_held: !anchored_holds || unrestricted_holds,
        worst_violation: violation,
        worst_point: u_worst,
        anchored_pairs: a_count,
        unrestricted_pairs: u_count,
    })
}

fn min_scan(
    xs: &[f64],
    eval: &(impl Fn(f64) -> f64 + Sync),
    j: &Interval,
    k: usize,
    steps: impl Fn(&mut Vec<Vec<f64>>),
) -> (f64, usize, Option<(f64, Vec<f64>)>) {
    let mut us = Vec::new();
    steps(&mut us);
    xs.par_iter()
        .map(|&x| {
            let mut best = (f64::INFINITY, 0usize, None);
            for u in us.iter().filter(|u| is_suitable(j, k, u, x)) {
                let v = diff_with(eval, x, u);
                best.1 += 1;
                if v < best.0 {
                    best.0 = v;
                    best.2 = Some((x, u.clone()));
                }
            }
            best
        })
        .reduce(
            || (f64::INFINITY, 0, None),
            |a, b| {
                let count = a.1 + b.1;
                if b.0 < a.0 || (b.0 == a.0 && a.2.is_none()) {
                    (b.0, count, b.2)
                } else {
                    (a.0, count, a.2)
                }
            },
        )
}

/// Nondecreasing selections of `k` entries from `pool`.
fn multisets(pool: &[f64], k: usize) -> Vec<Vec<f64>> {
    fn go(pool: &[f64], start: usize, k: usize, cur: &mut Vec<f64>, out: &mut Vec<Vec<f64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            go(pool, i, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, 0, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_function_spec;

    fn f(spec: &str) -> FunctionModel {
        parse_function_spec(spec).unwrap()
    }

    #[test]
    fn suitability_examples() {
        let j = Interval::open(0.0, 1.0).unwrap();
        assert!(is_suitable(&j, 2, &[0.1, 0.2], 0.5));
        assert!(!is_suitable(&j, 2, &[0.1, 0.2], 0.7));
        assert!(is_suitable(&j, 3, &[0.0, 0.0, 0.0], 0.5));
        assert!(!is_suitable(&j, 1, &[-0.1], 0.5));
    }

    #[test]
    fn closed_form_differences() {
        let affine = f("affine:3,1 on (0,1)");
        let v = gen_diff(&affine, 0.1, &StepVector(vec![0.2])).unwrap();
        assert!((v - 0.6).abs() < 1e-15);
        let sq = f("poly:[1,0,0] on (0,1)");
        let v = gen_diff(&sq, 0.3, &StepVector(vec![0.1, 0.2])).unwrap();
        assert!((v - 0.04).abs() < 1e-15);
        let cube = f("poly:[1,0,0,0] on (0,1)");
        let v = gen_diff(&cube, 0.1, &StepVector(vec![0.1, 0.1, 0.2])).unwrap();
        assert!((v - 0.012).abs() < 1e-15);
        assert!(matches!(
            gen_diff(&sq, 0.7, &StepVector(vec![0.1, 0.2])),
            Err(Error::Suitability(_))
        ));
    }

    #[test]
    fn split_identity_is_exact() {
        let a = f("poly:[1,0,0,0] on (0,1)");
        let b = f("sin on (0,1)");
        let r = check_diff_identities(&a, &b, 0.3, &StepVector(vec![0.05, 0.1])).unwrap();
        assert_eq!(r.split_residual, 0.0);
        assert!(r.additivity_residual <= 1e-12);
        let g = f("affine:2,-1 on (0,1)");
        let r = check_diff_identities(&g, &g, 0.2, &StepVector(vec![0.1, 0.1])).unwrap();
        assert_eq!(r.split_residual, 0.0);
        assert_eq!(r.additivity_residual, 0.0);
    }

    #[test]
    fn hk_examples() {
        let j = Interval::open(0.0, 1.0).unwrap();
        let sq = f("poly:[1,0,0] on (0,1)");
        assert_eq!(hk_test(&sq, &j, 2, 64, 1e-9).unwrap().verdict, Sign::Nonneg);
        let cube = f("poly:[1,0,0,0] on (0,1)");
        assert_eq!(hk_test(&cube, &j, 3, 64, 1e-9).unwrap().verdict, Sign::Nonneg);
        let saw = f("sawtooth:0.25 on (0,1)");
        let v = hk_test(&saw, &j, 2, 256, 1e-9).unwrap();
        assert_eq!(v.verdict, Sign::Mixed);
        let w = v.witness.unwrap();
        assert!(w.value < -1e-9);
        let steps = StepVector::equal(w.h, 2);
        assert_eq!(gen_diff(&saw, w.x, &steps).unwrap(), w.value);
    }

    #[test]
    fn certificates() {
        let cfg = ToleranceConfig::default();
        let j = Interval::open(0.0, 1.0).unwrap();
        let quartic = f("poly:[1,0,0,0,0] on (0,1)");
        let c = certify_smoothness(&quartic, &j, 2, &cfg).unwrap();
        assert_eq!(c.coverage, 1.0);
        assert_eq!(c.regions.len(), 1);
        let aff = f("affine:3,1 on (0,1)");
        for k in 0..4 {
            assert_eq!(certify_smoothness(&aff, &j, k, &cfg).unwrap().coverage, 1.0);
        }
    }

    #[test]
    fn kink_is_excluded() {
        let cfg = ToleranceConfig::default().with_grid(4096);
        let j = Interval::open(0.0, 1.0).unwrap();
        let c = certify_smoothness(&f("abs-shift:0.5 on (0,1)"), &j, 1, &cfg).unwrap();
        assert!(c.coverage >= 0.9);
        let (a, b) = (0.5 - 2f64.powi(-8), 0.5 + 2f64.powi(-8));
        assert!(c.regions.iter().all(|r| r.hi <= a || r.lo >= b));
    }

    #[test]
    fn anchored_reduction_on_convex_square() {
        let j = Interval::open(0.0, 1.0).unwrap();
        let d = SequenceSet::from_fn(|i| 2f64.powf(-i), 20).unwrap();
        let r = seqset_anchor_check(&f("poly:[1,0,0] on (0,1)"), &j, 2, &d, 64, 1e-9).unwrap();
        assert!(r.anchored_holds && r.unrestricted_holds && r.implication_held);
        assert_eq!(r.worst_violation, 0.0);
        let r = seqset_anchor_check(&f("affine:2,1 on (0,1)"), &j, 2, &d, 64, 1e-9).unwrap();
        assert!(r.implication_held);
        assert!(r.anchored_min.abs() < 1e-12);
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(&[1.0, 2.0, 3.0], 2).len(), 6);
        assert_eq!(multisets(&[1.0, 2.0], 0), vec![Vec::<f64>::new()]);
    }
}
