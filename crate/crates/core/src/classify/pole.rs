use serde::{Deserialize, Serialize};

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::model::FunctionModel;

/// Members `h_d : [0, d] -> R` indexed by positive reals `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyModel {
    pub members: Vec<(f64, FunctionModel)>,
}

impl FamilyModel {
    pub fn from_fn(index_set: &[f64], member: impl Fn(f64) -> Result<FunctionModel>) -> Result<Self> {
        let members = index_set
            .iter()
            .map(|&d| member(d).map(|h| (d, h)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FamilyModel { members })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoleVerdict {
    WeakPole,
    NotWeakPoleAtResolution,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemberImage {
    pub d: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeakPoleReport {
    pub verdict: PoleVerdict,
    /// Largest `δ` with `[0, δ]` inside every estimated image.
    pub delta: f64,
    pub images: Vec<MemberImage>,
}

/// The index set must span at least this ratio between its largest and smallest member.
pub const ACCUMULATION_RATIO: f64 = 16.0;

/// Estimates each image `h_d([0, d])` as `[min, max]` of a grid sweep
/// (continuity fills the range) and intersects the segments `[0, δ]` they contain.
pub fn weak_pole_check(fam: &FamilyModel, delta_target: f64, cfg: &ToleranceConfig) -> Result<WeakPoleReport> {
    let ds: Vec<f64> = fam.members.iter().map(|m| m.0).collect();
    let (lo, hi) = ds.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &d| (a.min(d), b.max(d)));
    if ds.len() < 8 || ds.iter().any(|&d| !(d > 0.0)) || !(lo < hi / ACCUMULATION_RATIO) {
        return Err(Error::Accumulation(format!(
            "need >= 8 positive indices with min < max/{ACCUMULATION_RATIO} (got {} indices, min {lo}, max {hi})",
            ds.len()
        )));
    }
    let mut images = Vec::with_capacity(ds.len());
    let mut delta = f64::INFINITY;
    for (d, h) in &fam.members {
        let span = Interval::closed(0.0, *d)?;
        h.require_within(&span)?;
        let (min, max) = span
            .grid(cfg.grid_n)
            .into_iter()
            .map(|t| h.eval(t))
            .try_fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| v.map(|v| (a.min(v), b.max(v))))?;
        let reach = if min <= cfg.eps_value { max.max(0.0) } else { 0.0 };
        delta = delta.min(reach);
        images.push(MemberImage { d: *d, min, max });
    }
    Ok(WeakPoleReport {
        verdict: if delta >= delta_target { PoleVerdict::WeakPole } else { PoleVerdict::NotWeakPoleAtResolution },
        delta,
        images,
    })
}
