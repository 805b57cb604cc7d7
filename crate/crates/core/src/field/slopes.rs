use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::normalize::NormalizedFunction;
use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::model::FunctionModel;

const Z_LEVELS: i32 = 20;
const EPS_LEVELS: i32 = 24;
const FINEST_RUNGS: i32 = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeComparison {
    #[serde(with = "ordering_serde")]
    pub order: Ordering,
    /// Base point `z` at which the separating inequality held.
    pub z: Option<f64>,
    /// `g(ε)/ε` at the finest rung for both germs.
    pub slope_x: f64,
    pub slope_y: f64,
    /// Whether `order` matches the sign of `slope_y - slope_x` (ties within `eps_deriv`).
    pub agrees: bool,
}

/// Compares `g_x'(0)` with `g_y'(0)` using only values of `g_x`, `g_y` and
/// the increments of the base function `f` of a normalized model.
///
/// `g_x'(0) < g_y'(0)` iff some `z ∈ (0, b)` gives
/// `g_x(ε) + f(z + ε) - f(z) < g_y(ε)` for all small `ε`; the test takes
/// `z = b 2^-i` and requires the inequality on the finest rungs of a dyadic
/// `ε` ladder.
pub fn compare_slopes(
    base: &NormalizedFunction,
    g_x: &FunctionModel,
    g_y: &FunctionModel,
    cfg: &ToleranceConfig,
) -> Result<SlopeComparison> {
    for g in [g_x, g_y] {
        let v = g.eval(0.0)?;
        if v.abs() > cfg.eps_value {
            return Err(Error::Precondition(format!("germ must vanish at 0, got g(0) = {v}")));
        }
    }
    let reach = g_x.domain().hi.min(g_y.domain().hi).min(1.0);
    if !(reach > 0.0) {
        return Err(Error::Precondition("germs must be defined to the right of 0".into()));
    }
    let b = base.b;
    let top = (0.5 * reach).min(0.5 * b);
    let eps_ladder: Vec<f64> = (EPS_LEVELS - FINEST_RUNGS + 1..=EPS_LEVELS)
        .map(|j| top * 2f64.powi(-j))
        .collect();
    let f = &base.f;
    let separates = |lo: &FunctionModel, hi: &FunctionModel| -> Result<Option<f64>> {
        for i in 1..=Z_LEVELS {
            let z = b * 2f64.powi(-i);
            let mut all = true;
            for &e in &eps_ladder {
                let inc = f.eval(z + e)? - f.eval(z)?;
                if !(lo.eval(e)? + inc < hi.eval(e)?) {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(Some(z));
            }
        }
        Ok(None)
    };
    let (order, z) = match separates(g_x, g_y)? {
        Some(z) => (Ordering::Less, Some(z)),
        None => match separates(g_y, g_x)? {
            Some(z) => (Ordering::Greater, Some(z)),
            None => (Ordering::Equal, None),
        },
    };
    let e = eps_ladder[eps_ladder.len() - 1];
    let (slope_x, slope_y) = (g_x.eval(e)? / e, g_y.eval(e)? / e);
    let diff = slope_y - slope_x;
    let expected = if diff.abs() <= cfg.eps_deriv {
        Ordering::Equal
    } else if diff > 0.0 {
        Ordering::Less
    } else {
        Ordering::Greater
    };
    Ok(SlopeComparison { order, z, slope_x, slope_y, agrees: order == expected })
}

mod ordering_serde {
    use std::cmp::Ordering;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(o: &Ordering, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match o {
            Ordering::Less => "less",
            Ordering::Equal => "equal",
            Ordering::Greater => "greater",
        })
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ordering, D::Error> {
        match String::deserialize(d)?.as_str() {
            "less" => Ok(Ordering::Less),
            "equal" => Ok(Ordering::Equal),
            "greater" => Ok(Ordering::Greater),
            other => Err(serde::de::Error::custom(format!("unknown ordering {other}"))),
        }
    }
}
