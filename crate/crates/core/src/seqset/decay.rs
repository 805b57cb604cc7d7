use serde::{Deserialize, Serialize};

use super::SequenceSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decay {
    Exponential,
    Subexponential,
    Unknown,
}

/// Result of fitting `log s_n` against `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub class: Decay,
    /// Least-squares slope of `log s_n` on the tail half.
    pub lambda: f64,
    /// Slopes on the third and fourth quarters of the index range.
    pub slope_q3: f64,
    pub slope_q4: f64,
}

/// Minimum ratio `slope_q4 / slope_q3` for an exponential verdict. Geometric
/// sequences give exactly 1; power laws flatten towards 0.
pub const SLOPE_RATIO_CUT: f64 = 0.9;

/// Classifies the decay of a sequence with at least 32 terms.
///
/// The sequence decays exponentially when the log-linear slope is negative
/// and does not flatten along the tail: the fitted slope on the last quarter
/// keeps at least [`SLOPE_RATIO_CUT`] of the slope on the third quarter.
pub fn classify_decay(s: &SequenceSet) -> DecayFit {
    let n = s.values.len();
    if n < 32 {
        return DecayFit {
            class: Decay::Unknown,
            lambda: f64::NAN,
            slope_q3: f64::NAN,
            slope_q4: f64::NAN,
        };
    }
    let logs: Vec<f64> = s.values.iter().map(|v| v.ln()).collect();
    let lambda = ls_slope(&logs, n / 2, n);
    let slope_q3 = ls_slope(&logs, n / 2, 3 * n / 4);
    let slope_q4 = ls_slope(&logs, 3 * n / 4, n);
    let exponential = lambda < 0.0 && slope_q3 < 0.0 && slope_q4 <= SLOPE_RATIO_CUT * slope_q3;
    DecayFit {
        class: if exponential { Decay::Exponential } else { Decay::Subexponential },
        lambda,
        slope_q3,
        slope_q4,
    }
}

/// Least-squares slope of `y[i]` against the 1-based index over `lo..hi`.
fn ls_slope(y: &[f64], lo: usize, hi: usize) -> f64 {
    let m = (hi - lo) as f64;
    let xbar = (lo + hi - 1) as f64 / 2.0 + 1.0;
    let ybar = y[lo..hi].iter().sum::<f64>() / m;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (i, &yi) in y[lo..hi].iter().enumerate() {
        let dx = (lo + i + 1) as f64 - xbar;
        sxy += dx * (yi - ybar);
        sxx += dx * dx;
    }
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(gen: impl Fn(f64) -> f64, n: usize) -> SequenceSet {
        SequenceSet::from_fn(gen, n).unwrap()
    }

    #[test]
    fn catalog_decay_classes() {
        assert_eq!(classify_decay(&seq(|n| 1.0 / n, 512)).class, Decay::Subexponential);
        assert_eq!(
            classify_decay(&seq(|n| 2f64.powf(-n.sqrt()), 512)).class,
            Decay::Subexponential
        );
        let fit = classify_decay(&seq(|n| 2f64.powf(-n), 512));
        assert_eq!(fit.class, Decay::Exponential);
        assert!((fit.lambda + std::f64::consts::LN_2).abs() < 1e-9);
    }

    #[test]
    fn short_sequences_are_unknown() {
        assert_eq!(classify_decay(&seq(|n| 1.0 / n, 20)).class, Decay::Unknown);
    }
}
