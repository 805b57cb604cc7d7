//! Sequence sets, ω-orders, decay classes, covering dimensions and
//! difference-set tests.

mod decay;
mod diffset;
mod dimension;
mod omega;

use serde::{Deserialize, Serialize};

pub use decay::{classify_decay, Decay, DecayFit};
pub use diffset::{difference_set_intersection, positive_differences};
pub use dimension::{assouad_estimate, box_dimension_estimate, DimensionEstimate, PointSet, ScaleCount};
pub use omega::{omega_order, omega_order_at, OmegaOrder};

use crate::error::{Error, Result};
use crate::model::FunctionModel;

/// A finite truncation `s_0 > s_1 > ...` of a sequence of positive reals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceSet {
    pub values: Vec<f64>,
    /// `s_n - s_{n+1}`.
    pub gaps: Vec<f64>,
    pub strictly_decreasing: bool,
    pub decreasing_gaps: bool,
    pub decay: Decay,
}

impl SequenceSet {
    /// Builds the set and its flags. Non-monotone input is accepted with
    /// the corresponding flag cleared.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
            return Err(Error::NonPositive { index, value });
        }
        let gaps: Vec<f64> = values.windows(2).map(|w| w[0] - w[1]).collect();
        let strictly_decreasing = gaps.iter().all(|&g| g > 0.0);
        let decreasing_gaps = strictly_decreasing && gaps.windows(2).all(|w| w[1] < w[0]);
        let mut s = SequenceSet {
            values,
            gaps,
            strictly_decreasing,
            decreasing_gaps,
            decay: Decay::Unknown,
        };
        if s.strictly_decreasing {
            s.decay = classify_decay(&s).class;
        }
        Ok(s)
    }

    /// `{gen(i) : 1 <= i <= n}`.
    pub fn from_fn(gen: impl Fn(f64) -> f64, n: usize) -> Result<Self> {
        Self::from_values((1..=n).map(|i| gen(i as f64)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Truncation scale: the smallest stored value.
    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// `(gen(i))` for `i = 1..=n_max`.
pub fn make_sequence_set(gen: &FunctionModel, n_max: usize) -> Result<SequenceSet> {
    if n_max < 16 {
        return Err(Error::Precondition(format!("n_max must be >= 16, got {n_max}")));
    }
    let values = (1..=n_max).map(|i| gen.eval(i as f64)).collect::<Result<Vec<_>>>()?;
    if let Some((i, &value)) = values.iter().enumerate().find(|(_, v)| **v <= 0.0) {
        return Err(Error::NonPositive { index: i + 1, value });
    }
    SequenceSet::from_values(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_function_spec;

    #[test]
    fn harmonic_sequence() {
        let gen = parse_function_spec("expr:recip(x) on [1,100]").unwrap();
        let s = make_sequence_set(&gen, 100).unwrap();
        assert_eq!(s.values[0], 1.0);
        assert_eq!(s.values[99], 0.01);
        assert!(s.strictly_decreasing && s.decreasing_gaps);
        assert_eq!(s.decay, Decay::Subexponential);
    }

    #[test]
    fn dyadic_sequence_is_exponential() {
        let gen = parse_function_spec("expr:exp(scale[-0.6931471805599453](x)) on [1,100]").unwrap();
        let s = make_sequence_set(&gen, 100).unwrap();
        assert!(s.decreasing_gaps);
        assert_eq!(s.decay, Decay::Exponential);
    }

    #[test]
    fn constant_generator_clears_flags() {
        let gen = parse_function_spec("poly:[1] on [0,20]").unwrap();
        let s = make_sequence_set(&gen, 16).unwrap();
        assert!(!s.strictly_decreasing);
        assert!(!s.decreasing_gaps);
        assert_eq!(s.decay, Decay::Unknown);
    }

    #[test]
    fn non_positive_generator_is_rejected() {
        let gen = parse_function_spec("affine:-1,10 on [0,20]").unwrap();
        assert!(matches!(
            make_sequence_set(&gen, 16),
            Err(Error::NonPositive { index: 10, .. })
        ));
    }
}
