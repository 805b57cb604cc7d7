use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::expr::piecewise_affine;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Interpolation {
    Linear,
    None,
}

/// A sampled function: strictly increasing knots with one value each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridForm {
    pub knots: Vec<f64>,
    pub values: Vec<f64>,
    pub interpolation: Interpolation,
}

impl GridForm {
    pub fn new(knots: Vec<f64>, values: Vec<f64>, interpolation: Interpolation) -> Result<Self> {
        if knots.len() != values.len() {
            return Err(Error::Precondition(format!(
                "{} knots but {} values",
                knots.len(),
                values.len()
            )));
        }
        if knots.len() < 2 {
            return Err(Error::Precondition("a grid needs at least two knots".into()));
        }
        if knots.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::Precondition("grid entries must be finite".into()));
        }
        if knots.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition("knots must be strictly increasing".into()));
        }
        Ok(GridForm {
            knots,
            values,
            interpolation,
        })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match self.interpolation {
            Interpolation::Linear => Ok(piecewise_affine(&self.knots, &self.values, x)),
            Interpolation::None => {
                let i = self.knots.partition_point(|&k| k < x);
                match self.knots.get(i) {
                    Some(&k) if k == x => Ok(self.values[i]),
                    _ => Err(Error::Undefined { x }),
                }
            }
        }
    }

    pub fn map_values(&self, f: impl Fn(f64, f64) -> f64) -> GridForm {
        GridForm {
            knots: self.knots.clone(),
            values: self.knots.iter().zip(&self.values).map(|(&k, &v)| f(k, v)).collect(),
            interpolation: self.interpolation,
        }
    }

    pub fn lo(&self) -> f64 {
        self.knots[0]
    }

    pub fn hi(&self) -> f64 {
        *self.knots.last().expect("grid is nonempty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_interpolation() {
        let g = GridForm::new(vec![0.0, 1.0], vec![0.0, 2.0], Interpolation::Linear).unwrap();
        assert_eq!(g.eval(0.25).unwrap(), 0.5);
    }

    #[test]
    fn no_interpolation_only_at_knots() {
        let g = GridForm::new(vec![0.0, 0.5, 1.0], vec![0.0, 1.0, 0.0], Interpolation::None).unwrap();
        assert_eq!(g.eval(0.5).unwrap(), 1.0);
        assert!(matches!(g.eval(0.25), Err(Error::Undefined { .. })));
    }

    #[test]
    fn rejects_unsorted_knots() {
        assert!(GridForm::new(vec![0.0, 0.0], vec![1.0, 1.0], Interpolation::Linear).is_err());
        assert!(GridForm::new(vec![0.0, 1.0], vec![1.0], Interpolation::Linear).is_err());
    }
}
