//! Function models: closed-form expressions or sampled grids on an interval.

mod expr;
mod grid;
mod parse;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use expr::{cantor, piecewise_affine, sawtooth, weierstrass, Expr};
pub use grid::{GridForm, Interpolation};
pub use parse::{parse_function_spec, parse_interval};

use crate::error::{Error, Result};
use crate::interval::{Interval, Openness};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Body {
    Expr(Expr),
    Grid(GridForm),
}

/// A real function on an interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionModel {
    domain: Interval,
    body: Body,
}

impl FunctionModel {
    /// Wraps an expression, checking that it is finite on a probe grid of the domain.
    pub fn from_expr(expr: Expr, domain: Interval) -> Result<Self> {
        if let Some(x) = domain.grid(257).into_iter().find(|&x| !expr.eval(x).is_finite()) {
            return Err(Error::Domain {
                x,
                domain: format!("{domain} (expression is not finite there)"),
            });
        }
        Ok(FunctionModel {
            domain,
            body: Body::Expr(expr),
        })
    }

    /// A grid model lives on the closed hull of its knots.
    pub fn from_grid(grid: GridForm) -> Self {
        let domain = Interval::closed(grid.lo(), grid.hi()).expect("knots are strictly increasing");
        FunctionModel {
            domain,
            body: Body::Grid(grid),
        }
    }

    pub fn poly(coeffs: Vec<f64>, domain: Interval) -> Self {
        FunctionModel {
            domain,
            body: Body::Expr(Expr::poly(coeffs)),
        }
    }

    pub fn affine(m: f64, b: f64, domain: Interval) -> Self {
        Self::poly(vec![m, b], domain)
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn expr(&self) -> Option<&Expr> {
        match &self.body {
            Body::Expr(e) => Some(e),
            Body::Grid(_) => None,
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !self.domain.contains(x) {
            return Err(Error::Domain {
                x,
                domain: self.domain.to_text(),
            });
        }
        let v = match &self.body {
            Body::Expr(e) => e.eval(x),
            Body::Grid(g) => g.eval(x)?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain {
                x,
                domain: format!("{} (value is not finite)", self.domain),
            })
        }
    }

    /// Evaluates without the membership check. Grid models without
    /// interpolation return NaN off their knots.
    pub fn eval_raw(&self, x: f64) -> f64 {
        match &self.body {
            Body::Expr(e) => e.eval(x),
            Body::Grid(g) => g.eval(x).unwrap_or(f64::NAN),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn scale(&self, c: f64) -> Self {
        let body = match &self.body {
            Body::Expr(e) => Body::Expr(Expr::Scale(c, Box::new(e.clone()))),
            Body::Grid(g) => Body::Grid(g.map_values(|_, v| c * v)),
        };
        FunctionModel {
            domain: self.domain,
            body,
        }
    }

    /// `f(x) + m x + b`.
    pub fn add_affine(&self, m: f64, b: f64) -> Self {
        let body = match &self.body {
            Body::Expr(e) => Body::Expr(Expr::Add(Box::new(e.clone()), Box::new(Expr::affine(m, b)))),
            Body::Grid(g) => Body::Grid(g.map_values(|k, v| v + m * k + b)),
        };
        FunctionModel {
            domain: self.domain,
            body,
        }
    }

    /// `t -> f(t + c)` on the domain shifted by `-c`.
    pub fn translate(&self, c: f64) -> Self {
        let body = match &self.body {
            Body::Expr(e) => Body::Expr(e.substitute(&Expr::affine(1.0, c))),
            Body::Grid(g) => Body::Grid(GridForm {
                knots: g.knots.iter().map(|k| k - c).collect(),
                values: g.values.clone(),
                interpolation: g.interpolation,
            }),
        };
        FunctionModel {
            domain: self.domain.translate(-c),
            body,
        }
    }

    /// `f + g` on the common domain; both must be expressions.
    pub fn try_add(&self, other: &FunctionModel) -> Result<Self> {
        let domain = self
            .domain
            .intersect(&other.domain)
            .ok_or_else(|| Error::Precondition("domains do not overlap".into()))?;
        match (&self.body, &other.body) {
            (Body::Expr(a), Body::Expr(b)) => Ok(FunctionModel {
                domain,
                body: Body::Expr(Expr::Add(Box::new(a.clone()), Box::new(b.clone()))),
            }),
            _ => Err(Error::Precondition("sums of grid models are not supported".into())),
        }
    }

    pub fn restrict(&self, j: Interval) -> Result<Self> {
        self.require_within(&j)?;
        Ok(FunctionModel {
            domain: j,
            body: self.body.clone(),
        })
    }

    /// The increment function `t -> f(x + t) - f(x)` on `[0, hi - x)`.
    pub fn increment_at(&self, x: f64) -> Result<Self> {
        let fx = self.eval(x)?;
        let hi_closed = self.domain.hi_closed();
        let openness = if hi_closed { Openness::Closed } else { Openness::HalfOpenRight };
        let domain = Interval::new(0.0, self.domain.hi - x, openness)?;
        Ok(self.translate(x).add_affine(0.0, -fx).with_domain(domain))
    }

    fn with_domain(mut self, domain: Interval) -> Self {
        self.domain = domain;
        self
    }

    pub(crate) fn require_within(&self, j: &Interval) -> Result<()> {
        if self.domain.contains_interval(j) {
            Ok(())
        } else {
            let x = if self.domain.contains(j.lo) { j.hi } else { j.lo };
            Err(Error::Domain {
                x,
                domain: self.domain.to_text(),
            })
        }
    }

    /// Canonical one-line spec; parsing it gives back an identical model.
    pub fn to_spec(&self) -> String {
        parse::print(self)
    }
}

impl fmt::Display for FunctionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_spec())
    }
}

/// Samples `f` at `n` equally spaced points of `j`, nudged inward at open ends.
pub fn sample(f: &FunctionModel, j: &Interval, n: usize) -> Result<GridForm> {
    if n < 2 {
        return Err(Error::Precondition("sampling needs n >= 2".into()));
    }
    f.require_within(j)?;
    let knots = j.grid(n);
    let values = knots.iter().map(|&x| f.eval(x)).collect::<Result<Vec<_>>>()?;
    GridForm::new(knots, values, Interpolation::Linear)
}

/// Shortest round-trip text for a float, switching to exponent form for
/// very large or very small magnitudes.
pub(crate) fn fmt_num(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Interval {
        Interval::open(0.0, 1.0).unwrap()
    }

    #[test]
    fn eval_checks_domain() {
        let f = FunctionModel::poly(vec![1.0, 0.0, 0.0], unit());
        assert_eq!(f.eval(0.5).unwrap(), 0.25);
        assert!(matches!(f.eval(2.0), Err(Error::Domain { .. })));
        assert!(matches!(f.eval(0.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn sample_reproduces_values_at_knots() {
        let f = FunctionModel::poly(vec![1.0, 0.0, 0.0], unit());
        let g = sample(&f, &unit(), 3).unwrap();
        assert!((g.knots[0] - 1.0 / 12.0).abs() < 1e-15);
        for (k, v) in g.knots.iter().zip(&g.values) {
            assert_eq!(*v, f.eval(*k).unwrap());
        }
        let wide = Interval::open(0.0, 2.0).unwrap();
        assert!(matches!(sample(&f, &wide, 8), Err(Error::Domain { .. })));
    }

    #[test]
    fn affine_two_point_sample_is_exact() {
        let f = FunctionModel::affine(3.0, 1.0, Interval::closed(0.0, 1.0).unwrap());
        let g = sample(&f, &f.domain(), 2).unwrap();
        let m = FunctionModel::from_grid(g);
        assert!((m.eval(0.3).unwrap() - 1.9).abs() < 1e-15);
    }

    #[test]
    fn translation_shifts_domain_and_values() {
        let f = FunctionModel::poly(vec![1.0, 0.0, 0.0], unit());
        let g = f.translate(0.5);
        assert_eq!(g.domain().lo, -0.5);
        assert_eq!(g.eval(0.0).unwrap(), 0.25);
    }

    #[test]
    fn increment_function_starts_at_zero() {
        let f = FunctionModel::poly(vec![1.0, 0.0, 0.0], unit());
        let g = f.increment_at(0.25).unwrap();
        assert_eq!(g.eval(0.0).unwrap(), 0.0);
        assert!((g.eval(0.25).unwrap() - 0.1875).abs() < 1e-15);
    }

    #[test]
    fn number_format_round_trips() {
        for v in [0.1, 1e-7, 3.0, -2.5, 1e20, 123456.789, f64::MIN_POSITIVE] {
            assert_eq!(fmt_num(v).parse::<f64>().unwrap(), v);
        }
    }
}
