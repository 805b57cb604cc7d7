use serde::{Deserialize, Serialize};

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::model::FunctionModel;

/// A finite-difference derivative with its Richardson diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivativeEstimate {
    pub value: f64,
    pub order: u32,
    /// Step `h`; the stencil reaches `x ± 2h`.
    pub step: f64,
    /// Central differences at steps `h` and `2h`.
    pub level_fine: f64,
    pub level_coarse: f64,
    /// One-sided Richardson estimates (order 1 only; equal to `value` otherwise).
    pub one_sided: (f64, f64),
    /// Set when the Richardson levels or the one-sided estimates disagree
    /// by more than `10 * eps_deriv`.
    pub non_smooth: bool,
}

/// Central-difference derivative of order 1 or 2 with one Richardson step.
///
/// The step is `deriv_step * max(1, |x|)` and the stencil spans `x ± 2h`,
/// which must lie in the domain.
pub fn derivative(f: &FunctionModel, x: f64, order: u32, cfg: &ToleranceConfig) -> Result<DerivativeEstimate> {
    if !(1..=2).contains(&order) {
        return Err(Error::Precondition(format!("derivative order must be 1 or 2, got {order}")));
    }
    let h = cfg.deriv_step * x.abs().max(1.0);
    let dom = f.domain();
    for p in [x - 2.0 * h, x + 2.0 * h] {
        if !dom.contains(p) {
            return Err(Error::Domain {
                x,
                domain: format!("{dom} (stencil x ± {} leaves it)", 2.0 * h),
            });
        }
    }
    let e = |t: f64| f.eval(t);
    let (fm2, fm1, f0, fp1, fp2) = (e(x - 2.0 * h)?, e(x - h)?, e(x)?, e(x + h)?, e(x + 2.0 * h)?);
    let tol = 10.0 * cfg.eps_deriv;
    let est = if order == 1 {
        let fine = (fp1 - fm1) / (2.0 * h);
        let coarse = (fp2 - fm2) / (4.0 * h);
        let value = (4.0 * fine - coarse) / 3.0;
        let fwd = 2.0 * (fp1 - f0) / h - (fp2 - f0) / (2.0 * h);
        let bwd = 2.0 * (f0 - fm1) / h - (f0 - fm2) / (2.0 * h);
        DerivativeEstimate {
            value,
            order,
            step: h,
            level_fine: fine,
            level_coarse: coarse,
            one_sided: (fwd, bwd),
            non_smooth: (fine - coarse).abs() > tol || (fwd - bwd).abs() > tol,
        }
    } else {
        let fine = (fp1 - 2.0 * f0 + fm1) / (h * h);
        let coarse = (fp2 - 2.0 * f0 + fm2) / (4.0 * h * h);
        let value = (4.0 * fine - coarse) / 3.0;
        DerivativeEstimate {
            value,
            order,
            step: h,
            level_fine: fine,
            level_coarse: coarse,
            one_sided: (value, value),
            non_smooth: (fine - coarse).abs() > tol,
        }
    };
    Ok(est)
}

/// Shorthand for the first-derivative value.
pub(crate) fn slope(f: &FunctionModel, x: f64, cfg: &ToleranceConfig) -> Result<f64> {
    derivative(f, x, 1, cfg).map(|d| d.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::model::parse_function_spec;

    #[test]
    fn square_slope() {
        let f = parse_function_spec("poly:[1,0,0] on (0,1)").unwrap();
        let d = derivative(&f, 0.3, 1, &ToleranceConfig::default()).unwrap();
        assert!((d.value - 0.6).abs() <= 1e-6);
        assert!(!d.non_smooth);
    }

    #[test]
    fn affine_curvature_vanishes() {
        let f = FunctionModel::affine(3.0, 1.0, Interval::open(-100.0, 100.0).unwrap());
        let cfg = ToleranceConfig::default();
        for x in [-50.0, -0.7, 0.0, 0.2, 0.9, 42.0] {
            assert!(derivative(&f, x, 2, &cfg).unwrap().value.abs() <= 1e-6);
        }
    }

    #[test]
    fn kink_is_flagged() {
        let f = parse_function_spec("abs-shift:0.5 on (0,1)").unwrap();
        let d = derivative(&f, 0.5, 1, &ToleranceConfig::default()).unwrap();
        assert!(d.non_smooth);
        assert!((d.one_sided.0 - 1.0).abs() < 1e-9 && (d.one_sided.1 + 1.0).abs() < 1e-9);
    }

    #[test]
    fn boundary_stencil_is_rejected() {
        let f = parse_function_spec("poly:[1,0,0] on (0,1)").unwrap();
        let r = derivative(&f, 1e-5, 1, &ToleranceConfig::default());
        assert!(matches!(r, Err(Error::Domain { .. })));
    }
}
