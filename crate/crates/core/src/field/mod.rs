//! Ordered-field synthesis from a non-affine C¹ function.
//!
//! A function is normalized to `F` on `[0, b]` with `F'(0) = 0`,
//! `F'(b) = 1` and `F'` strictly increasing on the strictly monotone case.
//! The derivative then defines an order-preserving bijection `τ` from
//! `F = E ∪ E1 ∪ E2 ∪ E3 ⊂ (-2b, 2b)` onto the reals, and `⊕`, `⊗` are the
//! operations pulled back through `τ`.

mod axioms;
mod normalize;
mod slopes;
mod structure;

pub use axioms::{verify_field_axioms, AxiomFailure, AxiomReport, AxiomResiduals, AXIOM_TOL, MIN_TRIALS, ORDER_TOL, SAMPLE_BOUND};
pub use normalize::{normalize, Case, NormalizedFunction, Provenance, Q_DENOMINATOR};
pub use slopes::{compare_slopes, SlopeComparison};
pub use structure::{build_e, field_add, field_mul, Branch, FieldStructure, TauEntry};

#[cfg(test)]
mod tests {
    use std::cmp::Ordering;

    use super::*;
    use crate::config::ToleranceConfig;
    use crate::error::Error;
    use crate::interval::Interval;
    use crate::model::parse_function_spec;

    fn square_wide() -> NormalizedFunction {
        let f = parse_function_spec("poly:[1,0,0] on (-1,2)").unwrap();
        normalize(&f, &Interval::closed(0.0, 1.0).unwrap(), &ToleranceConfig::default()).unwrap()
    }

    #[test]
    fn square_on_wide_domain() {
        let nf = square_wide();
        let p = &nf.provenance;
        assert!(p.q_skipped && !p.flipped && p.n_scale == 1);
        assert!((nf.b - 0.5).abs() < 1e-9, "b = {}", nf.b);
        assert!(p.invariants_hold);
    }

    #[test]
    fn square_on_unit_interval() {
        let f = parse_function_spec("poly:[1,0,0] on (0,1)").unwrap();
        let i = f.domain();
        let nf = normalize(&f, &i, &ToleranceConfig::default()).unwrap();
        let p = &nf.provenance;
        assert_eq!(p.q, 1.0);
        assert_eq!(p.n_scale, 2);
        assert!((p.c - 0.5).abs() < 1e-9);
        assert!((nf.b - 0.25).abs() < 1e-9);
        assert!(p.invariants_hold);
    }

    #[test]
    fn normalize_is_idempotent() {
        let cfg = ToleranceConfig::default();
        let nf = square_wide();
        let again = normalize(&nf.f, &nf.interval(), &cfg).unwrap();
        assert_eq!(again.f, nf.f);
        assert!((again.b - nf.b).abs() <= 1e-9);
        for x in nf.interval().grid(33) {
            assert!((again.slope(x, &cfg).unwrap() - nf.slope(x, &cfg).unwrap()).abs() <= cfg.eps_deriv);
        }
    }

    #[test]
    fn decreasing_derivative_is_flipped() {
        let f = parse_function_spec("poly:[-1,0,0] on (-1,2)").unwrap();
        let nf = normalize(&f, &Interval::closed(0.0, 1.0).unwrap(), &ToleranceConfig::default()).unwrap();
        assert!(nf.provenance.flipped);
        assert!(nf.provenance.invariants_hold);
    }

    #[test]
    fn affine_and_constant_derivative_rejected() {
        let cfg = ToleranceConfig::default();
        let f = parse_function_spec("affine:2,1 on (0,1)").unwrap();
        assert!(matches!(normalize(&f, &f.domain(), &cfg), Err(Error::AffineInput { .. })));
    }

    #[test]
    fn tau_values_and_operations() {
        let cfg = ToleranceConfig::default();
        let fs = FieldStructure::build(square_wide(), 1024, &cfg).unwrap();
        assert!(fs.continuous);
        assert_eq!(fs.tau(0.0).unwrap(), 0.0);
        assert_eq!(fs.tau(fs.b).unwrap(), 1.0);
        assert!((fs.tau(0.25).unwrap() - 0.5).abs() < 1e-8);
        assert!((fs.tau(0.75).unwrap() - 2.0).abs() < 1e-8);
        assert!((fs.tau(-0.25).unwrap() + 0.5).abs() < 1e-8);
        assert!((field_add(&fs, 0.25, 0.375).unwrap() - 0.6).abs() < 1e-8);
        assert!((field_mul(&fs, 0.25, 0.25).unwrap() - 0.125).abs() < 1e-8);
        assert!(matches!(fs.tau(1.5), Err(Error::NotInF { .. })));
        assert!(matches!(fs.tau_inv(1e9), Err(Error::Range { .. })));
    }

    #[test]
    fn branches_are_disjoint_and_tau_is_monotone() {
        let fs = FieldStructure::build(square_wide(), 256, &ToleranceConfig::default()).unwrap();
        assert!(fs.table.windows(2).all(|w| w[0].x < w[1].x && w[0].tau < w[1].tau));
    }

    #[test]
    fn axioms_hold_for_square() {
        let cfg = ToleranceConfig::default();
        let fs = FieldStructure::build(square_wide(), 1024, &cfg).unwrap();
        let r = verify_field_axioms(&fs, 200, &cfg).unwrap();
        assert!(r.passed, "{:?}", &r.failures[..r.failures.len().min(3)]);
        assert!(r.max_residual <= AXIOM_TOL);
        assert_eq!(r.order_violations, 0);
        assert!(matches!(verify_field_axioms(&fs, 10, &cfg), Err(Error::Precondition(_))));
    }

    #[test]
    fn piecewise_affine_is_nowhere_monotone() {
        let cfg = ToleranceConfig::default();
        let f = parse_function_spec("grid:[0,0.25,0.5,0.75,1]->[0,0.1,0.3,0.6,1] linear").unwrap();
        let nf = normalize(&f, &Interval::closed(0.1, 0.9).unwrap(), &cfg).unwrap();
        assert_eq!(nf.provenance.case, Case::NowhereMonotone);
        assert!(nf.provenance.case_ii_warning);
    }

    #[test]
    fn slope_comparison() {
        let cfg = ToleranceConfig::default();
        let base = square_wide();
        let f = parse_function_spec("poly:[1,0,0] on (-1,2)").unwrap();
        let gx = f.increment_at(0.1).unwrap();
        let gy = f.increment_at(0.2).unwrap();
        let c = compare_slopes(&base, &gx, &gy, &cfg).unwrap();
        assert_eq!(c.order, Ordering::Less);
        assert!(c.agrees);
        assert_eq!(compare_slopes(&base, &gy, &gx, &cfg).unwrap().order, Ordering::Greater);
        assert_eq!(compare_slopes(&base, &gx, &gx, &cfg).unwrap().order, Ordering::Equal);
        assert!(matches!(compare_slopes(&base, &f.add_affine(0.0, 1.0), &gx, &cfg), Err(Error::Precondition(_))));
    }
}
