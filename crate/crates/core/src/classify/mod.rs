//! Function classifiers: repetition, convexity, local affineness, weak
//! poles, continuity moduli and the combined report.

mod affine;
mod convexity;
mod modulus;
mod pole;
mod repetition;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use affine::{locally_affine_regions, midpoint_affine_defect, AffineRegions, DEFAULT_AFFINE_DEPTH, LEAF_POINTS};
pub use convexity::{strict_convexity_test, Convexity, ConvexityReport, MAX_QUADRUPLES};
pub use modulus::{uniform_continuity_modulus, ModulusReport, ModulusRow};
pub use pole::{weak_pole_check, ACCUMULATION_RATIO, FamilyModel, MemberImage, PoleVerdict, WeakPoleReport};
pub use repetition::{find_repetition_witness, RepetitionWitness, EPS_GRID};

use crate::config::ToleranceConfig;
use crate::diff::{certify_smoothness, SmoothnessCertificate};
use crate::error::Result;
use crate::interval::Interval;
use crate::model::FunctionModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    FieldTypeEvidence,
    GenericallyAffine,
    TypeBConsistent,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubintervalWitness {
    pub interval: Interval,
    pub witness: Option<RepetitionWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrichotomyReport {
    pub smoothness: SmoothnessCertificate,
    pub convexity: Convexity,
    pub convexity_detail: ConvexityReport,
    pub repetition: Vec<SubintervalWitness>,
    pub affine_coverage: f64,
    pub affine_depth: u32,
    /// Largest midpoint defect over the certified regions.
    pub certified_defect: f64,
    pub verdict: Verdict,
}

/// Coverage at or above which a model counts as generically locally affine.
pub const GENERIC_COVERAGE: f64 = 0.95;
/// Coverage below which witnesses everywhere suggest type B behaviour.
pub const NOWHERE_AFFINE_COVERAGE: f64 = 0.05;
const SUBINTERVAL_DEPTH: u32 = 3;
const REGION_DEFECT_POINTS: usize = 64;

/// Runs the smoothness, convexity, repetition and affineness analyses on
/// `I` and combines them:
///
/// * `field_type_evidence`: some C²-certified region has affine defect above `eps_value`;
/// * `generically_affine`: affine coverage at least [`GENERIC_COVERAGE`];
/// * `type_b_consistent`: a repetition witness on each of the 8 dyadic
///   subintervals and coverage below [`NOWHERE_AFFINE_COVERAGE`];
/// * `inconclusive` otherwise.
pub fn classify_function(f: &FunctionModel, i: &Interval, affine_depth: u32, cfg: &ToleranceConfig) -> Result<TrichotomyReport> {
    cfg.validate()?;
    f.require_within(i)?;
    let smoothness = certify_smoothness(f, i, 2, cfg)?;
    let convexity_detail = strict_convexity_test(f, i, cfg.grid_n, cfg)?;
    let repetition = i
        .dyadic_pieces(SUBINTERVAL_DEPTH)
        .into_par_iter()
        .map(|sub| {
            let witness = find_repetition_witness(f, &sub, sub.len() / 64.0, cfg)?;
            Ok(SubintervalWitness { interval: sub, witness })
        })
        .collect::<Result<Vec<_>>>()?;
    let affine = locally_affine_regions(f, i, affine_depth, cfg)?;
    let mut certified_defect = 0.0f64;
    for region in smoothness.intervals(i) {
        certified_defect = certified_defect.max(midpoint_affine_defect(f, &region, REGION_DEFECT_POINTS)?);
    }
    let verdict = if certified_defect > cfg.eps_value {
        Verdict::FieldTypeEvidence
    } else if affine.coverage >= GENERIC_COVERAGE {
        Verdict::GenericallyAffine
    } else if repetition.iter().all(|r| r.witness.is_some()) && affine.coverage < NOWHERE_AFFINE_COVERAGE {
        Verdict::TypeBConsistent
    } else {
        Verdict::Inconclusive
    };
    Ok(TrichotomyReport {
        smoothness,
        convexity: convexity_detail.class,
        convexity_detail,
        repetition,
        affine_coverage: affine.coverage,
        affine_depth,
        certified_defect,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_function_spec;

    fn f(spec: &str) -> FunctionModel {
        parse_function_spec(spec).unwrap()
    }

    fn unit() -> Interval {
        Interval::open(0.0, 1.0).unwrap()
    }

    #[test]
    fn repetition_examples() {
        let cfg = ToleranceConfig::default();
        let w = find_repetition_witness(&f("sawtooth:0.25 on (0,1)"), &unit(), 0.05, &cfg).unwrap().unwrap();
        assert!((w.y - w.x - 0.25).abs() < 1e-12);
        assert!(w.max_residual <= 1e-9);
        assert!(w.delta < w.y - w.x);
        assert!(find_repetition_witness(&f("poly:[1,0,0] on (0,1)"), &unit(), 0.05, &cfg).unwrap().is_none());
        let a = find_repetition_witness(&f("affine:3,1 on (0,1)"), &unit(), 0.1, &cfg).unwrap().unwrap();
        assert!(a.max_residual <= 1e-9);
    }

    #[test]
    fn convexity_examples() {
        let cfg = ToleranceConfig::default();
        let c = |s: &str, j: Interval| strict_convexity_test(&f(s), &j, 64, &cfg).unwrap().class;
        assert_eq!(c("poly:[1,0,0] on (0,1)", unit()), Convexity::StrictlyConvex);
        assert_eq!(c("poly:[-1,0,0] on (0,1)", unit()), Convexity::StrictlyConcave);
        assert_eq!(c("affine:3,1 on (0,1)", unit()), Convexity::Neither);
        let j = Interval::open(0.1, 3.0).unwrap();
        assert_eq!(c("sin on (0.1,3)", j), Convexity::StrictlyConcave);
        let j = Interval::open(0.1, 6.0).unwrap();
        assert_eq!(c("sin on (0.1,6)", j), Convexity::Neither);
    }

    #[test]
    fn sampled_convexity_uses_seed() {
        let cfg = ToleranceConfig::default();
        let r = strict_convexity_test(&f("poly:[1,0,0] on (0,1)"), &unit(), 1024, &cfg).unwrap();
        assert!(!r.exhaustive);
        assert_eq!(r.class, Convexity::StrictlyConvex);
        assert!(r.quadruples > MAX_QUADRUPLES);
    }

    #[test]
    fn midpoint_defects() {
        assert!(midpoint_affine_defect(&f("affine:3,1 on (0,1)"), &unit(), 64).unwrap() <= 1e-15);
        let d = midpoint_affine_defect(&f("poly:[1,0,0] on (0,1)"), &unit(), 256).unwrap();
        assert!((d - 0.25).abs() <= 0.0125);
        assert!(midpoint_affine_defect(&f("cantor on (0,1)"), &unit(), 64).unwrap() > 0.1);
    }

    #[test]
    fn affine_regions_of_three_segments() {
        let g = f("grid:[0,0.3,0.7,1]->[0,1,-1,0.5] linear");
        let r = locally_affine_regions(&g, &g.domain(), DEFAULT_AFFINE_DEPTH, &ToleranceConfig::default()).unwrap();
        assert_eq!(r.regions.len(), 3);
        assert!(r.coverage > 0.99);
        let sq = locally_affine_regions(&f("poly:[1,0,0] on (0,1)"), &unit(), 12, &ToleranceConfig::default()).unwrap();
        assert_eq!(sq.coverage, 0.0);
    }

    #[test]
    fn weak_pole_examples() {
        let cfg = ToleranceConfig::default().with_grid(256);
        let e: Vec<f64> = (1..=64).map(|n| 1.0 / n as f64).collect();
        let scaled = FamilyModel::from_fn(&e, |d| Ok(FunctionModel::affine(1.0 / d, 0.0, Interval::closed(0.0, d)?))).unwrap();
        let r = weak_pole_check(&scaled, 0.5, &cfg).unwrap();
        assert_eq!(r.verdict, PoleVerdict::WeakPole);
        assert!((r.delta - 1.0).abs() < 1e-12);
        let ident = FamilyModel::from_fn(&e, |d| Ok(FunctionModel::affine(1.0, 0.0, Interval::closed(0.0, d)?))).unwrap();
        assert_eq!(weak_pole_check(&ident, 0.5, &cfg).unwrap().verdict, PoleVerdict::NotWeakPoleAtResolution);
        let short = FamilyModel { members: scaled.members[..4].to_vec() };
        assert!(matches!(weak_pole_check(&short, 0.5, &cfg), Err(crate::Error::Accumulation(_))));
    }

    #[test]
    fn oscillating_family_is_a_weak_pole() {
        let cfg = ToleranceConfig::default().with_grid(512);
        let base = f("sininv on (0,1)");
        let e: Vec<f64> = (8..=160).map(|n| 1.0 / n as f64).collect();
        let fam = FamilyModel::from_fn(&e, |d| Ok(base.translate(d))).unwrap();
        let r = weak_pole_check(&fam, 0.9, &cfg).unwrap();
        assert_eq!(r.verdict, PoleVerdict::WeakPole, "{r:?}");
    }

    #[test]
    fn continuity_moduli() {
        let cfg = ToleranceConfig::default();
        let r = uniform_continuity_modulus(&f("affine:3,1 on (0,1)"), &unit(), &cfg).unwrap();
        for row in &r.rows {
            assert!((row.delta - row.eps / 3.0).abs() <= 0.1 * row.eps / 3.0, "{row:?}");
        }
        assert!(!r.collapse);
        let r = uniform_continuity_modulus(&f("poly:[1,0,0] on (0,1)"), &unit(), &cfg).unwrap();
        assert!(r.rows.iter().all(|row| row.delta >= 0.9 * row.eps / 2.0));
        let j = Interval::open(0.001, 1.0).unwrap();
        let r = uniform_continuity_modulus(&f("sininv on (0.001,1)"), &j, &cfg).unwrap();
        assert!(r.collapse);
    }

    #[test]
    fn combined_verdicts() {
        let cfg = ToleranceConfig::default();
        let r = classify_function(&f("poly:[1,0,0] on (0,1)"), &unit(), DEFAULT_AFFINE_DEPTH, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::FieldTypeEvidence);
        assert!(r.repetition.iter().all(|w| w.witness.is_none()));
        let r = classify_function(&f("affine:9,9 on (0,1)"), &unit(), DEFAULT_AFFINE_DEPTH, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::GenericallyAffine);
        assert_eq!(r.affine_coverage, 1.0);
    }
}
