use serde::{Deserialize, Serialize};

/// Endpoints of bounded complementary intervals in ω-order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmegaOrder {
    pub elements: Vec<f64>,
    /// `δ(d)`: the shortest complementary interval with endpoint `d`.
    pub delta_values: Vec<f64>,
}

/// ω-order of a finite set: `d ≺ d'` when `δ(d') < δ(d)`, or the δ agree and `d < d'`.
pub fn omega_order(points: &[f64]) -> OmegaOrder {
    omega_order_at(points, 0.0)
}

/// As [`omega_order`], treating gaps of length `<= resolution` as filled.
pub fn omega_order_at(points: &[f64], resolution: f64) -> OmegaOrder {
    let mut pts: Vec<f64> = points.iter().copied().filter(|v| v.is_finite()).collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut delta = vec![f64::INFINITY; pts.len()];
    for i in 0..pts.len().saturating_sub(1) {
        let len = pts[i + 1] - pts[i];
        if len > resolution {
            delta[i] = delta[i].min(len);
            delta[i + 1] = delta[i + 1].min(len);
        }
    }
    let mut pairs: Vec<(f64, f64)> = pts
        .into_iter()
        .zip(delta)
        .filter(|(_, d)| d.is_finite())
        .collect();
    pairs.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.total_cmp(&b.0)));
    OmegaOrder {
        elements: pairs.iter().map(|p| p.0).collect(),
        delta_values: pairs.iter().map(|p| p.1).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_quadruple() {
        let o = omega_order(&[1.0, 0.5, 1.0 / 3.0, 0.25]);
        assert_eq!(o.elements, vec![1.0, 0.5, 0.25, 1.0 / 3.0]);
        let want = [0.5, 1.0 / 6.0, 1.0 / 12.0, 1.0 / 12.0];
        for (d, w) in o.delta_values.iter().zip(want) {
            assert!((d - w).abs() < 1e-15);
        }
    }

    #[test]
    fn two_points() {
        let o = omega_order(&[1.0, 0.0]);
        assert_eq!(o.elements, vec![0.0, 1.0]);
        assert_eq!(o.delta_values, vec![1.0, 1.0]);
    }

    #[test]
    fn gapless_grid_at_resolution() {
        let grid: Vec<f64> = (0..=64).map(|i| i as f64 / 64.0).collect();
        assert!(omega_order_at(&grid, 1.0 / 32.0).elements.is_empty());
        assert!(omega_order(&[0.5]).elements.is_empty());
    }
}
