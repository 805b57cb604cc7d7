/// Sorted distinct positive differences `a - a'` of a point list.
pub fn positive_differences(points: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(points.len() * points.len() / 2);
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            let d = (a - b).abs();
            if d > 0.0 {
                out.push(d);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// Nonzero elements of `(C - C) ∩ (D - D)` up to `tol`, as `(c - c', d - d')` pairs.
///
/// Only positive representatives are listed: both difference sets are
/// symmetric under negation.
pub fn difference_set_intersection(c: &[f64], d: &[f64], tol: f64) -> Vec<(f64, f64)> {
    let dc = positive_differences(c);
    let dd = positive_differences(d);
    let mut out = Vec::new();
    let mut start = 0;
    for &x in &dc {
        while start < dd.len() && dd[start] < x - tol {
            start += 1;
        }
        out.extend(dd[start..].iter().take_while(|&&y| y <= x + tol).map(|&y| (x, y)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_example() {
        let m = difference_set_intersection(&[0.0, 1.0, 2.0], &[0.0, 0.5, 1.5], 1e-12);
        assert_eq!(m, vec![(1.0, 1.0)]);
    }

    #[test]
    fn identical_sets_match_completely() {
        let c = [0.0, 0.25, 0.3, 0.9];
        let m = difference_set_intersection(&c, &c, 0.0);
        let diffs = positive_differences(&c);
        assert_eq!(m.len(), diffs.len());
        assert!(m.iter().all(|(a, b)| a == b));
    }
}
