//! Expression trees over the builtin catalog.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

/// A closed-form real function of one variable `x`.
///
/// Leaves are `x` and constants; every builtin takes an argument expression,
/// so translated or rescaled catalog members stay inside the tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expr {
    X,
    Const(f64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Scale(f64, Box<Expr>),
    /// Coefficients from the highest power down to the constant term.
    Poly(Vec<f64>, Box<Expr>),
    Abs(Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
    Sin(Box<Expr>),
    Exp(Box<Expr>),
    Recip(Box<Expr>),
    Cantor(Box<Expr>),
    /// Triangle wave `dist(t / period, Z)`, continuous with the given period.
    Sawtooth(f64, Box<Expr>),
    /// Partial sum `sum_{n=0..=N} 2^-n cos(2^n pi t)`.
    Weier(u32, Box<Expr>),
    /// Piecewise-affine interpolant through `(knots, values)`, extended
    /// affinely beyond the end knots.
    PiecewiseAffine {
        knots: Vec<f64>,
        values: Vec<f64>,
        arg: Box<Expr>,
    },
}

impl Expr {
    pub fn x() -> Self {
        Expr::X
    }

    pub fn poly(coeffs: Vec<f64>) -> Self {
        Expr::Poly(coeffs, Box::new(Expr::X))
    }

    pub fn affine(m: f64, b: f64) -> Self {
        Expr::poly(vec![m, b])
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Expr::X => x,
            Expr::Const(c) => *c,
            Expr::Add(a, b) => a.eval(x) + b.eval(x),
            Expr::Sub(a, b) => a.eval(x) - b.eval(x),
            Expr::Scale(c, a) => c * a.eval(x),
            Expr::Poly(cs, a) => horner(cs, a.eval(x)),
            Expr::Abs(a) => a.eval(x).abs(),
            Expr::Min(a, b) => a.eval(x).min(b.eval(x)),
            Expr::Max(a, b) => a.eval(x).max(b.eval(x)),
            Expr::Sin(a) => a.eval(x).sin(),
            Expr::Exp(a) => a.eval(x).exp(),
            Expr::Recip(a) => 1.0 / a.eval(x),
            Expr::Cantor(a) => cantor(a.eval(x)),
            Expr::Sawtooth(p, a) => sawtooth(*p, a.eval(x)),
            Expr::Weier(n, a) => weierstrass(*n, a.eval(x)),
            Expr::PiecewiseAffine { knots, values, arg } => {
                piecewise_affine(knots, values, arg.eval(x))
            }
        }
    }

    /// Replace every occurrence of `x` by `inner`.
    pub fn substitute(&self, inner: &Expr) -> Expr {
        let sub = |e: &Expr| Box::new(e.substitute(inner));
        match self {
            Expr::X => inner.clone(),
            Expr::Const(c) => Expr::Const(*c),
            Expr::Add(a, b) => Expr::Add(sub(a), sub(b)),
            Expr::Sub(a, b) => Expr::Sub(sub(a), sub(b)),
            Expr::Scale(c, a) => Expr::Scale(*c, sub(a)),
            Expr::Poly(cs, a) => Expr::Poly(cs.clone(), sub(a)),
            Expr::Abs(a) => Expr::Abs(sub(a)),
            Expr::Min(a, b) => Expr::Min(sub(a), sub(b)),
            Expr::Max(a, b) => Expr::Max(sub(a), sub(b)),
            Expr::Sin(a) => Expr::Sin(sub(a)),
            Expr::Exp(a) => Expr::Exp(sub(a)),
            Expr::Recip(a) => Expr::Recip(sub(a)),
            Expr::Cantor(a) => Expr::Cantor(sub(a)),
            Expr::Sawtooth(p, a) => Expr::Sawtooth(*p, sub(a)),
            Expr::Weier(n, a) => Expr::Weier(*n, sub(a)),
            Expr::PiecewiseAffine { knots, values, arg } => Expr::PiecewiseAffine {
                knots: knots.clone(),
                values: values.clone(),
                arg: sub(arg),
            },
        }
    }
}

fn horner(cs: &[f64], t: f64) -> f64 {
    cs.iter().fold(0.0, |acc, &c| acc * t + c)
}

/// The middle-thirds Cantor function, clamped to 0 left of 0 and 1 right of 1.
///
/// Ternary digits are extracted exactly from the binary representation of
/// `x`, so points inside a removed gap always land on the same dyadic value.
pub fn cantor(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    // x = m / 2^k exactly, with m < 2^53.
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let (mant, e) = if exp == 0 {
        (bits & ((1u64 << 52) - 1), -1074)
    } else {
        ((bits & ((1u64 << 52) - 1)) | (1u64 << 52), exp - 1075)
    };
    let k = -e;
    if k > 120 {
        // Below 2^-68 the value is under 2^-42; use the plain iteration.
        return cantor_float(x);
    }
    let k = k as u32;
    let mask: u128 = (1u128 << k) - 1;
    let mut m = mant as u128;
    let mut result = 0.0;
    let mut scale = 0.5;
    for _ in 0..64 {
        if m == 0 {
            break;
        }
        m *= 3;
        let digit = m >> k;
        m &= mask;
        match digit {
            1 => return result + scale,
            2 => result += scale,
            _ => {}
        }
        scale *= 0.5;
    }
    result
}

fn cantor_float(mut x: f64) -> f64 {
    let mut result = 0.0;
    let mut scale = 0.5;
    for _ in 0..40 {
        x *= 3.0;
        let d = x.floor();
        x -= d;
        if d == 1.0 {
            return result + scale;
        }
        if d == 2.0 {
            result += scale;
        }
        scale *= 0.5;
    }
    result
}

pub fn sawtooth(period: f64, x: f64) -> f64 {
    let t = x / period;
    (t - t.round()).abs()
}

pub fn weierstrass(n: u32, x: f64) -> f64 {
    let mut sum = 0.0;
    let mut amp = 1.0;
    let mut freq = PI;
    for _ in 0..=n {
        sum += amp * (freq * x).cos();
        amp *= 0.5;
        freq *= 2.0;
    }
    sum
}

pub fn piecewise_affine(knots: &[f64], values: &[f64], t: f64) -> f64 {
    debug_assert!(knots.len() >= 2 && knots.len() == values.len());
    let n = knots.len();
    let i = match knots.partition_point(|&k| k <= t) {
        0 => 0,
        p if p >= n => n - 2,
        p => p - 1,
    };
    let (k0, k1) = (knots[i], knots[i + 1]);
    let (v0, v1) = (values[i], values[i + 1]);
    if t == k0 {
        return v0;
    }
    v0 + (v1 - v0) * (t - k0) / (k1 - k0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cantor_known_values() {
        assert_eq!(cantor(0.0), 0.0);
        assert_eq!(cantor(1.0), 1.0);
        assert_eq!(cantor(0.5), 0.5);
        assert_eq!(cantor(0.4), 0.5);
        assert_eq!(cantor(0.6), 0.5);
        assert_eq!(cantor(1.5 / 9.0), 0.25);
        assert!((cantor(0.25) - 1.0 / 3.0).abs() < 1e-12);
        assert!((cantor(0.75) - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn cantor_is_monotone_on_a_grid() {
        let mut prev = 0.0;
        for i in 0..=4096 {
            let v = cantor(i as f64 / 4096.0);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn sawtooth_is_periodic_triangle() {
        assert_eq!(sawtooth(0.25, 0.0), 0.0);
        assert_eq!(sawtooth(0.25, 0.125), 0.5);
        assert_eq!(sawtooth(0.25, 0.3125), sawtooth(0.25, 0.0625));
    }

    #[test]
    fn weierstrass_at_zero() {
        assert!((weierstrass(3, 0.0) - (1.0 + 0.5 + 0.25 + 0.125)).abs() < 1e-15);
    }

    #[test]
    fn piecewise_affine_interpolates_and_extends() {
        let k = [0.0, 1.0, 2.0];
        let v = [0.0, 2.0, 0.0];
        assert_eq!(piecewise_affine(&k, &v, 0.5), 1.0);
        assert_eq!(piecewise_affine(&k, &v, 1.0), 2.0);
        assert_eq!(piecewise_affine(&k, &v, 1.5), 1.0);
        assert_eq!(piecewise_affine(&k, &v, 3.0), -2.0);
        assert_eq!(piecewise_affine(&k, &v, -1.0), -2.0);
    }

    #[test]
    fn substitution_translates() {
        let e = Expr::poly(vec![1.0, 0.0, 0.0]);
        let shifted = e.substitute(&Expr::affine(1.0, -0.5));
        assert_eq!(shifted.eval(0.75), 0.0625);
    }
}
