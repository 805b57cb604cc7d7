use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::word::{check_base, DigitWord};
use crate::error::{Error, Result};

/// Inputs must satisfy `|x| < r^MAX_EXPONENT`.
pub const MAX_EXPONENT: i32 = 30;

/// Largest precision whose digits are exact for a double input: `⌊52 ln 2 / ln r⌋`.
pub fn max_precision(r: u32) -> u32 {
    (52.0 * std::f64::consts::LN_2 / (r as f64).ln()).floor() as u32
}

/// Base-`r` expansions of `x` with `precision` fractional digits.
///
/// The first word is canonical (not ending in all `r-1`). When `x` is an
/// `r`-adic rational at this precision a second word ending in the period
/// `(r-1)` is returned; zero has only the canonical word.
pub fn encode(x: f64, r: u32, precision: u32) -> Result<Vec<DigitWord>> {
    check_base(r)?;
    let bound = max_precision(r);
    if precision > bound {
        return Err(Error::Precision { precision, base: r, bound });
    }
    let limit = (r as f64).powi(MAX_EXPONENT);
    if !x.is_finite() || x.abs() >= limit {
        return Err(Error::Range { value: x, limit });
    }
    let xq = BigRational::from_float(x).expect("finite");
    let rb = BigInt::from(r);
    let mut p = 0;
    while !fits(&xq, &rb, p) {
        p += 1;
    }
    let (canon, exact) = digits_at(&xq, r, p, precision);
    let mut out = vec![canon.clone()];
    if exact && !xq.is_zero() {
        out.push(alternative(&canon).unwrap_or_else(|| {
            // Only the leading digit is non-zero (x = -r^p): widen once.
            alternative(&digits_at(&xq, r, p + 1, precision).0).expect("widened word has an inner non-zero digit")
        }));
    }
    Ok(out)
}

/// `-r^p <= x < r^p`.
fn fits(x: &BigRational, r: &BigInt, p: u32) -> bool {
    let rp = BigRational::from_integer(r.pow(p));
    -&rp <= *x && *x < rp
}

/// Canonical digits with leading position `p`; also reports whether the
/// remainder vanished.
fn digits_at(x: &BigRational, r: u32, p: u32, precision: u32) -> (DigitWord, bool) {
    let rb = BigInt::from(r);
    let rp = BigRational::from_integer(rb.pow(p));
    let lead = if x.is_negative() { r - 1 } else { 0 };
    // Remainder after the leading term, in [0, r^p).
    let mut y = if lead == 0 { x.clone() } else { x + &rp };
    let mut scale = rp;
    let rr = BigRational::from_integer(rb);
    let mut int_digits = vec![lead as u8];
    let mut frac_digits = Vec::with_capacity(precision as usize);
    for pos in (-(precision as i64)..p as i64).rev() {
        scale /= &rr;
        let d = (&y / &scale).floor().to_integer();
        y -= &scale * &d;
        let d: u8 = d.try_into().expect("digit below base");
        if pos >= 0 {
            int_digits.push(d);
        } else {
            frac_digits.push(d);
        }
    }
    let word = DigitWord { r, int_digits, frac_digits, period: None };
    (word, y.is_zero())
}

/// The expansion ending in all `r-1`: decrement the last non-zero digit
/// below the leading one.
fn alternative(canon: &DigitWord) -> Option<DigitWord> {
    let mut body: Vec<u8> = canon.int_digits[1..].iter().chain(&canon.frac_digits).copied().collect();
    let k = body.iter().rposition(|&d| d != 0)?;
    let top = (canon.r - 1) as u8;
    body[k] -= 1;
    for d in &mut body[k + 1..] {
        *d = top;
    }
    let n_int = canon.int_digits.len() - 1;
    let mut int_digits = vec![canon.lead()];
    int_digits.extend_from_slice(&body[..n_int]);
    Some(DigitWord { r: canon.r, int_digits, frac_digits: body[n_int..].to_vec(), period: Some(vec![top]) })
}

/// Whether some expansion of `x` has digit `k` at the position `m` with `u = r^m`.
pub fn v_r(x: f64, u: f64, k: u32, r: u32, precision: u32) -> Result<bool> {
    check_base(r)?;
    if k >= r {
        return Err(Error::Precondition(format!("digit {k} outside base {r}")));
    }
    let m = power_of(u, r)?;
    if m.unsigned_abs() > precision {
        return Err(Error::Precondition(format!("position {m} beyond precision {precision}")));
    }
    Ok(encode(x, r, precision)?.iter().any(|w| w.digit_at(m) as u32 == k))
}

/// `m` with `u = r^m` to relative tolerance `1e-12`.
pub fn power_of(u: f64, r: u32) -> Result<i32> {
    if u > 0.0 && u.is_finite() {
        let m = (u.ln() / (r as f64).ln()).round();
        let target = (r as f64).powi(m as i32);
        if (u - target).abs() <= 1e-12 * target {
            return Ok(m as i32);
    }
    }
    Err(Error::NotAPower { u, base: r })
}

/// Whether `x` (read exactly) has a denominator dividing a power of `r`.
pub fn is_r_adic(x: f64, r: u32) -> bool {
    let Some(q) = BigRational::from_float(x) else { return false };
    let mut d = q.denom().clone();
    let rb = BigInt::from(r);
    loop {
        let g = d.gcd(&rb);
        if g == BigInt::from(1) {
            return d == BigInt::from(1);
    }
        d /= g;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(x: f64, r: u32, p: u32) -> Vec<String> {
        encode(x, r, p).unwrap().iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(strs(0.5, 2, 4), ["0⋆1000", "0⋆0111(1)"]);
        assert_eq!(strs(-1.0, 2, 3)[0], "1⋆000");
        assert_eq!(strs(0.0, 3, 3), ["0⋆000"]);
        assert_eq!(strs(5.0, 10, 2), ["05⋆00", "04⋆99(9)"]);
        assert_eq!(strs(-4.0, 2, 1), ["100⋆0", "1011⋆1(1)"]);
    }

    #[test]
    fn v_r_examples() {
        assert!(v_r(0.5, 0.5, 1, 2, 8).unwrap());
        assert!(v_r(0.5, 0.25, 1, 2, 8).unwrap());
        assert!(!v_r(0.75, 1.0, 1, 2, 8).unwrap());
        assert!(matches!(v_r(0.5, 0.3, 1, 2, 8), Err(Error::NotAPower { .. })));
    }

    #[test]
    fn precision_bound() {
        assert_eq!(max_precision(2), 52);
        assert_eq!(max_precision(10), 15);
        assert!(matches!(encode(0.1, 10, 16), Err(Error::Precision { .. })));
    }
}
