use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const STAR: char = '⋆';

/// A base-`r` expansion
/// `z = -a_p/(r-1) r^p + Σ_{i<p} a_i r^i`, with `a_p ∈ {0, r-1}`.
///
/// `int_digits` holds positions `p, p-1, …, 0`; `frac_digits` holds `-1, -2, …`.
/// `period`, when present, repeats forever after the last fractional digit;
/// otherwise the word is finite (all later digits are 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DigitWord {
    pub r: u32,
    pub int_digits: Vec<u8>,
    pub frac_digits: Vec<u8>,
    pub period: Option<Vec<u8>>,
}

impl DigitWord {
    pub fn new(r: u32, int_digits: Vec<u8>, frac_digits: Vec<u8>, period: Option<Vec<u8>>) -> Result<Self> {
        check_base(r)?;
        let lead = *int_digits.first().ok_or_else(|| Error::parse(0, "word needs a leading digit"))?;
        if lead != 0 && lead as u32 != r - 1 {
            return Err(Error::parse(0, format!("leading digit must be 0 or {}, got {lead}", r - 1)));
        }
        let all = int_digits.iter().chain(&frac_digits).chain(period.iter().flatten());
        if let Some(&d) = all.clone().find(|&&d| d as u32 >= r) {
            return Err(Error::parse(0, format!("digit {d} outside base {r}")));
        }
        if period.as_ref().is_some_and(|p| p.is_empty()) {
            return Err(Error::parse(0, "empty period"));
        }
        Ok(DigitWord { r, int_digits, frac_digits, period })
    }

    /// Exponent of the leading position.
    pub fn p(&self) -> i32 {
        self.int_digits.len() as i32 - 1
    }

    pub fn lead(&self) -> u8 {
        self.int_digits[0]
    }

    /// Digit at position `m` (negative for fractional positions). Positions
    /// above `p` repeat the leading digit, which leaves the value unchanged.
    pub fn digit_at(&self, m: i32) -> u8 {
        if m > self.p() {
            return self.lead();
        }
        if m >= 0 {
            return self.int_digits[(self.p() - m) as usize];
        }
        let k = (-m - 1) as usize;
        if let Some(&d) = self.frac_digits.get(k) {
            return d;
        }
        match &self.period {
            Some(per) => per[(k - self.frac_digits.len()) % per.len()],
            None => 0,
        }
    }

    /// Same value with the integer part widened to leading position `p`.
    pub fn widened(&self, p: i32) -> DigitWord {
        let mut w = self.clone();
        while w.p() < p {
            w.int_digits.insert(0, w.lead());
        }
        w
    }

    /// Same value with `len` explicit fractional digits (unrolling the
    /// period, which is rotated to stay in phase). Never shortens.
    pub fn unrolled(&self, len: usize) -> DigitWord {
        let mut w = self.clone();
        while w.frac_digits.len() < len {
            match &mut w.period {
                Some(per) => {
                    let d = per.remove(0);
                    per.push(d);
                    w.frac_digits.push(d);
                }
                None => w.frac_digits.push(0),
            }
        }
        w
    }

    /// Exact value of the (possibly periodic) series.
    pub fn decode_exact(&self) -> BigRational {
        let r = BigInt::from(self.r);
        let rr = BigRational::from_integer(r.clone());
        let p = self.p();
        let mut v = -BigRational::from_integer(BigInt::from(self.lead()) * r.pow(p as u32))
            / BigRational::from_integer(BigInt::from(self.r - 1));
        let mut scale = BigRational::from_integer(r.pow(p as u32));
        for &d in self.int_digits[1..].iter().chain(&self.frac_digits) {
            scale /= &rr;
            v += &scale * BigInt::from(d);
        }
        if let Some(per) = &self.period {
            // The block repeats with ratio r^-L starting right after `scale`.
            let block = per.iter().fold(BigInt::zero(), |acc, &d| acc * &r + d);
            let rl = r.pow(per.len() as u32);
            v += scale * BigRational::new(block, rl - BigInt::one());
        }
        v
    }

    pub fn decode(&self) -> f64 {
        self.decode_exact().to_f64().unwrap_or(f64::NAN)
    }
}

/// `decode` as a free function.
pub fn decode(w: &DigitWord) -> f64 {
    w.decode()
}

pub(crate) fn check_base(r: u32) -> Result<()> {
    if !(2..=36).contains(&r) {
        return Err(Error::Precondition(format!("base must be in 2..=36, got {r}")));
    }
    Ok(())
}

fn digit_char(d: u8) -> char {
    std::char::from_digit(d as u32, 36).expect("digit < 36")
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.int_digits.iter().map(|&d| digit_char(d)).collect();
        let t: String = self.frac_digits.iter().map(|&d| digit_char(d)).collect();
        write!(f, "{s}{STAR}{t}")?;
        if let Some(per) = &self.period {
            let p: String = per.iter().map(|&d| digit_char(d)).collect();
            write!(f, "({p})")?;
        }
        Ok(())
    }
}

/// Parses `<int digits>⋆<frac digits>[(period)]` in base `r`. `*` is
/// accepted for the star, a trailing `…` or `...` marks the zero tail, and
/// combining overlines inside the period are ignored.
pub fn parse_word(s: &str, r: u32) -> Result<DigitWord> {
    check_base(r)?;
    let s = s.trim();
    let (int, rest) = s
        .split_once([STAR, '*'])
        .ok_or_else(|| Error::parse(0, "missing star between integer and fractional digits"))?;
    let rest = rest.trim_end_matches('…').trim_end_matches("...");
    let (frac, period) = match rest.find('(') {
        Some(k) => {
            let body = rest[k + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::parse(s.len(), "unterminated period"))?;
            (&rest[..k], Some(body))
        }
        None => (rest, None),
    };
    let digits = |t: &str, offset: usize| -> Result<Vec<u8>> {
        t.chars()
            .filter(|&c| c != '\u{304}' && c != '\u{305}')
            .enumerate()
            .map(|(i, c)| {
                c.to_digit(r)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::parse(offset + i, format!("'{c}' is not a base-{r} digit")))
            })
            .collect()
    };
    let int_digits = digits(int, 0)?;
    let frac_digits = digits(frac, int.len() + 1)?;
    let period = period.map(|p| digits(p, s.len())).transpose()?;
    DigitWord::new(r, int_digits, frac_digits, period)
}

impl FromStr for DigitWord {
    type Err = Error;

    /// Base-2 shorthand for `parse_word(s, 2)`.
    fn from_str(s: &str) -> Result<Self> {
        parse_word(s, 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_examples() {
        assert_eq!(parse_word("0⋆1", 3).unwrap().decode(), 1.0 / 3.0);
        assert_eq!(parse_word("1⋆000…", 2).unwrap().decode(), -1.0);
        assert_eq!(parse_word("0⋆(01̄)", 2).unwrap().decode_exact(), BigRational::new(1.into(), 3.into()));
        assert_eq!(parse_word("0*0111(1)", 2).unwrap().decode(), 0.5);
        assert_eq!(parse_word("22*1", 3).unwrap().decode(), -2.0 / 3.0);
    }

    #[test]
    fn display_round_trip() {
        for (s, r) in [("0⋆1000", 2), ("1⋆0111(1)", 2), ("09⋆25(9)", 10)] {
            assert_eq!(parse_word(s, r).unwrap().to_string(), s);
        }
    }

    #[test]
    fn malformed_words() {
        assert!(parse_word("1⋆0", 3).is_err());
        assert!(parse_word("0⋆2", 2).is_err());
        assert!(parse_word("01", 2).is_err());
        assert!(parse_word("0⋆(1", 2).is_err());
    }

    #[test]
    fn widening_and_unrolling_keep_value() {
        let w = parse_word("1⋆01(10)", 2).unwrap();
        assert_eq!(w.widened(3).decode_exact(), w.decode_exact());
        assert_eq!(w.unrolled(7).decode_exact(), w.decode_exact());
        assert_eq!(w.unrolled(7).digit_at(-7), w.digit_at(-7));
    }
}
