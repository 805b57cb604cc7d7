use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::fmt_num;

/// Which endpoints of an [`Interval`] belong to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Openness {
    Open,
    Closed,
    /// `(lo, hi]`
    HalfOpenLeft,
    /// `[lo, hi)`
    HalfOpenRight,
}

impl Openness {
    fn from_flags(lo_closed: bool, hi_closed: bool) -> Self {
        match (lo_closed, hi_closed) {
            (true, true) => Openness::Closed,
            (false, false) => Openness::Open,
            (false, true) => Openness::HalfOpenLeft,
            (true, false) => Openness::HalfOpenRight,
        }
    }
}

/// A nonempty bounded real interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub openness: Openness,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, openness: Openness) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::Precondition(format!(
                "interval needs finite lo < hi, got ({lo}, {hi})"
            )));
        }
        Ok(Interval { lo, hi, openness })
    }

    pub fn open(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, Openness::Open)
    }

    pub fn closed(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, Openness::Closed)
    }

    pub fn lo_closed(&self) -> bool {
        matches!(self.openness, Openness::Closed | Openness::HalfOpenRight)
    }

    pub fn hi_closed(&self) -> bool {
        matches!(self.openness, Openness::Closed | Openness::HalfOpenLeft)
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed() { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed() { x <= self.hi } else { x < self.hi };
        above && below
    }

    /// True when every point of `other` is a point of `self`.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        let lo_ok = other.lo > self.lo || (other.lo == self.lo && (self.lo_closed() || !other.lo_closed()));
        let hi_ok = other.hi < self.hi || (other.hi == self.hi && (self.hi_closed() || !other.hi_closed()));
        lo_ok && hi_ok
    }

    /// Sub-interval `(lo, hi)` keeping this interval's closedness on shared endpoints.
    pub fn sub(&self, lo: f64, hi: f64) -> Result<Self> {
        let lo_closed = lo == self.lo && self.lo_closed();
        let hi_closed = hi == self.hi && self.hi_closed();
        Self::new(lo, hi, Openness::from_flags(lo_closed, hi_closed))
    }

    /// Intersection of two intervals, `None` when empty or degenerate.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = if self.lo > other.lo {
            (self.lo, self.lo_closed())
        } else if other.lo > self.lo {
            (other.lo, other.lo_closed())
        } else {
            (self.lo, self.lo_closed() && other.lo_closed())
        };
        let (hi, hi_closed) = if self.hi < other.hi {
            (self.hi, self.hi_closed())
        } else if other.hi < self.hi {
            (other.hi, other.hi_closed())
        } else {
            (self.hi, self.hi_closed() && other.hi_closed())
        };
        Interval::new(lo, hi, Openness::from_flags(lo_closed, hi_closed)).ok()
    }

    pub fn translate(&self, c: f64) -> Interval {
        Interval {
            lo: self.lo + c,
            hi: self.hi + c,
            openness: self.openness,
        }
    }

    /// `n` equally spaced points spanning the interval. Open ends are nudged
    /// inward by `len / (4n)` so no sample sits on an excluded endpoint.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        assert!(n >= 2, "grid needs at least two points");
        let nudge = self.len() / (4.0 * n as f64);
        let a = if self.lo_closed() { self.lo } else { self.lo + nudge };
        let b = if self.hi_closed() { self.hi } else { self.hi - nudge };
        let step = (b - a) / (n - 1) as f64;
        (0..n)
            .map(|i| if i + 1 == n { b } else { a + step * i as f64 })
            .collect()
    }

    /// The `2^depth` dyadic pieces of this interval, left to right.
    pub fn dyadic_pieces(&self, depth: u32) -> Vec<Interval> {
        let m = 1usize << depth;
        let w = self.len() / m as f64;
        (0..m)
            .map(|i| {
                let lo = if i == 0 { self.lo } else { self.lo + w * i as f64 };
                let hi = if i + 1 == m { self.hi } else { self.lo + w * (i + 1) as f64 };
                self.sub(lo, hi).expect("dyadic piece is nonempty")
            })
            .collect()
    }

    /// Canonical text form such as `(0,1]`.
    pub fn to_text(&self) -> String {
        format!(
            "{}{},{}{}",
            if self.lo_closed() { '[' } else { '(' },
            fmt_num(self.lo),
            fmt_num(self.hi),
            if self.hi_closed() { ']' } else { ')' }
        )
    }
}

impl std::str::FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::model::parse_interval(s)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_follows_openness() {
        let i = Interval::new(0.0, 1.0, Openness::HalfOpenLeft).unwrap();
        assert!(!i.contains(0.0));
        assert!(i.contains(1.0));
        assert!(i.contains(0.5));
        let c = Interval::closed(0.0, 1.0).unwrap();
        assert!(c.contains(0.0) && c.contains(1.0));
        assert!(!Interval::open(0.0, 1.0).unwrap().contains(1.0));
    }

    #[test]
    fn rejects_empty() {
        assert!(Interval::open(1.0, 1.0).is_err());
        assert!(Interval::open(2.0, 1.0).is_err());
        assert!(Interval::open(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn open_grid_is_nudged() {
        let g = Interval::open(0.0, 1.0).unwrap().grid(3);
        assert!((g[0] - 1.0 / 12.0).abs() < 1e-15);
        assert!((g[1] - 0.5).abs() < 1e-15);
        assert!((g[2] - 11.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn containment_respects_endpoints() {
        let open = Interval::open(0.0, 1.0).unwrap();
        let closed = Interval::closed(0.0, 1.0).unwrap();
        assert!(closed.contains_interval(&open));
        assert!(!open.contains_interval(&closed));
        assert!(open.contains_interval(&Interval::closed(0.25, 0.75).unwrap()));
    }

    #[test]
    fn dyadic_pieces_tile() {
        let i = Interval::open(0.0, 1.0).unwrap();
        let p = i.dyadic_pieces(3);
        assert_eq!(p.len(), 8);
        assert_eq!(p[0].lo, 0.0);
        assert_eq!(p[7].hi, 1.0);
        for w in p.windows(2) {
            assert_eq!(w[0].hi, w[1].lo);
        }
    }
}
