use serde::{Deserialize, Serialize};

use super::normalize::{bisect, NormalizedFunction};
use crate::config::ToleranceConfig;
use crate::error::{Error, Result};

/// The set `E` on a `grid_n`-point grid of `[0, b]`: grid points whose
/// derivative exceeds every earlier one by more than `eps_deriv`.
/// `0` and `b` are always members.
pub fn build_e(nf: &NormalizedFunction, grid_n: usize, cfg: &ToleranceConfig) -> Result<Vec<f64>> {
    if grid_n < 2 {
        return Err(Error::Precondition("E needs at least 2 grid points".into()));
    }
    let xs = nf.interval().grid(grid_n);
    let mut out = vec![0.0];
    let mut running = 0.0_f64;
    for &x in &xs[1..xs.len() - 1] {
        let d = nf.slope(x, cfg)?;
        if d > running + cfg.eps_deriv && d < 1.0 {
            out.push(x);
            running = d;
        }
    }
    out.push(nf.b);
    Ok(out)
}

/// Branch of `F = E ∪ E1 ∪ E2 ∪ E3` holding a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    E,
    E1,
    E2,
    E3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TauEntry {
    pub x: f64,
    pub tau: f64,
    pub branch: Branch,
}

/// The ordered field `(F, <, ⊕, ⊗)` carried over from the reals through `τ`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldStructure {
    pub normalized: NormalizedFunction,
    pub b: f64,
    pub e: Vec<f64>,
    /// `(x, τ(x))` for every tabulated point of `F`, sorted by `x`.
    pub table: Vec<TauEntry>,
    /// Every grid point entered `E`, so `E` is read as all of `[0, b]` and
    /// `τ` is evaluated through the derivative between table points.
    pub continuous: bool,
    /// Largest representable `|τ|`.
    pub t_max: f64,
    pub cfg: ToleranceConfig,
}

impl FieldStructure {
    pub fn build(nf: NormalizedFunction, grid_n: usize, cfg: &ToleranceConfig) -> Result<Self> {
        let e = build_e(&nf, grid_n, cfg)?;
        let continuous = e.len() == grid_n;
        let b = nf.b;
        let mut tau_e = Vec::with_capacity(e.len());
        for &x in &e {
            tau_e.push(if x == 0.0 {
                0.0
            } else if x == b {
                1.0
            } else {
                nf.slope(x, cfg)?
            });
        }
        let mut table = Vec::with_capacity(4 * e.len());
        for (&x, &t) in e.iter().zip(&tau_e) {
            table.push(TauEntry { x, tau: t, branch: Branch::E });
            if x != 0.0 {
                table.push(TauEntry { x: -x, tau: -t, branch: Branch::E2 });
            }
            if x != 0.0 && x != b {
                table.push(TauEntry { x: 2.0 * b - x, tau: 1.0 / t, branch: Branch::E1 });
                table.push(TauEntry { x: x - 2.0 * b, tau: -1.0 / t, branch: Branch::E3 });
            }
        }
        table.sort_by(|p, q| p.x.total_cmp(&q.x));
        let t_max = table.iter().map(|p| p.tau.abs()).fold(1.0, f64::max);
        Ok(FieldStructure { normalized: nf, b, e, table, continuous, t_max, cfg: *cfg })
    }

    fn snap(&self, x: f64) -> Option<&TauEntry> {
        let tol = 1e-12 * self.b.max(1.0);
        let k = self.table.partition_point(|p| p.x < x);
        [k.checked_sub(1), Some(k)]
            .into_iter()
            .flatten()
            .filter_map(|k| self.table.get(k))
            .filter(|p| (p.x - x).abs() <= tol)
            .min_by(|p, q| (p.x - x).abs().total_cmp(&(q.x - x).abs()))
    }

    pub fn branch(&self, x: f64) -> Result<Branch> {
        let b = self.b;
        if let Some(p) = self.snap(x) {
            return Ok(p.branch);
        }
        if !self.continuous || !(x > -2.0 * b && x < 2.0 * b) {
            return Err(Error::NotInF { x });
        }
        Ok(if x >= 0.0 && x <= b {
            Branch::E
        } else if x > b {
            Branch::E1
        } else if x >= -b {
            Branch::E2
        } else {
            Branch::E3
        })
    }

    /// `τ: F → ℝ`, an order-preserving bijection.
    pub fn tau(&self, x: f64) -> Result<f64> {
        if let Some(p) = self.snap(x) {
            return Ok(p.tau);
        }
        let b = self.b;
        match self.branch(x)? {
            Branch::E => self.normalized.slope(x, &self.cfg),
            Branch::E1 => Ok(1.0 / self.normalized.slope(2.0 * b - x, &self.cfg)?),
            Branch::E2 | Branch::E3 => Ok(-self.tau(-x)?),
        }
    }

    pub fn tau_inv(&self, t: f64) -> Result<f64> {
        if !t.is_finite() || t.abs() > self.t_max {
            return Err(Error::Range { value: t, limit: self.t_max });
        }
        if t < 0.0 {
            return Ok(-self.tau_inv(-t)?);
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        if t == 1.0 {
            return Ok(self.b);
        }
        if t > 1.0 {
            return Ok(2.0 * self.b - self.inv_on_e(1.0 / t)?);
        }
        self.inv_on_e(t)
    }

    /// The point of `E` with derivative `s ∈ (0, 1)`.
    fn inv_on_e(&self, s: f64) -> Result<f64> {
        let es: Vec<&TauEntry> = self.table.iter().filter(|p| p.branch == Branch::E).collect();
        let k = es.partition_point(|p| p.tau < s);
        if k == 0 || k == es.len() {
            return Err(Error::Range { value: s, limit: self.t_max });
        }
        let (lo, hi) = (es[k - 1], es[k]);
        if !self.continuous {
            let near = if s - lo.tau <= hi.tau - s { lo } else { hi };
            return Ok(near.x);
        }
        if hi.tau == s {
            return Ok(hi.x);
        }
        bisect(&|x| self.normalized.slope(x, &self.cfg), lo.x, hi.x, s)
    }

    pub fn zero(&self) -> f64 {
        0.0
    }

    pub fn one(&self) -> f64 {
        self.b
    }
}

/// `x ⊕ y = τ⁻¹(τx + τy)`.
pub fn field_add(fs: &FieldStructure, x: f64, y: f64) -> Result<f64> {
    fs.tau_inv(fs.tau(x)? + fs.tau(y)?)
}

/// `x ⊗ y = τ⁻¹(τx · τy)`.
pub fn field_mul(fs: &FieldStructure, x: f64, y: f64) -> Result<f64> {
    fs.tau_inv(fs.tau(x)? * fs.tau(y)?)
}
