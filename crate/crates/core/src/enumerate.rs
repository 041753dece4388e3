//! Depth-first coefficient-tree search over lattice points near a center.
//!
//! Interval pruning runs on floating shadows of the exact Gram–Schmidt data,
//! widened by a relative guard band, so the search visits a superset of the
//! points inside the ball. Callers decide membership exactly.

use crate::error::{LatticeError, Result};
use crate::gso::GramSchmidtData;
use crate::rational;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

const GUARD: f64 = 1e-6;

/// `f64` copies of `μ` and `‖ã_i‖²`.
#[derive(Debug, Clone)]
pub struct FloatShadow {
    mu: Vec<Vec<f64>>,
    b: Vec<f64>,
}

impl FloatShadow {
    pub fn from_gso(g: &GramSchmidtData) -> Self {
        FloatShadow {
            mu: g.mu.iter().map(|r| r.iter().map(rational::to_f64).collect()).collect(),
            b: g.tilde_norms_sq.iter().map(rational::to_f64).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }
}

/// What the visitor wants after seeing a candidate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Step {
    Continue,
    /// Continue with a smaller squared radius.
    Shrink(f64),
    Stop,
}

struct Search<'a, F> {
    shadow: &'a FloatShadow,
    center: &'a [f64],
    radius: f64,
    budget: u64,
    nodes: u64,
    x: Vec<i64>,
    visit: F,
}

fn guarded(r_sq: f64) -> f64 {
    r_sq * (1.0 + GUARD) + f64::MIN_POSITIVE
}

impl<F: FnMut(&[i64]) -> Step> Search<'_, F> {
    /// Returns `true` when the visitor asked to stop.
    fn level(&mut self, j: usize, partial: f64) -> Result<bool> {
        let m = self.shadow.rank();
        let mut c = self.center[j];
        for i in j + 1..m {
            c -= self.shadow.mu[i][j] * (self.x[i] as f64 - self.center[i]);
        }
        let bj = self.shadow.b[j];
        let rem = self.radius - partial;
        if rem < 0.0 {
            return Ok(false);
        }
        let half = (rem / bj).sqrt();
        let lo = (c - half).ceil();
        let hi = (c + half).floor();
        if lo > hi {
            return Ok(false);
        }
        let width = hi - lo + 1.0;
        if !width.is_finite() || width + self.nodes as f64 > self.budget as f64 || lo.abs() > 9.0e15 || hi.abs() > 9.0e15 {
            return Err(LatticeError::BudgetExceeded { budget: self.budget });
        }
        let (lo, hi) = (lo as i64, hi as i64);
        for v in lo..=hi {
            self.nodes += 1;
            let d = v as f64 - c;
            let p = partial + bj * d * d;
            if p > self.radius {
                if (v as f64) > c {
                    break;
                }
                continue;
            }
            self.x[j] = v;
            if j == 0 {
                match (self.visit)(&self.x) {
                    Step::Continue => {}
                    Step::Shrink(r) => self.radius = self.radius.min(guarded(r)),
                    Step::Stop => return Ok(true),
                }
            } else if self.level(j - 1, p)? {
                return Ok(true);
            }
        }
        self.x[j] = 0;
        Ok(false)
    }
}

/// Visits every integer coefficient vector `x` with `‖A(x − center)‖² ≤ r_sq`
/// (plus possibly a few just outside, within the guard band), in depth-first
/// order from the last coordinate down. Returns the number of nodes visited.
pub fn search<F>(shadow: &FloatShadow, center: &[f64], r_sq: f64, budget: u64, visit: F) -> Result<u64>
where
    F: FnMut(&[i64]) -> Step,
{
    let m = shadow.rank();
    assert_eq!(center.len(), m, "center must have one coordinate per basis vector");
    if r_sq.is_nan() || r_sq < 0.0 || m == 0 {
        return Ok(0);
    }
    let mut s = Search {
        shadow,
        center,
        radius: guarded(r_sq),
        budget,
        nodes: 0,
        x: vec![0; m],
        visit,
    };
    s.level(m - 1, 0.0)?;
    Ok(s.nodes)
}

/// Canonical sign: first nonzero coefficient positive.
pub fn is_canonical(x: &[i64]) -> bool {
    x.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0)
}

pub fn canonicalize(x: &mut [i64]) {
    if x.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
        x.iter_mut().for_each(|v| *v = -*v);
    }
}
