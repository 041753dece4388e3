//! Relevant Voronoï vectors, cell membership and packing/covering radii.

use num_traits::Zero;

use crate::enumerate::{self, Step};
use crate::error::{LatticeError, Result};
use crate::lattice::{LatticeBasis, ScaledValue};
use crate::minima::{self, BoundCheck, Precision};
use crate::packing;
use crate::rational::{self, Rat};

pub const VORONOI_MAX_DIM: usize = 6;
pub const COVERING_ESTIMATE_MAX_DIM: usize = 3;

/// Guard band for the numeric covering lower bound.
const NUMERIC_GUARD: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct RelevantVector {
    /// Canonical sign (first nonzero coefficient positive).
    pub coeffs: Vec<i64>,
    pub vector: Vec<Rat>,
    pub norm_sq: Rat,
    /// Class in τ/2τ as a 0/1 coefficient pattern.
    pub coset: Vec<u8>,
}

/// Shortest vectors of one nonzero class of τ/2τ.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetMinimum {
    pub coset: Vec<u8>,
    pub min_norm_sq: Rat,
    /// Number of minimizers counting both signs.
    pub minimizers: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelevantVectorSet {
    pub vectors: Vec<RelevantVector>,
    pub cosets: Vec<CosetMinimum>,
}

impl RelevantVectorSet {
    /// Number of relevant vectors counting `±v` separately.
    pub fn count_with_signs(&self) -> usize {
        2 * self.vectors.len()
    }

    /// Both signs of every relevant vector.
    pub fn all_with_signs(&self) -> Vec<Vec<Rat>> {
        self.vectors
            .iter()
            .flat_map(|v| [v.vector.clone(), v.vector.iter().map(|x| -x).collect()])
            .collect()
    }

    /// `|⟨x, v⟩| ≤ ½⟨v, v⟩` for every relevant `v`; the cell is closed.
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.vectors.iter().all(|v| {
            let ip = rational::dot(x, &v.vector);
            let twice = &ip + &ip;
            let abs = if twice < Rat::zero() { -twice } else { twice };
            abs <= v.norm_sq
        })
    }
}

fn check_voronoi_domain(lattice: &LatticeBasis, max: usize) -> Result<()> {
    lattice.require_complete()?;
    let n = lattice.ambient_dim();
    if n > max {
        return Err(LatticeError::DimensionTooLarge { found: n, max });
    }
    Ok(())
}

/// Minimizers of the coset `c + 2τ`, both signs, sorted.
fn coset_minimizers(lattice: &LatticeBasis, coset: &[i64], budget: u64) -> Result<(ScaledValue, Vec<Vec<i64>>)> {
    // v = A(c + 2w) = 2A(w + c/2): search w around the center −c/2 with radius ‖v‖²/4
    let center: Vec<f64> = coset.iter().map(|&c| -(c as f64) / 2.0).collect();
    let start = lattice.scaled_norm_sq(coset);
    let r0 = rational::to_f64(&lattice.unscale(&start)) / 4.0;
    let mut best = start;
    let mut minimizers: Vec<Vec<i64>> = Vec::new();
    enumerate::search(lattice.shadow(), &center, r0, budget, |w| {
        let x: Vec<i64> = coset.iter().zip(w).map(|(&c, &wi)| c + 2 * wi).collect();
        let v = lattice.scaled_norm_sq(&x);
        match v.cmp_value(&best) {
            std::cmp::Ordering::Less => {
                let r = rational::to_f64(&lattice.unscale(&v)) / 4.0;
                best = v;
                minimizers.clear();
                minimizers.push(x);
                Step::Shrink(r)
            }
            std::cmp::Ordering::Equal => {
                minimizers.push(x);
                Step::Continue
            }
            std::cmp::Ordering::Greater => Step::Continue,
        }
    })?;
    minimizers.sort();
    minimizers.dedup();
    Ok((best, minimizers))
}

/// Relevant vectors: for each nonzero class of τ/2τ, the shortest vector when
/// `±v` are its only shortest vectors.
pub fn relevant_vectors(lattice: &LatticeBasis, budget: u64) -> Result<RelevantVectorSet> {
    check_voronoi_domain(lattice, VORONOI_MAX_DIM)?;
    let n = lattice.rank();
    let mut vectors = Vec::new();
    let mut cosets = Vec::new();
    for mask in 1u32..(1 << n) {
        let coset: Vec<i64> = (0..n).map(|i| ((mask >> i) & 1) as i64).collect();
        let pattern: Vec<u8> = coset.iter().map(|&c| c as u8).collect();
        let (best, minimizers) = coset_minimizers(lattice, &coset, budget)?;
        let norm_sq = lattice.unscale(&best);
        if minimizers.len() == 2 {
            let coeffs = minimizers
                .into_iter()
                .find(|x| enumerate::is_canonical(x))
                .expect("one of ±v is canonical");
            vectors.push(RelevantVector {
                vector: lattice.vector(&coeffs),
                coeffs,
                norm_sq: norm_sq.clone(),
                coset: pattern.clone(),
            });
            cosets.push(CosetMinimum { coset: pattern, min_norm_sq: norm_sq, minimizers: 2 });
        } else {
            cosets.push(CosetMinimum { coset: pattern, min_norm_sq: norm_sq, minimizers: minimizers.len() });
        }
    }
    Ok(RelevantVectorSet { vectors, cosets })
}

pub fn in_voronoi_cell(x: &[Rat], lattice: &LatticeBasis, budget: u64) -> Result<bool> {
    if x.len() != lattice.ambient_dim() {
        return Err(LatticeError::ShapeMismatch(format!(
            "point has length {}, lattice dimension is {}",
            x.len(),
            lattice.ambient_dim()
        )));
    }
    Ok(relevant_vectors(lattice, budget)?.contains(x))
}

/// Packing radius and bounds on the covering radius.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusReport {
    /// `λ₁²/4`.
    pub packing_radius_sq: Rat,
    /// `λ_n²/4`.
    pub lambda_lower_sq: Rat,
    /// `(det(τ)/V_n)^{2/n}`, numeric.
    pub volume_lower_sq: f64,
    /// `max(λ_n²/4, (det/V_n)^{2/n})`.
    pub covering_lower_sq: f64,
    /// `n·λ_n²/4`.
    pub covering_upper_sq: Rat,
    pub covering_estimate: Option<f64>,
    /// Sandwich checks on the estimate, when one was computed.
    pub checks: Vec<BoundCheck>,
}

pub const COVERING_LOWER: &str = "covering_lower";
pub const COVERING_UPPER: &str = "covering_upper";
pub const VOLUME_LOWER: &str = "covering_volume_lower";

/// Largest distance from a grid point of the mesh to its nearest lattice point is
/// at most this much below the covering radius.
pub fn grid_slack(lattice: &LatticeBasis, grid: usize) -> f64 {
    let total: f64 = lattice
        .rows()
        .iter()
        .map(|r| rational::to_f64(&rational::norm_sq(r)).sqrt())
        .sum();
    total / (2.0 * grid as f64)
}

pub fn radius_report(lattice: &LatticeBasis, grid: Option<usize>, budget: u64) -> Result<RadiusReport> {
    check_voronoi_domain(lattice, VORONOI_MAX_DIM)?;
    let n = lattice.ambient_dim();
    let minima = minima::successive_minima(lattice, budget)?;
    let four = rational::int(4);
    let packing_radius_sq = &minima.lambda_sq[0] / &four;
    let lambda_lower_sq = minima.last_sq() / &four;
    let covering_upper_sq = rational::int(n as i64) * &lambda_lower_sq;
    let det = rational::to_f64(lattice.det_sq()).sqrt();
    let volume_lower_sq = (det / packing::ball_volume(n as u32, 1.0)).powf(2.0 / n as f64);
    let covering_lower_sq = rational::to_f64(&lambda_lower_sq).max(volume_lower_sq);
    let covering_estimate = match grid {
        Some(g) => Some(covering_radius_estimate(lattice, g, budget)?),
        None => None,
    };
    let mut checks = Vec::new();
    if let (Some(est), Some(g)) = (covering_estimate, grid) {
        let slack = grid_slack(lattice, g);
        let half_ln = rational::to_f64(&lambda_lower_sq).sqrt();
        let upper = rational::to_f64(&covering_upper_sq).sqrt();
        let vol_lower = volume_lower_sq.sqrt();
        checks.push(BoundCheck {
            name: COVERING_LOWER,
            statement: "lambda_n / 2 - grid slack <= covering estimate",
            lhs: half_ln - slack,
            rhs: est,
            holds: half_ln - slack <= est * (1.0 + NUMERIC_GUARD),
            precision: Precision::Numeric,
        });
        checks.push(BoundCheck {
            name: COVERING_UPPER,
            statement: "covering estimate <= sqrt(n) lambda_n / 2",
            lhs: est,
            rhs: upper,
            holds: est <= upper * (1.0 + NUMERIC_GUARD),
            precision: Precision::Numeric,
        });
        checks.push(BoundCheck {
            name: VOLUME_LOWER,
            statement: "(det / V_n)^(1/n) - grid slack <= covering estimate",
            lhs: vol_lower - slack,
            rhs: est,
            holds: vol_lower - slack <= est * (1.0 + NUMERIC_GUARD),
            precision: Precision::Numeric,
        });
    }
    Ok(RadiusReport {
        packing_radius_sq,
        lambda_lower_sq,
        volume_lower_sq,
        covering_lower_sq,
        covering_upper_sq,
        covering_estimate,
        checks,
    })
}

/// Squared distance from `Σ y_i a_i` to the nearest lattice point.
pub(crate) fn distance_sq_to_lattice(lattice: &LatticeBasis, rows: &[Vec<f64>], y: &[f64], budget: u64) -> Result<f64> {
    let n = rows[0].len();
    let dist = |w: &[i64]| -> f64 {
        let mut acc = vec![0.0; n];
        for ((row, &wi), &yi) in rows.iter().zip(w).zip(y) {
            let c = wi as f64 - yi;
            for (a, e) in acc.iter_mut().zip(row) {
                *a += c * e;
            }
        }
        acc.iter().map(|v| v * v).sum()
    };
    let rounded: Vec<i64> = y.iter().map(|v| v.round() as i64).collect();
    let mut best = dist(&rounded);
    enumerate::search(lattice.shadow(), y, best, budget, |w| {
        let d = dist(w);
        if d < best {
            best = d;
            Step::Shrink(d)
        } else {
            Step::Continue
        }
    })?;
    Ok(best)
}

/// Maximum over the grid `{k/grid}ⁿ` of the fundamental mesh of the distance to
/// the lattice; approaches the covering radius from below as the grid refines.
pub fn covering_radius_estimate(lattice: &LatticeBasis, grid: usize, budget: u64) -> Result<f64> {
    check_voronoi_domain(lattice, COVERING_ESTIMATE_MAX_DIM)?;
    if grid == 0 {
        return Err(LatticeError::InvalidArgument("grid must be positive".into()));
    }
    let n = lattice.rank();
    let rows: Vec<Vec<f64>> = lattice
        .rows()
        .iter()
        .map(|r| r.iter().map(rational::to_f64).collect())
        .collect();
    let mut index = vec![0usize; n];
    let mut worst = 0.0f64;
    loop {
        let y: Vec<f64> = index.iter().map(|&k| k as f64 / grid as f64).collect();
        worst = worst.max(distance_sq_to_lattice(lattice, &rows, &y, budget)?);
        let mut i = 0;
        loop {
            if i == n {
                return Ok(worst.sqrt());
            }
            index[i] += 1;
            if index[i] < grid {
                break;
            }
            index[i] = 0;
            i += 1;
        }
    }
}
