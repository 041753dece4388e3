//! Shortest vectors, successive minima and exact checks of the Minkowski-type bounds.

use num_traits::{One, Zero};

use crate::enumerate::{self, Step};
use crate::error::{LatticeError, Result};
use crate::gso;
use crate::lattice::{LatticeBasis, ScaledValue};
use crate::linalg::Echelon;
use crate::packing;
use crate::rational::{self, Rat};

pub use crate::enumerate::DEFAULT_BUDGET;

pub const MINIMA_MAX_RANK: usize = 8;
pub const BOUNDS_MAX_DIM: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Norm {
    L2,
    Linf,
}

impl Norm {
    pub fn name(self) -> &'static str {
        match self {
            Norm::L2 => "l2",
            Norm::Linf => "linf",
        }
    }
}

impl std::str::FromStr for Norm {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l2" => Ok(Norm::L2),
            "linf" => Ok(Norm::Linf),
            other => Err(LatticeError::InvalidArgument(format!("unknown norm {other:?} (expected l2 or linf)"))),
        }
    }
}

/// A lattice vector given by its basis coefficients, with its squared norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedVector {
    pub coeffs: Vec<i64>,
    pub norm_sq: Rat,
}

fn measure(lattice: &LatticeBasis, norm: Norm, x: &[i64]) -> ScaledValue {
    match norm {
        Norm::L2 => lattice.scaled_norm_sq(x),
        Norm::Linf => lattice.scaled_linf_sq(x),
    }
}

/// Squared Euclidean search radius that covers every point with the given squared norm.
fn l2_radius(lattice: &LatticeBasis, norm: Norm, r_sq: f64) -> f64 {
    match norm {
        Norm::L2 => r_sq,
        Norm::Linf => r_sq * lattice.ambient_dim() as f64,
    }
}

/// All nonzero lattice vectors with squared norm at most `r_sq`, one per `±` pair
/// (first nonzero coefficient positive), sorted by norm and then coefficients.
pub fn enumerate_below(lattice: &LatticeBasis, r_sq: &Rat, norm: Norm, budget: u64) -> Result<Vec<EnumeratedVector>> {
    if r_sq <= &Rat::zero() {
        return Err(LatticeError::InvalidArgument("squared radius must be positive".into()));
    }
    let bound = lattice.scaled_bound(r_sq);
    let mut found: Vec<(ScaledValue, Vec<i64>)> = Vec::new();
    enumerate::search(
        lattice.shadow(),
        &vec![0.0; lattice.rank()],
        l2_radius(lattice, norm, rational::to_f64(r_sq)),
        budget,
        |x| {
            if enumerate::is_canonical(x) {
                let v = measure(lattice, norm, x);
                if bound.admits(&v) {
                    found.push((v, x.to_vec()));
                }
            }
            Step::Continue
        },
    )?;
    found.sort_by(|a, b| a.0.cmp_value(&b.0).then_with(|| a.1.cmp(&b.1)));
    Ok(found
        .into_iter()
        .map(|(v, coeffs)| EnumeratedVector { norm_sq: lattice.unscale(&v), coeffs })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShortestVector {
    pub norm: Norm,
    pub coeffs: Vec<i64>,
    pub vector: Vec<Rat>,
    /// Squared norm in the requested norm.
    pub lambda1_sq: Rat,
}

/// Exact upper bound on `λ₁²` used as the starting radius.
fn initial_radius(lattice: &LatticeBasis, norm: Norm) -> Rat {
    let m = lattice.rank();
    let basis_best = (0..m)
        .map(|i| {
            let mut e = vec![0; m];
            e[i] = 1;
            match norm {
                Norm::L2 => lattice.norm_sq(&e),
                Norm::Linf => lattice.linf_sq(&e),
            }
        })
        .min()
        .expect("nonempty basis");
    let det_pow = rational::to_f64(lattice.det_sq()).powf(1.0 / m as f64);
    let minkowski = match norm {
        // λ₁² ≤ m·det(τ)^{2/m}
        Norm::L2 => Some(m as f64 * det_pow),
        // ‖x‖∞² ≤ det(τ)^{2/n}, full rank only
        Norm::Linf => lattice.is_complete().then_some(det_pow),
    };
    match minkowski.filter(|v| v.is_finite() && *v > 0.0) {
        Some(v) => basis_best.min(rational::rational_at_least(v)),
        None => basis_best,
    }
}

/// A nonzero lattice vector of minimal norm; ties go to the lexicographically
/// smallest canonical coefficient vector.
pub fn shortest_vector(lattice: &LatticeBasis, norm: Norm, budget: u64) -> Result<ShortestVector> {
    let r0 = initial_radius(lattice, norm);
    let bound = lattice.scaled_bound(&r0);
    let mut best: Option<(ScaledValue, Vec<i64>)> = None;
    enumerate::search(
        lattice.shadow(),
        &vec![0.0; lattice.rank()],
        l2_radius(lattice, norm, rational::to_f64(&r0)),
        budget,
        |x| {
            if x.iter().all(|&v| v == 0) {
                return Step::Continue;
            }
            let v = measure(lattice, norm, x);
            if !bound.admits(&v) {
                return Step::Continue;
            }
            let mut c = x.to_vec();
            enumerate::canonicalize(&mut c);
            let better = match &best {
                None => true,
                Some((bv, bc)) => v.cmp_value(bv).then_with(|| c.cmp(bc)).is_lt(),
            };
            if better {
                let r = rational::to_f64(&lattice.unscale(&v));
                best = Some((v, c));
                return Step::Shrink(l2_radius(lattice, norm, r));
            }
            Step::Continue
        },
    )?;
    let (v, coeffs) = best.expect("a basis vector lies within the initial radius");
    Ok(ShortestVector {
        norm,
        vector: lattice.vector(&coeffs),
        lambda1_sq: lattice.unscale(&v),
        coeffs,
    })
}

/// Successive minima `λ_1² ≤ … ≤ λ_m²` with linearly independent witnesses.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimaReport {
    pub lambda_sq: Vec<Rat>,
    pub witnesses: Vec<Vec<i64>>,
}

impl MinimaReport {
    pub fn product_sq(&self) -> Rat {
        self.lambda_sq.iter().fold(Rat::one(), |acc, l| acc * l)
    }

    pub fn last_sq(&self) -> &Rat {
        self.lambda_sq.last().expect("nonempty report")
    }
}

fn coeffs_to_rat(x: &[i64]) -> Vec<Rat> {
    x.iter().map(|&v| rational::int(v)).collect()
}

/// Greedy scan over vectors sorted by norm, with the radius doubling from `λ₁²`
/// (capped at the longest basis vector, where `m` independent vectors must exist).
pub fn successive_minima(lattice: &LatticeBasis, budget: u64) -> Result<MinimaReport> {
    let m = lattice.rank();
    if m > MINIMA_MAX_RANK {
        return Err(LatticeError::DimensionTooLarge { found: m, max: MINIMA_MAX_RANK });
    }
    let longest = (0..m)
        .map(|i| {
            let mut e = vec![0; m];
            e[i] = 1;
            lattice.norm_sq(&e)
        })
        .max()
        .expect("nonempty basis");
    let mut radius = shortest_vector(lattice, Norm::L2, budget)?.lambda1_sq;
    loop {
        let candidates = enumerate_below(lattice, &radius, Norm::L2, budget)?;
        let mut echelon = Echelon::default();
        let mut report = MinimaReport { lambda_sq: Vec::with_capacity(m), witnesses: Vec::with_capacity(m) };
        for v in candidates {
            if echelon.insert(&coeffs_to_rat(&v.coeffs)) {
                report.lambda_sq.push(v.norm_sq);
                report.witnesses.push(v.coeffs);
                if report.lambda_sq.len() == m {
                    return Ok(report);
                }
            }
        }
        assert!(radius < longest, "the basis itself lies within the final radius");
        radius = (&radius * rational::int(2)).min(longest.clone());
    }
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    /// Exact rational comparison of squared or powered quantities.
    Exact,
    /// Exact comparison with π replaced by a rational enclosure of width 1e-40.
    PiEnclosure,
    /// Floating point with a guard band.
    Numeric,
}

impl Precision {
    pub fn name(self) -> &'static str {
        match self {
            Precision::Exact => "exact",
            Precision::PiEnclosure => "pi-enclosure",
            Precision::Numeric => "numeric",
        }
    }
}

/// One evaluated inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub precision: Precision,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub dim: usize,
    pub det_sq: Rat,
    pub lambda1_sq: Rat,
    pub lambda1_linf_sq: Rat,
    pub gso_min_sq: Rat,
    pub minima: MinimaReport,
    pub checks: Vec<BoundCheck>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const GSO_LOWER: &str = "gso_lower";
pub const MINKOWSKI_FIRST: &str = "minkowski_first";
pub const MINKOWSKI_LINF: &str = "minkowski_linf";
pub const BALL_VOLUME_FIRST: &str = "ball_volume_first";
pub const SECOND_LOWER: &str = "minkowski_second_lower";
pub const SECOND_UPPER: &str = "minkowski_second_upper";
pub const SECOND_LOWER_FACTORIAL: &str = "minkowski_second_lower_factorial";
pub const L2_LINF_LINK: &str = "l2_vs_linf_shortest";

fn rpow_int(base: i64, e: u32) -> Rat {
    rational::pow(&rational::int(base), e)
}

fn sqrt_f(r: &Rat) -> f64 {
    rational::to_f64(r).sqrt()
}

/// `lhs_rational · π^e  ≤ rhs` decided with the rational enclosure of π.
/// `None` only if the enclosure cannot separate the sides.
fn le_with_pi(coeff: &Rat, pi_exp: u32, rhs: &Rat) -> Option<bool> {
    let (lo, hi) = rational::pi_enclosure();
    if coeff * rational::pow(&hi, pi_exp) <= *rhs {
        Some(true)
    } else if coeff * rational::pow(&lo, pi_exp) > *rhs {
        Some(false)
    } else {
        None
    }
}

/// Evaluates the Gram–Schmidt lower bound, the first and second Minkowski
/// theorems (second with the `n^{1/n}` denominator on its lower side), the l∞
/// and ball-volume forms of the first theorem, plus two auxiliary comparisons.
pub fn bounds_report(lattice: &LatticeBasis, budget: u64) -> Result<BoundReport> {
    lattice.require_complete()?;
    let n = lattice.ambient_dim();
    if n > BOUNDS_MAX_DIM {
        return Err(LatticeError::DimensionTooLarge { found: n, max: BOUNDS_MAX_DIM });
    }
    let nu = n as u32;
    let nf = n as f64;
    let det_sq = lattice.det_sq().clone();
    let det_f = sqrt_f(&det_sq);
    let det_root = det_f.powf(1.0 / nf);
    let minima = successive_minima(lattice, budget)?;
    let l1 = minima.lambda_sq[0].clone();
    let linf = shortest_vector(lattice, Norm::Linf, budget)?.lambda1_sq;
    let gso_min = gso::gso_min_norm_sq(lattice);
    let prod = minima.product_sq();
    let prod_root = sqrt_f(&prod).powf(1.0 / nf);
    let mut checks = Vec::new();

    checks.push(BoundCheck {
        name: GSO_LOWER,
        statement: "min_i ||a~_i|| <= lambda_1",
        lhs: sqrt_f(&gso_min),
        rhs: sqrt_f(&l1),
        holds: gso_min <= l1,
        precision: Precision::Exact,
    });

    // λ₁ ≤ √n det^{1/n}  ⇔  λ₁^{2n} ≤ n^n det(AAᵀ)
    checks.push(BoundCheck {
        name: MINKOWSKI_FIRST,
        statement: "lambda_1 <= sqrt(n) det^(1/n)",
        lhs: sqrt_f(&l1),
        rhs: nf.sqrt() * det_root,
        holds: rational::pow(&l1, nu) <= rpow_int(n as i64, nu) * &det_sq,
        precision: Precision::Exact,
    });

    // ‖x‖∞ ≤ det^{1/n}  ⇔  (λ∞²)^n ≤ det(AAᵀ)
    checks.push(BoundCheck {
        name: MINKOWSKI_LINF,
        statement: "lambda_1^inf <= det^(1/n)",
        lhs: sqrt_f(&linf),
        rhs: det_root,
        holds: rational::pow(&linf, nu) <= det_sq,
        precision: Precision::Exact,
    });

    // λ₁ ≤ 2 (det/v_n)^{1/n}  ⇔  λ₁^{2n} v_n² ≤ 4^n det(AAᵀ)
    let (vol_coeff, pi_exp) = packing::unit_ball_volume_sq_exact(nu);
    let volume_lhs = rational::pow(&l1, nu) * &vol_coeff;
    let volume_rhs = rpow_int(4, nu) * &det_sq;
    let volume_verdict = le_with_pi(&volume_lhs, pi_exp, &volume_rhs);
    checks.push(BoundCheck {
        name: BALL_VOLUME_FIRST,
        statement: "lambda_1 <= 2 (det / v_n)^(1/n)",
        lhs: sqrt_f(&l1),
        rhs: 2.0 * (det_f / packing::ball_volume(nu, 1.0)).powf(1.0 / nf),
        holds: volume_verdict.unwrap_or(false),
        precision: Precision::PiEnclosure,
    });

    // √n det^{1/n} / n^{1/n} ≤ (Πλ_i)^{1/n}  ⇔  n^{n-2} det(AAᵀ) ≤ Πλ_i²
    let lower_factor = if n >= 2 { rpow_int(n as i64, nu - 2) } else { Rat::one() };
    checks.push(BoundCheck {
        name: SECOND_LOWER,
        statement: "sqrt(n) det^(1/n) / n^(1/n) <= (prod lambda_i)^(1/n)",
        lhs: nf.sqrt() * det_root / nf.powf(1.0 / nf),
        rhs: prod_root,
        holds: lower_factor * &det_sq <= prod,
        precision: Precision::Exact,
    });

    // (Πλ_i)^{1/n} ≤ √n det^{1/n}  ⇔  Πλ_i² ≤ n^n det(AAᵀ)
    checks.push(BoundCheck {
        name: SECOND_UPPER,
        statement: "(prod lambda_i)^(1/n) <= sqrt(n) det^(1/n)",
        lhs: prod_root,
        rhs: nf.sqrt() * det_root,
        holds: prod <= rpow_int(n as i64, nu) * &det_sq,
        precision: Precision::Exact,
    });

    // cube/cross-polytope volume comparison: n^n det(AAᵀ) ≤ (n!)² Πλ_i²
    let fact = rational::big(&rational::factorial(n as u64));
    checks.push(BoundCheck {
        name: SECOND_LOWER_FACTORIAL,
        statement: "sqrt(n) det^(1/n) / (n!)^(1/n) <= (prod lambda_i)^(1/n)",
        lhs: nf.sqrt() * det_root / (rational::to_f64(&fact)).powf(1.0 / nf),
        rhs: prod_root,
        holds: rpow_int(n as i64, nu) * &det_sq <= &fact * &fact * &prod,
        precision: Precision::Exact,
    });

    checks.push(BoundCheck {
        name: L2_LINF_LINK,
        statement: "lambda_1 <= sqrt(n) lambda_1^inf",
        lhs: sqrt_f(&l1),
        rhs: nf.sqrt() * sqrt_f(&linf),
        holds: l1 <= rational::int(n as i64) * &linf,
        precision: Precision::Exact,
    });

    Ok(BoundReport {
        dim: n,
        det_sq,
        lambda1_sq: l1,
        lambda1_linf_sq: linf,
        gso_min_sq: gso_min,
        minima,
        checks,
    })
}
