//! Ball volumes, Hermite constants, packing density and the Minkowski–Hlawka bound.

use std::f64::consts::{E, PI};

use num_traits::One;

use crate::error::{LatticeError, Result};
use crate::lattice::LatticeBasis;
use crate::minima::{self, Norm};
use crate::rational::{self, Rat};

/// `Γ(t/2) = rational · √π^{[sqrt_pi]}` for a positive integer `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfGamma {
    pub rational: Rat,
    pub sqrt_pi: bool,
}

/// Exact `Γ(t/2)` by the recurrence `Γ(x+1) = xΓ(x)` from `Γ(1) = 1`, `Γ(1/2) = √π`.
pub fn gamma_half(t: u32) -> HalfGamma {
    assert!(t >= 1, "gamma_half needs a positive argument");
    let sqrt_pi = t % 2 == 1;
    let mut x = if sqrt_pi { rational::ratio(1, 2) } else { Rat::one() };
    let target = rational::ratio(t as i64, 2);
    let mut acc = Rat::one();
    while x < target {
        acc *= &x;
        x += Rat::one();
    }
    HalfGamma { rational: acc, sqrt_pi }
}

/// `ln Γ(t/2)` accumulated in logs.
fn ln_gamma_half(t: u32) -> f64 {
    let mut x = if t % 2 == 1 { 0.5 } else { 1.0 };
    let mut acc = if t % 2 == 1 { 0.5 * PI.ln() } else { 0.0 };
    let target = t as f64 / 2.0;
    while x < target {
        acc += x.ln();
        x += 1.0;
    }
    acc
}

/// Volume of the Euclidean `d`-ball of radius `radius`.
pub fn ball_volume(d: u32, radius: f64) -> f64 {
    let ln_unit = d as f64 / 2.0 * PI.ln() - ln_gamma_half(d + 2);
    (ln_unit + d as f64 * radius.ln()).exp()
}

/// `v_d² = coeff · π^e` exactly, for the unit ball.
pub fn unit_ball_volume_sq_exact(d: u32) -> (Rat, u32) {
    // v_d = π^{d/2} / Γ(d/2 + 1); for odd d the √π of the gamma cancels half a power.
    let g = gamma_half(d + 2);
    let coeff = Rat::one() / (&g.rational * &g.rational);
    let exp = if g.sqrt_pi { d - 1 } else { d };
    (coeff, exp)
}

const HERMITE_TABLE: [(i64, i64); 8] = [(1, 1), (4, 3), (2, 1), (4, 1), (8, 1), (64, 3), (64, 1), (256, 1)];

/// `γ_n^n` for `1 ≤ n ≤ 8`.
pub fn hermite_exact(n: usize) -> Result<Rat> {
    match n {
        1..=8 => {
            let (p, q) = HERMITE_TABLE[n - 1];
            Ok(rational::ratio(p, q))
        }
        _ => Err(LatticeError::OutOfTable(n)),
    }
}

/// Known bounds on `γ_n`. The asymptotic values drop their `o(1)` terms and
/// are informational; `asymptotic_lower ≤ asymptotic_upper` only from `n = 4` on.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteBoundSet {
    pub n: usize,
    pub exact_gamma_n_pow_n: Option<Rat>,
    /// `(2/π) Γ(2 + n/2)^{2/n}`
    pub blichfeldt_upper: f64,
    /// `(4/3)^{(n−1)/2}`
    pub kitaoka_upper: f64,
    /// `n/(2πe) + ln(πn)/(2πe)`
    pub asymptotic_lower: f64,
    /// `1.744 n/(2πe)`
    pub asymptotic_upper: f64,
    /// `n/(2πe)`, also the lower end of the `γ_n/n` sandwich.
    pub approx: f64,
}

impl HermiteBoundSet {
    /// `γ_n` itself when tabulated.
    pub fn exact_gamma(&self) -> Option<f64> {
        self.exact_gamma_n_pow_n
            .as_ref()
            .map(|g| rational::to_f64(g).powf(1.0 / self.n as f64))
    }
}

pub fn hermite_bounds(n: usize) -> Result<HermiteBoundSet> {
    if n == 0 {
        return Err(LatticeError::InvalidArgument("dimension must be positive".into()));
    }
    let nf = n as f64;
    let two_pi_e = 2.0 * PI * E;
    Ok(HermiteBoundSet {
        n,
        exact_gamma_n_pow_n: hermite_exact(n).ok(),
        blichfeldt_upper: 2.0 / PI * (2.0 / nf * ln_gamma_half(n as u32 + 4)).exp(),
        kitaoka_upper: (4.0f64 / 3.0).powf((nf - 1.0) / 2.0),
        asymptotic_lower: nf / two_pi_e + (PI * nf).ln() / two_pi_e,
        asymptotic_upper: 1.744 * nf / two_pi_e,
        approx: nf / two_pi_e,
    })
}

/// `λ₁^{2n} / det(AAᵀ)`, the `n`-th power of the Hermite invariant, exactly.
pub fn hermite_invariant_pow_n(lattice: &LatticeBasis, budget: u64) -> Result<Rat> {
    lattice.require_complete()?;
    let n = lattice.ambient_dim() as u32;
    let l1 = minima::shortest_vector(lattice, Norm::L2, budget)?.lambda1_sq;
    Ok(rational::pow(&l1, n) / lattice.det_sq())
}

/// `λ₁² / det(τ)^{2/n}`.
pub fn hermite_invariant(lattice: &LatticeBasis, budget: u64) -> Result<f64> {
    let n = lattice.ambient_dim() as f64;
    Ok(rational::to_f64(&hermite_invariant_pow_n(lattice, budget)?).powf(1.0 / n))
}

/// Volume of the ball of diameter `λ₁` over `det(τ)`.
pub fn packing_density(lattice: &LatticeBasis, budget: u64) -> Result<f64> {
    lattice.require_complete()?;
    let n = lattice.ambient_dim() as u32;
    // v_n(λ₁/2)/det = v_n(1) · 2^{-n} · (λ₁^{2n}/det²)^{1/2}
    let g = rational::to_f64(&hermite_invariant_pow_n(lattice, budget)?);
    Ok(ball_volume(n, 0.5) * g.sqrt())
}

/// `ζ(s)` for integer `s ≥ 2`: direct sum to `N − 1` plus the Euler–Maclaurin
/// tail `N^{1−s}/(s−1) + N^{−s}/2 + sN^{−s−1}/12 − s(s+1)(s+2)N^{−s−3}/720`.
/// The omitted remainder is below `s(s+1)(s+2)(s+3)(s+4)N^{−s−5}/30240 < 1e-13` for `N = 64`.
pub fn zeta(s: u32) -> Result<f64> {
    if s < 2 {
        return Err(LatticeError::NotDefined(format!("zeta({s}) diverges")));
    }
    const N: u32 = 64;
    let sf = s as f64;
    let head: f64 = (1..N).rev().map(|k| (k as f64).powf(-sf)).sum();
    let nf = N as f64;
    let tail = nf.powf(1.0 - sf) / (sf - 1.0) + 0.5 * nf.powf(-sf) + sf * nf.powf(-sf - 1.0) / 12.0
        - sf * (sf + 1.0) * (sf + 2.0) * nf.powf(-sf - 3.0) / 720.0;
    Ok(head + tail)
}

/// `ζ(n) / 2^{n−1}`, the density some `n`-dimensional lattice packing attains.
pub fn minkowski_hlawka_bound(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(LatticeError::NotDefined(format!(
            "Minkowski-Hlawka bound needs n >= 2 (zeta({n}) diverges)"
        )));
    }
    Ok(zeta(n)? / 2f64.powi(n as i32 - 1))
}
