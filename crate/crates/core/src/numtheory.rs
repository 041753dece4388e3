//! Lattice-based constructions for sums of squares and Diophantine approximation.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{LatticeError, Result};
use crate::lattice::LatticeBasis;
use crate::minima::{self, Norm};
use crate::rational::{self, Rat};

/// Largest input accepted by [`four_squares`].
pub const FOUR_SQUARES_MAX: u64 = 100_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut b = base as u128 % m128;
    let mut acc = 1u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(LatticeError::NotPrime(p))
    }
}

/// Smallest `q ∈ (0, p)` with `q² ≡ −1 (mod p)`, for a prime `p ≡ 1 (mod 4)`.
pub fn sqrt_minus_one_mod_p(p: u64) -> Result<u64> {
    require_prime(p)?;
    if p % 4 != 1 {
        return Err(LatticeError::NotApplicable(format!(
            "-1 is a quadratic residue only modulo primes p = 1 (mod 4); got {p}"
        )));
    }
    // a quadratic non-residue g gives (g^{(p-1)/4})² = g^{(p-1)/2} ≡ −1
    for g in 2..p {
        let r = mod_pow(g, (p - 1) / 4, p);
        if (r as u128 * r as u128 + 1).is_multiple_of(p as u128) {
            return Ok(r.min(p - r));
        }
    }
    unreachable!("half of the nonzero residues are non-residues")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoSquares {
    pub p: u64,
    pub a: u64,
    pub b: u64,
}

/// Intermediate values of the lattice construction for [`two_squares`].
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSquaresTrace {
    pub q: u64,
    pub det_sq: Rat,
    pub lambda1_sq: Rat,
    pub coeffs: Vec<i64>,
}

/// `p = a² + b²` with `a ≤ b`, found as the shortest vector of the lattice
/// spanned by `(1, q)` and `(0, p)` where `q² ≡ −1 (mod p)`.
pub fn two_squares(p: u64) -> Result<TwoSquares> {
    two_squares_traced(p).map(|(t, _)| t)
}

pub fn two_squares_traced(p: u64) -> Result<(TwoSquares, Option<TwoSquaresTrace>)> {
    if p == 2 {
        return Ok((TwoSquares { p, a: 1, b: 1 }, None));
    }
    let q = sqrt_minus_one_mod_p(p)?;
    let lattice = LatticeBasis::from_integers(&[[1, q as i64], [0, p as i64]])?;
    let det_sq = lattice.det_sq().clone();
    assert_eq!(det_sq, rational::int(p as i64 * p as i64), "det(τ) = p");
    let sv = minima::shortest_vector(&lattice, Norm::L2, minima::DEFAULT_BUDGET)?;
    // every lattice vector has a² + b² ≡ 0 (mod p); below 2p this forces = p
    assert_eq!(sv.lambda1_sq, rational::int(p as i64), "λ₁² = p");
    let mut parts: Vec<u64> = sv
        .vector
        .iter()
        .map(|x| x.to_integer().abs().to_u64().expect("small"))
        .collect();
    parts.sort_unstable();
    let trace = TwoSquaresTrace { q, det_sq, lambda1_sq: sv.lambda1_sq, coeffs: sv.coeffs };
    Ok((TwoSquares { p, a: parts[0], b: parts[1] }, Some(trace)))
}

/// A rational approximation `p/q` of `alpha` with `0 < q ≤ q_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct Approximant {
    pub alpha: Rat,
    pub q_max: u64,
    pub p: BigInt,
    pub q: u64,
}

impl Approximant {
    /// `|alpha − p/q|`.
    pub fn error(&self) -> Rat {
        (&self.alpha - Rat::new(self.p.clone(), BigInt::from(self.q))).abs()
    }

    /// `|alpha − p/q| ≤ 1/Q`.
    pub fn satisfies_bound(&self) -> bool {
        self.error() <= Rat::new(1.into(), BigInt::from(self.q_max))
    }

    /// `|alpha − p/q| ≤ 1/(qQ)`.
    pub fn satisfies_strong_bound(&self) -> bool {
        self.error() <= Rat::new(1.into(), BigInt::from(self.q) * BigInt::from(self.q_max))
    }
}

/// Scans `q = 1..=Q` with `p` the nearest integer to `qα` and keeps the pair
/// minimizing `|qα − p|`; ties go to the smallest `q`.
pub fn dirichlet_approx(alpha: &Rat, q_max: u64) -> Result<Approximant> {
    if q_max == 0 {
        return Err(LatticeError::InvalidArgument("Q must be a positive integer".into()));
    }
    let half = rational::ratio(1, 2);
    let mut best: Option<(Rat, BigInt, u64)> = None;
    for q in 1..=q_max {
        let qa = alpha * Rat::from_integer(BigInt::from(q));
        let p = (&qa + &half).floor().to_integer();
        let err = (&qa - Rat::from_integer(p.clone())).abs();
        if best.as_ref().is_none_or(|(e, _, _)| err < *e) {
            let exact = err.is_zero();
            best = Some((err, p, q));
            if exact {
                break;
            }
        }
    }
    let (_, p, q) = best.expect("q_max >= 1");
    Ok(Approximant { alpha: alpha.clone(), q_max, p, q })
}

/// Euler's identity: `(Σa_i²)(Σb_i²) = Σz_i²`.
pub fn euler_four_square_product(a: [i64; 4], b: [i64; 4]) -> [i64; 4] {
    let [a1, a2, a3, a4] = a;
    let [b1, b2, b3, b4] = b;
    [
        a1 * b1 + a2 * b2 + a3 * b3 + a4 * b4,
        a1 * b2 - a2 * b1 + a3 * b4 - a4 * b3,
        a1 * b3 - a3 * b1 + a4 * b2 - a2 * b4,
        a1 * b4 + a2 * b3 - a3 * b2 - a4 * b1,
    ]
}

/// `y² + z² + 1 ≡ 0 (mod p)` with `0 ≤ y, z ≤ (p−1)/2`, from the residue sets
/// `S₁ = {y² mod p}` and `S₂ = {−z² − 1 mod p}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YzWitness {
    pub p: u64,
    pub y: u64,
    pub z: u64,
    /// `|S₁|` and `|S₂|`, each `(p + 1)/2`.
    pub s1_len: usize,
    pub s2_len: usize,
}

pub fn yz_witness(p: u64) -> Result<YzWitness> {
    require_prime(p)?;
    if p == 2 {
        return Err(LatticeError::NotApplicable("yz_witness needs an odd prime".into()));
    }
    let half = (p - 1) / 2;
    let mut s1: HashMap<u64, u64> = HashMap::new();
    for y in 0..=half {
        s1.entry(y * y % p).or_insert(y);
    }
    let s2: Vec<u64> = (0..=half).map(|z| (2 * p - (z * z % p) - 1) % p).collect();
    let s2_len = {
        let mut sorted = s2.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len()
    };
    let (z, y) = s2
        .iter()
        .enumerate()
        .find_map(|(z, r)| s1.get(r).map(|&y| (z as u64, y)))
        .expect("|S₁| + |S₂| = p + 1 > p forces a common residue");
    Ok(YzWitness { p, y, z, s1_len: s1.len(), s2_len })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourSquares {
    pub x: u64,
    /// Nonincreasing.
    pub parts: [u64; 4],
}

/// The lattice step for one prime.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeStep {
    pub p: u64,
    pub y: u64,
    pub z: u64,
    pub vector: [i64; 4],
    pub norm_sq: u64,
}

/// Basis rows (columns of the matrix with rows `(p,0,y,z)`, `(0,p,z,−y)`, `e₃`, `e₄`).
fn four_squares_lattice(p: u64, y: u64, z: u64) -> Result<LatticeBasis> {
    let (p, y, z) = (p as i64, y as i64, z as i64);
    LatticeBasis::from_integers(&[[z, -y, 0, 1], [y, z, 1, 0], [0, p, 0, 0], [p, 0, 0, 0]])
}

/// Prime case: the shortest vector strictly inside squared radius `2p` with
/// norm `≡ 0 (mod p)` has norm exactly `p`.
/// The search has no basis reduction, so its cost grows roughly linearly in `p`.
pub fn four_squares_prime(p: u64) -> Result<PrimeStep> {
    require_prime(p)?;
    if p == 2 {
        return Ok(PrimeStep { p, y: 0, z: 0, vector: [1, 1, 0, 0], norm_sq: 2 });
    }
    let w = yz_witness(p)?;
    let lattice = four_squares_lattice(p, w.y, w.z)?;
    let radius = rational::int(2 * p as i64 - 1);
    let found = minima::enumerate_below(&lattice, &radius, Norm::L2, minima::DEFAULT_BUDGET)?;
    let p_rat = rational::int(p as i64);
    let hit = found
        .into_iter()
        .find(|v| (&v.norm_sq / &p_rat).is_integer())
        .expect("the ball of volume 2π²p² > 16p² holds a nonzero lattice point");
    let vector: Vec<i64> = lattice
        .vector(&hit.coeffs)
        .iter()
        .map(|x| x.to_integer().to_i64().expect("small"))
        .collect();
    let norm_sq = hit.norm_sq.to_integer().to_u64().expect("small");
    assert_eq!(norm_sq, p, "0 < norm < 2p and p | norm");
    Ok(PrimeStep { p, y: w.y, z: w.z, vector: [vector[0], vector[1], vector[2], vector[3]], norm_sq })
}

pub fn four_squares(x: u64) -> Result<FourSquares> {
    four_squares_traced(x).map(|(f, _)| f)
}

/// Four squares for any `1 ≤ x ≤ 10⁸`: primes through the lattice, square
/// factors pulled out, and the pieces multiplied with Euler's identity.
pub fn four_squares_traced(x: u64) -> Result<(FourSquares, Vec<PrimeStep>)> {
    if x == 0 || x > FOUR_SQUARES_MAX {
        return Err(LatticeError::InvalidArgument(format!(
            "four_squares needs 1 <= x <= {FOUR_SQUARES_MAX}, got {x}"
        )));
    }
    let mut acc = [1i64, 0, 0, 0];
    let mut scale: i64 = 1;
    let mut steps = Vec::new();
    for (p, e) in factor(x) {
        scale *= (p as i64).pow(e / 2);
        if e % 2 == 1 {
            let step = four_squares_prime(p)?;
            acc = euler_four_square_product(acc, step.vector);
            steps.push(step);
        }
    }
    let mut parts = acc.map(|v| (v * scale).unsigned_abs());
    parts.sort_unstable_by(|a, b| b.cmp(a));
    let out = FourSquares { x, parts };
    debug_assert_eq!(parts.iter().map(|v| v * v).sum::<u64>(), x);
    Ok((out, steps))
}
