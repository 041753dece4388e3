//! Lattice bases, determinants, basis equivalence and the fundamental mesh.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::enumerate::{self, FloatShadow, Step, DEFAULT_BUDGET};
use crate::error::{LatticeError, Result};
use crate::gso::{self, GramSchmidtData};
use crate::linalg;
use crate::packing;
use crate::rational::{self, Rat};

/// `m` linearly independent generators in `n`-dimensional space, rows of a matrix.
#[derive(Debug, Clone)]
pub struct LatticeBasis {
    rows: Vec<Vec<Rat>>,
    gso: GramSchmidtData,
    shadow: FloatShadow,
    det_sq: Rat,
    scaled: ScaledRows,
}

/// The rows multiplied by the least common denominator, for exact integer norm evaluation.
#[derive(Debug, Clone)]
struct ScaledRows {
    denom: BigInt,
    rows: Vec<Vec<BigInt>>,
    small: Option<Vec<Vec<i64>>>,
}

const SMALL_ENTRY: i64 = 1 << 30;
const SMALL_COEFF: i64 = 1 << 24;

impl ScaledRows {
    fn new(rows: &[Vec<Rat>]) -> Self {
        let denom = rows
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        let scaled: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|x| x.numer() * (&denom / x.denom())).collect())
            .collect();
        let small = scaled
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_i64().filter(|v| v.abs() < SMALL_ENTRY))
                    .collect::<Option<Vec<i64>>>()
            })
            .collect::<Option<Vec<_>>>();
        ScaledRows { denom, rows: scaled, small }
    }

    fn image_small(&self, coeffs: &[i64]) -> Option<Vec<i128>> {
        let small = self.small.as_ref()?;
        if coeffs.iter().any(|c| c.abs() >= SMALL_COEFF) {
            return None;
        }
        let n = small[0].len();
        let mut out = vec![0i128; n];
        for (row, &c) in small.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (o, &e) in out.iter_mut().zip(row) {
                *o += e as i128 * c as i128;
            }
        }
        Some(out)
    }

    fn image_big(&self, coeffs: &[i64]) -> Vec<BigInt> {
        let n = self.rows[0].len();
        let mut out = vec![BigInt::zero(); n];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            let c = BigInt::from(c);
            for (o, e) in out.iter_mut().zip(row) {
                *o += e * &c;
            }
        }
        out
    }
}

/// A squared radius converted to the integer scale of a basis, so leaf tests are integer compares.
#[derive(Debug, Clone)]
pub struct ScaledBound {
    floor: BigInt,
    small: Option<i128>,
}

impl ScaledBound {
    pub fn admits(&self, value: &ScaledValue) -> bool {
        match (value, self.small) {
            (ScaledValue::Small(v), Some(b)) => *v <= b,
            (ScaledValue::Small(v), None) => BigInt::from(*v) <= self.floor,
            (ScaledValue::Big(v), _) => *v <= self.floor,
        }
    }
}

/// A squared norm multiplied by the square of the basis denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ScaledValue {
    Small(i128),
    Big(BigInt),
}

impl ScaledValue {
    fn to_big(&self) -> BigInt {
        match self {
            ScaledValue::Small(v) => BigInt::from(*v),
            ScaledValue::Big(v) => v.clone(),
        }
    }

    pub fn cmp_value(&self, other: &ScaledValue) -> std::cmp::Ordering {
        match (self, other) {
            (ScaledValue::Small(a), ScaledValue::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

fn sum_squares_i128(v: &[i128]) -> Option<i128> {
    v.iter().try_fold(0i128, |acc, x| acc.checked_add(x.checked_mul(*x)?))
}

fn max_square_i128(v: &[i128]) -> Option<i128> {
    v.iter().try_fold(0i128, |acc, x| Some(acc.max(x.checked_mul(*x)?)))
}

impl LatticeBasis {
    /// Validates and builds a basis from its generator rows.
    pub fn new(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let first = rows.first().ok_or(LatticeError::EmptyInput)?;
        let n = first.len();
        if n == 0 {
            return Err(LatticeError::EmptyInput);
        }
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(LatticeError::RaggedInput { row, expected: n, found: r.len() });
        }
        if rows.len() > n {
            return Err(LatticeError::DependentRows);
        }
        let gso = gso::orthogonalize(&rows).ok_or(LatticeError::DependentRows)?;
        let det_sq = gso.tilde_norms_sq.iter().fold(Rat::one(), |acc, b| acc * b);
        let shadow = FloatShadow::from_gso(&gso);
        let scaled = ScaledRows::new(&rows);
        Ok(LatticeBasis { rows, gso, shadow, det_sq, scaled })
    }

    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| rational::int(x)).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.rows[0].len()
    }

    /// Full rank, `m = n`.
    pub fn is_complete(&self) -> bool {
        self.rank() == self.ambient_dim()
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn gso(&self) -> &GramSchmidtData {
        &self.gso
    }

    pub(crate) fn shadow(&self) -> &FloatShadow {
        &self.shadow
    }

    pub fn det_sq(&self) -> &Rat {
        &self.det_sq
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(LatticeError::NotFullRank { rank: self.rank(), dim: self.ambient_dim() })
        }
    }

    /// The lattice vector `Σ coeffs_i · a_i`.
    pub fn vector(&self, coeffs: &[i64]) -> Vec<Rat> {
        let n = self.ambient_dim();
        let mut out = vec![Rat::zero(); n];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            let c = rational::int(c);
            for (o, e) in out.iter_mut().zip(row) {
                *o += e * &c;
            }
        }
        out
    }

    /// The squared bound scaled to integer units for leaf comparisons.
    pub fn scaled_bound(&self, r_sq: &Rat) -> ScaledBound {
        let d2 = &self.scaled.denom * &self.scaled.denom;
        let floor = (r_sq * Rat::from_integer(d2)).floor().to_integer();
        let small = floor.to_i128();
        ScaledBound { floor, small }
    }

    pub fn scaled_norm_sq(&self, coeffs: &[i64]) -> ScaledValue {
        if let Some(v) = self.scaled.image_small(coeffs).and_then(|img| sum_squares_i128(&img)) {
            return ScaledValue::Small(v);
        }
        let img = self.scaled.image_big(coeffs);
        ScaledValue::Big(img.iter().map(|x| x * x).sum())
    }

    pub fn scaled_linf_sq(&self, coeffs: &[i64]) -> ScaledValue {
        if let Some(v) = self.scaled.image_small(coeffs).and_then(|img| max_square_i128(&img)) {
            return ScaledValue::Small(v);
        }
        let img = self.scaled.image_big(coeffs);
        ScaledValue::Big(img.iter().map(|x| x * x).max().unwrap_or_default())
    }

    pub fn unscale(&self, v: &ScaledValue) -> Rat {
        let d2 = &self.scaled.denom * &self.scaled.denom;
        Rat::new(v.to_big(), d2)
    }

    /// Exact squared Euclidean norm of `Σ coeffs_i · a_i`.
    pub fn norm_sq(&self, coeffs: &[i64]) -> Rat {
        self.unscale(&self.scaled_norm_sq(coeffs))
    }

    /// Exact squared l∞ norm of `Σ coeffs_i · a_i`.
    pub fn linf_sq(&self, coeffs: &[i64]) -> Rat {
        self.unscale(&self.scaled_linf_sq(coeffs))
    }

    /// Basis coordinates of a point in the span, `None` if it lies outside.
    pub fn coordinates(&self, x: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if x.len() != self.ambient_dim() {
            return Err(LatticeError::ShapeMismatch(format!(
                "point has length {}, lattice dimension is {}",
                x.len(),
                self.ambient_dim()
            )));
        }
        Ok(linalg::row_coordinates(&self.rows, x))
    }

    /// Whether `x` is a lattice vector.
    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        Ok(self.coordinates(x)?.is_some_and(|c| c.iter().all(|v| v.is_integer())))
    }
}

pub fn make_lattice(rows: Vec<Vec<Rat>>) -> Result<LatticeBasis> {
    LatticeBasis::new(rows)
}

/// `det(τ)` carried as the exact `det(AAᵀ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Determinant {
    pub squared: Rat,
    /// `det(τ)` itself when `squared` is a perfect rational square.
    pub exact: Option<Rat>,
    pub approx: f64,
}

pub fn determinant_squared(lattice: &LatticeBasis) -> Rat {
    lattice.det_sq().clone()
}

pub fn determinant(lattice: &LatticeBasis) -> Determinant {
    let squared = lattice.det_sq().clone();
    let exact = rational::sqrt_exact(&squared);
    let approx = match &exact {
        Some(r) => rational::to_f64(r),
        None => rational::to_f64(&squared).sqrt(),
    };
    Determinant { squared, exact, approx }
}

/// Integer matrix `U` with `det U = ±1` relating two bases: `B = U·A` on rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularWitness {
    pub matrix: Vec<Vec<BigInt>>,
}

impl UnimodularWitness {
    pub fn determinant(&self) -> BigInt {
        let m: Vec<Vec<Rat>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(rational::big).collect())
            .collect();
        linalg::determinant(&m).to_integer()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SameLattice {
    pub same: bool,
    pub witness: Option<UnimodularWitness>,
}

/// Decides whether two bases generate the same lattice.
///
/// Each row of `b` is expressed in the coordinates of `a`; the lattices agree
/// exactly when the spans coincide and the coordinate matrix is an integer
/// matrix of determinant ±1. The witness is returned whenever they agree.
pub fn same_lattice(a: &LatticeBasis, b: &LatticeBasis) -> Result<SameLattice> {
    if a.rank() != b.rank() || a.ambient_dim() != b.ambient_dim() {
        return Err(LatticeError::ShapeMismatch(format!(
            "rank/dimension {}x{} vs {}x{}",
            a.rank(),
            a.ambient_dim(),
            b.rank(),
            b.ambient_dim()
        )));
    }
    let not_same = SameLattice { same: false, witness: None };
    let mut u = Vec::with_capacity(b.rank());
    for row in b.rows() {
        let Some(coords) = linalg::row_coordinates(a.rows(), row) else {
            return Ok(not_same);
        };
        if coords.iter().any(|c| !c.is_integer()) {
            return Ok(not_same);
        }
        u.push(coords);
    }
    let det = linalg::determinant(&u);
    if det.abs() != Rat::one() {
        return Ok(not_same);
    }
    let matrix = u
        .into_iter()
        .map(|r| r.into_iter().map(|c| c.to_integer()).collect())
        .collect();
    Ok(SameLattice { same: true, witness: Some(UnimodularWitness { matrix }) })
}

/// A point split into its fundamental-mesh part and its lattice part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MeshPoint {
    /// Basis coordinates in `[0, 1)`.
    pub reduced: Vec<Rat>,
    pub offset: Vec<BigInt>,
}

impl MeshPoint {
    /// `A·(offset + reduced)`.
    pub fn reconstruct(&self, lattice: &LatticeBasis) -> Vec<Rat> {
        let n = lattice.ambient_dim();
        let mut out = vec![Rat::zero(); n];
        for ((row, r), o) in lattice.rows().iter().zip(&self.reduced).zip(&self.offset) {
            let c = r + rational::big(o);
            for (acc, e) in out.iter_mut().zip(row) {
                *acc += e * &c;
            }
        }
        out
    }
}

/// Reduces `x` modulo the lattice into the half-open fundamental mesh.
pub fn reduce_mod_mesh(x: &[Rat], lattice: &LatticeBasis) -> Result<MeshPoint> {
    lattice.require_complete()?;
    let coords = lattice
        .coordinates(x)?
        .expect("full-rank basis spans the ambient space");
    let mut reduced = Vec::with_capacity(coords.len());
    let mut offset = Vec::with_capacity(coords.len());
    for c in coords {
        let f = c.floor();
        reduced.push(&c - &f);
        offset.push(f.to_integer());
    }
    Ok(MeshPoint { reduced, offset })
}

/// First pair `(i, j)`, `i < j` in lexicographic order, of points whose
/// difference is a lattice vector.
pub fn blichfeldt_collision(points: &[Vec<Rat>], lattice: &LatticeBasis) -> Result<Option<(usize, usize)>> {
    lattice.require_complete()?;
    let mut first_two: HashMap<Vec<Rat>, (usize, Option<usize>)> = HashMap::new();
    for (j, p) in points.iter().enumerate() {
        let key = reduce_mod_mesh(p, lattice)?.reduced;
        first_two
            .entry(key)
            .and_modify(|slot| {
                if slot.1.is_none() {
                    slot.1 = Some(j);
                }
            })
            .or_insert((j, None));
    }
    Ok(first_two
        .into_values()
        .filter_map(|(i, j)| j.map(|j| (i, j)))
        .min())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointCount {
    pub count: u64,
    pub ball_volume: f64,
    pub ratio: f64,
}

pub const POINT_COUNT_MAX_DIM: usize = 4;

/// Lattice points in the closed ball of the given radius against the ball volume.
/// The ratio tends to `det(τ)` as the radius grows.
pub fn point_count_ratio(lattice: &LatticeBasis, radius: &Rat) -> Result<PointCount> {
    lattice.require_complete()?;
    let n = lattice.ambient_dim();
    if n > POINT_COUNT_MAX_DIM {
        return Err(LatticeError::DimensionTooLarge { found: n, max: POINT_COUNT_MAX_DIM });
    }
    if !radius.is_positive() {
        return Err(LatticeError::InvalidArgument("radius must be positive".into()));
    }
    let r_sq = radius * radius;
    let bound = lattice.scaled_bound(&r_sq);
    let mut count: u64 = 0;
    enumerate::search(
        lattice.shadow(),
        &vec![0.0; lattice.rank()],
        rational::to_f64(&r_sq),
        DEFAULT_BUDGET,
        |x| {
            if bound.admits(&lattice.scaled_norm_sq(x)) {
                count += 1;
            }
            Step::Continue
        },
    )?;
    let ball_volume = packing::ball_volume(n as u32, rational::to_f64(radius));
    Ok(PointCount { count, ball_volume, ratio: ball_volume / count as f64 })
}

/// Parses the whitespace-separated matrix text format: one vector per line,
/// entries are integers or `p/q`; blank lines and `#` comments are skipped.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<Rat>>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().map(rational::parse_rational).collect())
        .collect()
}
