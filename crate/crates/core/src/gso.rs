//! Exact Gram–Schmidt orthogonalization.
//!
//! The orthogonalized vectors depend on the order of the input rows. They
//! generally do not form a basis of the lattice and are never exposed as one.

use num_traits::{One, Signed, Zero};

use crate::lattice::LatticeBasis;
use crate::rational::{self, Rat};

#[derive(Debug, Clone, PartialEq)]
pub struct GramSchmidtData {
    pub tilde_vectors: Vec<Vec<Rat>>,
    /// Lower triangular with unit diagonal: `a_i = ã_i + Σ_{j<i} mu[i][j]·ã_j`.
    pub mu: Vec<Vec<Rat>>,
    pub tilde_norms_sq: Vec<Rat>,
}

/// Orthogonalizes `rows` in order; `None` if they are linearly dependent.
pub(crate) fn orthogonalize(rows: &[Vec<Rat>]) -> Option<GramSchmidtData> {
    let m = rows.len();
    let mut tilde: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut norms: Vec<Rat> = Vec::with_capacity(m);
    let mut mu = vec![vec![Rat::zero(); m]; m];
    for (i, a) in rows.iter().enumerate() {
        let mut t = a.clone();
        for j in 0..i {
            let c = rational::dot(a, &tilde[j]) / &norms[j];
            for (x, y) in t.iter_mut().zip(&tilde[j]) {
                *x -= &c * y;
            }
            mu[i][j] = c;
        }
        mu[i][i] = Rat::one();
        let b = rational::norm_sq(&t);
        if b.is_zero() {
            return None;
        }
        tilde.push(t);
        norms.push(b);
    }
    Some(GramSchmidtData { tilde_vectors: tilde, mu, tilde_norms_sq: norms })
}

pub fn gram_schmidt(lattice: &LatticeBasis) -> GramSchmidtData {
    lattice.gso().clone()
}

/// A real number `±√square`, stored exactly with a float shadow.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameEntry {
    pub square: Rat,
    pub negative: bool,
    pub approx: f64,
}

impl FrameEntry {
    fn new(square: Rat, negative: bool) -> Self {
        let magnitude = rational::to_f64(&square).sqrt();
        let approx = if negative { -magnitude } else { magnitude };
        FrameEntry { square, negative, approx }
    }

    pub fn is_zero(&self) -> bool {
        self.square.is_zero()
    }
}

/// Coordinates of the basis vectors in the orthonormal frame `ã_j/‖ã_j‖`.
///
/// The result has `n` rows (frame axes) and `m` columns (basis vectors). Column
/// `i` has `‖ã_i‖` on the diagonal and `μ_{i,j}‖ã_j‖` above it; rows `m..n` are zero.
pub fn gso_triangular(lattice: &LatticeBasis) -> Vec<Vec<FrameEntry>> {
    let g = lattice.gso();
    let m = lattice.rank();
    let n = lattice.ambient_dim();
    let zero = FrameEntry::new(Rat::zero(), false);
    let mut out = vec![vec![zero; m]; n];
    for i in 0..m {
        for j in 0..i {
            let mu = &g.mu[i][j];
            out[j][i] = FrameEntry::new(mu * mu * &g.tilde_norms_sq[j], mu.is_negative());
        }
        out[i][i] = FrameEntry::new(g.tilde_norms_sq[i].clone(), false);
    }
    out
}

/// `min_i ‖ã_i‖²`, a certified lower bound on `λ₁²`.
pub fn gso_min_norm_sq(lattice: &LatticeBasis) -> Rat {
    lattice
        .gso()
        .tilde_norms_sq
        .iter()
        .min()
        .cloned()
        .expect("nonempty basis")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn lat(rows: &[&[i64]]) -> LatticeBasis {
        LatticeBasis::from_integers(rows).unwrap()
    }

    #[test]
    fn identity_is_fixed() {
        let g = gram_schmidt(&lat(&[&[1, 0], &[0, 1]]));
        assert_eq!(g.tilde_vectors, vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
        assert_eq!(g.mu, vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
    }

    #[test]
    fn hand_worked_example() {
        let g = gram_schmidt(&lat(&[&[1, 1], &[0, 1]]));
        assert_eq!(g.tilde_vectors[0], vec![int(1), int(1)]);
        assert_eq!(g.mu[1][0], ratio(1, 2));
        assert_eq!(g.tilde_vectors[1], vec![ratio(-1, 2), ratio(1, 2)]);
        assert_eq!(g.tilde_norms_sq, vec![int(2), ratio(1, 2)]);
    }

    #[test]
    fn order_matters() {
        let g = gram_schmidt(&lat(&[&[0, 1], &[1, 1]]));
        assert_eq!(g.tilde_vectors, vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
    }

    #[test]
    fn triangular_frame() {
        let t = gso_triangular(&lat(&[&[1, 0], &[0, 1]]));
        assert_eq!(t[0][0].square, int(1));
        assert!(t[1][0].is_zero() && t[0][1].is_zero());
        assert_eq!(t[1][1].square, int(1));

        let t = gso_triangular(&lat(&[&[1, 1], &[0, 1]]));
        assert_eq!(t[0][0].square, int(2));
        assert_eq!(t[1][1].square, ratio(1, 2));
        assert_eq!(t[0][1].square, ratio(1, 2));
        assert!(!t[0][1].negative);
        assert!(t[1][0].is_zero());
    }

    #[test]
    fn triangular_frame_rank_deficient_shape() {
        let t = gso_triangular(&lat(&[&[1, 0, 0], &[1, 1, 1]]));
        assert_eq!(t.len(), 3);
        assert!(t.iter().all(|r| r.len() == 2));
        assert!(t[2].iter().all(FrameEntry::is_zero));
        assert_eq!(t[0][1].square, int(1));
        assert_eq!(t[1][1].square, int(2));
    }

    #[test]
    fn min_norm_examples() {
        assert_eq!(gso_min_norm_sq(&lat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), int(1));
        assert_eq!(gso_min_norm_sq(&lat(&[&[1, 1], &[0, 1]])), ratio(1, 2));
        assert_eq!(gso_min_norm_sq(&lat(&[&[2, 0], &[1, 2]])), int(4));
    }

    #[test]
    fn negative_mu_keeps_sign() {
        let t = gso_triangular(&lat(&[&[1, 0], &[-3, 1]]));
        assert!(t[0][1].negative);
        assert_eq!(t[0][1].square, int(9));
        assert!((t[0][1].approx + 3.0).abs() < 1e-15);
    }
}
