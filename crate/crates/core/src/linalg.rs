//! Dense Gaussian elimination over exact rationals.

use num_traits::{One, Zero};

use crate::rational::Rat;

pub fn determinant(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let delta = &f * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// `A·Aᵀ` for a matrix whose rows are vectors.
pub fn gram(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|a| rows.iter().map(|b| crate::rational::dot(a, b)).collect())
        .collect()
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut echelon = Echelon::default();
    rows.iter().filter(|r| echelon.insert(r)).count()
}

/// Coefficients `c` with `Σ c_i·rows[i] = target`, if `target` lies in the row span.
/// `rows` must be linearly independent.
pub fn row_coordinates(rows: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let m = rows.len();
    let n = target.len();
    // augmented system: columns of rows^T | target
    let mut a: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            let mut row: Vec<Rat> = rows.iter().map(|r| r[j].clone()).collect();
            row.push(target[j].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::with_capacity(m);
    let mut r = 0;
    for col in 0..m {
        let Some(p) = (r..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = Rat::one() / &a[r][col];
        for c in col..=m {
            a[r][c] *= &inv;
        }
        for i in 0..n {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for c in col..=m {
                    let delta = &f * &a[r][c];
                    a[i][c] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[m].is_zero()) {
        return None;
    }
    let mut out = vec![Rat::zero(); m];
    for (i, &col) in pivot_cols.iter().enumerate() {
        out[col] = a[i][m].clone();
    }
    Some(out)
}

/// Reduced row echelon form kept incrementally; answers "is this vector
/// independent of everything inserted so far".
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Echelon {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
        v
    }

    pub fn is_independent(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().any(|x| !x.is_zero())
    }

    /// Inserts `v` if it is independent; returns whether it was.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Rat::one() / &v[pivot];
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let f = row[pivot].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}
