//! Independent reference implementations used as oracles. Nothing here calls the
//! enumeration engine or the library's linear algebra.

#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn bareiss_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

pub fn gram_int(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|a| rows.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum()).collect())
        .collect()
}

fn inverse_diagonal(g: &[Vec<i64>]) -> Vec<f64> {
    let n = g.len();
    let mut a: Vec<Vec<f64>> = g
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<f64> = r.iter().map(|&v| v as f64).collect();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).max_by(|&x, &y| a[x][k].abs().total_cmp(&a[y][k].abs())).unwrap();
        a.swap(k, p);
        let piv = a[k][k];
        for v in a[k].iter_mut() {
            *v /= piv;
        }
        for i in 0..n {
            if i != k {
                let f = a[i][k];
                let rk = a[k].clone();
                for (x, y) in a[i].iter_mut().zip(rk) {
                    *x -= f * y;
                }
            }
        }
    }
    (0..n).map(|i| a[i][n + i]).collect()
}

/// Per-coordinate bound on the coefficients of lattice vectors with squared norm
/// at most `r_sq`: `|c_i|² ≤ r_sq · (G⁻¹)_ii`, plus one for float safety.
pub fn coefficient_box(rows: &[Vec<i64>], r_sq: i64) -> Vec<i64> {
    inverse_diagonal(&gram_int(rows))
        .into_iter()
        .map(|d| (r_sq as f64 * d.max(0.0)).sqrt().floor() as i64 + 1)
        .collect()
}

pub fn combine(rows: &[Vec<i64>], c: &[i64]) -> Vec<i64> {
    let n = rows[0].len();
    let mut v = vec![0i64; n];
    for (row, &ci) in rows.iter().zip(c) {
        for (x, e) in v.iter_mut().zip(row) {
            *x += ci * e;
        }
    }
    v
}

pub fn norm_sq(v: &[i64]) -> i64 {
    v.iter().map(|x| x * x).sum()
}

pub fn box_size(b: &[i64]) -> u128 {
    b.iter().map(|&x| (2 * x + 1) as u128).product()
}

/// Calls `f` on every coefficient vector in `∏ [-b_i, b_i]`.
pub fn for_each_in_box(b: &[i64], mut f: impl FnMut(&[i64])) {
    let n = b.len();
    let mut c: Vec<i64> = b.iter().map(|x| -x).collect();
    loop {
        f(&c);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            c[i] += 1;
            if c[i] <= b[i] {
                break;
            }
            c[i] = -b[i];
            i += 1;
        }
    }
}

pub fn canonical(c: &[i64]) -> bool {
    c.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Nonzero canonical lattice vectors with squared norm `≤ r_sq`, by exhaustion.
pub fn brute_below(rows: &[Vec<i64>], r_sq: i64) -> Vec<(i64, Vec<i64>)> {
    let b = coefficient_box(rows, r_sq);
    let mut out = Vec::new();
    for_each_in_box(&b, |c| {
        if canonical(c) {
            let q = norm_sq(&combine(rows, c));
            if q <= r_sq {
                out.push((q, c.to_vec()));
            }
        }
    });
    out.sort();
    out
}

/// Relevant vectors by the coset criterion, by exhaustion: a class `c` of τ/2τ is
/// relevant iff its shortest members are exactly one `±` pair.
pub fn brute_relevant(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = rows.len();
    let longest: i64 = rows.iter().map(|r| norm_sq(r)).max().unwrap();
    let r_sq = (n * n) as i64 * longest;
    let b = coefficient_box(rows, r_sq);
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let parity: Vec<i64> = (0..n).map(|i| ((mask >> i) & 1) as i64).collect();
        let mut best = i64::MAX;
        let mut winners: Vec<Vec<i64>> = Vec::new();
        for_each_in_box(&b, |c| {
            if c.iter().zip(&parity).all(|(x, p)| (x - p).rem_euclid(2) == 0) {
                let q = norm_sq(&combine(rows, c));
                if q < best {
                    best = q;
                    winners.clear();
                }
                if q == best {
                    winners.push(c.to_vec());
                }
            }
        });
        if winners.len() == 2 {
            out.extend(winners.into_iter().filter(|c| canonical(c)));
        }
    }
    out.sort();
    out
}

pub fn is_square(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&s| s * s == n)
}

pub fn to_int_rows(l: &geonum::LatticeBasis) -> Vec<Vec<i64>> {
    l.rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    assert!(x.is_integer());
                    let v = x.to_integer();
                    assert!(v.abs() < BigInt::from(1i64 << 40));
                    i64::try_from(v).unwrap()
                })
                .collect()
        })
        .collect()
}

/// `adj(A)` with `A·adj(A) = det(A)·I`, for a square integer matrix.
pub fn adjugate(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i64; n]; n];
    for r in 0..n {
        for c in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&i| i != r)
                .map(|i| (0..n).filter(|&j| j != c).map(|j| a[i][j]).collect())
                .collect();
            let m = i64::try_from(bareiss_det(&minor)).unwrap();
            adj[c][r] = if (r + c) % 2 == 0 { m } else { -m };
        }
    }
    adj
}

/// Same output as [`brute_below`] for a full-rank integer basis, found by walking
/// the integer points of the ambient ball and testing membership through `adj(A)`.
pub fn brute_below_ambient(rows: &[Vec<i64>], r_sq: i64) -> Vec<(i64, Vec<i64>)> {
    let n = rows.len();
    let det = i64::try_from(bareiss_det(rows)).unwrap();
    let adj = adjugate(rows);
    let r = (r_sq as f64).sqrt().floor() as i64 + 1;
    let mut out = Vec::new();
    for_each_in_box(&vec![r; n], |v| {
        let q = norm_sq(v);
        if q == 0 || q > r_sq {
            return;
        }
        // c = v·A⁻¹ = v·adj(A)/det
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            let s: i64 = (0..n).map(|i| v[i] * adj[i][k]).sum();
            if s % det != 0 {
                return;
            }
            c.push(s / det);
        }
        if canonical(&c) {
            out.push((q, c));
        }
    });
    out.sort();
    out
}
