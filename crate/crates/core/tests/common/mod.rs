//! Independent reference computations for cross-checking the library.
#![allow(dead_code, clippy::needless_range_loop)]

use hopfarb::{LaurentPolynomial, PlaneTree};

pub fn t(s: &str) -> PlaneTree {
    PlaneTree::parse(s).unwrap()
}

type Poly = Vec<i128>;

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_into(acc: &mut Poly, p: &Poly, sign: i128) {
    if acc.len() < p.len() {
        acc.resize(p.len(), 0);
    }
    for (i, c) in p.iter().enumerate() {
        acc[i] += sign * c;
    }
}

/// Cofactor expansion along the first row, over `Z[t]`.
fn laplace(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = vec![0];
    for col in 0..n {
        if m[0][col].iter().all(|&c| c == 0) {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = mul(&m[0][col], &laplace(&minor));
        add_into(&mut acc, &term, if col % 2 == 0 { 1 } else { -1 });
    }
    acc
}

/// `det(V - t Vᵀ)` by cofactor expansion, normalized to lowest exponent 0
/// and positive leading coefficient.
pub fn alexander_by_cofactors(v: &[Vec<i64>]) -> LaurentPolynomial {
    let n = v.len();
    let m: Vec<Vec<Poly>> =
        (0..n).map(|i| (0..n).map(|j| vec![v[i][j] as i128, -(v[j][i] as i128)]).collect()).collect();
    let coeffs: Vec<i64> = laplace(&m).into_iter().map(|c| c as i64).collect();
    LaurentPolynomial::from_i64s(0, &coeffs).normalized()
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
pub fn symmetric_eigenvalues(m: &[Vec<i64>]) -> Vec<f64> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-22 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let tt = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let tt = if theta == 0.0 { 1.0 } else { tt };
                let c = 1.0 / (tt * tt + 1.0).sqrt();
                let s = tt * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// (positive, negative, zero) eigenvalue counts with a tolerance far below
/// the smallest nonzero eigenvalue of a small integer matrix.
pub fn float_inertia(m: &[Vec<i64>]) -> (usize, usize, usize) {
    let ev = symmetric_eigenvalues(m);
    let pos = ev.iter().filter(|&&x| x > 1e-7).count();
    let neg = ev.iter().filter(|&&x| x < -1e-7).count();
    (pos, neg, ev.len() - pos - neg)
}

/// Rank of an integer matrix via the eigenvalues of `AᵀA`.
pub fn float_rank(m: &[Vec<i64>]) -> usize {
    let n = m.len();
    let ata: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| m[k][i] * m[k][j]).sum()).collect()).collect();
    float_inertia(&ata).0
}
