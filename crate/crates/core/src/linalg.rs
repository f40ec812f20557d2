//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Every routine is generic over a checked integer type and returns `None`
//! on overflow; the public wrappers run on `i128` first and repeat the
//! computation with `BigInt` only when that overflows.

use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};

pub(crate) trait Exact:
    Clone + Integer + Signed + Neg<Output = Self> + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv + From<i64>
{
}

impl Exact for i128 {}
impl Exact for BigInt {}

fn widen<T: Exact>(v: i64) -> T {
    T::from(v)
}

/// Polynomials in one variable, ascending coefficients, trimmed.
type Poly<T> = Vec<T>;

fn trim<T: Exact>(mut p: Poly<T>) -> Poly<T> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul<T: Exact>(a: &Poly<T>, b: &Poly<T>) -> Option<Poly<T>> {
    if a.is_empty() || b.is_empty() {
        return Some(Vec::new());
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].checked_add(&x.checked_mul(y)?)?;
        }
    }
    Some(trim(out))
}

fn poly_sub<T: Exact>(a: &Poly<T>, b: &Poly<T>) -> Option<Poly<T>> {
    let mut out = vec![T::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] = out[i].checked_sub(y)?;
    }
    Some(trim(out))
}

/// Exact division; the divisor must be nonzero and divide `a`.
fn poly_div_exact<T: Exact>(a: &Poly<T>, d: &Poly<T>) -> Option<Poly<T>> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    let lead = d.last().expect("division by the zero polynomial");
    assert!(a.len() >= d.len(), "inexact polynomial division");
    let mut rem = a.clone();
    let mut quot = vec![T::zero(); a.len() - d.len() + 1];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + d.len() - 1];
        let (q, r) = top.div_rem(lead);
        assert!(r.is_zero(), "inexact polynomial division");
        if !q.is_zero() {
            for (i, c) in d.iter().enumerate() {
                rem[k + i] = rem[k + i].checked_sub(&q.checked_mul(c)?)?;
            }
        }
        quot[k] = q;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    Some(trim(quot))
}

/// Fraction-free Bareiss determinant of a square matrix over `Z[t]`.
fn bareiss_poly<T: Exact>(mut a: Vec<Vec<Poly<T>>>) -> Option<Poly<T>> {
    let n = a.len();
    if n == 0 {
        return Some(vec![T::one()]);
    }
    let mut negate = false;
    let mut prev: Poly<T> = vec![T::one()];
    for k in 0..n {
        if a[k][k].is_empty() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_empty()) else {
                return Some(Vec::new());
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = poly_sub(&poly_mul(&a[k][k], &a[i][j])?, &poly_mul(&a[i][k], &a[k][j])?)?;
                a[i][j] = poly_div_exact(&num, &prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Some(if negate { det.into_iter().map(|c| -c).collect() } else { det })
}

/// `det(V - t Vᵀ)` as ascending coefficients over the given integer type.
fn alexander_det<T: Exact>(v: &[Vec<i64>]) -> Option<Poly<T>> {
    let n = v.len();
    let m = (0..n).map(|i| (0..n).map(|j| trim(vec![widen::<T>(v[i][j]), widen::<T>(-v[j][i])])).collect()).collect();
    bareiss_poly(m)
}

/// `det(V - t Vᵀ)` with big-integer coefficients, lowest degree first.
pub fn alexander_determinant(v: &[Vec<i64>]) -> Vec<BigInt> {
    match alexander_det::<i128>(v) {
        Some(p) => p.into_iter().map(BigInt::from).collect(),
        None => alexander_det::<BigInt>(v).expect("BigInt arithmetic does not overflow"),
    }
}

fn to_ratios<T: Exact>(m: &[Vec<i64>]) -> Vec<Vec<Ratio<T>>> {
    m.iter().map(|row| row.iter().map(|&x| Ratio::from_integer(widen(x))).collect()).collect()
}

fn rank_over<T: Exact>(m: &[Vec<i64>]) -> Option<usize> {
    let mut a = to_ratios::<T>(m);
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].checked_div(&a[rank][c])?;
            for k in c..cols {
                let delta = f.checked_mul(&a[rank][k])?;
                a[r][k] = a[r][k].checked_sub(&delta)?;
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Rank over the rationals.
pub fn rank(m: &[Vec<i64>]) -> usize {
    rank_over::<i128>(m).unwrap_or_else(|| rank_over::<BigInt>(m).expect("no overflow"))
}

/// Counts of positive, negative and zero eigenvalues of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Congruence diagonalization by symmetric pivoting. When every remaining
/// diagonal entry vanishes but some `a[i][j]` does not, adding basis vector
/// `j` to `i` produces the pivot `2 a[i][j]`.
fn inertia_over<T: Exact>(m: &[Vec<i64>]) -> Option<Inertia> {
    let mut a = to_ratios::<T>(m);
    let n = a.len();
    let (mut pos, mut neg) = (0, 0);
    let mut k = 0;
    while k < n {
        let pivot_row = match (k..n).find(|&p| !a[p][p].is_zero()) {
            Some(p) => p,
            None => {
                let Some((i, j)) =
                    (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
                else {
                    break;
                };
                for c in k..n {
                    a[i][c] = a[i][c].checked_add(&a[j][c])?;
                }
                for r in k..n {
                    a[r][i] = a[r][i].checked_add(&a[r][j])?;
                }
                i
            }
        };
        a.swap(k, pivot_row);
        for row in a.iter_mut() {
            row.swap(k, pivot_row);
        }
        let p = a[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        // Schur complement on the trailing block
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = a[r][k].checked_div(&p)?;
            for c in k + 1..n {
                let delta = f.checked_mul(&a[k][c])?;
                a[r][c] = a[r][c].checked_sub(&delta)?;
            }
        }
        k += 1;
    }
    Some(Inertia { positive: pos, negative: neg, zero: n - pos - neg })
}

/// Inertia of a symmetric integer matrix, computed exactly.
pub fn inertia(m: &[Vec<i64>]) -> Inertia {
    inertia_over::<i128>(m).unwrap_or_else(|| inertia_over::<BigInt>(m).expect("no overflow"))
}

#[cfg(test)]
pub(crate) fn alexander_det_small(v: &[Vec<i64>]) -> Option<Vec<i128>> {
    alexander_det::<i128>(v)
}

#[cfg(test)]
pub(crate) fn alexander_det_big(v: &[Vec<i64>]) -> Vec<BigInt> {
    alexander_det::<BigInt>(v).unwrap()
}
