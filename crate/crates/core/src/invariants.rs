//! Seifert matrix of the Hopf-plumbed surface of a tree and the link
//! invariants read off from it.
//!
//! Each vertex contributes the core curve of one Hopf band. A band of sign
//! `s` has self-linking `s`; plumbing a child band onto its parent makes the
//! two cores cross once, which shows up in exactly one of the two
//! off-diagonal positions. The convention here is
//! `V[v][v] = label(v)`, `V[parent][child] = 1`, `V[child][parent] = 0`.
//! Other sign choices along edges are congruent to this one by a diagonal
//! `±1` change of basis and give the same invariants.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::LaurentPolynomial;
use crate::tree::{PlaneTree, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    rows: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn of_tree(t: &PlaneTree) -> SeifertMatrix {
        let n = t.len();
        let mut rows = vec![vec![0; n]; n];
        for (v, row) in rows.iter_mut().enumerate() {
            row[v] = t.label(v).value();
        }
        for (p, c) in t.edges() {
            rows[p][c] = 1;
        }
        SeifertMatrix { rows }
    }

    /// Any square integer matrix; used for basis changes and tests.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<SeifertMatrix> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidTree("Seifert matrix must be square and nonempty".into()));
        }
        Ok(SeifertMatrix { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    /// `D V D` for the diagonal sign matrix `D = diag(signs)`.
    pub fn flip_basis(&self, signs: &[Sign]) -> SeifertMatrix {
        assert_eq!(signs.len(), self.dim());
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, &x)| x * signs[i].value() * signs[j].value()).collect())
            .collect();
        SeifertMatrix { rows }
    }

    fn combine(&self, sign: i64) -> Vec<Vec<i64>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.rows[i][j] + sign * self.rows[j][i]).collect()).collect()
    }

    /// `V + Vᵀ`.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        self.combine(1)
    }

    /// `V - Vᵀ`, the intersection form on the surface.
    pub fn antisymmetrized(&self) -> Vec<Vec<i64>> {
        self.combine(-1)
    }

    pub fn intersection_rank(&self) -> usize {
        linalg::rank(&self.antisymmetrized())
    }

    /// Boundary components of a connected surface with first Betti number
    /// `dim`: from `χ = 1 - n = 2 - 2g - b` and `rank(V - Vᵀ) = 2g`.
    pub fn boundary_components(&self) -> usize {
        self.dim() - self.intersection_rank() + 1
    }

    pub fn genus(&self) -> usize {
        self.intersection_rank() / 2
    }

    /// `det(V - t Vᵀ)` before normalization.
    pub fn alexander_raw(&self) -> LaurentPolynomial {
        LaurentPolynomial::new(0, linalg::alexander_determinant(&self.rows))
    }

    pub fn alexander(&self) -> LaurentPolynomial {
        self.alexander_raw().normalized()
    }

    pub fn inertia(&self) -> linalg::Inertia {
        linalg::inertia(&self.symmetrized())
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let rank = self.intersection_rank();
        let alexander = self.alexander();
        let inertia = self.inertia();
        let n = self.dim();
        Fingerprint {
            n,
            b: n - rank + 1,
            g: rank / 2,
            determinant: alexander.value_at_minus_one().magnitude().clone(),
            alexander,
            signature: inertia.signature(),
            nullity: inertia.zero,
        }
    }
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Invariants compared in place of an isotopy test.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub n: usize,
    pub b: usize,
    pub g: usize,
    pub alexander: LaurentPolynomial,
    pub signature: i64,
    pub determinant: BigUint,
    pub nullity: usize,
}

#[derive(Serialize, Deserialize)]
struct FingerprintJson {
    n: usize,
    b: usize,
    g: usize,
    alexander: LaurentPolynomial,
    sigma: i64,
    det: String,
    nullity: usize,
}

impl Serialize for Fingerprint {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FingerprintJson {
            n: self.n,
            b: self.b,
            g: self.g,
            alexander: self.alexander.clone(),
            sigma: self.signature,
            det: self.determinant.to_string(),
            nullity: self.nullity,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Fingerprint {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let j = FingerprintJson::deserialize(deserializer)?;
        Ok(Fingerprint {
            n: j.n,
            b: j.b,
            g: j.g,
            alexander: j.alexander,
            signature: j.sigma,
            determinant: j.det.parse().map_err(serde::de::Error::custom)?,
            nullity: j.nullity,
        })
    }
}

impl Fingerprint {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("fingerprint serializes")
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} b={} g={} alexander={} sigma={} det={} nullity={}",
            self.n, self.b, self.g, self.alexander, self.signature, self.determinant, self.nullity
        )
    }
}

pub fn seifert_matrix(t: &PlaneTree) -> SeifertMatrix {
    SeifertMatrix::of_tree(t)
}

/// First Betti number of the plumbed surface: one band per vertex.
pub fn betti(t: &PlaneTree) -> usize {
    t.len()
}

pub fn boundary_components(t: &PlaneTree) -> usize {
    SeifertMatrix::of_tree(t).boundary_components()
}

pub fn genus(t: &PlaneTree) -> usize {
    SeifertMatrix::of_tree(t).genus()
}

pub fn alexander(t: &PlaneTree) -> LaurentPolynomial {
    SeifertMatrix::of_tree(t).alexander()
}

pub fn signature(t: &PlaneTree) -> i64 {
    SeifertMatrix::of_tree(t).inertia().signature()
}

pub fn determinant(t: &PlaneTree) -> BigUint {
    alexander(t).value_at_minus_one().magnitude().clone()
}

pub fn nullity(t: &PlaneTree) -> usize {
    SeifertMatrix::of_tree(t).inertia().zero
}

pub fn fingerprint(t: &PlaneTree) -> Fingerprint {
    SeifertMatrix::of_tree(t).fingerprint()
}

/// `g - |σ|/2`, an upper bound on `g - g₄` for the boundary knot.
pub fn top_defect_upper_bound(t: &PlaneTree) -> Result<i64> {
    let m = SeifertMatrix::of_tree(t);
    let b = m.boundary_components();
    if b != 1 {
        return Err(Error::NotAKnot(b));
    }
    let sigma = m.inertia().signature();
    Ok(m.genus() as i64 - sigma.abs() / 2)
}

/// True when all labels agree. Such trees bound positive (or mirrored
/// positive) links, whose smooth 4-genus equals the genus. `false` means no
/// guarantee, not a positive defect.
pub fn smooth_defect_guarantee(t: &PlaneTree) -> bool {
    let first = t.label(0);
    t.labels().all(|l| l == first)
}

/// `Δ(1)`, which is `±1` for every knot.
pub fn alexander_at_one(t: &PlaneTree) -> BigInt {
    alexander(t).value_at_one()
}
