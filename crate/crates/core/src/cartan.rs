//! Cartan data, root vectors, dominant weights and quantum integers.
//!
//! A datum is given by the symmetric bilinear form `(α_i, α_j)` on simple
//! roots. Everything else (the pairings `<h_i, α_j>`, the entries
//! `a_ij = -<h_i, α_j>`, the symmetrizers `d_i`) is derived from it.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("bilinear form must be a {expected}x{expected} matrix matching the labels, found row {row} of length {found}")]
    Shape {
        expected: usize,
        row: usize,
        found: usize,
    },
    #[error("no vertices given")]
    Empty,
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("bilinear form is not symmetric at ({i}, {j})")]
    NonSymmetric { i: String, j: String },
    #[error("(α_i, α_i) must be a positive even integer at ({i}, {i})")]
    DiagonalNotPositiveEven { i: String },
    #[error("(α_i, α_j) must be <= 0 off the diagonal at ({i}, {j})")]
    OffDiagonalPositive { i: String, j: String },
    #[error("2(α_i, α_j) is not divisible by (α_i, α_i) at ({i}, {j})")]
    DivisibilityFailure { i: String, j: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("expected {expected} coefficients, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("negative coefficient {value} at vertex {vertex}")]
    NegativeCoefficient { vertex: String, value: i64 },
}

/// Raw datum file contents: `{"labels": [...], "bilinear": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDatum {
    pub labels: Vec<String>,
    pub bilinear: Vec<Vec<i64>>,
}

/// A validated symmetrizable Cartan datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    labels: Vec<String>,
    bform: Vec<Vec<i64>>,
    // pairing[i][j] = <h_i, α_j>
    pairing: Vec<Vec<i64>>,
}

impl CartanDatum {
    /// Checks the axioms on `(α_i, α_j)` and caches `<h_i, α_j>`.
    pub fn new(labels: Vec<String>, bform: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let n = labels.len();
        if n == 0 {
            return Err(CartanError::Empty);
        }
        for (k, l) in labels.iter().enumerate() {
            if labels[..k].contains(l) {
                return Err(CartanError::DuplicateLabel(l.clone()));
            }
        }
        if bform.len() != n {
            return Err(CartanError::Shape {
                expected: n,
                row: bform.len(),
                found: 0,
            });
        }
        for (r, row) in bform.iter().enumerate() {
            if row.len() != n {
                return Err(CartanError::Shape {
                    expected: n,
                    row: r,
                    found: row.len(),
                });
            }
        }
        let name = |k: usize| labels[k].clone();
        for (i, row) in bform.iter().enumerate() {
            let bii = row[i];
            if bii <= 0 || bii % 2 != 0 {
                return Err(CartanError::DiagonalNotPositiveEven { i: name(i) });
            }
        }
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in 0..n {
                if bform[i][j] != bform[j][i] {
                    return Err(CartanError::NonSymmetric {
                        i: name(i),
                        j: name(j),
                    });
                }
                if i != j && bform[i][j] > 0 {
                    return Err(CartanError::OffDiagonalPositive {
                        i: name(i),
                        j: name(j),
                    });
                }
                if (2 * bform[i][j]) % bform[i][i] != 0 {
                    return Err(CartanError::DivisibilityFailure {
                        i: name(i),
                        j: name(j),
                    });
                }
            }
        }
        let pairing = (0..n)
            .map(|i| (0..n).map(|j| 2 * bform[i][j] / bform[i][i]).collect())
            .collect();
        Ok(CartanDatum {
            labels,
            bform,
            pairing,
        })
    }

    pub fn from_raw(raw: RawDatum) -> Result<Self, CartanError> {
        Self::new(raw.labels, raw.bilinear)
    }

    pub fn to_raw(&self) -> RawDatum {
        RawDatum {
            labels: self.labels.clone(),
            bilinear: self.bform.clone(),
        }
    }

    /// Labels `1..=n` with the given form.
    pub fn numbered(bform: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let labels = (1..=bform.len()).map(|k| k.to_string()).collect();
        Self::new(labels, bform)
    }

    /// Type A1 (`sl2`).
    pub fn a1() -> Self {
        Self::numbered(vec![vec![2]]).expect("valid datum")
    }

    /// Type A2.
    pub fn a2() -> Self {
        Self::numbered(vec![vec![2, -1], vec![-1, 2]]).expect("valid datum")
    }

    /// Type B2 with `a_12 = 2`, `a_21 = 1`.
    pub fn b2() -> Self {
        Self::numbered(vec![vec![2, -2], vec![-2, 4]]).expect("valid datum")
    }

    /// Type G2 with `a_12 = 3`, `a_21 = 1`.
    pub fn g2() -> Self {
        Self::numbered(vec![vec![2, -3], vec![-3, 6]]).expect("valid datum")
    }

    /// Affine type A1^(1).
    pub fn affine_a1() -> Self {
        Self::numbered(vec![vec![2, -2], vec![-2, 2]]).expect("valid datum")
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, CartanError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| CartanError::UnknownVertex(label.to_string()))
    }

    pub fn check_vertex(&self, i: usize) -> Result<(), CartanError> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(CartanError::UnknownVertex(i.to_string()))
        }
    }

    /// `(α_i, α_j)`.
    pub fn bform(&self, i: usize, j: usize) -> i64 {
        self.bform[i][j]
    }

    /// `<h_i, α_j>`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.pairing[i][j]
    }

    /// `a_ij = -<h_i, α_j>`; nonnegative off the diagonal.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        -self.pairing[i][j]
    }

    /// `d_i = (α_i, α_i) / 2`, so that `q_i = q^{d_i}`.
    pub fn d(&self, i: usize) -> i64 {
        self.bform[i][i] / 2
    }

    /// `<h_i, ν>` for `ν` in the positive root cone.
    pub fn pairing_root(&self, i: usize, nu: &RootVector) -> i64 {
        nu.0.iter()
            .enumerate()
            .map(|(j, &c)| c as i64 * self.pairing[i][j])
            .sum()
    }

    /// `<h_i, Λ>` for a dominant weight, i.e. `λ_i`.
    pub fn pairing_weight(&self, i: usize, lambda: &DominantWeight) -> i64 {
        lambda.0[i] as i64
    }

    /// `<h_i, Λ - ν>`; with no `Λ` this is `<h_i, -ν>`.
    pub fn pairing_shifted(&self, i: usize, lambda: Option<&DominantWeight>, nu: &RootVector) -> i64 {
        lambda.map_or(0, |l| self.pairing_weight(i, l)) - self.pairing_root(i, nu)
    }

    /// `[n]_i` and `[n]_i!`.
    pub fn quantum_numbers(&self, i: usize, n: u32) -> (LaurentPoly, LaurentPoly) {
        let d = self.d(i);
        (LaurentPoly::quantum_int(d, n), LaurentPoly::quantum_factorial(d, n))
    }

    /// Whether the form is positive definite, i.e. the datum is of finite type.
    pub fn is_finite_type(&self) -> bool {
        let n = self.rank();
        // Sylvester: all leading principal minors positive.
        (1..=n).all(|k| {
            let m: Vec<Vec<BigRational>> = (0..k)
                .map(|r| (0..k).map(|c| BigRational::from_integer(self.bform[r][c].into())).collect())
                .collect();
            determinant(m).is_positive()
        })
    }

    pub fn parse_root_vector(&self, coeffs: &[i64]) -> Result<RootVector, CartanError> {
        if coeffs.len() != self.rank() {
            return Err(CartanError::LengthMismatch {
                expected: self.rank(),
                found: coeffs.len(),
            });
        }
        let mut out = Vec::with_capacity(coeffs.len());
        for (i, &c) in coeffs.iter().enumerate() {
            let c = u32::try_from(c).map_err(|_| CartanError::NegativeCoefficient {
                vertex: self.label(i).to_string(),
                value: c,
            })?;
            out.push(c);
        }
        Ok(RootVector(out))
    }
}

fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::from_integer(1.into());
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= pivot.clone();
        for r in col + 1..n {
            let f = m[r][col].clone() / pivot.clone();
            if f.is_zero() {
                continue;
            }
            let (top, bottom) = m.split_at_mut(r);
            for (dst, src) in bottom[0][col..n].iter_mut().zip(&top[col][col..n]) {
                *dst -= src.clone() * f.clone();
            }
        }
    }
    det
}

/// An element `ν = Σ ν_i · i` of `ℕ[I]`, stored in datum label order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVector(pub Vec<u32>);

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        RootVector(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVector(v)
    }

    /// `|ν| = Σ ν_i`.
    pub fn height(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn add_simple(&self, i: usize, times: u32) -> RootVector {
        let mut v = self.0.clone();
        v[i] += times;
        RootVector(v)
    }

    /// `self - other`, or `None` if some coefficient would go negative.
    pub fn checked_sub(&self, other: &RootVector) -> Option<RootVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(RootVector)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: u32) -> RootVector {
        RootVector(self.0.iter().map(|c| c * k).collect())
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A dominant integral weight `Λ = Σ λ_i Λ_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DominantWeight(pub Vec<u32>);

impl DominantWeight {
    pub fn zero(rank: usize) -> Self {
        DominantWeight(vec![0; rank])
    }

    /// `k Λ_i`.
    pub fn fundamental(rank: usize, i: usize, k: u32) -> Self {
        let mut v = vec![0; rank];
        v[i] = k;
        DominantWeight(v)
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
