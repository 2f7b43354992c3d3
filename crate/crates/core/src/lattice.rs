//! Unimodular symmetric bilinear forms with `b+ = 1` and their integer vectors.
//!
//! Basis ordering is part of the public contract because reduced classes are
//! defined relative to it:
//!
//! * `Odd(n)`: `H, E1, ..., En` with `H.H = 1`, `Ei.Ei = -1`.
//! * `Even(q)`, `Hyperbolic`: `F, B` spanning `U`, then `8q` coordinates, one
//!   block of eight per `(-E8)` summand.
//! * `Vform`: `F, B` with `F.F = 0`, `F.B = B.B = 1`.
//!
//! All arithmetic is checked; overflow surfaces as [`GenusError::Overflow`].

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{GenusError, Result};

/// Positive-definite E8 Gram matrix (Cartan matrix, Bourbaki numbering).
///
/// Nodes 1-3-4-5-6-7-8 form a chain and node 2 hangs off node 4.
pub const E8_GRAM: [[i64; 8]; 8] = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
];

/// Twice the Bourbaki simple roots of E8 in `R^8`; row `k` embeds basis vector `k`.
///
/// The image is `{x in Z^8 u (Z + 1/2)^8 : sum x even}`.
pub const E8_ROOTS_DOUBLED: [[i64; 8]; 8] = [
    [1, -1, -1, -1, -1, -1, -1, 1],
    [2, 2, 0, 0, 0, 0, 0, 0],
    [-2, 2, 0, 0, 0, 0, 0, 0],
    [0, -2, 2, 0, 0, 0, 0, 0],
    [0, 0, -2, 2, 0, 0, 0, 0],
    [0, 0, 0, -2, 2, 0, 0, 0],
    [0, 0, 0, 0, -2, 2, 0, 0],
    [0, 0, 0, 0, 0, -2, 2, 0],
];

#[inline]
pub(crate) fn ck_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(GenusError::Overflow)
}

#[inline]
pub(crate) fn ck_sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(GenusError::Overflow)
}

#[inline]
pub(crate) fn ck_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(GenusError::Overflow)
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

/// Which of the supported unimodular forms a Gram matrix realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "lowercase")]
pub enum FormTag {
    /// `<1> + n<-1>`
    Odd { n: i64 },
    /// `U + q(-E8)`
    Even { q: i64 },
    /// `U` alone
    Hyperbolic,
    /// `[[0, 1], [1, 1]]`
    #[serde(rename = "v")]
    Vform,
}

impl fmt::Display for FormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormTag::Odd { n } => write!(f, "Odd({n})"),
            FormTag::Even { q } => write!(f, "Even({q})"),
            FormTag::Hyperbolic => write!(f, "Hyperbolic"),
            FormTag::Vform => write!(f, "Vform"),
        }
    }
}

/// An element of the second cohomology lattice, as coordinates in the
/// form's fixed basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeClass(Vec<i64>);

impl LatticeClass {
    pub fn new(coeffs: Vec<i64>) -> Self {
        LatticeClass(coeffs)
    }

    pub fn zero(rank: usize) -> Self {
        LatticeClass(vec![0; rank])
    }

    pub fn basis(rank: usize, index: usize) -> Self {
        let mut v = vec![0; rank];
        v[index] = 1;
        LatticeClass(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.0
    }

    /// Gcd of the coefficients (the divisibility of the class); 0 for the zero class.
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0, |g, &c| gcd(g, c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn checked_add(&self, other: &LatticeClass) -> Result<LatticeClass> {
        if self.len() != other.len() {
            return Err(GenusError::RankMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| ck_add(a, b))
            .collect::<Result<Vec<_>>>()
            .map(LatticeClass)
    }

    pub fn checked_scale(&self, k: i64) -> Result<LatticeClass> {
        self.0
            .iter()
            .map(|&a| ck_mul(a, k))
            .collect::<Result<Vec<_>>>()
            .map(LatticeClass)
    }

    pub fn checked_neg(&self) -> Result<LatticeClass> {
        self.checked_scale(-1)
    }

    /// Exact division of every coefficient by `k`; `None` when some entry is not divisible.
    pub fn div_exact(&self, k: i64) -> Option<LatticeClass> {
        if k == 0 || self.0.iter().any(|&c| c % k != 0) {
            return None;
        }
        Some(LatticeClass(self.0.iter().map(|&c| c / k).collect()))
    }
}

impl From<Vec<i64>> for LatticeClass {
    fn from(v: Vec<i64>) -> Self {
        LatticeClass(v)
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Unimodular symmetric bilinear form `Gamma` on `Lambda^2`, together with the
/// tag it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionForm {
    tag: FormTag,
    rank: usize,
    gram: Vec<i64>,
    signature: (usize, usize),
}

impl IntersectionForm {
    pub fn new(tag: FormTag) -> Result<Self> {
        let (rank, gram) = match tag {
            FormTag::Odd { n } => {
                if n < 0 {
                    return Err(GenusError::InvalidParameter(format!(
                        "Odd(n) needs n >= 0, got {n}"
                    )));
                }
                let rank = n as usize + 1;
                let mut g = vec![0; rank * rank];
                g[0] = 1;
                for i in 1..rank {
                    g[i * rank + i] = -1;
                }
                (rank, g)
            }
            FormTag::Even { q } => {
                if q < 0 {
                    return Err(GenusError::InvalidParameter(format!(
                        "Even(q) needs q >= 0, got {q}"
                    )));
                }
                let rank = 2 + 8 * q as usize;
                let mut g = vec![0; rank * rank];
                g[1] = 1;
                g[rank] = 1;
                for block in 0..q as usize {
                    let off = 2 + 8 * block;
                    for i in 0..8 {
                        for j in 0..8 {
                            g[(off + i) * rank + off + j] = -E8_GRAM[i][j];
                        }
                    }
                }
                (rank, g)
            }
            FormTag::Hyperbolic => (2, vec![0, 1, 1, 0]),
            FormTag::Vform => (2, vec![0, 1, 1, 1]),
        };
        let mut form = IntersectionForm {
            tag,
            rank,
            gram,
            signature: (0, 0),
        };
        form.signature = form.diagonal_signature();
        Ok(form)
    }

    pub fn tag(&self) -> FormTag {
        self.tag
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i * self.rank + j]
    }

    pub fn gram_rows(&self) -> Vec<Vec<i64>> {
        self.gram.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    /// True for `U`, whether tagged `Hyperbolic` or `Even(0)`.
    pub fn is_hyperbolic(&self) -> bool {
        matches!(self.tag, FormTag::Hyperbolic | FormTag::Even { q: 0 })
    }

    /// Number of leading basis vectors spanning the indefinite summand; the
    /// remaining coordinates form an orthogonal negative-definite block.
    pub fn indefinite_prefix(&self) -> usize {
        match self.tag {
            FormTag::Odd { .. } => 1,
            _ => 2,
        }
    }

    pub fn check_rank(&self, x: &LatticeClass) -> Result<()> {
        if x.len() != self.rank {
            return Err(GenusError::RankMismatch {
                expected: self.rank,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// `Gamma(x, y) = x^T G y`.
    pub fn pair(&self, x: &LatticeClass, y: &LatticeClass) -> Result<i64> {
        self.check_rank(x)?;
        self.check_rank(y)?;
        let mut acc = 0i64;
        for (i, &xi) in x.coeffs().iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let mut row = 0i64;
            for (j, &yj) in y.coeffs().iter().enumerate() {
                let g = self.entry(i, j);
                if g != 0 && yj != 0 {
                    row = ck_add(row, ck_mul(g, yj)?)?;
                }
            }
            acc = ck_add(acc, ck_mul(xi, row)?)?;
        }
        Ok(acc)
    }

    pub fn norm(&self, x: &LatticeClass) -> Result<i64> {
        self.pair(x, x)
    }

    /// `G x`, the vector of pairings of `x` with each basis element.
    pub fn apply_gram(&self, x: &LatticeClass) -> Result<Vec<i64>> {
        self.check_rank(x)?;
        (0..self.rank)
            .map(|i| {
                x.coeffs().iter().enumerate().try_fold(0i64, |acc, (j, &xj)| {
                    ck_add(acc, ck_mul(self.entry(i, j), xj)?)
                })
            })
            .collect()
    }

    /// Checks `c.e_j = e_j.e_j (mod 2)` on every basis vector.
    pub fn is_characteristic(&self, c: &LatticeClass) -> Result<bool> {
        let gc = self.apply_gram(c)?;
        Ok(gc
            .iter()
            .enumerate()
            .all(|(j, &v)| (v - self.entry(j, j)).rem_euclid(2) == 0))
    }

    /// Coordinate parities shared by every characteristic vector.
    ///
    /// Solves `G c = diag(G)` over GF(2); `G` is invertible mod 2 because it
    /// is unimodular.
    pub fn characteristic_parity(&self) -> Vec<i64> {
        let n = self.rank;
        let mut m: Vec<Vec<u8>> = (0..n)
            .map(|i| {
                let mut row: Vec<u8> = (0..n)
                    .map(|j| self.entry(i, j).rem_euclid(2) as u8)
                    .collect();
                row.push(self.entry(i, i).rem_euclid(2) as u8);
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| m[r][col] == 1)
                .expect("unimodular form is invertible mod 2");
            m.swap(col, pivot);
            for r in 0..n {
                if r != col && m[r][col] == 1 {
                    for k in col..=n {
                        m[r][k] ^= m[col][k];
                    }
                }
            }
        }
        m.iter().map(|row| row[n] as i64).collect()
    }

    /// Exact `(b+, b-)`, computed once at construction.
    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    // congruence diagonalization over the rationals
    fn diagonal_signature(&self) -> (usize, usize) {
        let pivots = congruence_pivots(&self.gram_rows());
        let pos = pivots.iter().filter(|p| **p > Ratio::from_integer(0)).count();
        let neg = pivots.iter().filter(|p| **p < Ratio::from_integer(0)).count();
        (pos, neg)
    }

    /// `sigma = b+ - b-`.
    pub fn sigma(&self) -> i64 {
        let (p, n) = self.signature();
        p as i64 - n as i64
    }

    /// Determinant via fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i128 {
        bareiss_det(&self.gram_rows())
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank).all(|i| self.entry(i, i) % 2 == 0)
    }

    pub fn basis_labels(&self) -> Vec<String> {
        match self.tag {
            FormTag::Odd { n } => std::iter::once("H".to_string())
                .chain((1..=n).map(|i| format!("E{i}")))
                .collect(),
            FormTag::Even { q } => {
                let mut v = vec!["F".to_string(), "B".to_string()];
                for block in 1..=q {
                    for i in 1..=8 {
                        if q == 1 {
                            v.push(format!("w{i}"));
                        } else {
                            v.push(format!("w{block}.{i}"));
                        }
                    }
                }
                v
            }
            FormTag::Hyperbolic | FormTag::Vform => vec!["F".into(), "B".into()],
        }
    }

    /// Human-readable linear combination, e.g. `3H - E1 - 2E2`.
    pub fn describe(&self, x: &LatticeClass) -> String {
        let labels = self.basis_labels();
        let mut out = String::new();
        for (c, label) in x.coeffs().iter().zip(&labels) {
            if *c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            let term = if mag == 1 {
                label.clone()
            } else {
                format!("{mag}{label}")
            };
            if out.is_empty() {
                if *c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if *c < 0 { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn congruence_pivots(rows: &[Vec<i64>]) -> Vec<Ratio<i128>> {
    let n = rows.len();
    let zero = Ratio::from_integer(0i128);
    let mut m: Vec<Vec<Ratio<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| Ratio::from_integer(v as i128)).collect())
        .collect();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        if let Some(i) = (k..n).find(|&i| m[i][i] != zero) {
            swap_sym(&mut m, i, k);
        } else if let Some((i, j)) = (k..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| m[i][j] != zero)
        {
            // e_i <- e_i + e_j turns the zero diagonal entry into 2 m_ij
            for r in 0..n {
                let v = m[r][j];
                m[r][i] += v;
            }
            for c in 0..n {
                let v = m[j][c];
                m[i][c] += v;
            }
            swap_sym(&mut m, i, k);
        } else {
            pivots.extend(std::iter::repeat_n(zero, n - k));
            break;
        }
        let p = m[k][k];
        for i in k + 1..n {
            let f = m[i][k] / p;
            if f == zero {
                continue;
            }
            for c in k..n {
                let v = m[k][c];
                m[i][c] -= f * v;
            }
            for r in k..n {
                let v = m[r][k];
                m[r][i] -= f * v;
            }
        }
        pivots.push(p);
    }
    pivots
}

fn swap_sym(m: &mut [Vec<Ratio<i128>>], i: usize, k: usize) {
    if i == k {
        return;
    }
    m.swap(i, k);
    for row in m.iter_mut() {
        row.swap(i, k);
    }
}

fn bareiss_det(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}
