//! Box enumeration with norm pruning.
//!
//! Every supported form splits as an indefinite prefix (rank 1 or 2) followed
//! by an orthogonal negative-definite block `-M`. Writing `M = L^T D L` with
//! `L` unit lower triangular makes `x^T M x = sum_i d_i y_i^2` where
//! `y_i = x_i + sum_{j<i} L_ij x_j` depends only on `x_0..x_i`, so partial
//! sums are lower bounds on the definite part during a lexicographic
//! depth-first walk.
//!
//! Floating point only drives pruning, always with slack; every candidate
//! that survives is checked in exact integer arithmetic.

use crate::error::Result;
use crate::lattice::{IntersectionForm, LatticeClass};

pub(crate) const SLACK: f64 = 1e-7;

#[derive(Debug, Clone)]
pub(crate) struct DefiniteBlock {
    /// index of the first definite coordinate
    pub offset: usize,
    pub d: Vec<f64>,
    /// row-major, `l[i][j]` for `j < i`
    pub l: Vec<Vec<f64>>,
}

impl DefiniteBlock {
    pub fn new(form: &IntersectionForm) -> Self {
        let offset = form.indefinite_prefix().min(form.rank());
        let m = form.rank() - offset;
        let mat = |i: usize, j: usize| -(form.entry(offset + i, offset + j) as f64);
        let mut d = vec![0.0; m];
        let mut l = vec![vec![0.0; m]; m];
        for i in (0..m).rev() {
            l[i][i] = 1.0;
            let mut di = mat(i, i);
            for k in i + 1..m {
                di -= l[k][i] * l[k][i] * d[k];
            }
            d[i] = di;
            for j in 0..i {
                let mut v = mat(i, j);
                for k in i + 1..m {
                    v -= l[k][i] * l[k][j] * d[k];
                }
                l[i][j] = v / di;
            }
        }
        DefiniteBlock { offset, d, l }
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    /// `y_i` for the definite coordinates `x`; reads `x[0..=i]` only.
    #[inline]
    pub fn y(&self, x: &[i64], i: usize) -> f64 {
        let row = &self.l[i];
        let mut v = x[i] as f64;
        for (j, &xj) in x.iter().enumerate().take(i) {
            v += row[j] * xj as f64;
        }
        v
    }
}

/// Norm of the indefinite prefix of `x` (the prefix is orthogonal to the rest).
pub(crate) fn prefix_norm(form: &IntersectionForm, x: &[i64], k0: usize) -> i64 {
    let mut acc = 0;
    for i in 0..k0 {
        for j in 0..k0 {
            acc += form.entry(i, j) * x[i] * x[j];
        }
    }
    acc
}

/// All classes with coefficients in `[-radius, radius]` and norm at least
/// `min_norm`, in lexicographic order.
pub fn classes_in_box(
    form: &IntersectionForm,
    radius: i64,
    min_norm: i64,
) -> Result<Vec<LatticeClass>> {
    let rank = form.rank();
    let block = DefiniteBlock::new(form);
    let mut out = Vec::new();
    let mut x = vec![0i64; rank];
    walk(form, &block, radius, min_norm, 0, 0.0, 0.0, &mut x, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn walk(
    form: &IntersectionForm,
    block: &DefiniteBlock,
    radius: i64,
    min_norm: i64,
    pos: usize,
    budget: f64,
    qpart: f64,
    x: &mut Vec<i64>,
    out: &mut Vec<LatticeClass>,
) -> Result<()> {
    let k0 = block.offset;
    let rank = form.rank();
    if pos == rank {
        let c = LatticeClass::new(x.clone());
        if form.norm(&c)? >= min_norm {
            out.push(c);
        }
        return Ok(());
    }
    for v in -radius..=radius {
        x[pos] = v;
        if pos + 1 == k0 {
            let b = (prefix_norm(form, x, k0) - min_norm) as f64;
            if b < -SLACK {
                continue;
            }
            walk(form, block, radius, min_norm, pos + 1, b, 0.0, x, out)?;
        } else if pos < k0 {
            walk(form, block, radius, min_norm, pos + 1, budget, qpart, x, out)?;
        } else {
            let i = pos - k0;
            let y = block.y(&x[k0..], i);
            let q = qpart + block.d[i] * y * y;
            if q > budget + SLACK * (1.0 + budget.abs()) {
                continue;
            }
            walk(form, block, radius, min_norm, pos + 1, budget, q, x, out)?;
        }
    }
    x[pos] = 0;
    Ok(())
}
