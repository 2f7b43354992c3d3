//! Adjunction classes, the `c`-genus, and an exhaustive box oracle for
//! `h(A) = max_c h_c(A)`.

use std::sync::atomic::{AtomicI64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraDescriptor;
use crate::error::{GenusError, Result};
use crate::lattice::{ck_add, ck_mul, ck_sub, LatticeClass};
use crate::search::{prefix_norm, DefiniteBlock, SLACK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionVerdict {
    pub type_one: bool,
    pub type_two: bool,
}

impl AdjunctionVerdict {
    pub fn is_adjunction(&self) -> bool {
        self.type_one || self.type_two
    }
}

/// An adjunction class attaining the box maximum of `h_c(A)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HWitness {
    pub value: i64,
    pub witness: LatticeClass,
    pub bound: i64,
}

/// Type I: characteristic with `c.c >= sigma + 8`. Type II: characteristic
/// with `c.c >= 2 chi + 3 sigma` and `c.F != 0`; never reported when `T` is
/// trivial.
pub fn is_adjunction_class(alg: &AlgebraDescriptor, c: &LatticeClass) -> Result<AdjunctionVerdict> {
    let form = alg.form();
    if !form.is_characteristic(c)? {
        return Ok(AdjunctionVerdict {
            type_one: false,
            type_two: false,
        });
    }
    let cc = form.norm(c)?;
    let type_one = cc >= alg.sigma() + 8;
    let type_two = match alg.im_t_generator() {
        Some(f) => cc >= alg.two_chi_three_sigma() && form.pair(c, f)? != 0,
        None => false,
    };
    Ok(AdjunctionVerdict { type_one, type_two })
}

/// `h_c(A) = 1 + (A.A - |c.A|) / 2` for `A != 0`, and `0` for `A = 0`.
pub fn c_genus(alg: &AlgebraDescriptor, c: &LatticeClass, a: &LatticeClass) -> Result<i64> {
    let form = alg.form();
    form.check_rank(a)?;
    if !is_adjunction_class(alg, c)?.is_adjunction() {
        return Err(GenusError::NotAdjunctionClass(c.to_string()));
    }
    let aa = form.norm(a)?;
    if aa < 0 {
        return Err(GenusError::NegativeSquare(aa));
    }
    if a.is_zero() {
        return Ok(0);
    }
    let ca = form.pair(c, a)?;
    let num = ck_sub(aa, ca.checked_abs().ok_or(GenusError::Overflow)?)?;
    debug_assert_eq!(num.rem_euclid(2), 0);
    ck_add(1, num / 2)
}

/// Largest accepted oracle box; keeps every product in the walk inside `i64`.
pub const MAX_BOUND: i64 = 1 << 20;

/// Default oracle box: `3 max|A_i| + 5`, at least 9.
pub fn default_bound(a: &LatticeClass) -> i64 {
    let m = a.coeffs().iter().map(|c| c.abs()).max().unwrap_or(0);
    (3 * m + 5).max(9)
}

/// Maximizes `h_c(A)` over every adjunction class `c` with all coefficients
/// in `[-bound, bound]`.
///
/// Ties resolve to the lexicographically smallest witness. `Ok(None)` means
/// the box holds no adjunction class at all.
pub fn h_bruteforce(
    alg: &AlgebraDescriptor,
    a: &LatticeClass,
    bound: i64,
) -> Result<Option<HWitness>> {
    let form = alg.form();
    form.check_rank(a)?;
    let aa = form.norm(a)?;
    if aa < 0 {
        return Err(GenusError::NegativeSquare(aa));
    }
    if !(1..=MAX_BOUND).contains(&bound) {
        return Err(GenusError::InvalidParameter(format!(
            "oracle bound must lie in 1..={MAX_BOUND}, got {bound}"
        )));
    }
    // a quick pass on a small box gives an attainable floor for pruning
    let seed = if bound > 3 {
        Oracle::new(alg, a, 3)?.run(i64::MIN)?.map(|(v, _)| v)
    } else {
        None
    };
    let found = Oracle::new(alg, a, bound)?.run(seed.unwrap_or(i64::MIN))?;
    Ok(found.map(|(value, witness)| HWitness {
        value,
        witness: LatticeClass::new(witness),
        bound,
    }))
}

struct Oracle<'a> {
    alg: &'a AlgebraDescriptor,
    block: DefiniteBlock,
    k0: usize,
    rank: usize,
    aa: i64,
    a_zero: bool,
    /// `G A`
    ga: Vec<i64>,
    /// `L a_def`
    z: Vec<f64>,
    /// `zrem[k] = sum_{i >= k} d_i z_i^2`, with a trailing zero
    zrem: Vec<f64>,
    values: Vec<Vec<i64>>,
    /// `range[p] = sum_{j >= p} |ga_j| max|c_j|`
    range: Vec<i64>,
    threshold: i64,
}

struct Frame {
    c: Vec<i64>,
    best: Option<(i64, Vec<i64>)>,
}

impl<'a> Oracle<'a> {
    fn new(alg: &'a AlgebraDescriptor, a: &LatticeClass, bound: i64) -> Result<Self> {
        let form = alg.form();
        let rank = form.rank();
        let block = DefiniteBlock::new(form);
        let k0 = block.offset;
        let ga = form.apply_gram(a)?;
        let adef = &a.coeffs()[k0..];
        let z: Vec<f64> = (0..block.dim()).map(|i| block.y(adef, i)).collect();
        let mut zrem = vec![0.0; block.dim() + 1];
        for i in (0..block.dim()).rev() {
            zrem[i] = zrem[i + 1] + block.d[i] * z[i] * z[i];
        }
        let parity = form.characteristic_parity();
        let values: Vec<Vec<i64>> = parity
            .iter()
            .map(|&p| (-bound..=bound).filter(|v| (v - p).rem_euclid(2) == 0).collect())
            .collect();
        let mut range = vec![0i64; rank + 1];
        for j in (0..rank).rev() {
            let maxabs = values[j].iter().map(|v| v.abs()).max().unwrap_or(0);
            range[j] = ck_add(range[j + 1], ck_mul(ga[j].abs(), maxabs)?)?;
        }
        let mut threshold = alg.sigma() + 8;
        if !alg.t_is_trivial() {
            threshold = threshold.min(alg.two_chi_three_sigma());
        }
        Ok(Oracle {
            alg,
            block,
            k0,
            rank,
            aa: form.norm(a)?,
            a_zero: a.is_zero(),
            ga,
            z,
            zrem,
            values,
            range,
            threshold,
        })
    }

    fn run(&self, floor: i64) -> Result<Option<(i64, Vec<i64>)>> {
        let global = AtomicI64::new(floor);
        let parts: Vec<Result<Option<(i64, Vec<i64>)>>> = self.values[0]
            .par_iter()
            .map(|&v| {
                let mut frame = Frame {
                    c: vec![0; self.rank],
                    best: None,
                };
                frame.c[0] = v;
                let partial = v * self.ga[0];
                self.descend(1, partial, &mut frame, &global)?;
                Ok(frame.best)
            })
            .collect();
        let mut best: Option<(i64, Vec<i64>)> = None;
        for part in parts {
            if let Some((v, w)) = part? {
                if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                    best = Some((v, w));
                }
            }
        }
        Ok(best)
    }

    fn upper_bound(&self, min_abs_ca: f64) -> i64 {
        if self.a_zero {
            return 0;
        }
        let lb = (min_abs_ca - SLACK * (1.0 + min_abs_ca.abs())).ceil().max(0.0) as i64;
        1 + (self.aa - lb).div_euclid(2)
    }

    /// Walks the indefinite prefix. `partial` is the exact pairing of the
    /// assigned coordinates with `A`.
    fn descend(&self, pos: usize, partial: i64, frame: &mut Frame, global: &AtomicI64) -> Result<()> {
        if pos == self.k0 {
            let indef = prefix_norm(self.alg.form(), &frame.c, self.k0);
            let budget = (indef - self.threshold) as f64;
            if budget < -SLACK {
                return Ok(());
            }
            return self.descend_definite(pos, partial, budget, 0.0, 0.0, frame, global);
        }
        for &v in &self.values[pos] {
            frame.c[pos] = v;
            let p = partial + v * self.ga[pos];
            let lb = (p.abs() - self.range[pos + 1]).max(0) as f64;
            if self.pruned(self.upper_bound(lb), frame, global) {
                continue;
            }
            self.descend(pos + 1, p, frame, global)?;
        }
        frame.c[pos] = 0;
        Ok(())
    }

    /// Walks the definite block. `budget` bounds its norm, `qpart` and
    /// `cross` are the partial sums of `d_i y_i^2` and `d_i y_i z_i`.
    #[allow(clippy::too_many_arguments)]
    fn descend_definite(
        &self,
        pos: usize,
        partial: i64,
        budget: f64,
        qpart: f64,
        cross: f64,
        frame: &mut Frame,
        global: &AtomicI64,
    ) -> Result<()> {
        if pos == self.rank {
            return self.leaf(frame, global);
        }
        let i = pos - self.k0;
        let indef_pair: i64 = (0..self.k0).map(|j| frame.c[j] * self.ga[j]).sum();
        let tol = SLACK * (1.0 + budget.abs());
        for &v in &self.values[pos] {
            frame.c[pos] = v;
            let y = self.block.y(&frame.c[self.k0..], i);
            let q = qpart + self.block.d[i] * y * y;
            if q > budget + tol {
                continue;
            }
            let cr = cross + self.block.d[i] * y * self.z[i];
            let p = partial + v * self.ga[pos];
            let box_lb = (p.abs() - self.range[pos + 1]).max(0) as f64;
            let slack_norm = (budget - q).max(0.0);
            let cs_lb = (indef_pair as f64 - cr).abs() - (slack_norm * self.zrem[i + 1]).sqrt();
            let lb = box_lb.max(cs_lb);
            if self.pruned(self.upper_bound(lb), frame, global) {
                continue;
            }
            self.descend_definite(pos + 1, p, budget, q, cr, frame, global)?;
        }
        frame.c[pos] = 0;
        Ok(())
    }

    fn pruned(&self, ub: i64, frame: &Frame, global: &AtomicI64) -> bool {
        if ub < global.load(Ordering::Relaxed) {
            return true;
        }
        matches!(&frame.best, Some((bv, _)) if ub <= *bv)
    }

    fn leaf(&self, frame: &mut Frame, global: &AtomicI64) -> Result<()> {
        let c = LatticeClass::new(frame.c.clone());
        if !is_adjunction_class(self.alg, &c)?.is_adjunction() {
            return Ok(());
        }
        let value = if self.a_zero {
            0
        } else {
            let ca: i64 = frame.c.iter().zip(&self.ga).map(|(x, g)| x * g).sum();
            1 + (self.aa - ca.abs()) / 2
        };
        if frame.best.as_ref().is_none_or(|(bv, _)| value > *bv) {
            frame.best = Some((value, frame.c.clone()));
            global.fetch_max(value, Ordering::Relaxed);
        }
        Ok(())
    }
}
