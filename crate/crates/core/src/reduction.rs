//! Carrying a class of non-negative square to a reduced representative of
//! its orbit under the isometries of `Gamma` preserving `Im T`.
//!
//! Every step is recorded as a [`ReductionMove`]; replaying the moves on the
//! input reproduces the output exactly.

use std::sync::OnceLock;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraDescriptor, CaseTag};
use crate::error::{GenusError, Result};
use crate::lattice::{
    ck_add, ck_mul, ck_sub, FormTag, IntersectionForm, LatticeClass, E8_GRAM, E8_ROOTS_DOUBLED,
};

/// One generator of the symmetry group. `E` indices are 1-based (`E1` is
/// coordinate 1 of an `Odd(n)` form).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum ReductionMove {
    /// `-Id`
    Negate,
    /// `F <-> B`; only when `T` is trivial.
    SwapFb,
    /// `Ei -> -Ei`
    ReflectE { i: usize },
    /// `Ei <-> Ej`
    PermuteE { i: usize, j: usize },
    /// Reflection along `H - E1 - E2 - E3`.
    CremonaReflect,
    /// Reflection along `H - E1 - E2`; the `n = 2` counterpart of the Cremona move.
    ReflectHE12,
    /// `F -> F`, `B -> B + w - N(w) F`, `x -> x - (x.w) F` on the `(-E8)` summand.
    EOmega { omega: LatticeClass },
}

impl ReductionMove {
    /// Applies the move to `x`.
    pub fn apply(&self, form: &IntersectionForm, x: &LatticeClass) -> Result<LatticeClass> {
        form.check_rank(x)?;
        let n_e = match form.tag() {
            FormTag::Odd { n } => Some(n as usize),
            _ => None,
        };
        let mut v = x.coeffs().to_vec();
        let bad = |what: &str| {
            Err(GenusError::InvalidParameter(format!(
                "{what} is not an isometry of {}",
                form.tag()
            )))
        };
        match self {
            ReductionMove::Negate => return x.checked_neg(),
            ReductionMove::SwapFb => {
                if n_e.is_some() || form.tag() == FormTag::Vform {
                    return bad("swapping F and B");
                }
                v.swap(0, 1);
            }
            ReductionMove::ReflectE { i } => match n_e {
                Some(n) if (1..=n).contains(i) => v[*i] = -v[*i],
                _ => return bad(&format!("reflecting E{i}")),
            },
            ReductionMove::PermuteE { i, j } => match n_e {
                Some(n) if (1..=n).contains(i) && (1..=n).contains(j) => v.swap(*i, *j),
                _ => return bad(&format!("permuting E{i}, E{j}")),
            },
            ReductionMove::CremonaReflect => match n_e {
                Some(n) if n >= 3 => {
                    let d = v[..4].iter().try_fold(0i64, |acc, &c| ck_add(acc, c))?;
                    v[0] = ck_add(v[0], d)?;
                    for c in &mut v[1..4] {
                        *c = ck_sub(*c, d)?;
                    }
                }
                _ => return bad("the Cremona reflection"),
            },
            ReductionMove::ReflectHE12 => match n_e {
                Some(2) => {
                    let d2 = ck_mul(2, ck_add(ck_add(v[0], v[1])?, v[2])?)?;
                    v[0] = ck_add(v[0], d2)?;
                    v[1] = ck_sub(v[1], d2)?;
                    v[2] = ck_sub(v[2], d2)?;
                }
                _ => return bad("reflection along H - E1 - E2"),
            },
            ReductionMove::EOmega { omega } => return e_omega(form, omega, x),
        }
        Ok(LatticeClass::new(v))
    }

    /// Whether the move lies in the symmetry group of `alg` (isometry that
    /// preserves `Im T` up to sign).
    pub fn is_legal_for(&self, alg: &AlgebraDescriptor) -> bool {
        let probe = LatticeClass::zero(alg.rank());
        if self.apply(alg.form(), &probe).is_err() {
            return false;
        }
        match self {
            ReductionMove::SwapFb => alg.t_is_trivial(),
            ReductionMove::EOmega { .. } => alg.t_is_trivial(),
            _ => alg.t_is_trivial() || matches!(self, ReductionMove::Negate),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub input: LatticeClass,
    pub output: LatticeClass,
    pub moves: Vec<ReductionMove>,
    /// `min(a, b)` before each `E_omega` step (even forms only); strictly decreasing.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub measures: Vec<i64>,
}

impl ReductionTrace {
    pub fn replay(&self, form: &IntersectionForm) -> Result<LatticeClass> {
        self.moves
            .iter()
            .try_fold(self.input.clone(), |x, m| m.apply(form, &x))
    }
}

fn odd_b(x: &LatticeClass) -> impl Iterator<Item = i64> + '_ {
    x.coeffs()[1..].iter().map(|&c| -c)
}

/// Case 4 threshold on `a`: `b1`, `b1 + b2`, or `b1 + b2 + b3` by `n`.
fn odd_threshold(b: &[i64]) -> i64 {
    b.iter().take(3).sum()
}

/// Decides whether `a` is in the reduced form for its case.
pub fn is_reduced(alg: &AlgebraDescriptor, a: &LatticeClass) -> Result<bool> {
    let form = alg.form();
    form.check_rank(a)?;
    let c = a.coeffs();
    Ok(match alg.classify_case() {
        CaseTag::Case1 => c[0] >= c[1].abs(),
        CaseTag::Case2 => {
            let xi_sq = -xi_norm(form, a)?;
            let xi_zero = c[2..].iter().all(|&v| v == 0);
            let bare = c[1] == 0 && xi_zero && c[0] >= 0;
            let general = c[1] != 0
                && c[0] >= c[1].abs()
                && ck_mul(4, ck_mul(c[1], c[1])?)? > xi_sq;
            bare || general
        }
        CaseTag::Case3 | CaseTag::Case5 | CaseTag::Extended42_1 | CaseTag::Extended42_2 => {
            c[0] > 0 || (c[0] == 0 && c[1] >= 0)
        }
        CaseTag::Case4 => {
            let b: Vec<i64> = odd_b(a).collect();
            let sorted = b.windows(2).all(|w| w[0] >= w[1]);
            let nonneg = b.last().is_none_or(|&v| v >= 0);
            sorted && nonneg && c[0] >= odd_threshold(&b).max(0)
        }
        CaseTag::Unsupported => return Err(GenusError::UnsupportedCase(CaseTag::Unsupported)),
    })
}

/// Norm of the `(-E8)` component of a class on `Even(1)` (non-positive).
fn xi_norm(form: &IntersectionForm, a: &LatticeClass) -> Result<i64> {
    let mut xi = a.coeffs().to_vec();
    xi[0] = 0;
    xi[1] = 0;
    form.norm(&LatticeClass::new(xi))
}

fn require_even_one(form: &IntersectionForm) -> Result<()> {
    if form.tag() != (FormTag::Even { q: 1 }) {
        return Err(GenusError::InvalidParameter(format!(
            "E_omega and Wall vectors live on Even(1), not {}",
            form.tag()
        )));
    }
    Ok(())
}

fn require_in_e8(x: &LatticeClass) -> Result<()> {
    if x.coeffs()[0] != 0 || x.coeffs()[1] != 0 {
        return Err(GenusError::OutsideE8);
    }
    Ok(())
}

/// The isometry `E_omega` of `U + (-E8)` fixing `F`.
pub fn e_omega(
    form: &IntersectionForm,
    omega: &LatticeClass,
    a: &LatticeClass,
) -> Result<LatticeClass> {
    require_even_one(form)?;
    form.check_rank(omega)?;
    form.check_rank(a)?;
    require_in_e8(omega)?;
    let c = a.coeffs();
    let (fa, bb) = (c[0], c[1]);
    let mut xi = c.to_vec();
    xi[0] = 0;
    xi[1] = 0;
    let xi = LatticeClass::new(xi);
    // N(w) = w.w / 2 is an integer on the even lattice
    let n_omega = form.norm(omega)? / 2;
    let xi_dot = form.pair(&xi, omega)?;
    let new_f = ck_sub(ck_sub(fa, ck_mul(bb, n_omega)?)?, xi_dot)?;
    let shifted = xi.checked_add(&omega.checked_scale(bb)?)?;
    let mut out = shifted.into_coeffs();
    out[0] = new_f;
    out[1] = bb;
    Ok(LatticeClass::new(out))
}

fn e8_gram_inverse() -> &'static [[i64; 8]; 8] {
    static INV: OnceLock<[[i64; 8]; 8]> = OnceLock::new();
    INV.get_or_init(|| {
        let zero = Ratio::from_integer(0i128);
        let one = Ratio::from_integer(1i128);
        let mut m: Vec<Vec<Ratio<i128>>> = (0..8)
            .map(|i| {
                let mut row: Vec<Ratio<i128>> =
                    (0..8).map(|j| Ratio::from_integer(E8_GRAM[i][j] as i128)).collect();
                row.extend((0..8).map(|j| if i == j { one } else { zero }));
                row
            })
            .collect();
        for col in 0..8 {
            let p = (col..8).find(|&r| m[r][col] != zero).expect("E8 Gram is invertible");
            m.swap(col, p);
            let pivot = m[col][col];
            for k in 0..16 {
                m[col][k] /= pivot;
            }
            for r in 0..8 {
                if r != col && m[r][col] != zero {
                    let f = m[r][col];
                    for k in 0..16 {
                        let v = m[col][k];
                        m[r][k] -= f * v;
                    }
                }
            }
        }
        let mut inv = [[0i64; 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                let v = m[i][8 + j];
                assert!(v.is_integer(), "E8 is unimodular");
                inv[i][j] = v.to_integer() as i64;
            }
        }
        inv
    })
}

/// Cartan coordinates of the E8 vector whose doubled `R^8` image is `doubled`.
pub(crate) fn e8_coords_from_doubled(doubled: &[i64; 8]) -> Option<[i64; 8]> {
    let mut p = [0i64; 8];
    for (j, row) in E8_ROOTS_DOUBLED.iter().enumerate() {
        let dot: i64 = (0..8).map(|k| doubled[k] * row[k]).sum();
        if dot % 4 != 0 {
            return None;
        }
        p[j] = dot / 4;
    }
    let inv = e8_gram_inverse();
    let mut out = [0i64; 8];
    for i in 0..8 {
        out[i] = (0..8).map(|j| inv[i][j] * p[j]).sum();
    }
    Some(out)
}

/// Nearest point of `D8` to `x`.
fn decode_d8(x: &[f64; 8]) -> [i64; 8] {
    let mut f = [0i64; 8];
    for k in 0..8 {
        f[k] = x[k].round() as i64;
    }
    if f.iter().sum::<i64>().rem_euclid(2) == 1 {
        let (k, _) = (0..8)
            .map(|k| (k, (x[k] - f[k] as f64).abs()))
            .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        f[k] += if x[k] >= f[k] as f64 { 1 } else { -1 };
    }
    f
}

/// Nearest point of E8 to `x`, returned in doubled coordinates.
fn decode_e8_doubled(x: &[f64; 8]) -> [i64; 8] {
    let y0 = decode_d8(x);
    let shifted: [f64; 8] = std::array::from_fn(|k| x[k] - 0.5);
    let y1 = decode_d8(&shifted);
    let d0: f64 = (0..8).map(|k| (x[k] - y0[k] as f64).powi(2)).sum();
    let d1: f64 = (0..8).map(|k| (shifted[k] - y1[k] as f64).powi(2)).sum();
    if d1 < d0 {
        std::array::from_fn(|k| 2 * y1[k] + 1)
    } else {
        std::array::from_fn(|k| 2 * y0[k])
    }
}

fn wall_ok(form: &IntersectionForm, xi: &LatticeClass, omega: &LatticeClass, b: i64) -> Result<bool> {
    let v = xi.checked_add(&omega.checked_scale(b)?)?;
    if v.is_zero() {
        return Ok(true);
    }
    let nv = form.norm(&v)?.abs();
    Ok(nv > 0 && nv < ck_mul(2, ck_mul(b, b)?)?)
}

/// Finds `w` in the `(-E8)` summand with `xi + b w = 0` or
/// `0 < |(xi + b w)^2| < 2 b^2`.
///
/// `w` is the E8 point nearest to `-xi / b`; E8 has covering radius 1, so
/// `|(xi + b w)^2| <= b^2`. The result is deterministic.
pub fn wall_vector(form: &IntersectionForm, xi: &LatticeClass, b: i64) -> Result<LatticeClass> {
    require_even_one(form)?;
    form.check_rank(xi)?;
    require_in_e8(xi)?;
    if b == 0 {
        return Err(GenusError::InvalidParameter("Wall vector needs b != 0".into()));
    }
    let e = &xi.coeffs()[2..];
    let mut target = [0f64; 8];
    for (k, &ek) in e.iter().enumerate() {
        for t in 0..8 {
            target[t] += ek as f64 * E8_ROOTS_DOUBLED[k][t] as f64 / 2.0;
        }
    }
    for t in &mut target {
        *t /= -(b as f64);
    }
    let doubled = decode_e8_doubled(&target);
    let coords = e8_coords_from_doubled(&doubled)
        .ok_or_else(|| GenusError::Internal("E8 decoder left the lattice".into()))?;
    let mut omega = vec![0, 0];
    omega.extend_from_slice(&coords);
    let omega = LatticeClass::new(omega);
    if wall_ok(form, xi, &omega, b)? {
        return Ok(omega);
    }
    Err(GenusError::Internal(format!(
        "no Wall vector found for xi = {xi}, b = {b}"
    )))
}

struct Tracer<'a> {
    form: &'a IntersectionForm,
    cur: LatticeClass,
    moves: Vec<ReductionMove>,
}

impl<'a> Tracer<'a> {
    fn new(form: &'a IntersectionForm, start: LatticeClass) -> Self {
        Tracer {
            form,
            cur: start,
            moves: Vec::new(),
        }
    }

    fn push(&mut self, m: ReductionMove) -> Result<()> {
        self.cur = m.apply(self.form, &self.cur)?;
        self.moves.push(m);
        Ok(())
    }

    fn c(&self, i: usize) -> i64 {
        self.cur.coeffs()[i]
    }
}

/// Reduces `a` (with `a.a >= 0`) to its case's reduced form.
pub fn reduce(alg: &AlgebraDescriptor, a: &LatticeClass) -> Result<ReductionTrace> {
    let form = alg.form();
    form.check_rank(a)?;
    let aa = form.norm(a)?;
    if aa < 0 {
        return Err(GenusError::NegativeSquare(aa));
    }
    let case = alg.classify_case();
    let (moves, measures) = match case {
        CaseTag::Unsupported => return Err(GenusError::UnsupportedCase(case)),
        CaseTag::Case1 => (reduce_hyperbolic(form, a)?, Vec::new()),
        CaseTag::Case2 => reduce_even(alg, a)?,
        CaseTag::Case4 => (reduce_odd(alg, a)?, Vec::new()),
        _ => (reduce_sign(form, a)?, Vec::new()),
    };
    let mut trace = ReductionTrace {
        input: a.clone(),
        output: a.clone(),
        moves,
        measures,
    };
    trace.output = trace.replay(form)?;
    if !is_reduced(alg, &trace.output)? {
        return Err(GenusError::Internal(format!(
            "reduction of {a} ended at non-reduced {}",
            trace.output
        )));
    }
    Ok(trace)
}

fn reduce_sign(form: &IntersectionForm, a: &LatticeClass) -> Result<Vec<ReductionMove>> {
    let mut t = Tracer::new(form, a.clone());
    if t.c(0) < 0 || (t.c(0) == 0 && t.c(1) < 0) {
        t.push(ReductionMove::Negate)?;
    }
    Ok(t.moves)
}

fn reduce_hyperbolic(form: &IntersectionForm, a: &LatticeClass) -> Result<Vec<ReductionMove>> {
    let mut t = Tracer::new(form, a.clone());
    if t.c(0) < 0 || (t.c(0) == 0 && t.c(1) < 0) {
        t.push(ReductionMove::Negate)?;
    }
    // 2ab >= 0 now forces b >= 0
    if t.c(1) > t.c(0) {
        t.push(ReductionMove::SwapFb)?;
    }
    Ok(t.moves)
}

fn reduce_odd(alg: &AlgebraDescriptor, a: &LatticeClass) -> Result<Vec<ReductionMove>> {
    let form = alg.form();
    let n = alg.odd_n().expect("Case 4 is an odd form");
    let size = a
        .coeffs()
        .iter()
        .try_fold(1i64, |acc, &c| ck_add(acc, c.checked_abs().ok_or(GenusError::Overflow)?))?;
    let ceiling = ck_mul(10, size)?;
    let mut t = Tracer::new(form, a.clone());
    loop {
        if t.moves.len() as i64 > ceiling {
            return Err(GenusError::Internal(format!(
                "Case 4 reduction of {a} exceeded {ceiling} moves"
            )));
        }
        if t.c(0) < 0 {
            t.push(ReductionMove::Negate)?;
        }
        for i in 1..=n {
            // b_i = -x_i must be non-negative
            if t.c(i) > 0 {
                t.push(ReductionMove::ReflectE { i })?;
            }
        }
        for i in 1..=n {
            let j = (i..=n).min_by_key(|&j| (t.c(j), j)).unwrap_or(i);
            if t.c(j) < t.c(i) {
                t.push(ReductionMove::PermuteE { i, j })?;
            }
        }
        if is_reduced(alg, &t.cur)? {
            return Ok(t.moves);
        }
        match n {
            0 | 1 => {
                return Err(GenusError::Internal(format!(
                    "{} cannot be sorted into reduced form",
                    t.cur
                )))
            }
            2 => t.push(ReductionMove::ReflectHE12)?,
            _ => t.push(ReductionMove::CremonaReflect)?,
        }
    }
}

/// Case 2: induction on `m(A) = min(a, b)` through `E_omega` and `F <-> B`.
///
/// The primitive part is reduced and the same moves are replayed on `a`.
fn reduce_even(
    alg: &AlgebraDescriptor,
    a: &LatticeClass,
) -> Result<(Vec<ReductionMove>, Vec<i64>)> {
    let form = alg.form();
    if a.is_zero() {
        return Ok((Vec::new(), Vec::new()));
    }
    let g = a.content();
    let prim = a.div_exact(g).expect("content divides every coefficient");
    let mut t = Tracer::new(form, prim);
    let mut measures: Vec<i64> = Vec::new();
    loop {
        if is_reduced(alg, &t.cur)? {
            return Ok((t.moves, measures));
        }
        if t.c(0) == 0 || t.c(1) == 0 {
            // ab = 0 and 2ab + xi.xi >= 0 force xi = 0
            if t.cur.coeffs()[2..].iter().any(|&v| v != 0) {
                return Err(GenusError::Internal(format!(
                    "{} has ab = 0 but nonzero xi",
                    t.cur
                )));
            }
            if t.c(0) == 0 {
                t.push(ReductionMove::SwapFb)?;
            }
            if t.c(0) < 0 {
                t.push(ReductionMove::Negate)?;
            }
            continue;
        }
        if t.c(0) < 0 {
            t.push(ReductionMove::Negate)?;
        }
        if t.c(0) < t.c(1) {
            t.push(ReductionMove::SwapFb)?;
        }
        if is_reduced(alg, &t.cur)? {
            return Ok((t.moves, measures));
        }
        let m = t.c(1);
        if let Some(&prev) = measures.last() {
            if m >= prev {
                return Err(GenusError::Internal(format!(
                    "Case 2 measure did not decrease: {prev} -> {m}"
                )));
            }
        }
        measures.push(m);
        let mut xi = t.cur.coeffs().to_vec();
        xi[0] = 0;
        xi[1] = 0;
        let omega = wall_vector(form, &LatticeClass::new(xi), m)?;
        t.push(ReductionMove::EOmega { omega })?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(v: &[i64]) -> LatticeClass {
        LatticeClass::new(v.to_vec())
    }

    fn even_one() -> IntersectionForm {
        IntersectionForm::new(FormTag::Even { q: 1 }).unwrap()
    }

    fn e8(v: [i64; 8]) -> LatticeClass {
        let mut c = vec![0, 0];
        c.extend_from_slice(&v);
        LatticeClass::new(c)
    }

    #[test]
    fn reduced_examples() {
        let c4 = AlgebraDescriptor::t_trivial(FormTag::Odd { n: 3 }).unwrap();
        assert!(is_reduced(&c4, &cls(&[3, -1, -1, -1])).unwrap());
        assert!(!is_reduced(&c4, &cls(&[3, -1, -2, -1])).unwrap());
        assert!(!is_reduced(&c4, &cls(&[2, -1, -1, -1])).unwrap());
        let c1 = AlgebraDescriptor::t_trivial(FormTag::Hyperbolic).unwrap();
        assert!(!is_reduced(&c1, &cls(&[1, 2])).unwrap());
        let c2 = AlgebraDescriptor::t_trivial(FormTag::Even { q: 1 }).unwrap();
        assert!(is_reduced(&c2, &cls(&[5, 0, 0, 0, 0, 0, 0, 0, 0, 0])).unwrap());
        let cp2 = AlgebraDescriptor::t_trivial(FormTag::Odd { n: 0 }).unwrap();
        assert!(is_reduced(&cp2, &cls(&[0])).unwrap());
        assert!(!is_reduced(&cp2, &cls(&[-2])).unwrap());
        let bad = AlgebraDescriptor::t_trivial(FormTag::Odd { n: 10 }).unwrap();
        assert!(matches!(
            is_reduced(&bad, &LatticeClass::zero(11)),
            Err(GenusError::UnsupportedCase(_))
        ));
    }

    #[test]
    fn e_omega_examples() {
        let f = even_one();
        let fclass = LatticeClass::basis(10, 0);
        let bclass = LatticeClass::basis(10, 1);
        let zero = LatticeClass::zero(10);
        let omega = e8([0, 0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(f.norm(&omega).unwrap(), -2);
        for a in [fclass.clone(), bclass.clone(), e8([1, 2, 0, 0, -1, 0, 3, 0])] {
            assert_eq!(e_omega(&f, &zero, &a).unwrap(), a);
        }
        assert_eq!(e_omega(&f, &omega, &fclass).unwrap(), fclass);
        // B + w + F
        let mut expected = omega.coeffs().to_vec();
        expected[0] = 1;
        expected[1] = 1;
        let image = e_omega(&f, &omega, &bclass).unwrap();
        assert_eq!(image, cls(&expected));
        assert_eq!(f.norm(&image).unwrap(), 0);
        assert_eq!(
            e_omega(&f, &bclass, &fclass),
            Err(GenusError::OutsideE8)
        );
    }

    #[test]
    fn e_omega_is_an_isometry() {
        let f = even_one();
        let omegas = [e8([1, 0, -1, 2, 0, 0, 1, 0]), e8([0, 1, 1, 1, 1, 1, 1, 1])];
        let xs = [
            cls(&[3, 2, 1, 0, 0, -1, 0, 2, 0, 1]),
            cls(&[-1, 4, 0, 0, 0, 0, 0, 0, 0, 0]),
            cls(&[0, 0, 1, 1, 1, 1, 1, 1, 1, 1]),
        ];
        for w in &omegas {
            for x in &xs {
                for y in &xs {
                    let lhs = f
                        .pair(&e_omega(&f, w, x).unwrap(), &e_omega(&f, w, y).unwrap())
                        .unwrap();
                    assert_eq!(lhs, f.pair(x, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn e8_embedding_round_trips_all_roots() {
        let f = even_one();
        let mut roots = 0;
        for mut idx in 0..5i64.pow(8) {
            let mut d = [0i64; 8];
            for k in 0..8 {
                d[k] = idx % 5 - 2;
                idx /= 5;
            }
            let same_parity = d.iter().all(|&v| v.rem_euclid(2) == d[0].rem_euclid(2));
            let sum_even = (d.iter().sum::<i64>() / 2).rem_euclid(2) == 0;
            if !(same_parity && sum_even) || d.iter().map(|v| v * v).sum::<i64>() != 8 {
                continue;
            }
            roots += 1;
            let coords = e8_coords_from_doubled(&d).unwrap();
            assert_eq!(f.norm(&e8(coords)).unwrap(), -2);
        }
        assert_eq!(roots, 240);
    }

    #[test]
    fn wall_vector_examples() {
        let f = even_one();
        let zero = LatticeClass::zero(10);
        assert_eq!(wall_vector(&f, &zero, 5).unwrap(), zero);
        let v = e8([1, -2, 0, 3, 1, 0, 0, -1]);
        for b in [1, 2, -3, 7] {
            let xi = v.checked_scale(b).unwrap();
            assert_eq!(wall_vector(&f, &xi, b).unwrap(), v.checked_neg().unwrap());
        }
        assert!(wall_vector(&f, &v, 0).is_err());
        assert_eq!(
            wall_vector(&f, &LatticeClass::basis(10, 0), 1),
            Err(GenusError::OutsideE8)
        );
    }

    #[test]
    fn wall_vector_for_a_root_with_b_one_is_unique() {
        let f = even_one();
        let xi = e8([0, 0, 0, 1, 0, 0, 0, 0]);
        let w = wall_vector(&f, &xi, 1).unwrap();
        assert_eq!(w, xi.checked_neg().unwrap());
        // even norms leave 0 < |..| < 2 empty: only the vanishing branch qualifies
        for mut idx in 0..3i64.pow(8) {
            let mut d = [0i64; 8];
            for k in 0..8 {
                d[k] = idx % 3 - 1;
                idx /= 3;
            }
            let cand = e8(d).checked_add(&w).unwrap();
            if wall_ok(&f, &xi, &cand, 1).unwrap() {
                assert_eq!(cand, w);
            }
        }
    }

    #[test]
    fn wall_vector_satisfies_dichotomy() {
        let f = even_one();
        let xis = [
            e8([5, -3, 2, 7, -1, 0, 4, 2]),
            e8([1, 1, 1, 1, 1, 1, 1, 1]),
            e8([-9, 4, 0, 0, 13, -2, 1, 1]),
        ];
        for xi in &xis {
            for b in [1, 2, 3, 5, 11, -4] {
                let w = wall_vector(&f, xi, b).unwrap();
                assert!(wall_ok(&f, xi, &w, b).unwrap(), "xi={xi} b={b}");
                let res = xi.checked_add(&w.checked_scale(b).unwrap()).unwrap();
                assert!(f.norm(&res).unwrap().abs() <= b * b);
            }
        }
    }

    #[test]
    fn hyperbolic_reduction() {
        let c1 = AlgebraDescriptor::t_trivial(FormTag::Hyperbolic).unwrap();
        let t = reduce(&c1, &cls(&[-3, -1])).unwrap();
        assert_eq!(t.moves, vec![ReductionMove::Negate]);
        assert_eq!(t.output, cls(&[3, 1]));
        let t = reduce(&c1, &cls(&[1, 4])).unwrap();
        assert_eq!(t.output, cls(&[4, 1]));
    }

    #[test]
    fn odd_reduction_example() {
        let c4 = AlgebraDescriptor::t_trivial(FormTag::Odd { n: 3 }).unwrap();
        let a = cls(&[4, -3, -2, -1]);
        let t = reduce(&c4, &a).unwrap();
        assert_eq!(t.moves[0], ReductionMove::CremonaReflect);
        assert_eq!(
            ReductionMove::CremonaReflect.apply(c4.form(), &a).unwrap(),
            cls(&[2, -1, 0, 1])
        );
        assert_eq!(t.output, cls(&[2, -1, -1, 0]));
        assert_eq!(c4.form().norm(&t.output).unwrap(), 2);
        assert_eq!(t.replay(c4.form()).unwrap(), t.output);
    }

    #[test]
    fn odd_two_uses_conic_reflection() {
        let c4 = AlgebraDescriptor::t_trivial(FormTag::Odd { n: 2 }).unwrap();
        let t = reduce(&c4, &cls(&[5, -4, -3])).unwrap();
        assert_eq!(t.output, cls(&[1, -1, 0]));
        assert!(t.moves.contains(&ReductionMove::ReflectHE12));
    }

    #[test]
    fn negative_square_is_rejected() {
        let c4 = AlgebraDescriptor::t_trivial(FormTag::Odd { n: 2 }).unwrap();
        assert_eq!(
            reduce(&c4, &cls(&[0, 1, 0])),
            Err(GenusError::NegativeSquare(-1))
        );
        let bad = AlgebraDescriptor::t_trivial(FormTag::Odd { n: 11 }).unwrap();
        assert!(matches!(
            reduce(&bad, &LatticeClass::zero(12)),
            Err(GenusError::UnsupportedCase(_))
        ));
    }

    #[test]
    fn even_reduction_decreases_measure() {
        let c2 = AlgebraDescriptor::t_trivial(FormTag::Even { q: 1 }).unwrap();
        let f = c2.form();
        // large a, b with a big xi: needs several E_omega rounds
        let a = cls(&[40, 27, 3, -2, 5, 1, 0, 4, -3, 2]);
        assert!(f.norm(&a).unwrap() >= 0);
        let t = reduce(&c2, &a).unwrap();
        assert!(t.measures.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(f.norm(&t.output).unwrap(), f.norm(&a).unwrap());
        assert!(is_reduced(&c2, &t.output).unwrap());

        let doubled = a.checked_scale(3).unwrap();
        let t3 = reduce(&c2, &doubled).unwrap();
        assert_eq!(t3.output, t.output.checked_scale(3).unwrap());
    }

    #[test]
    fn trace_serializes_moves() {
        let t = ReductionTrace {
            input: cls(&[1, 2]),
            output: cls(&[2, 1]),
            moves: vec![ReductionMove::SwapFb, ReductionMove::PermuteE { i: 1, j: 3 }],
            measures: vec![],
        };
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(
            json,
            r#"{"input":[1,2],"output":[2,1],"moves":[{"move":"swap_fb"},{"move":"permute_e","i":1,"j":3}]}"#
        );
        let back: ReductionTrace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn legality() {
        let c3 = AlgebraDescriptor::with_im_t(FormTag::Hyperbolic, 2).unwrap();
        assert!(!ReductionMove::SwapFb.is_legal_for(&c3));
        assert!(ReductionMove::Negate.is_legal_for(&c3));
        let c1 = AlgebraDescriptor::t_trivial(FormTag::Hyperbolic).unwrap();
        assert!(ReductionMove::SwapFb.is_legal_for(&c1));
        assert!(!ReductionMove::CremonaReflect.is_legal_for(&c1));
        let c4 = AlgebraDescriptor::t_trivial(FormTag::Odd { n: 2 }).unwrap();
        assert!(!ReductionMove::CremonaReflect.is_legal_for(&c4));
        assert!(ReductionMove::ReflectHE12.is_legal_for(&c4));
        assert!(!ReductionMove::ReflectE { i: 3 }.is_legal_for(&c4));
    }
}
