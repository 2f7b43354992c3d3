//! Closed-form values of `h(A)` per case, the canonical adjunction class
//! `c0`, and the sign classification of `h`.

use serde::{Deserialize, Serialize};

use crate::adjunction::c_genus;
use crate::algebra::{AlgebraDescriptor, CaseTag};
use crate::error::{GenusError, Result};
use crate::lattice::{ck_add, ck_mul, ck_sub, LatticeClass};
use crate::reduction::reduce;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HSign {
    Negative,
    Zero,
    Positive,
}

impl HSign {
    pub fn of(h: i64) -> Self {
        match h.signum() {
            -1 => HSign::Negative,
            0 => HSign::Zero,
            _ => HSign::Positive,
        }
    }
}

impl std::fmt::Display for HSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HSign::Negative => "negative",
            HSign::Zero => "zero",
            HSign::Positive => "positive",
        })
    }
}

/// The adjunction class `c0` realizing `h` (or the bound `h_{c0}` in the
/// extended cases).
pub fn c_zero(alg: &AlgebraDescriptor) -> Result<LatticeClass> {
    let rank = alg.rank();
    let coeffs = match alg.classify_case() {
        CaseTag::Case1 => {
            let mut v = vec![0; rank];
            v[0] = 2;
            v[1] = 2;
            v
        }
        CaseTag::Case2 => vec![0; rank],
        CaseTag::Case3 | CaseTag::Extended42_1 => vec![0, 2],
        CaseTag::Case4 => {
            let mut v = vec![-1; rank];
            v[0] = 3;
            v
        }
        CaseTag::Case5 => vec![1, -2],
        CaseTag::Extended42_2 => vec![-1, 2],
        CaseTag::Unsupported => return Err(GenusError::UnsupportedCase(CaseTag::Unsupported)),
    };
    Ok(LatticeClass::new(coeffs))
}

fn half_exact(x: i64) -> Result<i64> {
    if x % 2 != 0 {
        return Err(GenusError::Internal(format!("{x} is not even")));
    }
    Ok(x / 2)
}

fn check_square(alg: &AlgebraDescriptor, a: &LatticeClass) -> Result<i64> {
    let aa = alg.form().norm(a)?;
    if aa < 0 {
        return Err(GenusError::NegativeSquare(aa));
    }
    Ok(aa)
}

/// `h(A)` from the closed formula of its case (Cases 1 through 5).
pub fn h_closed(alg: &AlgebraDescriptor, a: &LatticeClass) -> Result<i64> {
    let case = alg.classify_case();
    if !case.has_closed_form() {
        return Err(GenusError::UnsupportedCase(case));
    }
    let aa = check_square(alg, a)?;
    if a.is_zero() {
        return Ok(0);
    }
    if case == CaseTag::Case2 {
        return half_exact(ck_add(aa, 2)?);
    }
    let r = reduce(alg, a)?.output;
    let c = r.coeffs();
    match case {
        CaseTag::Case1 => ck_mul(c[0] - 1, c[1] - 1),
        CaseTag::Case3 => ck_add(ck_mul(c[0], c[1] - 1)?, 1),
        CaseTag::Case5 => {
            // h_{c0} with |c0.A| = |2a + b|; reduced classes with b < -2a take the + sign
            let s = ck_add(ck_mul(2, c[0])?, c[1])?;
            let shift = if s >= 0 { -1 } else { 1 };
            let t = ck_mul(c[1] + shift, s)?;
            ck_add(half_exact(t)?, 1)
        }
        CaseTag::Case4 => {
            let mut twice = ck_mul(c[0] - 1, c[0] - 2)?;
            for &x in &c[1..] {
                // b_i = -x_i
                let b = -x;
                twice = ck_sub(twice, ck_mul(b, b - 1)?)?;
            }
            half_exact(twice)
        }
        _ => unreachable!("closed-form cases handled above"),
    }
}

/// `h_{c0}(A)` in the extended regimes, a lower bound for the minimal genus
/// that is not claimed to be the maximum over adjunction classes.
pub fn h_lower_bound(alg: &AlgebraDescriptor, a: &LatticeClass) -> Result<i64> {
    let case = alg.classify_case();
    if !case.is_extended() {
        return Err(GenusError::InvalidParameter(format!(
            "h_lower_bound applies to the extended cases, not {case}"
        )));
    }
    check_square(alg, a)?;
    c_genus(alg, &c_zero(alg)?, a)
}

fn odd_pattern_sign(b: &[i64], a: i64) -> Option<HSign> {
    let nz: Vec<i64> = b.iter().copied().filter(|&v| v != 0).collect();
    match (a, nz.as_slice()) {
        (0, []) | (1, []) | (2, []) => Some(HSign::Zero),
        (1, [1]) => Some(HSign::Zero),
        (a, [b1]) if a == b1 + 1 && *b1 >= 1 => Some(HSign::Zero),
        (a, [b1, 1]) if a == b1 + 1 && *b1 >= 1 => Some(HSign::Zero),
        (a, [b1]) if a == *b1 && a >= 2 => Some(HSign::Negative),
        _ => None,
    }
}

fn hyperbolic_pattern_sign(case: CaseTag, a: i64, b: i64) -> Option<HSign> {
    match (a, b) {
        (0, 0) | (1, 0) => Some(HSign::Zero),
        (a, 0) if a > 1 => Some(HSign::Negative),
        (a, 1) if case == CaseTag::Case1 && a >= 1 => Some(HSign::Zero),
        _ => None,
    }
}

/// Sign of `h(A)` read off the reduced class against the known lists of
/// vanishing and negative classes; anything unlisted is positive. Errors if
/// the lists disagree with [`h_closed`].
pub fn sign_class(alg: &AlgebraDescriptor, a: &LatticeClass) -> Result<HSign> {
    let h = h_closed(alg, a)?;
    let case = alg.classify_case();
    let listed = match case {
        CaseTag::Case2 => a.is_zero().then_some(HSign::Zero),
        _ => {
            let r = reduce(alg, a)?.output;
            let c = r.coeffs();
            match case {
                CaseTag::Case4 => {
                    let b: Vec<i64> = c[1..].iter().map(|&x| -x).collect();
                    odd_pattern_sign(&b, c[0])
                }
                _ => hyperbolic_pattern_sign(case, c[0], c[1]),
            }
        }
    };
    let sign = listed.unwrap_or(HSign::Positive);
    if sign != HSign::of(h) {
        return Err(GenusError::Internal(format!(
            "sign lists say {sign} but h({a}) = {h} in {case}"
        )));
    }
    Ok(sign)
}
