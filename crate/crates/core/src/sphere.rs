//! Obstructions to representing a class by an embedded sphere.
//!
//! An [`SphereStatus::AdmissiblePattern`] verdict means the class is not
//! obstructed by the adjunction bound or the pattern lists; it does not
//! certify that a sphere exists.

use serde::{Deserialize, Serialize};

use crate::adjunction::{default_bound, h_bruteforce, HWitness};
use crate::algebra::{AlgebraDescriptor, CaseTag};
use crate::closedform::{h_closed, h_lower_bound};
use crate::error::{GenusError, Result};
use crate::lattice::{FormTag, LatticeClass};
use crate::reduction::reduce;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionReason {
    /// `h(A) > 0` forces genus at least one.
    HPositive,
    /// Positive square with `T` nontrivial.
    NontrivialTPositiveSquare,
    /// `h(A) <= 0` but the reduced class matches no admissible pattern.
    PatternExclusion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum SphereStatus {
    AdmissiblePattern(String),
    Obstructed(ObstructionReason),
    Unknown,
}

/// Which number backs the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HKind {
    Closed,
    LowerBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereVerdict {
    pub status: SphereStatus,
    pub reduced: Option<LatticeClass>,
    pub h: Option<i64>,
    pub h_kind: Option<HKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Oracle value over a box, offered when no closed form applies.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<HWitness>,
}

impl SphereVerdict {
    fn new(status: SphereStatus) -> Self {
        SphereVerdict {
            status,
            reduced: None,
            h: None,
            h_kind: None,
            note: None,
            evidence: None,
        }
    }

    pub fn is_admissible(&self) -> bool {
        matches!(self.status, SphereStatus::AdmissiblePattern(_))
    }

    pub fn is_obstructed(&self) -> bool {
        matches!(self.status, SphereStatus::Obstructed(_))
    }
}

/// Pattern name of a reduced class with square zero or positive, if listed.
fn match_pattern(case: CaseTag, r: &LatticeClass) -> Option<String> {
    let c = r.coeffs();
    match case {
        CaseTag::Case1 | CaseTag::Case3 | CaseTag::Case5 | CaseTag::Extended42_1
        | CaseTag::Extended42_2 => {
            let (a, b) = (c[0], c[1]);
            if a >= 1 && b == 0 {
                Some("aF".into())
            } else if case == CaseTag::Case1 && a >= 1 && b == 1 {
                Some("aF+B".into())
            } else {
                None
            }
        }
        CaseTag::Case4 => {
            let a = c[0];
            let b: Vec<i64> = c[1..].iter().map(|&x| -x).filter(|&v| v != 0).collect();
            match b.as_slice() {
                [] if a == 1 => Some("H".into()),
                [] if a == 2 => Some("2H".into()),
                [b1] if *b1 == a && a >= 1 => Some("a(H-E1)".into()),
                [b1] if *b1 == a - 1 && a >= 2 => Some("aH-(a-1)E1".into()),
                [b1, 1] if *b1 == a - 1 && a >= 2 => Some("aH-(a-1)E1-E2".into()),
                _ => None,
            }
        }
        CaseTag::Case2 | CaseTag::Unsupported => None,
    }
}

/// Checks `A` (nonzero, non-negative square) against the sphere obstructions.
pub fn sphere_check(alg: &AlgebraDescriptor, a: &LatticeClass) -> Result<SphereVerdict> {
    let form = alg.form();
    let aa = form.norm(a)?;
    if aa < 0 {
        return Err(GenusError::NegativeSquare(aa));
    }
    if a.is_zero() {
        return Err(GenusError::ZeroClass);
    }
    if !alg.t_is_trivial() && aa > 0 {
        return Ok(SphereVerdict::new(SphereStatus::Obstructed(
            ObstructionReason::NontrivialTPositiveSquare,
        )));
    }
    let case = alg.classify_case();
    if case == CaseTag::Unsupported {
        let mut v = SphereVerdict::new(SphereStatus::Unknown);
        if form.tag() == (FormTag::Odd { n: 2 }) && alg.tilde_b1() >= 2 {
            v.note = Some(
                "U + <-1> with nontrivial T: the pattern check for this case is not implemented"
                    .into(),
            );
            v.evidence = h_bruteforce(alg, a, default_bound(a).min(9))?;
        }
        return Ok(v);
    }
    let reduced = reduce(alg, a)?.output;
    let (h, kind) = if case.is_extended() {
        (h_lower_bound(alg, a)?, HKind::LowerBound)
    } else {
        (h_closed(alg, a)?, HKind::Closed)
    };
    let pattern = match_pattern(case, &reduced);
    let status = if h > 0 {
        SphereStatus::Obstructed(ObstructionReason::HPositive)
    } else if let Some(p) = pattern {
        SphereStatus::AdmissiblePattern(p)
    } else if case.is_extended() {
        SphereStatus::Unknown
    } else {
        SphereStatus::Obstructed(ObstructionReason::PatternExclusion)
    };
    let mut v = SphereVerdict::new(status);
    v.reduced = Some(reduced);
    v.h = Some(h);
    v.h_kind = Some(kind);
    Ok(v)
}
