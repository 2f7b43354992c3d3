//! Cohomology algebras of `b+ = 1` type, reduced to the data the genus bound
//! depends on: the intersection form, `b1`, the rank `tilde_b1` of the cup
//! product `T` on degree one, and a generator `F` of `Im T`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GenusError, Result};
use crate::lattice::{FormTag, IntersectionForm, LatticeClass};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDescriptor {
    form: IntersectionForm,
    b1: u32,
    tilde_b1: u32,
    im_t_generator: Option<LatticeClass>,
}

/// Which explicit regime an algebra falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
    Extended42_1,
    Extended42_2,
    Unsupported,
}

impl CaseTag {
    /// Cases with `2 chi + 3 sigma >= 0`, where `h` has a closed form.
    pub fn has_closed_form(self) -> bool {
        matches!(
            self,
            CaseTag::Case1 | CaseTag::Case2 | CaseTag::Case3 | CaseTag::Case4 | CaseTag::Case5
        )
    }

    pub fn is_extended(self) -> bool {
        matches!(self, CaseTag::Extended42_1 | CaseTag::Extended42_2)
    }

    pub fn is_supported(self) -> bool {
        self != CaseTag::Unsupported
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::Case1 => "Case1",
            CaseTag::Case2 => "Case2",
            CaseTag::Case3 => "Case3",
            CaseTag::Case4 => "Case4",
            CaseTag::Case5 => "Case5",
            CaseTag::Extended42_1 => "Extended42_1",
            CaseTag::Extended42_2 => "Extended42_2",
            CaseTag::Unsupported => "Unsupported",
        };
        f.write_str(s)
    }
}

/// On-disk representation of a descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub form: FormTag,
    pub b1: u32,
    pub tilde_b1: u32,
    #[serde(rename = "F", default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<i64>>,
}

impl AlgebraDescriptor {
    /// Validates the descriptor invariants.
    ///
    /// `tilde_b1` must be even and at most `b1`; `F` is present exactly when
    /// `tilde_b1 > 0`, is primitive and isotropic, and for `U`/`V` forms must
    /// be the first basis vector.
    pub fn new(
        form: IntersectionForm,
        b1: u32,
        tilde_b1: u32,
        im_t_generator: Option<LatticeClass>,
    ) -> Result<Self> {
        if !tilde_b1.is_multiple_of(2) {
            return Err(GenusError::InvalidParameter(format!(
                "tilde_b1 must be even, got {tilde_b1}"
            )));
        }
        if tilde_b1 > b1 {
            return Err(GenusError::InvalidParameter(format!(
                "tilde_b1 = {tilde_b1} exceeds b1 = {b1}"
            )));
        }
        match (&im_t_generator, tilde_b1) {
            (None, 0) => {}
            (Some(_), 0) => {
                return Err(GenusError::InvalidParameter(
                    "F given but T is trivial (tilde_b1 = 0)".into(),
                ))
            }
            (None, _) => {
                return Err(GenusError::InvalidParameter(
                    "tilde_b1 > 0 requires a generator F of Im T".into(),
                ))
            }
            (Some(f), _) => {
                form.check_rank(f)?;
                if form.norm(f)? != 0 {
                    return Err(GenusError::InvalidParameter(format!(
                        "F must satisfy F.F = 0, got {}",
                        form.norm(f)?
                    )));
                }
                if !f.is_primitive() {
                    return Err(GenusError::InvalidParameter(format!(
                        "F = {f} is not primitive"
                    )));
                }
                let two_dim = form.is_hyperbolic() || form.tag() == FormTag::Vform;
                if two_dim && *f != LatticeClass::basis(2, 0) {
                    return Err(GenusError::InvalidParameter(
                        "for U and V forms, F must be the first basis vector [1,0]".into(),
                    ));
                }
            }
        }
        Ok(AlgebraDescriptor {
            form,
            b1,
            tilde_b1,
            im_t_generator,
        })
    }

    /// Convenience constructor for an algebra with trivial `T` and `b1 = 0`.
    pub fn t_trivial(tag: FormTag) -> Result<Self> {
        Self::new(IntersectionForm::new(tag)?, 0, 0, None)
    }

    /// Lefschetz algebra (`b1 = tilde_b1`) with `Im T` spanned by the first basis vector.
    pub fn with_im_t(tag: FormTag, tilde_b1: u32) -> Result<Self> {
        let form = IntersectionForm::new(tag)?;
        let f = LatticeClass::basis(form.rank(), 0);
        Self::new(form, tilde_b1, tilde_b1, Some(f))
    }

    pub fn from_json(json: &AlgebraJson) -> Result<Self> {
        let form = IntersectionForm::new(json.form)?;
        Self::new(
            form,
            json.b1,
            json.tilde_b1,
            json.f.clone().map(LatticeClass::new),
        )
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            form: self.form.tag(),
            b1: self.b1,
            tilde_b1: self.tilde_b1,
            f: self.im_t_generator.as_ref().map(|f| f.coeffs().to_vec()),
        }
    }

    pub fn form(&self) -> &IntersectionForm {
        &self.form
    }

    pub fn b1(&self) -> u32 {
        self.b1
    }

    pub fn tilde_b1(&self) -> u32 {
        self.tilde_b1
    }

    pub fn im_t_generator(&self) -> Option<&LatticeClass> {
        self.im_t_generator.as_ref()
    }

    pub fn t_is_trivial(&self) -> bool {
        self.tilde_b1 == 0
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    pub fn sigma(&self) -> i64 {
        self.form.sigma()
    }

    /// `chi~ = 2 + b2 - 2 tilde_b1`.
    pub fn modified_euler(&self) -> i64 {
        2 + self.form.rank() as i64 - 2 * self.tilde_b1 as i64
    }

    /// `2 chi~ + 3 sigma`, the type II threshold.
    pub fn two_chi_three_sigma(&self) -> i64 {
        2 * self.modified_euler() + 3 * self.sigma()
    }

    /// Splits off the `b1 - tilde_b1` copies of the `S1 x S3` algebra.
    pub fn lefschetz_reduce(&self) -> (AlgebraDescriptor, u32) {
        let mut reduced = self.clone();
        reduced.b1 = self.tilde_b1;
        (reduced, self.b1 - self.tilde_b1)
    }

    pub fn classify_case(&self) -> CaseTag {
        let hyperbolic = self.form.is_hyperbolic();
        match (self.form.tag(), self.tilde_b1) {
            (_, 0) if hyperbolic => CaseTag::Case1,
            (FormTag::Even { q: 1 }, 0) => CaseTag::Case2,
            (_, 2) if hyperbolic => CaseTag::Case3,
            (FormTag::Odd { n }, 0) if (0..=9).contains(&n) => CaseTag::Case4,
            (FormTag::Vform, 2) => CaseTag::Case5,
            (_, t) if t >= 4 && hyperbolic => CaseTag::Extended42_1,
            (FormTag::Vform, t) if t >= 4 => CaseTag::Extended42_2,
            _ => CaseTag::Unsupported,
        }
    }

    /// Number of `E` coordinates for `Odd(n)` forms.
    pub(crate) fn odd_n(&self) -> Option<usize> {
        match self.form.tag() {
            FormTag::Odd { n } => Some(n as usize),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(tag: FormTag, b1: u32, tb: u32) -> AlgebraDescriptor {
        let form = IntersectionForm::new(tag).unwrap();
        let f = (tb > 0).then(|| LatticeClass::basis(form.rank(), 0));
        AlgebraDescriptor::new(form, b1, tb, f).unwrap()
    }

    #[test]
    fn modified_euler_examples() {
        assert_eq!(alg(FormTag::Hyperbolic, 0, 0).modified_euler(), 4);
        assert_eq!(alg(FormTag::Hyperbolic, 2, 2).modified_euler(), 0);
        assert_eq!(alg(FormTag::Even { q: 1 }, 0, 0).modified_euler(), 12);
    }

    #[test]
    fn two_chi_three_sigma_examples() {
        assert_eq!(alg(FormTag::Odd { n: 9 }, 0, 0).two_chi_three_sigma(), 0);
        assert_eq!(alg(FormTag::Vform, 2, 2).two_chi_three_sigma(), 0);
        assert_eq!(alg(FormTag::Hyperbolic, 4, 4).two_chi_three_sigma(), -8);
    }

    #[test]
    fn two_chi_three_sigma_identity() {
        let mut tags: Vec<FormTag> = (0..=10).map(|n| FormTag::Odd { n }).collect();
        tags.extend([
            FormTag::Even { q: 0 },
            FormTag::Even { q: 1 },
            FormTag::Even { q: 2 },
            FormTag::Hyperbolic,
            FormTag::Vform,
        ]);
        for tag in tags {
            for tb in [0u32, 2, 4, 6] {
                let form = IntersectionForm::new(tag).unwrap();
                // any isotropic primitive vector serves as F for this identity
                let f = match tag {
                    FormTag::Odd { n } if n >= 1 => {
                        let mut v = vec![0; form.rank()];
                        v[0] = 1;
                        v[1] = 1;
                        Some(LatticeClass::new(v))
                    }
                    FormTag::Odd { .. } => None,
                    _ => Some(LatticeClass::basis(form.rank(), 0)),
                };
                let f = if tb > 0 { f } else { None };
                if tb > 0 && f.is_none() {
                    continue;
                }
                let a = AlgebraDescriptor::new(form, tb + 1, tb, f).unwrap();
                assert_eq!(
                    a.two_chi_three_sigma(),
                    a.sigma() + 8 - 4 * tb as i64,
                    "{tag} tb={tb}"
                );
            }
        }
    }

    #[test]
    fn lefschetz_examples() {
        let a = alg(FormTag::Hyperbolic, 5, 2);
        let (r, l) = a.lefschetz_reduce();
        assert_eq!((r.b1(), r.tilde_b1(), l), (2, 2, 3));
        assert_eq!(r.im_t_generator(), a.im_t_generator());
        assert_eq!(r.form(), a.form());

        let a = alg(FormTag::Odd { n: 3 }, 0, 0);
        assert_eq!(a.lefschetz_reduce(), (a.clone(), 0));

        let a = alg(FormTag::Even { q: 1 }, 4, 0);
        let (r, l) = a.lefschetz_reduce();
        assert_eq!((r.b1(), l), (0, 4));
    }

    #[test]
    fn lefschetz_is_idempotent_and_keeps_case() {
        for (tag, b1, tb) in [
            (FormTag::Hyperbolic, 7, 2),
            (FormTag::Vform, 9, 4),
            (FormTag::Odd { n: 4 }, 3, 0),
            (FormTag::Even { q: 1 }, 1, 0),
        ] {
            let a = alg(tag, b1, tb);
            let (r, _) = a.lefschetz_reduce();
            let (rr, l2) = r.lefschetz_reduce();
            assert_eq!(rr, r);
            assert_eq!(l2, 0);
            assert_eq!(r.classify_case(), a.classify_case());
            assert_eq!(r.two_chi_three_sigma(), a.two_chi_three_sigma());
        }
    }

    #[test]
    fn classification() {
        assert_eq!(alg(FormTag::Odd { n: 2 }, 0, 0).classify_case(), CaseTag::Case4);
        assert_eq!(alg(FormTag::Hyperbolic, 4, 4).classify_case(), CaseTag::Extended42_1);
        assert_eq!(alg(FormTag::Odd { n: 10 }, 0, 0).classify_case(), CaseTag::Unsupported);
        assert_eq!(alg(FormTag::Hyperbolic, 0, 0).classify_case(), CaseTag::Case1);
        assert_eq!(alg(FormTag::Even { q: 0 }, 0, 0).classify_case(), CaseTag::Case1);
        assert_eq!(alg(FormTag::Even { q: 1 }, 0, 0).classify_case(), CaseTag::Case2);
        assert_eq!(alg(FormTag::Hyperbolic, 2, 2).classify_case(), CaseTag::Case3);
        assert_eq!(alg(FormTag::Vform, 2, 2).classify_case(), CaseTag::Case5);
        assert_eq!(alg(FormTag::Vform, 6, 6).classify_case(), CaseTag::Extended42_2);
        assert_eq!(alg(FormTag::Vform, 0, 0).classify_case(), CaseTag::Unsupported);
        assert_eq!(alg(FormTag::Even { q: 2 }, 0, 0).classify_case(), CaseTag::Unsupported);
        assert_eq!(alg(FormTag::Even { q: 1 }, 2, 2).classify_case(), CaseTag::Unsupported);
    }

    #[test]
    fn descriptor_validation() {
        let u = || IntersectionForm::new(FormTag::Hyperbolic).unwrap();
        assert!(AlgebraDescriptor::new(u(), 3, 1, None).is_err());
        assert!(AlgebraDescriptor::new(u(), 1, 2, Some(vec![1, 0].into())).is_err());
        assert!(AlgebraDescriptor::new(u(), 2, 2, None).is_err());
        assert!(AlgebraDescriptor::new(u(), 2, 0, Some(vec![1, 0].into())).is_err());
        assert!(AlgebraDescriptor::new(u(), 2, 2, Some(vec![2, 0].into())).is_err());
        assert!(AlgebraDescriptor::new(u(), 2, 2, Some(vec![1, 1].into())).is_err());
        assert!(AlgebraDescriptor::new(u(), 2, 2, Some(vec![0, 1].into())).is_err());
        assert!(AlgebraDescriptor::new(u(), 2, 2, Some(vec![1, 0].into())).is_ok());
        let o2 = IntersectionForm::new(FormTag::Odd { n: 2 }).unwrap();
        assert!(AlgebraDescriptor::new(o2, 2, 2, Some(vec![1, 1, 0].into())).is_ok());
    }

    #[test]
    fn json_schema() {
        let text = r#"{"form": {"tag": "odd", "n": 2}, "b1": 0, "tilde_b1": 0}"#;
        let j: AlgebraJson = serde_json::from_str(text).unwrap();
        let a = AlgebraDescriptor::from_json(&j).unwrap();
        assert_eq!(a.classify_case(), CaseTag::Case4);

        let text = r#"{"form": {"tag": "v"}, "b1": 2, "tilde_b1": 2, "F": [1, 0]}"#;
        let j: AlgebraJson = serde_json::from_str(text).unwrap();
        let a = AlgebraDescriptor::from_json(&j).unwrap();
        assert_eq!(a.classify_case(), CaseTag::Case5);
        assert_eq!(a.to_json(), j);

        let text = r#"{"form": {"tag": "even", "q": 1}, "b1": 0, "tilde_b1": 0}"#;
        let j: AlgebraJson = serde_json::from_str(text).unwrap();
        assert_eq!(AlgebraDescriptor::from_json(&j).unwrap().rank(), 10);

        let text = r#"{"form": {"tag": "hyperbolic"}, "b1": 0, "tilde_b1": 0}"#;
        assert!(serde_json::from_str::<AlgebraJson>(text).is_ok());
    }
}
