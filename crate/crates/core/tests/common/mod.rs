#![allow(dead_code)]

use genusbound::reduction::ReductionMove;
use genusbound::{AlgebraDescriptor, CaseTag, FormTag, IntersectionForm, LatticeClass};
use rand::Rng;

pub fn cls(v: &[i64]) -> LatticeClass {
    LatticeClass::new(v.to_vec())
}

pub fn case1() -> AlgebraDescriptor {
    AlgebraDescriptor::t_trivial(FormTag::Hyperbolic).unwrap()
}

pub fn case2() -> AlgebraDescriptor {
    AlgebraDescriptor::t_trivial(FormTag::Even { q: 1 }).unwrap()
}

pub fn case3() -> AlgebraDescriptor {
    AlgebraDescriptor::with_im_t(FormTag::Hyperbolic, 2).unwrap()
}

pub fn case4(n: i64) -> AlgebraDescriptor {
    AlgebraDescriptor::t_trivial(FormTag::Odd { n }).unwrap()
}

pub fn case5() -> AlgebraDescriptor {
    AlgebraDescriptor::with_im_t(FormTag::Vform, 2).unwrap()
}

/// Every algebra with a closed form: Cases 1, 2, 3, 5 and Case 4 for n = 0..=9.
pub fn closed_form_algebras() -> Vec<(String, AlgebraDescriptor)> {
    let mut v = vec![
        ("Case1 U".to_string(), case1()),
        ("Case2 U+(-E8)".to_string(), case2()),
        ("Case3 U, tilde_b1=2".to_string(), case3()),
        ("Case5 V, tilde_b1=2".to_string(), case5()),
    ];
    for n in 0..=9 {
        v.push((format!("Case4 Odd({n})"), case4(n)));
    }
    v
}

pub fn extended_algebras() -> Vec<(String, AlgebraDescriptor)> {
    let mut v = Vec::new();
    for tb in [4, 6] {
        v.push((
            format!("Extended U, tilde_b1={tb}"),
            AlgebraDescriptor::with_im_t(FormTag::Hyperbolic, tb).unwrap(),
        ));
        v.push((
            format!("Extended V, tilde_b1={tb}"),
            AlgebraDescriptor::with_im_t(FormTag::Vform, tb).unwrap(),
        ));
    }
    v
}

/// All integer vectors in `[-r, r]^rank`, lexicographic.
pub fn box_points(rank: usize, r: i64) -> Vec<Vec<i64>> {
    let side = 2 * r + 1;
    let total = (side as u64).pow(rank as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = vec![0i64; rank];
            for k in (0..rank).rev() {
                v[k] = (idx % side as u64) as i64 - r;
                idx /= side as u64;
            }
            v
        })
        .collect()
}

/// Sorted non-increasing tuples of length `n` with entries in `[0, max]`.
pub fn sorted_tuples(n: usize, max: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in (0..=cap).rev() {
            cur.push(v);
            go(n, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max, &mut Vec::new(), &mut out);
    out
}

/// The class `aH - sum b_i E_i`.
pub fn odd_class(a: i64, b: &[i64]) -> LatticeClass {
    let mut v = vec![a];
    v.extend(b.iter().map(|x| -x));
    LatticeClass::new(v)
}

/// `a^2 - sum b_i^2`, computed without the library.
pub fn odd_norm(a: i64, b: &[i64]) -> i64 {
    a * a - b.iter().map(|x| x * x).sum::<i64>()
}

/// Characteristic test straight from the Gram matrix: `c.e_i = e_i.e_i mod 2`.
pub fn characteristic_by_gram(form: &IntersectionForm, c: &[i64]) -> bool {
    let rank = form.rank();
    (0..rank).all(|i| {
        let ci: i64 = (0..rank).map(|j| form.entry(i, j) * c[j]).sum();
        (ci - form.entry(i, i)).rem_euclid(2) == 0
    })
}

/// Generators of the symmetry group used for random words.
pub fn generators(alg: &AlgebraDescriptor) -> Vec<ReductionMove> {
    let mut g = vec![ReductionMove::Negate];
    match alg.classify_case() {
        CaseTag::Case1 => g.push(ReductionMove::SwapFb),
        CaseTag::Case4 => {
            let n = match alg.form().tag() {
                FormTag::Odd { n } => n as usize,
                _ => unreachable!(),
            };
            for i in 1..=n {
                g.push(ReductionMove::ReflectE { i });
                for j in i + 1..=n {
                    g.push(ReductionMove::PermuteE { i, j });
                }
            }
            if n == 2 {
                g.push(ReductionMove::ReflectHE12);
            }
            if n >= 3 {
                g.push(ReductionMove::CremonaReflect);
            }
        }
        _ => {}
    }
    g
}

/// A random small vector of the `(-E8)` summand of `Even(1)`.
pub fn random_e8<R: Rng>(rng: &mut R, nonzero: usize, r: i64) -> LatticeClass {
    let mut v = vec![0i64; 10];
    for _ in 0..nonzero {
        let k = rng.gen_range(2..10);
        v[k] = rng.gen_range(-r..=r);
    }
    LatticeClass::new(v)
}

/// A random move legal for `alg`, including `E_omega` in Case 2.
pub fn random_move<R: Rng>(rng: &mut R, alg: &AlgebraDescriptor) -> ReductionMove {
    let g = generators(alg);
    if alg.classify_case() == CaseTag::Case2 && rng.gen_bool(0.5) {
        let k = rng.gen_range(1..=3);
        return ReductionMove::EOmega {
            omega: random_e8(rng, k, 1),
        };
    }
    g[rng.gen_range(0..g.len())].clone()
}

/// A random reduced class of non-negative square, built from the case's
/// displayed conditions rather than from the reduction itself.
pub fn random_reduced<R: Rng>(rng: &mut R, alg: &AlgebraDescriptor) -> LatticeClass {
    let form = alg.form();
    match alg.classify_case() {
        CaseTag::Case1 => {
            let a = rng.gen_range(0..=15);
            cls(&[a, rng.gen_range(0..=a)])
        }
        CaseTag::Case3 => loop {
            let a = rng.gen_range(0..=15);
            let b = rng.gen_range(-15..=15);
            if (a > 0 || b >= 0) && a * b >= 0 {
                return cls(&[a, b]);
            }
        },
        CaseTag::Case5 => loop {
            let a = rng.gen_range(0..=15);
            let b = rng.gen_range(-30..=15);
            if (a > 0 || b >= 0) && b * (2 * a + b) >= 0 {
                return cls(&[a, b]);
            }
        },
        CaseTag::Case4 => {
            let n = form.rank() - 1;
            let mut b: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=6)).collect();
            b.sort_unstable_by(|x, y| y.cmp(x));
            let t: i64 = b.iter().take(3).sum();
            let s: i64 = b.iter().map(|x| x * x).sum();
            let mut a0 = t;
            while a0 * a0 < s {
                a0 += 1;
            }
            odd_class(a0 + rng.gen_range(0..=4), &b)
        }
        CaseTag::Case2 => {
            if rng.gen_bool(0.1) {
                let mut v = vec![0i64; 10];
                v[0] = rng.gen_range(0..=12);
                return LatticeClass::new(v);
            }
            loop {
                let b = rng.gen_range(1..=5);
                let mut xi = { let k = rng.gen_range(0..=3); random_e8(rng, k, 2) }.into_coeffs();
                let xx = -form.norm(&LatticeClass::new(xi.clone())).unwrap();
                if 4 * b * b <= xx {
                    continue;
                }
                let a_min = ((xx + 2 * b - 1) / (2 * b)).max(b);
                xi[0] = a_min + rng.gen_range(0..=6);
                xi[1] = b;
                return LatticeClass::new(xi);
            }
        }
        other => panic!("no reduced sampler for {other}"),
    }
}
