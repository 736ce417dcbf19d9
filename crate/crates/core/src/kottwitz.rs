//! Lifts of the subgroup `J ⊂ W` that splits the Kottwitz homomorphism.
//!
//! Only the Weyl-level statement is checked: a section `S` lifts `J` when
//! `S(w)^r = S(w^r)` for every `r`, with `w` a generator of `J`.

use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

use crate::extweyl::Section;
use crate::linalg::Q;
use crate::rootsys::{RootSystem, RootSystemError, TypeTag, WeylElement, WeylWord};
use crate::torus::TorusElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KottwitzError {
    #[error("{a} does not divide n+1 = {np1} with 1 < a < n+1")]
    BadDivisor { a: usize, np1: usize },
    #[error("permutation is not an element of W(A{0})")]
    NotAPermutation(usize),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
}

/// `F_w(i)`: positive roots `α` with `w^i(α) < 0 < w^{i+1}(α)`.
pub fn fw_set(sys: &RootSystem, w: &WeylElement, i: u32) -> Vec<usize> {
    let wi = sys.power(w, i);
    (0..sys.num_positive())
        .filter(|&a| {
            let b = wi.apply(a);
            !sys.is_positive(b) && sys.is_positive(w.apply(b))
        })
        .collect()
}

/// `Σ_{α ∈ F_w(i)} α^∨` in ambient coordinates.
pub fn fw_coroot_sum(sys: &RootSystem, w: &WeylElement, i: u32) -> Vec<Q> {
    let mut acc = vec![Q::from_integer(0); sys.ambient_dim()];
    for a in fw_set(sys, w, i) {
        let v = sys.root_ambient(a);
        let norm: Q = v.iter().map(|x| x * x).sum();
        let scale = Q::from_integer(2) / norm;
        for (s, x) in acc.iter_mut().zip(v) {
            *s += x * scale;
        }
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftCheckReport {
    /// Reduced word of the element checked.
    pub element: WeylWord,
    pub r_max: u32,
    /// `results[r-1]` is whether `S(w)^r = S(w^r)`.
    pub results: Vec<bool>,
    /// `S(w)^r · S(w^r)^{-1}` where the check fails.
    pub discrepancies: Vec<Option<TorusElement>>,
}

impl LiftCheckReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|&b| b)
    }

    /// First `r` where the lift fails.
    pub fn first_failure(&self) -> Option<u32> {
        self.results.iter().position(|&b| !b).map(|p| p as u32 + 1)
    }
}

/// Compares `S(w)^r` with `S(w^r)` for `r = 1..=r_max`.
pub fn lift_check(section: &Section, w: &WeylWord, r_max: u32) -> LiftCheckReport {
    let ctx = section.ctx();
    let sys = ctx.sys();
    let elt = sys.element(w);
    let sw = section.eval(&elt);
    let per_r: Vec<(bool, Option<TorusElement>)> = (1..=r_max)
        .into_par_iter()
        .map(|r| {
            let lhs = ctx.pow(&sw, r).expect("same group");
            let rhs = section.eval(&sys.power(&elt, r));
            debug_assert_eq!(lhs.w, rhs.w);
            if lhs == rhs {
                (true, None)
            } else {
                (false, Some(&lhs.t * &rhs.t.inv()))
            }
        })
        .collect();
    let (results, discrepancies) = per_r.into_iter().unzip();
    LiftCheckReport {
        element: sys.reduced_word(&elt),
        r_max,
        results,
        discrepancies,
    }
}

/// `w_{Π_n} w_Π` in type `C_n`, written as
/// `(s_n)(s_{n-1} s_n)(s_{n-2} s_{n-1} s_n) ⋯ (s_1 ⋯ s_n)`.
pub fn cn_adjoint_element(n: usize) -> Result<WeylWord, KottwitzError> {
    let sys = RootSystem::new(TypeTag::C, n)?;
    let letters: Vec<usize> = (0..n).rev().flat_map(|k| k..n).collect();
    let word = sys.checked_word(letters);
    debug_assert!(word.is_reduced());
    Ok(word)
}

/// Which cycle the power is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CycleVariant {
    /// `(1 2 ⋯ n)`, fixing `n+1`.
    NCycle,
    /// `(1 2 ⋯ n+1)`.
    FullCycle,
}

impl CycleVariant {
    pub const ALL: [CycleVariant; 2] = [CycleVariant::NCycle, CycleVariant::FullCycle];
}

/// The Weyl element of `A_n` permuting the ambient basis by `e_j ↦ e_{perm[j]}`.
pub fn permutation_element(sys: &RootSystem, perm: &[usize]) -> Result<WeylElement, KottwitzError> {
    let n = sys.rank();
    if sys.type_tag() != TypeTag::A || perm.len() != n + 1 {
        return Err(KottwitzError::NotAPermutation(n));
    }
    let root_of = |p: usize, q: usize| -> Option<usize> {
        let (lo, hi, sign) = if p < q { (p, q, 1) } else { (q, p, -1) };
        let coeffs: Vec<i64> = (0..n)
            .map(|k| if (lo..hi).contains(&k) { sign } else { 0 })
            .collect();
        sys.root_index(&coeffs)
    };
    let images: Option<Vec<usize>> = (0..n).map(|i| root_of(perm[i], perm[i + 1])).collect();
    images
        .and_then(|im| sys.element_from_simple_images(&im))
        .ok_or(KottwitzError::NotAPermutation(n))
}

/// The `a`-th power of the chosen cycle in `W(A_n)`, as a reduced word.
pub fn an_cycle_power(
    n: usize,
    a: usize,
    variant: CycleVariant,
) -> Result<WeylWord, KottwitzError> {
    if a <= 1 || a > n || !(n + 1).is_multiple_of(a) {
        return Err(KottwitzError::BadDivisor { a, np1: n + 1 });
    }
    let sys = RootSystem::new(TypeTag::A, n)?;
    let len = match variant {
        CycleVariant::NCycle => n,
        CycleVariant::FullCycle => n + 1,
    };
    let perm: Vec<usize> = (0..=n)
        .map(|j| if j < len { (j + a) % len } else { j })
        .collect();
    let w = permutation_element(&sys, &perm)?;
    Ok(sys.reduced_word(&w))
}

/// The displayed pattern for `Σ_{F_{w_a}(i)} α^∨`:
/// `ai (e_{n-a(i+1)+1} + ⋯ + e_{n-ai}) - a (e_{n-ai+1} + ⋯ + e_n)`,
/// or `None` when an index falls outside `1..=n+1`.
pub fn an_pattern(n: usize, a: usize, i: usize) -> Option<Vec<Q>> {
    let (n, a, i) = (n as i64, a as i64, i as i64);
    let lo = n - a * (i + 1) + 1;
    if lo < 1 {
        return None;
    }
    let mut v = vec![Q::from_integer(0); n as usize + 1];
    for j in lo..=n - a * i {
        v[j as usize - 1] = Ratio::from_integer(a * i);
    }
    for j in n - a * i + 1..=n {
        v[j as usize - 1] = Ratio::from_integer(-a);
    }
    Some(v)
}

/// Report on one candidate for `w_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCandidate {
    pub variant: CycleVariant,
    pub word: WeylWord,
    pub order: u32,
    /// `i` values where the pattern is defined.
    pub pattern_checked: Vec<usize>,
    /// Whether the coroot sums agree with the pattern at every checked `i`.
    pub matches_pattern: bool,
    /// The same comparison after relabelling `e_j` as `e_{j+1}`.
    pub matches_shifted_pattern: bool,
}

/// Both readings of `w_a`, each compared against the displayed coroot pattern.
pub fn an_cycle_candidates(n: usize, a: usize) -> Result<Vec<CycleCandidate>, KottwitzError> {
    let sys = RootSystem::new(TypeTag::A, n)?;
    CycleVariant::ALL
        .iter()
        .map(|&variant| {
            let word = an_cycle_power(n, a, variant)?;
            let w = sys.element(&word);
            let order = sys.order(&w);
            let mut checked = Vec::new();
            let (mut ok, mut shifted_ok) = (true, true);
            for i in 1..order.max(2) as usize {
                if let Some(expected) = an_pattern(n, a, i) {
                    checked.push(i);
                    let sum = fw_coroot_sum(&sys, &w, i as u32);
                    ok &= sum == expected;
                    let mut shifted = expected.clone();
                    shifted.rotate_right(1);
                    shifted_ok &= sum == shifted;
                }
            }
            Ok(CycleCandidate {
                variant,
                word,
                order,
                pattern_checked: checked,
                matches_pattern: ok,
                matches_shifted_pattern: shifted_ok,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fw_of_identity_and_reflection() {
        let sys = RootSystem::new(TypeTag::B, 3).unwrap();
        assert!(fw_set(&sys, &sys.identity(), 1).is_empty());
        let s = sys.simple_reflection(1).clone();
        assert_eq!(fw_set(&sys, &s, 1), vec![sys.simple_root_index(1)]);
    }

    #[test]
    fn cn_word_small() {
        assert_eq!(cn_adjoint_element(2).unwrap().letters(), &[1, 0, 1]);
        for n in 2..7 {
            assert_eq!(cn_adjoint_element(n).unwrap().len(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn cycle_power_rejects_bad_divisor() {
        assert!(an_cycle_power(7, 8, CycleVariant::FullCycle).is_err());
        assert!(an_cycle_power(7, 3, CycleVariant::FullCycle).is_err());
        assert!(an_cycle_power(7, 1, CycleVariant::FullCycle).is_err());
    }
}
