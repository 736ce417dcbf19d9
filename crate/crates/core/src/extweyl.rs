//! The normalizer `N` of the torus as a twisted product `T ⋊_c W`.
//!
//! An [`ExtendedElement`] `(t, w)` stands for `t · N∘(w)` where `N∘` is the
//! Tits section. Products follow
//! `(t1, u)(t2, v) = (t1 · u(t2) · c(u, v), uv)`
//! with `c(u, v) = (uv)(∏_{α ∈ F(u,v)} α^∨(-1))`, the cocycle of the Tits
//! section, and `F(u, v)` the positive roots `α` with `v(α) < 0 < uv(α)`.

use std::sync::Arc;

use thiserror::Error;

use crate::lattice::IsogenyLattice;
use crate::rootsys::{RootSystem, WeylElement, WeylWord};
use crate::torus::{coroot_eval_minus1, MonomialGroup, TorusElement, TorusError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtWeylError {
    #[error("expected {expected} torus values, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("braid relation between s{} and s{} fails", .0 + 1, .1 + 1)]
    BraidViolation(usize, usize),
    #[error(transparent)]
    Torus(#[from] TorusError),
}

/// `t · N∘(w)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedElement {
    pub t: TorusElement,
    pub w: WeylElement,
}

/// Arithmetic context: a lattice and the monomial group the torus parts live in.
#[derive(Debug, Clone)]
pub struct Normalizer {
    lat: Arc<IsogenyLattice>,
    group: Arc<MonomialGroup>,
}

impl Normalizer {
    pub fn new(lat: Arc<IsogenyLattice>, group: Arc<MonomialGroup>) -> Self {
        Normalizer { lat, group }
    }

    pub fn lattice(&self) -> &Arc<IsogenyLattice> {
        &self.lat
    }

    pub fn sys(&self) -> &RootSystem {
        self.lat.sys()
    }

    pub fn group(&self) -> &Arc<MonomialGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.lat.rank()
    }

    pub fn torus_identity(&self) -> TorusElement {
        TorusElement::identity(&self.group, self.rank())
    }

    pub fn identity(&self) -> ExtendedElement {
        ExtendedElement {
            t: self.torus_identity(),
            w: self.sys().identity(),
        }
    }

    /// `α^∨(-1)` in this context.
    pub fn coroot_minus1(&self, r: usize) -> TorusElement {
        coroot_eval_minus1(&self.lat, &self.group, r)
    }

    /// `F(u, v)`: positive roots `α` with `v(α) < 0` and `uv(α) > 0`.
    pub fn fset(&self, u: &WeylElement, v: &WeylElement) -> Vec<usize> {
        let sys = self.sys();
        (0..sys.num_positive())
            .filter(|&a| {
                let va = v.apply(a);
                !sys.is_positive(va) && sys.is_positive(u.apply(va))
            })
            .collect()
    }

    /// `∏_{α ∈ F(u,v)} α^∨(-1)`, so that `N∘(u) N∘(v) = N∘(uv) · ls_factor(u, v)`.
    pub fn ls_factor(&self, u: &WeylElement, v: &WeylElement) -> TorusElement {
        self.fset(u, v)
            .into_iter()
            .fold(self.torus_identity(), |acc, a| {
                &acc * &self.coroot_minus1(a)
            })
    }

    /// The same factor moved to the left: `N∘(u) N∘(v) = tits_cocycle(u, v) · N∘(uv)`.
    pub fn tits_cocycle(&self, u: &WeylElement, v: &WeylElement) -> TorusElement {
        let uv = self.sys().compose(u, v);
        self.ls_factor(u, v).weyl_act(&self.lat, &uv)
    }

    pub fn act(&self, w: &WeylElement, t: &TorusElement) -> TorusElement {
        t.weyl_act(&self.lat, w)
    }

    pub fn mul(
        &self,
        a: &ExtendedElement,
        b: &ExtendedElement,
    ) -> Result<ExtendedElement, ExtWeylError> {
        let moved = self.act(&a.w, &b.t);
        let t =
            a.t.checked_mul(&moved)?
                .checked_mul(&self.tits_cocycle(&a.w, &b.w))?;
        Ok(ExtendedElement {
            t,
            w: self.sys().compose(&a.w, &b.w),
        })
    }

    pub fn inv(&self, a: &ExtendedElement) -> ExtendedElement {
        let winv = self.sys().inverse(&a.w);
        let t = &self.act(&winv, &a.t.inv()) * &self.tits_cocycle(&winv, &a.w).inv();
        ExtendedElement { t, w: winv }
    }

    pub fn pow(&self, a: &ExtendedElement, n: u32) -> Result<ExtendedElement, ExtWeylError> {
        (0..n).try_fold(self.identity(), |acc, _| self.mul(&acc, a))
    }

    /// `t · σ_i`.
    pub fn simple(&self, t: TorusElement, i: usize) -> ExtendedElement {
        ExtendedElement {
            t,
            w: self.sys().simple_reflection(i).clone(),
        }
    }

    /// `N∘(w)`, multiplied out along a reduced word.
    pub fn tits_lift(&self, w: &WeylElement) -> ExtendedElement {
        let word = self.sys().reduced_word(w);
        self.tits_lift_word(&word)
    }

    /// Product of the `σ_i` along the given word (reduced or not).
    pub fn tits_lift_word(&self, word: &WeylWord) -> ExtendedElement {
        word.letters().iter().fold(self.identity(), |acc, &i| {
            self.mul(&acc, &self.simple(self.torus_identity(), i))
                .expect("same group")
        })
    }

    /// `∏_{m=1}^{n-1} ∏_{α ∈ F_w(m)} α^∨(-1)`, the torus factor with
    /// `N∘(w)^n = N∘(w^n) · discrepancy`.
    pub fn tits_power_discrepancy(&self, w: &WeylElement, n: u32) -> TorusElement {
        let sys = self.sys();
        let mut acc = self.torus_identity();
        let mut wm = w.clone();
        for _ in 1..n {
            acc = &acc * &self.ls_factor(w, &wm);
            wm = sys.compose(&wm, w);
        }
        acc
    }
}

/// A map `s_i ↦ t_i σ_i` satisfying the braid relations.
#[derive(Debug, Clone)]
pub struct Section {
    ctx: Normalizer,
    values: Vec<TorusElement>,
}

impl Section {
    /// Checks the braid relations and builds the section.
    pub fn new(ctx: Normalizer, values: Vec<TorusElement>) -> Result<Self, ExtWeylError> {
        if values.len() != ctx.rank() {
            return Err(ExtWeylError::WrongCount {
                expected: ctx.rank(),
                got: values.len(),
            });
        }
        let s = Section { ctx, values };
        s.check_braids()?;
        Ok(s)
    }

    /// The Tits section: every `t_i` trivial.
    pub fn tits(ctx: Normalizer) -> Self {
        let values = vec![ctx.torus_identity(); ctx.rank()];
        Section { ctx, values }
    }

    pub fn ctx(&self) -> &Normalizer {
        &self.ctx
    }

    pub fn values(&self) -> &[TorusElement] {
        &self.values
    }

    pub fn simple_value(&self, i: usize) -> ExtendedElement {
        self.ctx.simple(self.values[i].clone(), i)
    }

    fn check_braids(&self) -> Result<(), ExtWeylError> {
        let n = self.ctx.rank();
        for i in 0..n {
            for k in i + 1..n {
                if !braid_holds(
                    &self.ctx,
                    &self.simple_value(i),
                    &self.simple_value(k),
                    self.ctx.sys().coxeter_m(i, k),
                )? {
                    return Err(ExtWeylError::BraidViolation(i, k));
                }
            }
        }
        Ok(())
    }

    /// Value on `w`: the product of the `t_i σ_i` along a reduced word.
    pub fn eval(&self, w: &WeylElement) -> ExtendedElement {
        let word = self.ctx.sys().reduced_word(w);
        self.eval_word(&word)
    }

    /// Product along an arbitrary word.
    pub fn eval_word(&self, word: &WeylWord) -> ExtendedElement {
        word.letters().iter().fold(self.ctx.identity(), |acc, &i| {
            self.ctx
                .mul(&acc, &self.simple_value(i))
                .expect("same group")
        })
    }
}

/// Whether `x y x .. = y x y ..` with `m` factors on each side.
pub fn braid_holds(
    ctx: &Normalizer,
    x: &ExtendedElement,
    y: &ExtendedElement,
    m: u32,
) -> Result<bool, ExtWeylError> {
    let mut lhs = ctx.identity();
    let mut rhs = ctx.identity();
    for p in 0..m {
        let (l, r) = if p % 2 == 0 { (x, y) } else { (y, x) };
        lhs = ctx.mul(&lhs, l)?;
        rhs = ctx.mul(&rhs, r)?;
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Isogeny;
    use crate::rootsys::TypeTag;

    fn ctx(t: TypeTag, n: usize, iso: Isogeny) -> Normalizer {
        let lat = IsogenyLattice::build(t, n, iso).unwrap();
        Normalizer::new(lat, MonomialGroup::constants(24).unwrap())
    }

    #[test]
    fn fset_basics() {
        let c = ctx(TypeTag::A, 2, Isogeny::SimplyConnected);
        let sys = c.sys();
        let s1 = sys.simple_reflection(0).clone();
        assert!(c.fset(&sys.identity(), &s1).is_empty());
        assert_eq!(c.fset(&s1, &s1), vec![0]);
        let s2 = sys.simple_reflection(1).clone();
        assert!(c.fset(&s1, &s2).is_empty());
    }

    #[test]
    fn sigma_squared_is_coroot_minus_one() {
        let c = ctx(TypeTag::B, 3, Isogeny::Adjoint);
        for i in 0..3 {
            let s = c.simple(c.torus_identity(), i);
            let sq = c.pow(&s, 2).unwrap();
            assert!(c.sys().is_identity(&sq.w));
            assert_eq!(sq.t, c.coroot_minus1(i));
        }
    }

    #[test]
    fn inverse_is_two_sided() {
        let c = ctx(TypeTag::G, 2, Isogeny::SimplyConnected);
        let w = c.sys().element_of(&[0, 1, 0]);
        let a = ExtendedElement {
            t: TorusElement::from_zeta(c.group(), &[3, 7]),
            w,
        };
        let inv = c.inv(&a);
        assert_eq!(c.mul(&a, &inv).unwrap(), c.identity());
        assert_eq!(c.mul(&inv, &a).unwrap(), c.identity());
    }

    #[test]
    fn tits_section_satisfies_braids() {
        for (t, n) in [
            (TypeTag::A, 3),
            (TypeTag::B, 3),
            (TypeTag::G, 2),
            (TypeTag::F, 4),
        ] {
            let c = ctx(t, n, Isogeny::SimplyConnected);
            assert!(Section::new(c.clone(), vec![c.torus_identity(); n]).is_ok());
        }
    }

    #[test]
    fn f4_first_node_square() {
        let c = ctx(TypeTag::F, 4, Isogeny::SimplyConnected);
        let sq = c.pow(&c.simple(c.torus_identity(), 0), 2).unwrap();
        assert_eq!(sq.t.zeta_exponents(), vec![12, 0, 0, 0]);
    }

    #[test]
    fn discrepancy_of_reflection() {
        let c = ctx(TypeTag::C, 3, Isogeny::SimplyConnected);
        let s = c.sys().simple_reflection(2).clone();
        assert!(c.tits_power_discrepancy(&s, 1).is_identity());
        assert_eq!(c.tits_power_discrepancy(&s, 2), c.coroot_minus1(2));
    }
}
