//! Symbolic torus elements.
//!
//! A coordinate is a monomial `ζ^e0 · ∏ p_k^{e_k}` where `ζ` is a formal
//! primitive `M`-th root of unity (`M` even, so `-1 = ζ^{M/2}`) and the
//! `p_k` are formal parameters. Multiplication adds exponents, and the Weyl
//! group acts linearly on the exponent vectors through the lattice matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

use crate::lattice::IsogenyLattice;
use crate::linalg::IntMatrix;
use crate::rootsys::WeylElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("torus elements belong to different monomial groups")]
    GroupMismatch,
    #[error("torus elements have different ranks ({0} vs {1})")]
    RankMismatch(usize, usize),
    #[error("no value assigned to parameter `{0}`")]
    MissingParam(String),
    #[error("modulus must be a positive even integer, got {0}")]
    BadModulus(i64),
}

/// The ambient group of monomials: a modulus and named parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialGroup {
    modulus: i64,
    params: Vec<String>,
}

impl MonomialGroup {
    pub fn new(modulus: i64, params: Vec<String>) -> Result<Arc<Self>, TorusError> {
        if modulus <= 0 || modulus % 2 != 0 {
            return Err(TorusError::BadModulus(modulus));
        }
        Ok(Arc::new(MonomialGroup { modulus, params }))
    }

    /// Group with no parameters: only roots of unity.
    pub fn constants(modulus: i64) -> Result<Arc<Self>, TorusError> {
        Self::new(modulus, Vec::new())
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn num_params(&self) -> usize {
        self.params.len()
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }
}

/// One coordinate: `ζ^zeta · ∏ p_k^{exps[k]}`, with `zeta` reduced mod `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub zeta: i64,
    pub exps: Vec<i64>,
}

impl Monomial {
    pub fn one(num_params: usize) -> Self {
        Monomial {
            zeta: 0,
            exps: vec![0; num_params],
        }
    }

    pub fn is_one(&self) -> bool {
        self.zeta == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Multiplicative order: `None` when a parameter occurs.
    pub fn order(&self, modulus: i64) -> Option<i64> {
        if !self.is_constant() {
            return None;
        }
        Some(modulus / self.zeta.gcd(&modulus))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorusElement {
    group: Arc<MonomialGroup>,
    coords: Vec<Monomial>,
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusElement({self})")
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, m) in self.coords.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.format_monomial(m))?;
        }
        write!(f, ")")
    }
}

impl TorusElement {
    pub fn identity(group: &Arc<MonomialGroup>, rank: usize) -> Self {
        TorusElement {
            group: Arc::clone(group),
            coords: vec![Monomial::one(group.num_params()); rank],
        }
    }

    /// Builds an element from `(zeta, exps)` coordinates; `zeta` is reduced mod `M`.
    pub fn from_coords(group: &Arc<MonomialGroup>, coords: Vec<Monomial>) -> Self {
        let m = group.modulus();
        let coords = coords
            .into_iter()
            .map(|c| {
                assert_eq!(c.exps.len(), group.num_params(), "exponent vector length");
                Monomial {
                    zeta: c.zeta.rem_euclid(m),
                    exps: c.exps,
                }
            })
            .collect();
        TorusElement {
            group: Arc::clone(group),
            coords,
        }
    }

    /// Element whose coordinates are pure roots of unity `ζ^{z_j}`.
    pub fn from_zeta(group: &Arc<MonomialGroup>, zetas: &[i64]) -> Self {
        let coords = zetas
            .iter()
            .map(|&z| Monomial {
                zeta: z,
                exps: vec![0; group.num_params()],
            })
            .collect();
        Self::from_coords(group, coords)
    }

    pub fn group(&self) -> &Arc<MonomialGroup> {
        &self.group
    }

    pub fn modulus(&self) -> i64 {
        self.group.modulus()
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Monomial] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(Monomial::is_one)
    }

    fn compatible(&self, other: &TorusElement) -> Result<(), TorusError> {
        if !Arc::ptr_eq(&self.group, &other.group) && self.group != other.group {
            return Err(TorusError::GroupMismatch);
        }
        if self.rank() != other.rank() {
            return Err(TorusError::RankMismatch(self.rank(), other.rank()));
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &TorusElement) -> Result<TorusElement, TorusError> {
        self.compatible(other)?;
        let m = self.modulus();
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| Monomial {
                zeta: (a.zeta + b.zeta).rem_euclid(m),
                exps: a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect(),
            })
            .collect();
        Ok(TorusElement {
            group: Arc::clone(&self.group),
            coords,
        })
    }

    pub fn inv(&self) -> TorusElement {
        self.pow(-1)
    }

    pub fn pow(&self, k: i64) -> TorusElement {
        let m = self.modulus();
        let coords = self
            .coords
            .iter()
            .map(|c| Monomial {
                zeta: (c.zeta * k).rem_euclid(m),
                exps: c.exps.iter().map(|e| e * k).collect(),
            })
            .collect();
        TorusElement {
            group: Arc::clone(&self.group),
            coords,
        }
    }

    /// `x'_j = ∏_i x_i^{C[j][i]}`: the action of a lattice automorphism.
    pub fn apply_matrix(&self, c: &IntMatrix) -> TorusElement {
        let m = self.modulus();
        let p = self.group.num_params();
        let coords = (0..c.nrows())
            .map(|j| {
                let mut out = Monomial::one(p);
                for (i, x) in self.coords.iter().enumerate() {
                    let k = c[(j, i)];
                    if k == 0 {
                        continue;
                    }
                    out.zeta += k * x.zeta;
                    for (o, e) in out.exps.iter_mut().zip(&x.exps) {
                        *o += k * e;
                    }
                }
                out.zeta = out.zeta.rem_euclid(m);
                out
            })
            .collect();
        TorusElement {
            group: Arc::clone(&self.group),
            coords,
        }
    }

    /// Action of a Weyl group element.
    pub fn weyl_act(&self, lat: &IsogenyLattice, w: &WeylElement) -> TorusElement {
        self.apply_matrix(&lat.weyl_matrix(w))
    }

    /// Multiplicative order: `None` (infinite) if any parameter occurs.
    pub fn order(&self) -> Option<i64> {
        let m = self.modulus();
        self.coords
            .iter()
            .try_fold(1i64, |acc, c| c.order(m).map(|o| acc.lcm(&o)))
    }

    /// Substitutes `p_k ↦ ζ^{values[k]}` and returns an element of `target`,
    /// which must have the same modulus.
    pub fn specialize_into(&self, values: &[i64], target: &Arc<MonomialGroup>) -> TorusElement {
        assert_eq!(
            values.len(),
            self.group.num_params(),
            "one value per parameter"
        );
        assert_eq!(
            target.modulus(),
            self.modulus(),
            "specialization keeps the modulus"
        );
        let zetas: Vec<i64> = self
            .coords
            .iter()
            .map(|c| c.zeta + c.exps.iter().zip(values).map(|(e, v)| e * v).sum::<i64>())
            .collect();
        TorusElement::from_zeta(target, &zetas)
    }

    /// Substitutes named parameters by powers of `ζ`. Parameters that do not
    /// occur may be left unassigned.
    pub fn specialize(
        &self,
        assignment: &BTreeMap<String, i64>,
    ) -> Result<TorusElement, TorusError> {
        let mut values = Vec::with_capacity(self.group.num_params());
        for (k, name) in self.group.params().iter().enumerate() {
            match assignment.get(name) {
                Some(&v) => values.push(v),
                None if self.coords.iter().all(|c| c.exps[k] == 0) => values.push(0),
                None => return Err(TorusError::MissingParam(name.clone())),
            }
        }
        let target = MonomialGroup::constants(self.modulus())?;
        Ok(self.specialize_into(&values, &target))
    }

    /// `ζ`-exponents of a constant element.
    pub fn zeta_exponents(&self) -> Vec<i64> {
        self.coords.iter().map(|c| c.zeta).collect()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let half = self.modulus() / 2;
        let mut parts = Vec::new();
        match m.zeta {
            0 => {}
            z if z == half => parts.push("-1".to_string()),
            z => parts.push(format!("ζ^{z}")),
        }
        for (name, &e) in self.group.params().iter().zip(&m.exps) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("·")
        }
    }
}

impl Mul for &TorusElement {
    type Output = TorusElement;

    /// Panics if the operands come from different groups; see [`TorusElement::checked_mul`].
    fn mul(self, rhs: &TorusElement) -> TorusElement {
        self.checked_mul(rhs)
            .expect("torus elements from the same group")
    }
}

/// `α^∨(-1)` for root `r`: coordinate `j` is `ζ^{(M/2)·d_j}` where `d` is the coroot vector.
pub fn coroot_eval_minus1(
    lat: &IsogenyLattice,
    group: &Arc<MonomialGroup>,
    r: usize,
) -> TorusElement {
    let half = group.modulus() / 2;
    let zetas: Vec<i64> = lat.coroot_vector(r).iter().map(|d| half * d).collect();
    TorusElement::from_zeta(group, &zetas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Isogeny;
    use crate::rootsys::TypeTag;

    fn params(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn group_laws() {
        let g = MonomialGroup::new(24, params(&["a", "b"])).unwrap();
        let t = TorusElement::from_coords(
            &g,
            vec![
                Monomial {
                    zeta: 5,
                    exps: vec![1, -2],
                },
                Monomial {
                    zeta: 12,
                    exps: vec![0, 3],
                },
            ],
        );
        assert!((&t * &t.inv()).is_identity());
        let u = TorusElement::from_zeta(&g, &[12, 12]);
        assert_eq!(&t * &u, &u * &t);
        assert!((&u * &u).is_identity());
    }

    #[test]
    fn odd_modulus_rejected() {
        assert!(MonomialGroup::new(3, vec![]).is_err());
        assert!(MonomialGroup::new(0, vec![]).is_err());
    }

    #[test]
    fn mismatched_groups() {
        let g = MonomialGroup::new(24, params(&["a"])).unwrap();
        let h = MonomialGroup::new(12, params(&["a"])).unwrap();
        let t = TorusElement::identity(&g, 2);
        let u = TorusElement::identity(&h, 2);
        assert_eq!(t.checked_mul(&u), Err(TorusError::GroupMismatch));
    }

    #[test]
    fn adjoint_a_s1_action() {
        let lat = IsogenyLattice::build(TypeTag::A, 4, Isogeny::Adjoint).unwrap();
        let g = MonomialGroup::new(24, params(&["a11", "a12"])).unwrap();
        let mut coords = vec![Monomial::one(2); 4];
        coords[0].exps = vec![1, 0];
        coords[1].exps = vec![0, 1];
        let t = TorusElement::from_coords(&g, coords);
        let s1 = lat.sys().simple_reflection(0).clone();
        let img = t.weyl_act(&lat, &s1);
        assert_eq!(img.coords()[0].exps, vec![-1, 0]);
        assert_eq!(img.coords()[1].exps, vec![1, 1]);
        assert!(img.coords()[2].is_one() && img.coords()[3].is_one());
        assert_eq!(img.weyl_act(&lat, &s1), t);
    }

    #[test]
    fn coroot_minus_one() {
        let g = MonomialGroup::constants(24).unwrap();
        let sc = IsogenyLattice::build(TypeTag::A, 3, Isogeny::SimplyConnected).unwrap();
        assert_eq!(
            coroot_eval_minus1(&sc, &g, 1).zeta_exponents(),
            vec![0, 12, 0]
        );
        let ad = IsogenyLattice::build(TypeTag::A, 3, Isogeny::Adjoint).unwrap();
        // α_1^∨ = 2ω_1 - ω_2: only the second slot is -1
        assert_eq!(
            coroot_eval_minus1(&ad, &g, 0).zeta_exponents(),
            vec![0, 12, 0]
        );
        let x = coroot_eval_minus1(&ad, &g, 5);
        assert!((&x * &x).is_identity());
    }

    #[test]
    fn orders_and_specialization() {
        let g = MonomialGroup::new(24, params(&["b"])).unwrap();
        let t = TorusElement::from_coords(
            &g,
            vec![
                Monomial {
                    zeta: 0,
                    exps: vec![1],
                },
                Monomial::one(1),
            ],
        );
        assert_eq!(t.order(), None);
        let mut asg = BTreeMap::new();
        assert_eq!(
            t.specialize(&asg),
            Err(TorusError::MissingParam("b".into()))
        );
        asg.insert("b".to_string(), 12);
        let s = t.specialize(&asg).unwrap();
        assert_eq!(s.zeta_exponents(), vec![12, 0]);
        assert_eq!(s.order(), Some(2));
        assert_eq!(TorusElement::from_zeta(&g, &[8, 6]).order(), Some(12));
    }

    #[test]
    fn display_uses_minus_one() {
        let g = MonomialGroup::new(4, params(&["a"])).unwrap();
        let t = TorusElement::from_coords(
            &g,
            vec![
                Monomial {
                    zeta: 2,
                    exps: vec![0],
                },
                Monomial {
                    zeta: 1,
                    exps: vec![2],
                },
                Monomial::one(1),
            ],
        );
        assert_eq!(t.to_string(), "(-1, ζ^1·a^2, 1)");
    }
}
