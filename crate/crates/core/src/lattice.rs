//! Cocharacter lattices of the isogeny classes, with an explicit basis.
//!
//! A lattice is given by basis vectors `λ_1..λ_n` written in simple-coroot
//! coordinates. From them we derive the coroot coordinates (column `i`
//! expresses `α_i^∨` in the basis) and the integer matrices of the simple
//! reflections (column `j` expresses `s_i(λ_j)`).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::linalg::{rational_inverse, IntMatrix, LinalgError, Q};
use crate::rootsys::{RootSystem, TypeTag, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("isogeny `{isogeny}` is not available for {system}: {reason}")]
    Unsupported {
        system: String,
        isogeny: String,
        reason: String,
    },
    #[error("cannot parse isogeny `{0}` (expected sc, adjoint, middle:<a> or coweight:<k>)")]
    Parse(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which lattice between the coroot and coweight lattices.
///
/// `Middle(a)` is the type A lattice spanned by the coroots and `ω_a`.
/// `Coweight(k)` is the type D lattice spanned by the coroots and `ω_k`,
/// for `k` one of `1`, `n-1`, `n`. Both use 1-based node numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
    Middle(usize),
    Coweight(usize),
}

impl fmt::Display for Isogeny {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Isogeny::SimplyConnected => f.write_str("sc"),
            Isogeny::Adjoint => f.write_str("adjoint"),
            Isogeny::Middle(a) => write!(f, "middle:{a}"),
            Isogeny::Coweight(k) => write!(f, "coweight:{k}"),
        }
    }
}

impl FromStr for Isogeny {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Isogeny::parse(s, None)
    }
}

impl Isogeny {
    /// Parses an isogeny tag. With a rank, `coweight:n-1` and `coweight:n`
    /// are accepted as well.
    pub fn parse(s: &str, rank: Option<usize>) -> Result<Self, LatticeError> {
        let t = s.trim().to_ascii_lowercase();
        let err = || LatticeError::Parse(s.to_string());
        match t.as_str() {
            "sc" | "simply-connected" | "simply_connected" => return Ok(Isogeny::SimplyConnected),
            "ad" | "adjoint" => return Ok(Isogeny::Adjoint),
            _ => {}
        }
        let (head, arg) = t.split_once(':').ok_or_else(err)?;
        let num = match (arg, rank) {
            ("n", Some(n)) => n,
            ("n-1", Some(n)) if n >= 1 => n - 1,
            _ => arg.parse::<usize>().map_err(|_| err())?,
        };
        match head {
            "middle" => Ok(Isogeny::Middle(num)),
            "coweight" => Ok(Isogeny::Coweight(num)),
            _ => Err(err()),
        }
    }

    /// Every isogeny class of the given type, listing each lattice once
    /// (for `E8`, `F4`, `G2` only the simply connected one).
    pub fn all_for(tag: TypeTag, rank: usize) -> Vec<Isogeny> {
        let mut out = vec![Isogeny::SimplyConnected];
        match tag {
            TypeTag::A => {
                out.extend(
                    (2..=rank)
                        .filter(|a| (rank + 1).is_multiple_of(*a))
                        .map(Isogeny::Middle),
                );
                out.push(Isogeny::Adjoint);
            }
            TypeTag::D => {
                out.push(Isogeny::Coweight(1));
                if rank.is_multiple_of(2) {
                    out.extend([Isogeny::Coweight(rank - 1), Isogeny::Coweight(rank)]);
                }
                out.push(Isogeny::Adjoint);
            }
            TypeTag::B | TypeTag::C => out.push(Isogeny::Adjoint),
            TypeTag::E if rank != 8 => out.push(Isogeny::Adjoint),
            _ => {}
        }
        out
    }
}

/// A cocharacter lattice `X_*(T)` with chosen basis.
pub struct IsogenyLattice {
    sys: Arc<RootSystem>,
    isogeny: Isogeny,
    basis_names: Vec<String>,
    /// Basis vectors in simple-coroot coordinates.
    basis: Vec<Vec<Q>>,
    coroot_coords: IntMatrix,
    actions: Vec<IntMatrix>,
    cache: RwLock<HashMap<WeylElement, Arc<IntMatrix>>>,
}

impl fmt::Debug for IsogenyLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IsogenyLattice")
            .field("system", &self.sys.name())
            .field("isogeny", &self.isogeny)
            .field("basis_names", &self.basis_names)
            .finish()
    }
}

/// Fundamental coweights as rows, in simple-coroot coordinates.
pub fn fundamental_coweights(sys: &RootSystem) -> Vec<Vec<Q>> {
    let cartan: Vec<Vec<Q>> = sys
        .cartan()
        .iter()
        .map(|row| row.iter().map(|&x| Q::from_integer(x)).collect())
        .collect();
    rational_inverse(&cartan).expect("Cartan matrix is invertible")
}

fn unit_q(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::from_integer(0); n];
    v[i] = Q::from_integer(1);
    v
}

impl IsogenyLattice {
    pub fn new(sys: Arc<RootSystem>, isogeny: Isogeny) -> Result<Self, LatticeError> {
        let n = sys.rank();
        let unsupported = |reason: &str| LatticeError::Unsupported {
            system: sys.name(),
            isogeny: isogeny.to_string(),
            reason: reason.to_string(),
        };
        let omega = fundamental_coweights(&sys);
        let coroot_names = |j: usize| format!("a{}^v", j + 1);
        let (basis, basis_names): (Vec<Vec<Q>>, Vec<String>) = match isogeny {
            Isogeny::SimplyConnected => (
                (0..n).map(|j| unit_q(n, j)).collect(),
                (0..n).map(coroot_names).collect(),
            ),
            Isogeny::Adjoint => (
                omega.clone(),
                (0..n).map(|j| format!("w{}", j + 1)).collect(),
            ),
            Isogeny::Middle(a) => {
                if sys.type_tag() != TypeTag::A {
                    return Err(unsupported("middle lattices are defined for type A only"));
                }
                if a <= 1 || a > n || !(n + 1).is_multiple_of(a) {
                    return Err(unsupported(&format!(
                        "need a dividing n+1 = {} with 1 < a < n+1",
                        n + 1
                    )));
                }
                let mut b: Vec<Vec<Q>> = (0..n - 1).map(|j| unit_q(n, j)).collect();
                b.push(omega[a - 1].clone());
                let mut names: Vec<String> = (0..n - 1).map(coroot_names).collect();
                names.push(format!("w{a}"));
                (b, names)
            }
            Isogeny::Coweight(k) => {
                if sys.type_tag() != TypeTag::D {
                    return Err(unsupported("coweight lattices are defined for type D only"));
                }
                if k == 1 {
                    let mut b: Vec<Vec<Q>> = (0..n - 1).map(|j| unit_q(n, j)).collect();
                    b.push(omega[0].clone());
                    let mut names: Vec<String> = (0..n - 1).map(coroot_names).collect();
                    names.push("w1".to_string());
                    (b, names)
                } else if k == n - 1 || k == n {
                    if !n.is_multiple_of(2) {
                        return Err(unsupported("coweights n-1 and n need n even (for odd n they give the adjoint lattice)"));
                    }
                    let mut b = vec![omega[k - 1].clone()];
                    b.extend((1..n).map(|j| unit_q(n, j)));
                    let mut names = vec![format!("w{k}")];
                    names.extend((1..n).map(coroot_names));
                    (b, names)
                } else {
                    return Err(unsupported("coweight must be 1, n-1 or n"));
                }
            }
        };

        // columns of `basis_matrix` are the λ_j
        let basis_matrix: Vec<Vec<Q>> = (0..n)
            .map(|r| (0..n).map(|c| basis[c][r]).collect())
            .collect();
        let inv = rational_inverse(&basis_matrix)?;
        let to_int = |m: &[Vec<Q>]| -> Result<IntMatrix, LatticeError> {
            let rows: Result<Vec<Vec<i64>>, LatticeError> = m
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|x| {
                            if x.is_integer() {
                                Ok(x.to_integer())
                            } else {
                                Err(unsupported("basis does not contain the coroot lattice"))
                            }
                        })
                        .collect()
                })
                .collect();
            Ok(IntMatrix::from_rows(&rows?, n))
        };
        let coroot_coords = to_int(&inv)?;

        let mut actions = Vec::with_capacity(n);
        for i in 0..n {
            // s_i in coroot coordinates: s_i(α_k^∨) = α_k^∨ - cartan[k][i] α_i^∨
            let mut s = vec![vec![Q::from_integer(0); n]; n];
            for (k, row) in s.iter_mut().enumerate() {
                row[k] = Q::from_integer(1);
            }
            for (k, c) in sys.cartan().iter().enumerate() {
                s[i][k] -= Q::from_integer(c[i]);
            }
            let prod = mat_mul_q(&mat_mul_q(&inv, &s), &basis_matrix);
            actions.push(to_int(&prod)?);
        }

        Ok(IsogenyLattice {
            sys,
            isogeny,
            basis_names,
            basis,
            coroot_coords,
            actions,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Convenience constructor building the root system as well.
    pub fn build(tag: TypeTag, rank: usize, isogeny: Isogeny) -> Result<Arc<Self>, crate::Error> {
        let sys = Arc::new(RootSystem::new(tag, rank)?);
        Ok(Arc::new(IsogenyLattice::new(sys, isogeny)?))
    }

    pub fn sys(&self) -> &Arc<RootSystem> {
        &self.sys
    }

    pub fn rank(&self) -> usize {
        self.sys.rank()
    }

    pub fn isogeny(&self) -> Isogeny {
        self.isogeny
    }

    /// Label such as `A7 middle:4`.
    pub fn name(&self) -> String {
        format!("{} {}", self.sys.name(), self.isogeny)
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// Basis vector `λ_j` in simple-coroot coordinates.
    pub fn basis_vector(&self, j: usize) -> &[Q] {
        &self.basis[j]
    }

    /// Column `i` holds `α_i^∨` in the basis.
    pub fn coroot_coords(&self) -> &IntMatrix {
        &self.coroot_coords
    }

    /// Index of the coroot lattice in this lattice.
    pub fn index(&self) -> i64 {
        self.coroot_coords.det().expect("small determinant").abs()
    }

    /// Column `j` holds `s_i(λ_j)` in the basis.
    pub fn action_matrix(&self, i: usize) -> &IntMatrix {
        &self.actions[i]
    }

    /// Matrix of an arbitrary Weyl group element, built along a reduced word.
    pub fn weyl_matrix(&self, w: &WeylElement) -> Arc<IntMatrix> {
        if let Some(m) = self.cache.read().expect("cache lock").get(w) {
            return Arc::clone(m);
        }
        let word = self.sys.reduced_word(w);
        let mut m = IntMatrix::identity(self.rank());
        for &i in word.letters() {
            m = m.mul(&self.actions[i]).expect("lattice action stays small");
        }
        let m = Arc::new(m);
        self.cache
            .write()
            .expect("cache lock")
            .insert(w.clone(), Arc::clone(&m));
        m
    }

    /// Coordinates of the coroot of root `r` in the basis.
    pub fn coroot_vector(&self, r: usize) -> Vec<i64> {
        self.coroot_coords
            .mul_vec(self.sys.coroot(r))
            .expect("coroot coordinates")
    }

    /// Applies the lattice action of `w` to a coordinate vector.
    pub fn act(&self, w: &WeylElement, v: &[i64]) -> Vec<i64> {
        self.weyl_matrix(w).mul_vec(v).expect("lattice action")
    }
}

fn mat_mul_q(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|r| {
            (0..m)
                .map(|c| (0..b.len()).map(|k| a[r][k] * b[k][c]).sum())
                .collect()
        })
        .collect()
}
