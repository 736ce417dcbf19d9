//! Braid constraints on the values `t_i` of a section and their solution.
//!
//! Writing `t_i = (a_{i,1}, .., a_{i,n})` with formal unknowns, the braid
//! relation for `s_i, s_k` with `m = m(i, k)` reads
//!
//! ```text
//! t_i · s_i(t_k) · s_i s_k(t_i) ⋯ = t_k · s_k(t_i) · s_k s_i(t_k) ⋯   (m factors)
//! ```
//!
//! since the Tits parts of both sides agree. Each coordinate of
//! `LHS · RHS^{-1}` is a monomial in the unknowns which must equal 1, so the
//! solutions form the subgroup of `(F^×)^{n²}` cut out by an integer matrix.
//! Its Smith form splits the solutions into free and torsion parameters.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::extweyl::{braid_holds, Normalizer};
use crate::lattice::IsogenyLattice;
use crate::linalg::{smith_normal_form, IntMatrix, LinalgError};
use crate::torus::{Monomial, MonomialGroup, TorusElement, TorusError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("constraint row for pair ({}, {}) has a nonzero constant; the system is not homogeneous", .0 + 1, .1 + 1)]
    Inhomogeneous(usize, usize),
    #[error("brute force refused: {0}; use the symbolic solver instead")]
    TooLarge(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Torus(#[from] TorusError),
}

/// Largest rank the brute-force oracle accepts.
pub const BRUTE_FORCE_MAX_RANK: usize = 3;
/// Largest modulus the brute-force oracle accepts.
pub const BRUTE_FORCE_MAX_MODULUS: i64 = 12;
/// Cap on the number of assignments the brute-force oracle will enumerate.
pub const BRUTE_FORCE_MAX_ASSIGNMENTS: u64 = 1 << 22;

/// Name of the unknown `a_{i,j}` (arguments zero-based, name one-based).
pub fn unknown_name(i: usize, j: usize) -> String {
    format!("a_{{{},{}}}", i + 1, j + 1)
}

/// One scalar equation `ζ^constant · ∏ a^coeffs = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintRow {
    pub pair: (usize, usize),
    pub coord: usize,
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    lat: Arc<IsogenyLattice>,
    modulus: i64,
    params: Vec<String>,
    rows: Vec<ConstraintRow>,
}

impl ConstraintSystem {
    pub fn lattice(&self) -> &Arc<IsogenyLattice> {
        &self.lat
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn rows(&self) -> &[ConstraintRow] {
        &self.rows
    }

    pub fn matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self.rows.iter().map(|r| r.coeffs.clone()).collect();
        IntMatrix::from_rows(&rows, self.params.len())
    }
}

/// `LHS · RHS^{-1}` of the braid relation for `(i, k)` with the given `t` values.
pub fn braid_defect(
    lat: &IsogenyLattice,
    values: &[TorusElement],
    i: usize,
    k: usize,
) -> TorusElement {
    let sys = lat.sys();
    let m = sys.coxeter_m(i, k) as usize;
    let side = |first: usize, second: usize| {
        let mut prefix: Vec<usize> = Vec::with_capacity(m);
        let mut acc = TorusElement::identity(values[0].group(), lat.rank());
        for p in 0..m {
            let x = if p % 2 == 0 { first } else { second };
            let w = sys.element_of(&prefix);
            acc = &acc * &values[x].weyl_act(lat, &w);
            prefix.push(x);
        }
        acc
    };
    &side(i, k) * &side(k, i).inv()
}

/// The generic section: `t_i` has coordinates `a_{i,1}, .., a_{i,n}`.
pub fn generic_values(group: &Arc<MonomialGroup>, rank: usize) -> Vec<TorusElement> {
    let n = rank;
    (0..n)
        .map(|i| {
            let coords = (0..n)
                .map(|j| {
                    let mut m = Monomial::one(n * n);
                    m.exps[i * n + j] = 1;
                    m
                })
                .collect();
            TorusElement::from_coords(group, coords)
        })
        .collect()
}

/// Builds the constraint rows for every pair of simple reflections.
pub fn generate_constraints(
    lat: &Arc<IsogenyLattice>,
    modulus: i64,
) -> Result<ConstraintSystem, SolverError> {
    let n = lat.rank();
    let params: Vec<String> = (0..n)
        .flat_map(|i| (0..n).map(move |j| unknown_name(i, j)))
        .collect();
    let group = MonomialGroup::new(modulus, params.clone())?;
    let values = generic_values(&group, n);
    let mut rows = Vec::new();
    for i in 0..n {
        for k in i + 1..n {
            let defect = braid_defect(lat, &values, i, k);
            for (j, c) in defect.coords().iter().enumerate() {
                rows.push(ConstraintRow {
                    pair: (i, k),
                    coord: j,
                    coeffs: c.exps.clone(),
                    constant: c.zeta,
                });
            }
        }
    }
    Ok(ConstraintSystem {
        lat: Arc::clone(lat),
        modulus,
        params,
        rows,
    })
}

/// A parameter of a solved family: free (`order == None`) or of finite order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyParam {
    pub name: String,
    pub order: Option<i64>,
}

/// All sections of one lattice, parametrized.
#[derive(Debug, Clone)]
pub struct SectionFamily {
    lat: Arc<IsogenyLattice>,
    group: Arc<MonomialGroup>,
    params: Vec<FamilyParam>,
    value_map: Vec<TorusElement>,
    basis_change: IntMatrix,
    constraints: IntMatrix,
    elementary_divisors: Vec<i64>,
    min_modulus: i64,
}

/// Representative of `e mod d` in `(-d/2, d/2]`.
pub fn symmetric_mod(e: i64, d: i64) -> i64 {
    let r = e.rem_euclid(d);
    if 2 * r > d {
        r - d
    } else {
        r
    }
}

/// Solves the constraint system via the Smith normal form.
pub fn solve_constraints(cs: &ConstraintSystem) -> Result<SectionFamily, SolverError> {
    if let Some(r) = cs.rows.iter().find(|r| r.constant != 0) {
        return Err(SolverError::Inhomogeneous(r.pair.0, r.pair.1));
    }
    let n = cs.lat.rank();
    let nvars = n * n;
    let a = cs.matrix();
    let smith = smith_normal_form(&a)?;
    let divisors = smith.invariants();
    let rank = divisors.len();

    // Solutions are a = V·y with y_k^{d_k} = 1 for k < rank and y_k free beyond.
    // The columns of V are re-based so that parameters coincide with
    // coordinates wherever possible: free columns by unimodular operations,
    // torsion columns by adding free columns and by invertible changes mod d.
    let v = &smith.v;
    let free_rows: Vec<Vec<i64>> = (rank..nvars).map(|c| v.col(c)).collect();
    let (free, free_pivots) = unit_pivot_reduce(free_rows, None, &|_| true);

    let mut torsion: Vec<(i64, Vec<i64>)> = Vec::new();
    let mut eliminated: Vec<Vec<i64>> = Vec::new();
    for (k, &d) in divisors.iter().enumerate() {
        let mut col = v.col(k);
        if d == 1 {
            eliminated.push(col);
            continue;
        }
        for (row, pivot) in free.iter().zip(&free_pivots) {
            if let Some(p) = *pivot {
                let q = col[p];
                for (x, f) in col.iter_mut().zip(row) {
                    *x -= q * f;
                }
            }
        }
        torsion.push((d, col));
    }

    let mut basis_cols = eliminated;
    basis_cols.extend(torsion.iter().map(|(_, c)| c.clone()));
    basis_cols.extend(free.iter().cloned());
    let basis_change = IntMatrix::from_cols(&basis_cols, nvars);

    let free_vanishes = |j: usize| free.iter().all(|r| r[j] == 0);
    let mut orders: Vec<i64> = torsion.iter().map(|(d, _)| *d).collect();
    orders.dedup();
    let mut columns: Vec<(Option<i64>, Vec<i64>)> = Vec::new();
    for d in orders {
        let block: Vec<Vec<i64>> = torsion
            .iter()
            .filter(|(e, _)| *e == d)
            .map(|(_, c)| c.clone())
            .collect();
        let (rows, _) = unit_pivot_reduce(block, Some(d), &free_vanishes);
        columns.extend(rows.into_iter().map(|r| (Some(d), r)));
    }
    columns.extend(free.into_iter().map(|c| (None, c)));

    // Name each parameter after a coordinate it equals outright.
    let mut named: Vec<(usize, FamilyParam, Vec<i64>)> = Vec::new();
    let mut unnamed = 0usize;
    for (idx, (order, col)) in columns.iter().enumerate() {
        let pos = (0..nvars).find(|&j| {
            col[j] == 1
                && columns
                    .iter()
                    .enumerate()
                    .all(|(o, (_, c))| o == idx || c[j] == 0)
        });
        let (key, name) = match pos {
            Some(j) => (j, cs.params[j].clone()),
            None => {
                unnamed += 1;
                (nvars + unnamed, format!("p{unnamed}"))
            }
        };
        named.push((
            key,
            FamilyParam {
                name,
                order: *order,
            },
            col.clone(),
        ));
    }
    named.sort_by_key(|(key, _, _)| *key);

    let params: Vec<FamilyParam> = named.iter().map(|(_, p, _)| p.clone()).collect();
    let group = MonomialGroup::new(cs.modulus, params.iter().map(|p| p.name.clone()).collect())?;
    let value_map = (0..n)
        .map(|i| {
            let coords = (0..n)
                .map(|j| Monomial {
                    zeta: 0,
                    exps: named.iter().map(|(_, _, c)| c[i * n + j]).collect(),
                })
                .collect();
            TorusElement::from_coords(&group, coords)
        })
        .collect();
    let min_modulus = divisors.iter().fold(2i64, |acc, &d| acc.lcm(&d));

    Ok(SectionFamily {
        lat: Arc::clone(&cs.lat),
        group,
        params,
        value_map,
        basis_change,
        constraints: a,
        elementary_divisors: divisors,
        min_modulus,
    })
}

/// Row-reduces `rows` so that as many as possible end with a pivot equal to
/// 1 at an allowed coordinate where every other row vanishes. With a modulus
/// the arithmetic is done modulo it (entries reduced symmetrically). Returns
/// the rows and their pivots; rows without a unit pivot come last.
pub(crate) fn unit_pivot_reduce(
    mut rest: Vec<Vec<i64>>,
    modulus: Option<i64>,
    allowed: &dyn Fn(usize) -> bool,
) -> (Vec<Vec<i64>>, Vec<Option<usize>>) {
    let ncols = rest.first().map_or(0, Vec::len);
    let reduce = |row: &mut Vec<i64>| {
        if let Some(d) = modulus {
            for x in row.iter_mut() {
                *x = symmetric_mod(*x, d);
            }
        }
    };
    for r in rest.iter_mut() {
        reduce(r);
    }
    let mut done: Vec<(Vec<i64>, Option<usize>)> = Vec::new();
    for j in 0..ncols {
        if rest.is_empty() {
            break;
        }
        if !allowed(j) {
            continue;
        }
        let g = rest.iter().fold(0i64, |g, r| g.gcd(&r[j]));
        let unit = match modulus {
            None => g == 1,
            Some(d) => g != 0 && g.gcd(&d) == 1,
        };
        if !unit {
            continue;
        }
        loop {
            let nonzero: Vec<usize> = (0..rest.len()).filter(|&r| rest[r][j] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero
                .iter()
                .min_by_key(|&&r| rest[r][j].abs())
                .expect("nonempty");
            let prow = rest[p].clone();
            for &o in nonzero.iter().filter(|&&o| o != p) {
                let q = rest[o][j].div_euclid(prow[j]);
                for (x, y) in rest[o].iter_mut().zip(&prow) {
                    *x -= q * y;
                }
            }
        }
        let p = (0..rest.len())
            .find(|&r| rest[r][j] != 0)
            .expect("unit gcd implies a nonzero entry");
        let mut piv = rest.remove(p);
        let scale = match modulus {
            None => piv[j].signum(),
            Some(d) => piv[j].extended_gcd(&d).x,
        };
        for x in piv.iter_mut() {
            *x *= scale;
        }
        reduce(&mut piv);
        for row in rest.iter_mut().chain(done.iter_mut().map(|(r, _)| r)) {
            let c = row[j];
            if c != 0 {
                for (x, y) in row.iter_mut().zip(&piv) {
                    *x -= c * y;
                }
                reduce(row);
            }
        }
        done.push((piv, Some(j)));
    }
    done.extend(rest.into_iter().map(|r| (r, None)));
    done.into_iter().unzip()
}

/// Generates and solves in one step.
pub fn solve_lattice(
    lat: &Arc<IsogenyLattice>,
    modulus: i64,
) -> Result<SectionFamily, SolverError> {
    solve_constraints(&generate_constraints(lat, modulus)?)
}

impl SectionFamily {
    pub fn lattice(&self) -> &Arc<IsogenyLattice> {
        &self.lat
    }

    pub fn group(&self) -> &Arc<MonomialGroup> {
        &self.group
    }

    pub fn modulus(&self) -> i64 {
        self.group.modulus()
    }

    pub fn params(&self) -> &[FamilyParam] {
        &self.params
    }

    pub fn free_params(&self) -> Vec<&FamilyParam> {
        self.params.iter().filter(|p| p.order.is_none()).collect()
    }

    pub fn torsion_params(&self) -> Vec<&FamilyParam> {
        self.params.iter().filter(|p| p.order.is_some()).collect()
    }

    /// `t_1, .., t_n` in the family parameters.
    pub fn value_map(&self) -> &[TorusElement] {
        &self.value_map
    }

    /// Unimodular change of variables from the Smith form, columns ordered as
    /// eliminated, torsion, free. The value map uses the same free columns;
    /// its torsion columns differ by an invertible change modulo each order.
    pub fn basis_change(&self) -> &IntMatrix {
        &self.basis_change
    }

    /// Exponent matrix of the braid constraints, one row per equation.
    pub fn constraint_matrix(&self) -> &IntMatrix {
        &self.constraints
    }

    /// Exponents of the family parameters in each unknown `a_{i,j}`:
    /// row `i·n + j`, one column per parameter.
    pub fn value_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .value_map
            .iter()
            .flat_map(|t| t.coords().iter().map(|c| c.exps.clone()))
            .collect();
        IntMatrix::from_rows(&rows, self.params.len())
    }

    /// Names of the unknowns `a_{i,j}`, row-major.
    pub fn unknown_names(&self) -> Vec<String> {
        let n = self.lat.rank();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| unknown_name(i, j)))
            .collect()
    }

    pub fn elementary_divisors(&self) -> &[i64] {
        &self.elementary_divisors
    }

    /// Smallest even modulus in which every torsion parameter is realised.
    pub fn min_modulus(&self) -> i64 {
        self.min_modulus
    }

    /// The same family with its torus parts over a group of modulus `m`.
    pub fn with_modulus(&self, m: i64) -> Result<SectionFamily, SolverError> {
        let group = MonomialGroup::new(m, self.group.params().to_vec())?;
        let value_map = self
            .value_map
            .iter()
            .map(|t| TorusElement::from_coords(&group, t.coords().to_vec()))
            .collect();
        Ok(SectionFamily {
            group,
            value_map,
            ..self.clone()
        })
    }

    /// Admissible `ζ`-exponents of each parameter in modulus `m`.
    pub fn param_values(&self, m: i64) -> Vec<Vec<i64>> {
        self.params
            .iter()
            .map(|p| match p.order {
                None => (0..m).collect(),
                Some(d) => {
                    let step = m / d.gcd(&m);
                    (0..m).step_by(step as usize).collect()
                }
            })
            .collect()
    }

    /// `t_i` with parameters replaced by `ζ^{values}`; `target` must share the
    /// family's modulus (see [`SectionFamily::with_modulus`]).
    pub fn specialize(&self, values: &[i64], target: &Arc<MonomialGroup>) -> Vec<TorusElement> {
        self.value_map
            .iter()
            .map(|t| t.specialize_into(values, target))
            .collect()
    }

    /// All specializations in modulus `m`, as flattened `ζ`-exponent vectors.
    pub fn specialization_set(&self, m: i64) -> Result<BTreeSet<Vec<i64>>, SolverError> {
        let fam = self.with_modulus(m)?;
        let target = MonomialGroup::constants(m)?;
        let choices = self.param_values(m);
        let mut out = BTreeSet::new();
        for_each_choice(&choices, |values| {
            let ts = fam.specialize(values, &target);
            out.insert(ts.iter().flat_map(|t| t.zeta_exponents()).collect());
        });
        Ok(out)
    }
}

/// Calls `f` on every element of the product of `choices`.
pub fn for_each_choice(choices: &[Vec<i64>], mut f: impl FnMut(&[i64])) {
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; choices.len()];
    let mut cur: Vec<i64> = choices.iter().map(|c| c[0]).collect();
    loop {
        f(&cur);
        let mut k = 0;
        loop {
            if k == choices.len() {
                return;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                cur[k] = choices[k][idx[k]];
                break;
            }
            idx[k] = 0;
            cur[k] = choices[k][0];
            k += 1;
        }
    }
}

/// Substitutes the value map back into the braid relations: every defect
/// coordinate must vanish, with torsion parameters read modulo their order.
pub fn verify_family(fam: &SectionFamily) -> bool {
    verify_values(&fam.lat, &fam.params, &fam.value_map)
}

/// [`verify_family`] for explicit values.
pub fn verify_values(
    lat: &IsogenyLattice,
    params: &[FamilyParam],
    values: &[TorusElement],
) -> bool {
    let n = lat.rank();
    if values.len() != n {
        return false;
    }
    for i in 0..n {
        for k in i + 1..n {
            let defect = braid_defect(lat, values, i, k);
            for c in defect.coords() {
                if c.zeta != 0 {
                    return false;
                }
                for (e, p) in c.exps.iter().zip(params) {
                    let ok = match p.order {
                        None => *e == 0,
                        Some(d) => e % d == 0,
                    };
                    if !ok {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Every assignment of `ζ`-powers to the `n²` coordinates whose simple
/// lifts satisfy the braid relations, multiplied out in `T ⋊ W`.
pub fn brute_force_sections(
    lat: &Arc<IsogenyLattice>,
    m: i64,
) -> Result<BTreeSet<Vec<i64>>, SolverError> {
    let n = lat.rank();
    if n > BRUTE_FORCE_MAX_RANK {
        return Err(SolverError::TooLarge(format!(
            "rank {n} exceeds {BRUTE_FORCE_MAX_RANK}"
        )));
    }
    if m > BRUTE_FORCE_MAX_MODULUS {
        return Err(SolverError::TooLarge(format!(
            "modulus {m} exceeds {BRUTE_FORCE_MAX_MODULUS}"
        )));
    }
    let total = (m as u64).checked_pow((n * n) as u32).unwrap_or(u64::MAX);
    if total > BRUTE_FORCE_MAX_ASSIGNMENTS {
        return Err(SolverError::TooLarge(format!(
            "{total} assignments exceed {BRUTE_FORCE_MAX_ASSIGNMENTS}"
        )));
    }
    let group = MonomialGroup::constants(m)?;
    let ctx = Normalizer::new(Arc::clone(lat), Arc::clone(&group));
    let nvars = n * n;
    let pairs: Vec<(usize, usize, u32)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |k| (i, k)))
        .map(|(i, k)| (i, k, lat.sys().coxeter_m(i, k)))
        .collect();

    let found: Vec<Vec<i64>> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut c = code;
            let flat: Vec<i64> = (0..nvars)
                .map(|_| {
                    let d = (c % m as u64) as i64;
                    c /= m as u64;
                    d
                })
                .collect();
            let lifts: Vec<_> = (0..n)
                .map(|i| {
                    ctx.simple(
                        TorusElement::from_zeta(&group, &flat[i * n..(i + 1) * n]),
                        i,
                    )
                })
                .collect();
            let ok = pairs.iter().all(|&(i, k, mm)| {
                braid_holds(&ctx, &lifts[i], &lifts[k], mm).expect("same group")
            });
            ok.then_some(flat)
        })
        .collect();
    Ok(found.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Isogeny;
    use crate::rootsys::TypeTag;

    fn family(t: TypeTag, n: usize, iso: Isogeny) -> SectionFamily {
        let lat = IsogenyLattice::build(t, n, iso).unwrap();
        solve_lattice(&lat, 24).unwrap()
    }

    fn names(ps: &[&FamilyParam]) -> Vec<String> {
        ps.iter().map(|p| p.name.clone()).collect()
    }

    #[test]
    fn g2_family() {
        let f = family(TypeTag::G, 2, Isogeny::SimplyConnected);
        assert_eq!(names(&f.free_params()), vec!["a_{1,1}", "a_{2,2}"]);
        assert_eq!(names(&f.torsion_params()), vec!["a_{1,2}", "a_{2,1}"]);
        assert!(f.torsion_params().iter().all(|p| p.order == Some(2)));
        assert_eq!(f.min_modulus(), 2);
        assert!(verify_family(&f));
    }

    #[test]
    fn a1_has_no_constraints() {
        let lat = IsogenyLattice::build(TypeTag::A, 1, Isogeny::SimplyConnected).unwrap();
        let cs = generate_constraints(&lat, 24).unwrap();
        assert!(cs.rows().is_empty());
        let f = solve_constraints(&cs).unwrap();
        assert_eq!(f.free_params().len(), 1);
        assert!(f.torsion_params().is_empty());
    }

    #[test]
    fn e8_all_free() {
        let f = family(TypeTag::E, 8, Isogeny::SimplyConnected);
        assert_eq!(f.free_params().len(), 8);
        assert!(f.torsion_params().is_empty());
        assert!(verify_family(&f));
    }

    #[test]
    fn mutation_breaks_verification() {
        let f = family(TypeTag::G, 2, Isogeny::SimplyConnected);
        let mut values = f.value_map().to_vec();
        // replace a_{1,2} = b by b·a
        let mut coords = values[0].coords().to_vec();
        coords[1].exps[0] += 1;
        values[0] = TorusElement::from_coords(f.group(), coords);
        assert!(!verify_values(f.lattice(), f.params(), &values));
    }

    #[test]
    fn tits_values_verify() {
        let lat = IsogenyLattice::build(TypeTag::B, 4, Isogeny::Adjoint).unwrap();
        let g = MonomialGroup::constants(24).unwrap();
        let values = vec![TorusElement::identity(&g, 4); 4];
        assert!(verify_values(&lat, &[], &values));
    }

    #[test]
    fn choice_product() {
        let mut seen = Vec::new();
        for_each_choice(&[vec![0, 1], vec![5, 6, 7]], |v| seen.push(v.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 5]);
        assert_eq!(seen[5], vec![1, 7]);
    }

    #[test]
    fn brute_force_small() {
        let g2 = IsogenyLattice::build(TypeTag::G, 2, Isogeny::SimplyConnected).unwrap();
        assert_eq!(brute_force_sections(&g2, 2).unwrap().len(), 16);
        let a1 = IsogenyLattice::build(TypeTag::A, 1, Isogeny::SimplyConnected).unwrap();
        assert_eq!(brute_force_sections(&a1, 2).unwrap().len(), 2);
        let e6 = IsogenyLattice::build(TypeTag::E, 6, Isogeny::SimplyConnected).unwrap();
        assert!(matches!(
            brute_force_sections(&e6, 2),
            Err(SolverError::TooLarge(_))
        ));
    }
}
