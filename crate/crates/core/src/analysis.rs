//! Order profiles and torus-conjugacy of sections.
//!
//! The lift of `s_i` under a section has order `2·o` where `o` is the order
//! of `t_i · s_i(t_i) · α_i^∨(-1)`. Profiles are compared coordinatewise:
//! smaller orders are "more homomorphic".
//!
//! Conjugating by `t ∈ T` sends `t_i` to `t_i · t · s_i(t)^{-1}`. The
//! characters of the solution group that kill every such coboundary
//! classify the orbits.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::lattice::IsogenyLattice;
use crate::linalg::{
    echelon_coordinates, kernel_basis, row_hermite, same_lattice, smith_normal_form, IntMatrix,
    LinalgError,
};
use crate::solver::{symmetric_mod, unit_pivot_reduce, SectionFamily, SolverError};
use crate::torus::{coroot_eval_minus1, MonomialGroup, TorusElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("no unique maximal profile among {0:?}")]
    NoUniqueMaximum(Vec<OrderProfile>),
    #[error("modulus {modulus} is not a multiple of the family's minimal modulus {min}")]
    BadModulus { modulus: i64, min: i64 },
    #[error("enumeration would visit more than {0} specializations")]
    TooLarge(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Cap on the size of the image enumerated by [`enumerate_profiles`].
pub const PROFILE_ENUMERATION_CAP: usize = 1 << 21;

/// Order of a lifted simple reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(k) => write!(f, "{k}"),
            Label::Infinite => f.write_str("inf"),
        }
    }
}

/// One label per simple root, in Bourbaki order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderProfile(pub Vec<Label>);

impl OrderProfile {
    pub fn finite(labels: &[i64]) -> Self {
        OrderProfile(labels.iter().map(|&k| Label::Finite(k)).collect())
    }

    pub fn uniform(rank: usize, k: i64) -> Self {
        OrderProfile(vec![Label::Finite(k); rank])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|l| matches!(l, Label::Finite(_)))
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }
}

impl fmt::Display for OrderProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Label::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Outcome of comparing two profiles; `Greater` means more homomorphic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileOrdering {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// `p` is more homomorphic than `q` when every label of `p` is at most the
/// corresponding label of `q`, and they differ.
pub fn profile_order(p: &OrderProfile, q: &OrderProfile) -> ProfileOrdering {
    assert_eq!(p.0.len(), q.0.len(), "profiles of different rank");
    let mut le = true;
    let mut ge = true;
    for (a, b) in p.0.iter().zip(&q.0) {
        match a.cmp(b) {
            Ordering::Less => ge = false,
            Ordering::Greater => le = false,
            Ordering::Equal => {}
        }
    }
    match (le, ge) {
        (true, true) => ProfileOrdering::Equal,
        (true, false) => ProfileOrdering::Greater,
        (false, true) => ProfileOrdering::Less,
        (false, false) => ProfileOrdering::Incomparable,
    }
}

/// The unique profile above every other one.
pub fn optimal_profile(profiles: &[OrderProfile]) -> Result<OrderProfile, AnalysisError> {
    let top: Vec<&OrderProfile> = profiles
        .iter()
        .filter(|p| {
            profiles.iter().all(|q| {
                matches!(
                    profile_order(p, q),
                    ProfileOrdering::Greater | ProfileOrdering::Equal
                )
            })
        })
        .collect();
    match top.as_slice() {
        [p] => Ok((*p).clone()),
        _ => {
            // report the maximal elements
            let maximal = profiles
                .iter()
                .filter(|p| {
                    profiles
                        .iter()
                        .all(|q| profile_order(q, p) != ProfileOrdering::Greater)
                })
                .cloned()
                .collect();
            Err(AnalysisError::NoUniqueMaximum(maximal))
        }
    }
}

/// Covering relations `(lower, upper)` of the profile order, by index.
pub fn hasse_edges(profiles: &[OrderProfile]) -> Vec<(usize, usize)> {
    let n = profiles.len();
    let above =
        |a: usize, b: usize| profile_order(&profiles[b], &profiles[a]) == ProfileOrdering::Greater;
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if above(a, b) && !(0..n).any(|c| above(a, c) && above(c, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

/// `t · s_i(t) · α_i^∨(-1)`, the square of `t σ_i`.
pub fn node_square(lat: &IsogenyLattice, t: &TorusElement, i: usize) -> TorusElement {
    let s = lat.sys().simple_reflection(i);
    let c = coroot_eval_minus1(lat, t.group(), lat.sys().simple_root_index(i));
    &(t * &t.weyl_act(lat, s)) * &c
}

/// Order of `t σ_i`.
pub fn lift_order(lat: &IsogenyLattice, t: &TorusElement, i: usize) -> Label {
    match node_square(lat, t, i).order() {
        Some(o) => Label::Finite(2 * o),
        None => Label::Infinite,
    }
}

/// Profile of a section given by its values `t_i`.
pub fn section_profile(lat: &IsogenyLattice, values: &[TorusElement]) -> OrderProfile {
    OrderProfile(
        values
            .iter()
            .enumerate()
            .map(|(i, t)| lift_order(lat, t, i))
            .collect(),
    )
}

/// One profile with an example section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileEntry {
    pub profile: OrderProfile,
    /// `ζ`-exponents of the family parameters realising the profile; `None`
    /// for profiles that need transcendental parameter values.
    pub witness: Option<Vec<i64>>,
    /// Number of distinct values of the finite-order conjugacy invariants
    /// among the sections with this profile (finite profiles only).
    pub torsion_classes: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ProfileSet {
    pub modulus: i64,
    pub entries: Vec<ProfileEntry>,
    pub hasse: Vec<(usize, usize)>,
    pub optimal: Result<OrderProfile, AnalysisError>,
    /// Number of infinite-order conjugacy invariants (each gives a continuum of classes).
    pub continuous_invariants: usize,
}

impl ProfileSet {
    pub fn profiles(&self) -> Vec<OrderProfile> {
        self.entries.iter().map(|e| e.profile.clone()).collect()
    }

    pub fn finite_profiles(&self) -> BTreeSet<OrderProfile> {
        self.entries
            .iter()
            .filter(|e| e.profile.is_finite())
            .map(|e| e.profile.clone())
            .collect()
    }

    pub fn witness(&self, p: &OrderProfile) -> Option<&[i64]> {
        self.entries
            .iter()
            .find(|e| &e.profile == p)
            .and_then(|e| e.witness.as_deref())
    }
}

/// Breadth-first enumeration of `{ Σ y_k g_k mod m }` with a witness `y` per point.
fn subgroup_with_witnesses(
    gens: &[(usize, i64, Vec<i64>)],
    dim: usize,
    nparams: usize,
    m: i64,
    cap: usize,
) -> Result<HashMap<Vec<i64>, Vec<i64>>, AnalysisError> {
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let zero = vec![0i64; dim];
    seen.insert(zero.clone(), vec![0; nparams]);
    let mut queue = VecDeque::from([zero]);
    while let Some(h) = queue.pop_front() {
        let y = seen[&h].clone();
        for (k, step, g) in gens {
            let next: Vec<i64> = h
                .iter()
                .zip(g)
                .map(|(a, b)| (a + b).rem_euclid(m))
                .collect();
            if seen.contains_key(&next) {
                continue;
            }
            let mut y2 = y.clone();
            y2[*k] = (y2[*k] + step).rem_euclid(m);
            seen.insert(next.clone(), y2);
            if seen.len() > cap {
                return Err(AnalysisError::TooLarge(cap));
            }
            queue.push_back(next);
        }
    }
    Ok(seen)
}

fn labels_from_squares(flat: &[i64], rank: usize, m: i64) -> OrderProfile {
    OrderProfile(
        (0..rank)
            .map(|i| {
                let o = flat[i * rank..(i + 1) * rank]
                    .iter()
                    .fold(1i64, |acc, &z| acc.lcm(&(m / z.gcd(&m))));
                Label::Finite(2 * o)
            })
            .collect(),
    )
}

/// All order profiles of a family: every specialization of the parameters
/// to `M`-th roots of unity, plus the profiles obtained when some free
/// parameters are transcendental.
pub fn enumerate_profiles(fam: &SectionFamily, m: i64) -> Result<ProfileSet, AnalysisError> {
    if m % fam.min_modulus() != 0 {
        return Err(AnalysisError::BadModulus {
            modulus: m,
            min: fam.min_modulus(),
        });
    }
    let fam = fam.with_modulus(m)?;
    let lat = fam.lattice();
    let n = lat.rank();
    let params = fam.params();
    let squares: Vec<TorusElement> = fam
        .value_map()
        .iter()
        .enumerate()
        .map(|(i, t)| node_square(lat, t, i))
        .collect();

    let invariants = conjugacy_invariants(&fam)?;
    let torsion_invs: Vec<&Invariant> = invariants
        .generators
        .iter()
        .filter(|g| g.order.is_some())
        .collect();

    // Affine map y ↦ base + Σ y_k g_k on (square coordinates, torsion invariant values).
    let dim = n * n + torsion_invs.len();
    let mut base: Vec<i64> = squares.iter().flat_map(|s| s.zeta_exponents()).collect();
    base.extend(std::iter::repeat_n(0, torsion_invs.len()));
    let steps = fam
        .param_values(m)
        .iter()
        .map(|vals| vals.get(1).copied().unwrap_or(m))
        .collect::<Vec<i64>>();
    let gens: Vec<(usize, i64, Vec<i64>)> = (0..params.len())
        .map(|k| {
            let step = steps[k];
            let mut g: Vec<i64> = squares
                .iter()
                .flat_map(|s| {
                    s.coords()
                        .iter()
                        .map(move |c| (c.exps[k] * step).rem_euclid(m))
                })
                .collect();
            g.extend(
                torsion_invs
                    .iter()
                    .map(|inv| (inv.family_value[k] * step).rem_euclid(m)),
            );
            (k, step, g)
        })
        .filter(|(_, _, g)| g.iter().any(|&x| x != 0))
        .collect();
    let image = subgroup_with_witnesses(&gens, dim, params.len(), m, PROFILE_ENUMERATION_CAP)?;

    let mut finite: BTreeMap<OrderProfile, (Vec<i64>, BTreeSet<Vec<i64>>)> = BTreeMap::new();
    for (h, y) in &image {
        let point: Vec<i64> = base
            .iter()
            .zip(h)
            .map(|(a, b)| (a + b).rem_euclid(m))
            .collect();
        let profile = labels_from_squares(&point[..n * n], n, m);
        let classes = point[n * n..].to_vec();
        let entry = finite
            .entry(profile)
            .or_insert_with(|| (y.clone(), BTreeSet::new()));
        if y < &entry.0 {
            entry.0 = y.clone();
        }
        entry.1.insert(classes);
    }

    // Nodes whose square involves a given set of free parameters become infinite.
    let free: Vec<usize> = (0..params.len())
        .filter(|&k| params[k].order.is_none())
        .collect();
    let depends: Vec<Vec<bool>> = squares
        .iter()
        .map(|s| {
            (0..params.len())
                .map(|k| s.coords().iter().any(|c| c.exps[k] != 0))
                .collect()
        })
        .collect();
    let mut masks: BTreeSet<Vec<bool>> = BTreeSet::new();
    for bits in 1u64..(1u64 << free.len()) {
        let mask: Vec<bool> = (0..n)
            .map(|i| {
                free.iter()
                    .enumerate()
                    .any(|(b, &k)| bits >> b & 1 == 1 && depends[i][k])
            })
            .collect();
        if mask.iter().any(|&x| x) {
            masks.insert(mask);
        }
    }
    let mut generic: BTreeSet<OrderProfile> = BTreeSet::new();
    for p in finite.keys() {
        for mask in &masks {
            generic.insert(OrderProfile(
                p.0.iter()
                    .zip(mask)
                    .map(|(l, &inf)| if inf { Label::Infinite } else { *l })
                    .collect(),
            ));
        }
    }

    let mut entries: Vec<ProfileEntry> = finite
        .into_iter()
        .map(|(profile, (y, classes))| ProfileEntry {
            profile,
            witness: Some(y),
            torsion_classes: Some(classes.len()),
        })
        .collect();
    for p in generic {
        if entries.iter().all(|e| e.profile != p) {
            entries.push(ProfileEntry {
                profile: p,
                witness: None,
                torsion_classes: None,
            });
        }
    }
    entries.sort_by(|a, b| a.profile.cmp(&b.profile));
    let profiles: Vec<OrderProfile> = entries.iter().map(|e| e.profile.clone()).collect();
    let hasse = hasse_edges(&profiles);
    let optimal = optimal_profile(&profiles);
    let continuous_invariants = invariants
        .generators
        .iter()
        .filter(|g| g.order.is_none())
        .count();
    Ok(ProfileSet {
        modulus: m,
        entries,
        hasse,
        optimal,
        continuous_invariants,
    })
}

/// `t_i ↦ t_i · t · s_i(t)^{-1}` for every `i`.
pub fn conjugate_values(
    lat: &IsogenyLattice,
    values: &[TorusElement],
    t: &TorusElement,
) -> Vec<TorusElement> {
    values
        .iter()
        .enumerate()
        .map(|(i, ti)| {
            let s = lat.sys().simple_reflection(i);
            &(ti * t) * &t.weyl_act(lat, s).inv()
        })
        .collect()
}

/// Exponent matrix of `v ↦ (v · s_i(v)^{-1})_i`: row `i·n + j`, column `k`.
pub fn coboundary_matrix(lat: &IsogenyLattice) -> IntMatrix {
    let n = lat.rank();
    let mut b = IntMatrix::zeros(n * n, n);
    for i in 0..n {
        let c = lat.action_matrix(i);
        for j in 0..n {
            for k in 0..n {
                b[(i * n + j, k)] = (j == k) as i64 - c[(j, k)];
            }
        }
    }
    b
}

/// A generator of the invariants of torus conjugation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariant {
    /// Exponents over the unknowns `a_{i,j}` (row-major).
    pub monomial: Vec<i64>,
    /// The same character in the family parameters.
    pub family_value: Vec<i64>,
    /// `None` for an invariant of infinite order.
    pub order: Option<i64>,
}

#[derive(Debug, Clone)]
pub struct ConjugacyInvariants {
    pub generators: Vec<Invariant>,
    /// Characters of `(F^×)^{n²}` killing every coboundary, in Hermite form.
    pub kernel: IntMatrix,
    /// Characters vanishing on the solution group (the constraint rows).
    pub relations: IntMatrix,
}

fn restrict(fam: &SectionFamily, values: &IntMatrix, chi: &[i64]) -> Vec<i64> {
    (0..values.ncols())
        .map(|p| {
            let e: i64 = (0..values.nrows()).map(|r| chi[r] * values[(r, p)]).sum();
            match fam.params()[p].order {
                Some(d) => symmetric_mod(e, d),
                None => e,
            }
        })
        .collect()
}

/// A short monomial in the unknowns restricting to `target`, if one exists
/// with at most two factors and exponents in `[-2, 2]`.
fn short_monomial(fam: &SectionFamily, values: &IntMatrix, target: &[i64]) -> Option<Vec<i64>> {
    let nvars = values.nrows();
    let exps: [i64; 4] = [1, -1, 2, -2];
    let check = |chi: &[i64]| restrict(fam, values, chi) == target;
    for j in 0..nvars {
        for &e in &exps {
            let mut chi = vec![0; nvars];
            chi[j] = e;
            if check(&chi) {
                return Some(chi);
            }
        }
    }
    let mut pairs: Vec<(i64, i64)> = exps
        .iter()
        .flat_map(|&a| exps.iter().map(move |&b| (a, b)))
        .collect();
    pairs.sort_by_key(|&(a, b)| (a.abs() + b.abs(), a.abs(), -a, -b));
    for (a, b) in pairs {
        for j in 0..nvars {
            for k in j + 1..nvars {
                let mut chi = vec![0; nvars];
                chi[j] = a;
                chi[k] = b;
                if check(&chi) {
                    return Some(chi);
                }
            }
        }
    }
    None
}

/// Generators of the characters of the family that are constant on orbits
/// of torus conjugation.
pub fn conjugacy_invariants(fam: &SectionFamily) -> Result<ConjugacyInvariants, AnalysisError> {
    let lat = fam.lattice();
    let b = coboundary_matrix(lat);
    let relations = row_hermite(fam.constraint_matrix())?;
    // {χ : χ B = 0}
    let kernel = kernel_basis(&b.transpose())?;
    let values = fam.value_matrix();

    // relations in kernel coordinates, then the quotient kernel / relations
    let rel_coords: Vec<Vec<i64>> = (0..relations.nrows())
        .map(|r| echelon_coordinates(&kernel, relations.row(r)))
        .collect::<Result<_, _>>()?;
    let m = kernel.nrows();
    let rel = IntMatrix::from_rows(&rel_coords, m);
    let smith = smith_normal_form(&rel)?;
    let divisors = smith.invariants();
    // V^{-1} rows give the quotient basis
    let vinv = inverse_unimodular(&smith.v)?;
    let mut raw: Vec<(Option<i64>, Vec<i64>)> = Vec::new();
    for l in 0..m {
        let order = match divisors.get(l) {
            Some(1) => continue,
            Some(&d) => Some(d),
            None => None,
        };
        let chi = (0..kernel.ncols())
            .map(|c| (0..m).map(|r| vinv[(l, r)] * kernel[(r, c)]).sum())
            .collect();
        raw.push((order, chi));
    }

    // Re-base each block of equal order for readability.
    let mut orders: Vec<Option<i64>> = raw.iter().map(|(o, _)| *o).collect();
    orders.sort();
    orders.dedup();
    let free_cols: Vec<bool> = fam.params().iter().map(|p| p.order.is_none()).collect();
    let mut generators = Vec::new();
    for order in orders {
        let block: Vec<Vec<i64>> = raw
            .iter()
            .filter(|(o, _)| *o == order)
            .map(|(_, c)| c.clone())
            .collect();
        let fam_vals: Vec<Vec<i64>> = block
            .iter()
            .map(|chi| restrict(fam, &values, chi))
            .collect();
        let (tidy, _) = match order {
            Some(d) => unit_pivot_reduce(fam_vals.clone(), Some(d), &|_| true),
            None => unit_pivot_reduce(fam_vals.clone(), None, &|k| free_cols[k]),
        };
        for (idx, fv) in tidy.into_iter().enumerate() {
            let fv = restrict_reduce(fam, fv);
            let monomial = short_monomial(fam, &values, &fv)
                .unwrap_or_else(|| block[idx.min(block.len() - 1)].clone());
            let family_value = restrict(fam, &values, &monomial);
            generators.push(Invariant {
                monomial,
                family_value,
                order,
            });
        }
    }
    Ok(ConjugacyInvariants {
        generators,
        kernel,
        relations,
    })
}

fn restrict_reduce(fam: &SectionFamily, fv: Vec<i64>) -> Vec<i64> {
    fv.into_iter()
        .zip(fam.params())
        .map(|(e, p)| match p.order {
            Some(d) => symmetric_mod(e, d),
            None => e,
        })
        .collect()
}

fn inverse_unimodular(v: &IntMatrix) -> Result<IntMatrix, AnalysisError> {
    let n = v.nrows();
    let q: Vec<Vec<crate::linalg::Q>> = (0..n)
        .map(|r| {
            v.row(r)
                .iter()
                .map(|&x| crate::linalg::Q::from_integer(x))
                .collect()
        })
        .collect();
    let inv = crate::linalg::rational_inverse(&q)?;
    let rows: Vec<Vec<i64>> = inv
        .iter()
        .map(|r| r.iter().map(|x| x.to_integer()).collect())
        .collect();
    Ok(IntMatrix::from_rows(&rows, n))
}

impl ConjugacyInvariants {
    /// Whether the lattice spanned by `monomials` together with the
    /// constraint relations is exactly the invariant lattice.
    pub fn matches(&self, monomials: &[Vec<i64>]) -> Result<bool, AnalysisError> {
        let cols = self.kernel.ncols();
        let mut rows = monomials.to_vec();
        rows.extend(self.relations.rows_vec());
        let candidate = IntMatrix::from_rows(&rows, cols);
        Ok(same_lattice(&candidate, &self.kernel)?)
    }

    /// Values of the generators on a section with constant coordinates,
    /// as `ζ`-exponents.
    pub fn evaluate(&self, values: &[TorusElement]) -> Vec<i64> {
        let m = values[0].modulus();
        let flat: Vec<i64> = values.iter().flat_map(|t| t.zeta_exponents()).collect();
        self.generators
            .iter()
            .map(|g| {
                g.monomial
                    .iter()
                    .zip(&flat)
                    .map(|(a, b)| a * b)
                    .sum::<i64>()
                    .rem_euclid(m)
            })
            .collect()
    }

    /// Two sections (constant coordinates) are torus-conjugate iff every
    /// invariant takes the same value.
    pub fn same_class(&self, s1: &[TorusElement], s2: &[TorusElement]) -> bool {
        self.evaluate(s1) == self.evaluate(s2)
    }
}

/// Searches for `t` with coordinates in `μ_{m·scale}` conjugating `s1` to
/// `s2`, after embedding both into the larger group of roots of unity.
pub fn find_conjugator(
    lat: &IsogenyLattice,
    s1: &[TorusElement],
    s2: &[TorusElement],
    scale: i64,
) -> Option<TorusElement> {
    let m = s1[0].modulus();
    let big = MonomialGroup::constants(m * scale).ok()?;
    let lift = |s: &[TorusElement]| -> Vec<TorusElement> {
        s.iter()
            .map(|t| {
                TorusElement::from_zeta(
                    &big,
                    &t.zeta_exponents()
                        .iter()
                        .map(|z| z * scale)
                        .collect::<Vec<_>>(),
                )
            })
            .collect()
    };
    let (a, b) = (lift(s1), lift(s2));
    let n = lat.rank();
    let choices = vec![(0..m * scale).collect::<Vec<i64>>(); n];
    let mut found = None;
    crate::solver::for_each_choice(&choices, |v| {
        if found.is_none() {
            let t = TorusElement::from_zeta(&big, v);
            if conjugate_values(lat, &a, &t) == b {
                found = Some(t);
            }
        }
    });
    found
}

/// Least common multiple of the elementary divisors of the coboundary map:
/// conjugators for sections over `μ_M` can be found in `μ_{M·scale}`.
pub fn conjugator_scale(lat: &IsogenyLattice) -> Result<i64, AnalysisError> {
    let s = smith_normal_form(&coboundary_matrix(lat))?;
    Ok(s.invariants().iter().fold(1i64, |acc, &d| acc.lcm(&d)))
}

/// A family together with its parameter group, for building concrete sections.
pub fn specialize_family(
    fam: &SectionFamily,
    y: &[i64],
) -> Result<Vec<TorusElement>, AnalysisError> {
    let target = MonomialGroup::constants(fam.modulus()).map_err(SolverError::from)?;
    Ok(fam.specialize(y, &target))
}
