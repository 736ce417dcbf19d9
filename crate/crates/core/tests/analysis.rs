use std::collections::BTreeSet;

use proptest::prelude::*;
use weylsect::analysis::*;
use weylsect::solver::*;
use weylsect::*;

fn family(t: TypeTag, n: usize, iso: Isogeny) -> SectionFamily {
    let lat = IsogenyLattice::build(t, n, iso).unwrap();
    solve_lattice(&lat, 24).unwrap()
}

/// Exponent vector over the `a_{i,j}` with 1-based `(i, j, e)` entries.
fn mono(n: usize, entries: &[(usize, usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; n * n];
    for &(i, j, e) in entries {
        v[(i - 1) * n + (j - 1)] += e;
    }
    v
}

fn sections_at(fam: &SectionFamily, m: i64) -> Vec<Vec<TorusElement>> {
    let g = MonomialGroup::constants(m).unwrap();
    let n = fam.lattice().rank();
    fam.specialization_set(m)
        .unwrap()
        .into_iter()
        .map(|flat| {
            (0..n)
                .map(|i| TorusElement::from_zeta(&g, &flat[i * n..(i + 1) * n]))
                .collect()
        })
        .collect()
}

#[test]
fn invariants_decide_conjugacy() {
    let cases = [
        (TypeTag::A, 2, Isogeny::SimplyConnected),
        (TypeTag::A, 2, Isogeny::Adjoint),
        (TypeTag::B, 2, Isogeny::Adjoint),
        (TypeTag::C, 3, Isogeny::Adjoint),
        (TypeTag::A, 3, Isogeny::Middle(2)),
        (TypeTag::G, 2, Isogeny::SimplyConnected),
    ];
    for (t, n, iso) in cases {
        let fam = family(t, n, iso);
        let lat = fam.lattice().clone();
        let inv = conjugacy_invariants(&fam).unwrap();
        let scale = conjugator_scale(&lat).unwrap();
        let secs = sections_at(&fam, 4);
        // one representative per invariant value plus a few extra members
        let mut picked: Vec<&Vec<TorusElement>> = Vec::new();
        let mut seen = BTreeSet::new();
        for s in &secs {
            let key = inv.evaluate(s);
            if seen.insert(key) || picked.len() < 12 {
                picked.push(s);
            }
        }
        for a in &picked {
            for b in &picked {
                let same = inv.same_class(a, b);
                let found = find_conjugator(&lat, a, b, scale);
                assert_eq!(same, found.is_some(), "{t}{n} {iso}: {a:?} vs {b:?}");
                if let Some(c) = found {
                    let big = c.group().clone();
                    let lift = |s: &[TorusElement]| -> Vec<TorusElement> {
                        s.iter()
                            .map(|x| {
                                TorusElement::from_zeta(
                                    &big,
                                    &x.zeta_exponents()
                                        .iter()
                                        .map(|z| z * (big.modulus() / 4))
                                        .collect::<Vec<_>>(),
                                )
                            })
                            .collect()
                    };
                    assert_eq!(conjugate_values(&lat, &lift(a), &c), lift(b));
                }
            }
        }
    }
}

#[test]
fn classifying_invariants() {
    let g2 = conjugacy_invariants(&family(TypeTag::G, 2, Isogeny::SimplyConnected)).unwrap();
    assert!(g2
        .matches(&[mono(2, &[(1, 2, 1)]), mono(2, &[(2, 1, 1)])])
        .unwrap());
    assert!(!g2.matches(&[mono(2, &[(1, 2, 1)])]).unwrap());

    let f4 = conjugacy_invariants(&family(TypeTag::F, 4, Isogeny::SimplyConnected)).unwrap();
    assert!(f4.matches(&[mono(4, &[(3, 4, 1)])]).unwrap());

    let e8 = conjugacy_invariants(&family(TypeTag::E, 8, Isogeny::SimplyConnected)).unwrap();
    assert!(e8.generators.is_empty());
    assert!(e8.matches(&[]).unwrap());

    for n in [2, 4, 5, 6, 7] {
        let a = conjugacy_invariants(&family(TypeTag::A, n, Isogeny::Adjoint)).unwrap();
        assert_eq!(a.generators.len(), 1);
        assert_eq!(a.generators[0].order, None);
        assert!(
            a.matches(&[mono(n, &[(1, 1, 1), (1, 2, 2)])]).unwrap(),
            "A{n}"
        );
    }
    for n in 5..=7 {
        let c = conjugacy_invariants(&family(TypeTag::C, n, Isogeny::Adjoint)).unwrap();
        assert_eq!(c.generators.len(), 1, "C{n}");
        assert_eq!(c.generators[0].order, Some(2));
        assert!(
            c.matches(&[mono(n, &[(1, 1, 1), (1, 2, 2)])]).unwrap(),
            "C{n}"
        );
    }
}

#[test]
fn low_rank_adjoint_cases_have_an_extra_invariant() {
    let c4 = conjugacy_invariants(&family(TypeTag::C, 4, Isogeny::Adjoint)).unwrap();
    assert_eq!(c4.generators.len(), 2);
    // A3 = D3: a_{1,3} of order 2 joins a_{1,1} a_{1,2}^2
    let a3 = conjugacy_invariants(&family(TypeTag::A, 3, Isogeny::Adjoint)).unwrap();
    assert!(a3
        .matches(&[mono(3, &[(1, 1, 1), (1, 2, 2)]), mono(3, &[(1, 3, 1)])])
        .unwrap());
    assert!(!a3.matches(&[mono(3, &[(1, 1, 1), (1, 2, 2)])]).unwrap());
}

#[test]
fn optimal_profile_exists_through_rank_five() {
    for n in 1..=5 {
        for t in [
            TypeTag::A,
            TypeTag::B,
            TypeTag::C,
            TypeTag::D,
            TypeTag::F,
            TypeTag::G,
        ] {
            if t.validate_rank(n).is_err() {
                continue;
            }
            for iso in Isogeny::all_for(t, n) {
                let fam = family(t, n, iso);
                let set = enumerate_profiles(&fam, 24).unwrap();
                let opt = set
                    .optimal
                    .as_ref()
                    .unwrap_or_else(|e| panic!("{t}{n} {iso}: {e}"));
                assert!(set.profiles().iter().all(|p| matches!(
                    profile_order(opt, p),
                    ProfileOrdering::Equal | ProfileOrdering::Greater
                )));
            }
        }
    }
}

#[test]
fn some_summary_rows() {
    let rows: [(TypeTag, usize, Isogeny, Vec<Vec<i64>>); 4] = [
        (
            TypeTag::B,
            6,
            Isogeny::SimplyConnected,
            vec![vec![4, 4, 4, 4, 4, 2], vec![4; 6]],
        ),
        (
            TypeTag::C,
            5,
            Isogeny::Adjoint,
            vec![vec![2, 2, 2, 2, 4], vec![4; 5]],
        ),
        (
            TypeTag::D,
            6,
            Isogeny::Coweight(1),
            vec![vec![2; 6], vec![4; 6]],
        ),
        (
            TypeTag::E,
            6,
            Isogeny::SimplyConnected,
            vec![vec![4; 6], vec![12; 6]],
        ),
    ];
    for (t, n, iso, want) in rows {
        let set = enumerate_profiles(&family(t, n, iso), 24).unwrap();
        let want: BTreeSet<OrderProfile> = want.iter().map(|l| OrderProfile::finite(l)).collect();
        assert_eq!(set.finite_profiles(), want, "{t}{n} {iso}");
    }
}

#[test]
fn witnesses_realise_their_profiles() {
    let fam = family(TypeTag::F, 4, Isogeny::SimplyConnected);
    let set = enumerate_profiles(&fam, 24).unwrap();
    for e in &set.entries {
        if let Some(y) = &e.witness {
            let vals = specialize_family(&fam, y).unwrap();
            assert_eq!(section_profile(fam.lattice(), &vals), e.profile);
        }
    }
}

#[test]
fn bad_modulus_rejected() {
    let fam = family(TypeTag::E, 6, Isogeny::SimplyConnected);
    assert!(matches!(
        enumerate_profiles(&fam, 2),
        Err(AnalysisError::BadModulus { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn profile_is_conjugation_invariant(
        pick in prop::sample::select(vec![
            (TypeTag::B, 3, Isogeny::Adjoint),
            (TypeTag::C, 3, Isogeny::SimplyConnected),
            (TypeTag::G, 2, Isogeny::SimplyConnected),
            (TypeTag::D, 4, Isogeny::Coweight(1)),
        ]),
        y in prop::collection::vec(0i64..24, 16),
        z in prop::collection::vec(0i64..24, 4),
    ) {
        let (t, n, iso) = pick;
        let fam = family(t, n, iso);
        let choices = fam.param_values(24);
        let y: Vec<i64> = choices.iter().zip(&y).map(|(c, k)| c[*k as usize % c.len()]).collect();
        let vals = specialize_family(&fam, &y).unwrap();
        let g = vals[0].group().clone();
        let c = TorusElement::from_zeta(&g, &z[..n]);
        let conj = conjugate_values(fam.lattice(), &vals, &c);
        prop_assert!(verify_values(fam.lattice(), &[], &conj));
        prop_assert_eq!(section_profile(fam.lattice(), &conj), section_profile(fam.lattice(), &vals));
        let inv = conjugacy_invariants(&fam).unwrap();
        prop_assert!(inv.same_class(&vals, &conj));
    }
}
