use std::collections::BTreeMap;

use proptest::prelude::*;
use weylsect::solver::*;
use weylsect::*;

fn small_cases() -> Vec<(TypeTag, usize, Isogeny)> {
    let mut out = Vec::new();
    for (t, n) in [
        (TypeTag::A, 1),
        (TypeTag::A, 2),
        (TypeTag::A, 3),
        (TypeTag::B, 2),
        (TypeTag::B, 3),
        (TypeTag::C, 3),
        (TypeTag::D, 3),
        (TypeTag::G, 2),
    ] {
        for iso in Isogeny::all_for(t, n) {
            out.push((t, n, iso));
        }
    }
    out
}

#[test]
fn family_equals_brute_force_on_small_cases() {
    for (t, n, iso) in small_cases() {
        let lat = IsogenyLattice::build(t, n, iso).unwrap();
        let fam = solve_lattice(&lat, 24).unwrap();
        for m in [2, 4] {
            let brute = brute_force_sections(&lat, m).unwrap();
            let sym = fam.specialization_set(m).unwrap();
            assert_eq!(brute, sym, "{t}{n} {iso} at M={m}");
        }
    }
}

#[test]
fn brute_force_refuses_large_searches() {
    let lat = IsogenyLattice::build(TypeTag::A, 4, Isogeny::SimplyConnected).unwrap();
    assert!(matches!(
        brute_force_sections(&lat, 2),
        Err(SolverError::TooLarge(_))
    ));
    let lat = IsogenyLattice::build(TypeTag::A, 3, Isogeny::SimplyConnected).unwrap();
    assert!(matches!(
        brute_force_sections(&lat, 24),
        Err(SolverError::TooLarge(_))
    ));
}

#[test]
fn families_satisfy_braids_through_rank_seven() {
    for n in 1..=7 {
        for t in [
            TypeTag::A,
            TypeTag::B,
            TypeTag::C,
            TypeTag::D,
            TypeTag::E,
            TypeTag::F,
            TypeTag::G,
        ] {
            if t.validate_rank(n).is_err() {
                continue;
            }
            for iso in Isogeny::all_for(t, n) {
                let lat = IsogenyLattice::build(t, n, iso).unwrap();
                let fam = solve_lattice(&lat, 24).unwrap();
                assert!(verify_family(&fam), "{t}{n} {iso}");
                assert_eq!(fam.min_modulus() % 2, 0);
            }
        }
    }
}

#[test]
fn g2_family_shape() {
    let lat = IsogenyLattice::build(TypeTag::G, 2, Isogeny::SimplyConnected).unwrap();
    let fam = solve_lattice(&lat, 24).unwrap();
    let torsion: Vec<(&str, Option<i64>)> = fam
        .torsion_params()
        .iter()
        .map(|p| (p.name.as_str(), p.order))
        .collect();
    assert_eq!(torsion, vec![("a_{1,2}", Some(2)), ("a_{2,1}", Some(2))]);
    assert_eq!(fam.free_params().len(), 2);
}

#[test]
fn f4_torsion_links_t3_and_t4() {
    let lat = IsogenyLattice::build(TypeTag::F, 4, Isogeny::SimplyConnected).unwrap();
    let fam = solve_lattice(&lat, 24).unwrap();
    let torsion = fam.torsion_params();
    assert_eq!(torsion.len(), 1);
    assert_eq!(torsion[0].order, Some(2));
    let k = fam.params().iter().position(|p| p.order.is_some()).unwrap();
    let occurs: Vec<(usize, usize)> = fam
        .value_map()
        .iter()
        .enumerate()
        .flat_map(|(i, t)| {
            t.coords()
                .iter()
                .enumerate()
                .filter(move |(_, c)| c.exps[k] != 0)
                .map(move |(j, _)| (i, j))
        })
        .collect();
    assert_eq!(occurs, vec![(2, 3), (3, 2)]);
}

#[test]
fn e8_has_no_torsion() {
    let lat = IsogenyLattice::build(TypeTag::E, 8, Isogeny::SimplyConnected).unwrap();
    let fam = solve_lattice(&lat, 24).unwrap();
    assert!(fam.torsion_params().is_empty());
    assert_eq!(fam.free_params().len(), 8);
    assert_eq!(fam.min_modulus(), 2);
}

#[test]
fn constraint_rows_are_braid_defects() {
    // Every generated row vanishes on the specializations of the family.
    let lat = IsogenyLattice::build(TypeTag::B, 3, Isogeny::Adjoint).unwrap();
    let cs = generate_constraints(&lat, 24).unwrap();
    let fam = solve_constraints(&cs).unwrap();
    for flat in fam.specialization_set(4).unwrap() {
        for row in cs.rows() {
            let v: i64 = row
                .coeffs
                .iter()
                .zip(&flat)
                .map(|(a, b)| a * b * 6)
                .sum::<i64>()
                + row.constant;
            assert_eq!(v.rem_euclid(24), 0);
        }
    }
}

#[test]
fn symmetric_mod_range() {
    assert_eq!(symmetric_mod(3, 4), -1);
    assert_eq!(symmetric_mod(2, 4), 2);
    assert_eq!(symmetric_mod(-5, 6), 1);
    assert_eq!(symmetric_mod(7, 1), 0);
}

fn monomial_strategy(np: usize) -> impl Strategy<Value = Monomial> {
    (0i64..24, prop::collection::vec(-3i64..4, np)).prop_map(|(zeta, exps)| Monomial { zeta, exps })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn specialization_is_a_homomorphism(
        a in prop::collection::vec(monomial_strategy(2), 3),
        b in prop::collection::vec(monomial_strategy(2), 3),
        vals in prop::collection::vec(0i64..24, 2),
        word in prop::collection::vec(0usize..3, 0..8),
    ) {
        let g = MonomialGroup::new(24, vec!["x".into(), "y".into()]).unwrap();
        let (a, b) = (TorusElement::from_coords(&g, a), TorusElement::from_coords(&g, b));
        let assign: BTreeMap<String, i64> = [("x".to_string(), vals[0]), ("y".to_string(), vals[1])].into();
        let sp = |t: &TorusElement| t.specialize(&assign).unwrap();
        prop_assert_eq!(sp(&(&a * &b)), &sp(&a) * &sp(&b));
        prop_assert_eq!(sp(&a.inv()), sp(&a).inv());
        let lat = IsogenyLattice::build(TypeTag::B, 3, Isogeny::Adjoint).unwrap();
        let w = lat.sys().element_of(&word);
        prop_assert_eq!(sp(&a.weyl_act(&lat, &w)), sp(&a).weyl_act(&lat, &w));
    }
}
