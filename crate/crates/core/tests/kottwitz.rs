use weylsect::analysis::{enumerate_profiles, specialize_family};
use weylsect::kottwitz::*;
use weylsect::linalg::Q;
use weylsect::solver::solve_lattice;
use weylsect::*;

fn optimal_section(t: TypeTag, n: usize, iso: Isogeny) -> Section {
    let lat = IsogenyLattice::build(t, n, iso).unwrap();
    let fam = solve_lattice(&lat, 24).unwrap();
    let set = enumerate_profiles(&fam, 24).unwrap();
    let opt = set.optimal.clone().unwrap();
    let y = set.witness(&opt).unwrap().to_vec();
    let ctx = Normalizer::new(lat, MonomialGroup::constants(24).unwrap());
    Section::new(ctx, specialize_family(&fam, &y).unwrap()).unwrap()
}

fn tits(t: TypeTag, n: usize, iso: Isogeny) -> Section {
    let lat = IsogenyLattice::build(t, n, iso).unwrap();
    Section::tits(Normalizer::new(lat, MonomialGroup::constants(24).unwrap()))
}

#[test]
fn cn_element_is_longest_times_parabolic_longest() {
    for n in 2..=7 {
        let sys = RootSystem::new(TypeTag::C, n).unwrap();
        let word = cn_adjoint_element(n).unwrap();
        assert!(word.is_reduced());
        assert_eq!(word.len(), n * (n + 1) / 2);
        let all: Vec<usize> = (0..n).collect();
        let expected = sys.compose(
            &sys.longest_element(&all[..n - 1]),
            &sys.longest_element(&all),
        );
        // same inversion set means same element
        assert_eq!(
            sys.inversion_set(&sys.element(&word)),
            sys.inversion_set(&expected),
            "C{n}"
        );
        assert_eq!(sys.order(&expected), 2);
    }
}

#[test]
fn cycle_power_acts_as_the_permutation() {
    for (n, a) in [(3, 2), (5, 2), (5, 3), (7, 4), (8, 3)] {
        let sys = RootSystem::new(TypeTag::A, n).unwrap();
        for variant in CycleVariant::ALL {
            let len = if variant == CycleVariant::NCycle {
                n
            } else {
                n + 1
            };
            let w = sys.element(&an_cycle_power(n, a, variant).unwrap());
            // e_p - e_q must go to e_{π(p)} - e_{π(q)}
            let pi = |j: usize| if j < len { (j + a) % len } else { j };
            for p in 0..=n {
                for q in 0..=n {
                    if p == q {
                        continue;
                    }
                    let mut v = vec![Q::from_integer(0); n + 1];
                    v[p] += Q::from_integer(1);
                    v[q] -= Q::from_integer(1);
                    let r = (0..sys.num_roots())
                        .find(|&r| sys.root_ambient(r) == v.as_slice())
                        .unwrap();
                    let mut img = vec![Q::from_integer(0); n + 1];
                    img[pi(p)] += Q::from_integer(1);
                    img[pi(q)] -= Q::from_integer(1);
                    assert_eq!(
                        sys.root_ambient(w.apply(r)),
                        img.as_slice(),
                        "A{n} a={a} {variant:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn full_cycle_matches_shifted_pattern_and_generates_j() {
    for (n, a) in [(5, 2), (7, 2), (7, 4), (11, 4), (15, 4)] {
        let cands = an_cycle_candidates(n, a).unwrap();
        let full = cands
            .iter()
            .find(|c| c.variant == CycleVariant::FullCycle)
            .unwrap();
        let short = cands
            .iter()
            .find(|c| c.variant == CycleVariant::NCycle)
            .unwrap();
        assert_eq!(full.order as usize, (n + 1) / a);
        assert!(full.matches_shifted_pattern, "A{n} a={a}");
        assert!(short.matches_pattern, "A{n} a={a}");
        assert_eq!(short.order as usize, n / gcd(n, a));
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn middle_a_even_tits_lifts_full_cycle() {
    for (n, a) in [(3, 2), (5, 2), (7, 2), (7, 4), (11, 4)] {
        let w = an_cycle_power(n, a, CycleVariant::FullCycle).unwrap();
        let r = ((n + 1) / a) as u32;
        let rep = lift_check(&tits(TypeTag::A, n, Isogeny::Middle(a)), &w, 2 * r);
        assert!(
            rep.passed(),
            "A{n} middle:{a} fails at {:?}",
            rep.first_failure()
        );
    }
}

#[test]
fn middle_a_odd_tits_can_fail() {
    let w = an_cycle_power(8, 3, CycleVariant::FullCycle).unwrap();
    let rep = lift_check(&tits(TypeTag::A, 8, Isogeny::Middle(3)), &w, 3);
    assert_eq!(rep.first_failure(), Some(2));
    assert!(rep.discrepancies[1].is_some());
    assert!(rep.results[0]);
}

#[test]
fn cn_adjoint_optimal_section_squares_to_one() {
    for n in 2..=7 {
        let s = optimal_section(TypeTag::C, n, Isogeny::Adjoint);
        let w = cn_adjoint_element(n).unwrap();
        let rep = lift_check(&s, &w, 2);
        assert!(rep.passed(), "C{n}");
        let sq = s.ctx().pow(&s.eval(&s.ctx().sys().element(&w)), 2).unwrap();
        assert_eq!(sq, s.ctx().identity());
    }
}

#[test]
fn dn_adjoint_odd_tits_fails_optimal_lifts() {
    for n in [3, 5, 7] {
        let sys = RootSystem::new(TypeTag::D, n).unwrap();
        let all: Vec<usize> = (0..n).collect();
        // generator of J supplied by hand: w_{Π \ α_n} w_Π, of order 4
        let w = sys.compose(
            &sys.longest_element(&all[..n - 1]),
            &sys.longest_element(&all),
        );
        assert_eq!(sys.order(&w), 4);
        let word = sys.reduced_word(&w);
        let bad = lift_check(&tits(TypeTag::D, n, Isogeny::Adjoint), &word, 4);
        assert!(!bad.passed(), "D{n}");
        let good = lift_check(&optimal_section(TypeTag::D, n, Isogeny::Adjoint), &word, 4);
        assert!(good.passed(), "D{n}");
    }
}

#[test]
fn trivial_lift_checks() {
    let s = tits(TypeTag::B, 3, Isogeny::Adjoint);
    let w = WeylWord::new(vec![0, 1, 2, 1]);
    let rep = lift_check(&s, &w, 1);
    assert!(rep.passed());
    assert_eq!(rep.results.len(), 1);
    // S(s_i) of order 2 squares to S(1) = 1
    let opt = optimal_section(TypeTag::B, 3, Isogeny::Adjoint);
    for i in 0..3 {
        let rep = lift_check(&opt, &WeylWord::new(vec![i]), 2);
        assert!(rep.passed());
    }
}

#[test]
fn fw_pattern_identity_and_reflection() {
    let sys = RootSystem::new(TypeTag::A, 4).unwrap();
    assert!(fw_set(&sys, &sys.identity(), 1).is_empty());
    for i in 0..4 {
        assert_eq!(
            fw_set(&sys, sys.simple_reflection(i), 1),
            vec![sys.simple_root_index(i)]
        );
    }
}
