use std::collections::BTreeMap;

use proptest::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use weylsect::{Isogeny, TypeTag};
use weylsect_cli::doc::{ConjugacyDoc, DescribeDoc, FamilyDoc, LiftDoc, ProfilesDoc};
use weylsect_cli::spec::CaseSpec;
use weylsect_cli::table::{Expectation, ExpectedTable, Pattern, TableKind};
use weylsect_cli::verify::{run_verify, scope_cases, Scope, VerifyReport};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["weylsect"];
    full.extend_from_slice(args);
    let code = weylsect_cli::run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json<T: DeserializeOwned>(args: &[&str]) -> T {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out, err) = run(&a);
    assert!(code <= 1, "{args:?}: exit {code}, {err}");
    serde_json::from_str(&out).unwrap()
}

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(x: &T) {
    let s = serde_json::to_string(x).unwrap();
    let back: T = serde_json::from_str(&s).unwrap();
    assert_eq!(&back, x);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    if v.is_object() && v.get("rows").is_none() {
        assert_eq!(v["schema"], 1);
    }
}

#[test]
fn solve_g2_has_two_order_two_torsion_parameters() {
    let doc: FamilyDoc = json(&["solve", "--type", "G2"]);
    let tors: BTreeMap<String, Option<i64>> = doc
        .torsion_params
        .iter()
        .map(|p| (p.name.clone(), p.order))
        .collect();
    assert_eq!(
        tors,
        BTreeMap::from([("a_{1,2}".into(), Some(2)), ("a_{2,1}".into(), Some(2))])
    );
    assert_eq!(doc.free_params.len(), 2);
    assert_eq!(doc.min_modulus, 2);
    let (_, text, _) = run(&["solve", "-t", "G2"]);
    assert!(text.contains("minimal modulus: 2"));
}

#[test]
fn solve_e8_has_no_torsion() {
    let doc: FamilyDoc = json(&["solve", "--type", "E", "--rank", "8"]);
    assert!(doc.torsion_params.is_empty());
    assert_eq!(doc.free_params.len(), 8);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["solve", "--type", "D", "--rank", "2"][..],
        &["solve", "--type", "A"],
        &["solve", "--type", "A3", "--modulus", "7"],
        &["solve", "--type", "A3", "--isogeny", "middle:3"],
        &["profiles", "--type", "Q4"],
        &["verify", "everything"],
        &["lift-check", "--type", "B3", "--element", "cn-adjoint"],
        &["lift-check", "--type", "A3", "--element", "1,4"],
        &["frobnicate"],
    ] {
        let (code, out, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn profiles_g2_form_a_diamond() {
    let doc: ProfilesDoc = json(&["profiles", "--type", "G2"]);
    assert_eq!(doc.profiles.len(), 4);
    assert_eq!(doc.hasse.len(), 4);
    let idx = |l: &[&str]| doc.profiles.iter().position(|p| p.labels == l).unwrap();
    let (top, left, right, bottom) = (
        idx(&["2", "2"]),
        idx(&["2", "4"]),
        idx(&["4", "2"]),
        idx(&["4", "4"]),
    );
    let mut edges = doc.hasse.clone();
    edges.sort();
    let mut want = vec![(left, top), (right, top), (bottom, left), (bottom, right)];
    want.sort();
    assert_eq!(edges, want);
    assert_eq!(doc.optimal, Some(vec!["2".to_string(), "2".to_string()]));
}

#[test]
fn profiles_text_labels_the_diagram() {
    let (code, text, _) = run(&["profiles", "--type", "F4"]);
    assert_eq!(code, 0);
    assert!(text.contains("4---4=>=2---2"));
    assert!(text.contains("4---4=>=4---4"));
    let doc: ProfilesDoc = json(&["profiles", "--type", "B", "--rank", "6"]);
    let labels: Vec<String> = doc.profiles.iter().map(|p| p.labels.join(",")).collect();
    assert_eq!(labels.len(), 2);
    assert!(labels.contains(&"4,4,4,4,4,2".to_string()));
    assert!(labels.contains(&"4,4,4,4,4,4".to_string()));
}

#[test]
fn profiles_report_type_a_families() {
    let doc: ProfilesDoc = json(&["profiles", "--type", "A5"]);
    assert_eq!(doc.family.as_deref(), Some("4j"));
    let doc: ProfilesDoc = json(&["profiles", "--type", "A4", "--isogeny", "adjoint"]);
    assert_eq!(doc.family.as_deref(), Some("2j"));
}

#[test]
fn conjugacy_reports_e8_as_a_single_class() {
    let doc: ConjugacyDoc = json(&["conjugacy", "--type", "E8"]);
    assert!(doc.all_conjugate);
    let doc: ConjugacyDoc = json(&["conjugacy", "--type", "F4"]);
    assert_eq!(doc.invariants.len(), 1);
    assert_eq!(doc.invariants[0].order, Some(2));
}

#[test]
fn lift_checks() {
    let doc: LiftDoc = json(&[
        "lift-check",
        "-t",
        "C6",
        "-i",
        "adjoint",
        "--element",
        "cn-adjoint",
        "--r-max",
        "2",
    ]);
    assert!(doc.passed);
    let (code, _, _) = run(&[
        "lift-check",
        "-t",
        "A7",
        "-i",
        "middle:4",
        "--section",
        "tits",
        "--element",
        "an-cycle",
    ]);
    assert_eq!(code, 0);
    let doc: LiftDoc = json(&["lift-check", "-t", "A3", "--element", "1,2", "--r-max", "1"]);
    assert_eq!(doc.results, vec![true]);
    // a failed lift is a negative check: exit 1
    let (code, out, _) = run(&[
        "lift-check",
        "-t",
        "D5",
        "-i",
        "adjoint",
        "--section",
        "tits",
        "--element",
        "5,4,3,2,1",
    ]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("r = 5: fails"));
    assert!(out.ends_with("lift: FAIL\n"));
}

#[test]
fn verify_passes_and_covers_lowrank() {
    let (code, out, _) = run(&["verify", "lowrank"]);
    assert_eq!(code, 0, "{out}");
    for row in [
        "[A1 simply connected]",
        "[A1 adjoint]",
        "[D3 simply connected]",
        "[D4, coweight w4]",
    ] {
        assert!(out.contains(row), "{row} missing");
    }
    assert!(out.ends_with("PASS\n"));
    let report: VerifyReport = json(&["verify", "lowrank", "--seed", "11"]);
    assert_eq!(report.sweeps.len(), 2);
    assert!(report.passed);
}

#[test]
fn verify_fails_when_a_cell_is_mutated() {
    let mut table = ExpectedTable::default();
    let row = table
        .rows
        .iter_mut()
        .find(|r| r.name == "B_n adjoint")
        .unwrap();
    row.expected = Expectation::Profiles(vec![
        Pattern::Uniform(2),
        Pattern::Last { rest: 4, last: 4 },
    ]);
    let report = run_verify(&table, Scope::Summary, 24);
    assert!(!report.passed);
    let bad: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
    assert!(!bad.is_empty());
    assert!(bad.iter().all(|c| c.row.as_deref() == Some("B_n adjoint")));
    let text = report.to_string();
    assert!(text.contains("DIFF B6 adjoint"));
    assert!(text.contains("[B_n adjoint]"));
    assert!(text.ends_with("FAIL"));

    let mut table = ExpectedTable::default();
    let row = table
        .rows
        .iter_mut()
        .find(|r| r.name == "A_n adjoint")
        .unwrap();
    row.expected = Expectation::Family { base: 4 };
    let report = run_verify(&table, Scope::Summary, 24);
    assert!(report
        .checks
        .iter()
        .any(|c| !c.passed && c.row.as_deref() == Some("A_n adjoint")));
}

#[test]
fn every_table_row_appears_exactly_once() {
    let table = ExpectedTable::default();
    let mut names: Vec<&str> = table.rows.iter().map(|r| r.name.as_str()).collect();
    names.sort();
    let total = names.len();
    names.dedup();
    assert_eq!(names.len(), total);
    let mut hits: BTreeMap<String, usize> = BTreeMap::new();
    for (kind, t, n, iso) in scope_cases(Scope::All) {
        let rows = table.lookup(kind, t, n, iso);
        assert_eq!(rows.len(), 1, "{t}{n} {iso}");
        *hits.entry(rows[0].name.clone()).or_default() += 1;
    }
    for r in &table.rows {
        assert!(hits.contains_key(&r.name), "row {} never exercised", r.name);
    }
    assert_eq!(
        table
            .rows
            .iter()
            .filter(|r| r.kind == TableKind::LowRank)
            .count(),
        7
    );
}

#[test]
fn json_documents_round_trip() {
    round_trip(&json::<FamilyDoc>(&["solve", "--type", "F4"]));
    round_trip(&json::<ProfilesDoc>(&["profiles", "--type", "G2"]));
    round_trip(&json::<ProfilesDoc>(&[
        "profiles",
        "--type",
        "A3",
        "--isogeny",
        "middle:2",
    ]));
    round_trip(&json::<ConjugacyDoc>(&[
        "conjugacy",
        "--type",
        "A4",
        "--isogeny",
        "adjoint",
    ]));
    round_trip(&json::<LiftDoc>(&[
        "lift-check",
        "-t",
        "A5",
        "-i",
        "middle:2",
        "--element",
        "an-cycle",
    ]));
    round_trip(&json::<DescribeDoc>(&["describe", "--type", "D5"]));
    round_trip(&json::<VerifyReport>(&["verify", "lowrank"]));
    round_trip(&ExpectedTable::default());
}

#[test]
fn describe_prints_the_diagram() {
    let (code, out, _) = run(&["describe", "--type", "G2"]);
    assert_eq!(code, 0);
    assert!(out.contains("1#<#2"));
    // ⟨Q^∨, ω_4⟩ in A7 has index 8/4 = 2 over the coroots
    let doc: DescribeDoc = json(&["describe", "-t", "A7", "-i", "middle:4"]);
    assert_eq!(doc.lattice_index, 2);
}

fn any_case() -> impl Strategy<Value = (TypeTag, usize, Isogeny)> {
    let mut all = Vec::new();
    for n in 1..=8 {
        for t in [
            TypeTag::A,
            TypeTag::B,
            TypeTag::C,
            TypeTag::D,
            TypeTag::E,
            TypeTag::F,
            TypeTag::G,
        ] {
            if t.validate_rank(n).is_ok() {
                all.extend(Isogeny::all_for(t, n).into_iter().map(|i| (t, n, i)));
            }
        }
    }
    proptest::sample::select(all)
}

proptest! {
    #[test]
    fn case_names_parse_back((t, n, iso) in any_case(), m in 1i64..20) {
        let s = CaseSpec::parse(&format!("{t}{n}"), None, Some(&iso.to_string()), Some(2 * m)).unwrap();
        prop_assert_eq!((s.type_tag, s.rank, s.isogeny, s.modulus), (t, n, iso, 2 * m));
        let s2 = CaseSpec::parse(&t.to_string(), Some(n), Some(&iso.to_string()), None).unwrap();
        prop_assert_eq!(s2, CaseSpec::new(t, n, iso));
    }
}
