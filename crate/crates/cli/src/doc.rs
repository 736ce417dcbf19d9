//! JSON documents emitted by the subcommands. Every document carries
//! `"schema": 1` and the case it was computed for.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use weylsect::analysis::{ConjugacyInvariants, Label, OrderProfile, ProfileSet};
use weylsect::kottwitz::{CycleCandidate, LiftCheckReport};
use weylsect::solver::{unknown_name, SectionFamily};
use weylsect::{IsogenyLattice, TorusElement};

use crate::render;
use crate::spec::CaseDoc;
use crate::SCHEMA;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamDoc {
    pub name: String,
    /// `None` for a free parameter.
    pub order: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub schema: u32,
    pub case: CaseDoc,
    pub min_modulus: i64,
    pub free_params: Vec<String>,
    pub torsion_params: Vec<ParamDoc>,
    /// `value_map[i][j]`: coordinate `j` of the torus part at node `i`.
    pub value_map: Vec<Vec<String>>,
    pub elementary_divisors: Vec<i64>,
}

fn coords(t: &TorusElement) -> Vec<String> {
    t.coords().iter().map(|m| t.format_monomial(m)).collect()
}

impl FamilyDoc {
    pub fn new(case: CaseDoc, fam: &SectionFamily) -> Self {
        FamilyDoc {
            schema: SCHEMA,
            case,
            min_modulus: fam.min_modulus(),
            free_params: fam.free_params().iter().map(|p| p.name.clone()).collect(),
            torsion_params: fam
                .torsion_params()
                .iter()
                .map(|p| ParamDoc {
                    name: p.name.clone(),
                    order: p.order,
                })
                .collect(),
            value_map: fam.value_map().iter().map(coords).collect(),
            elementary_divisors: fam.elementary_divisors().to_vec(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("{} (M = {})\n", self.case_line(), self.case.modulus);
        s.push_str(&format!("minimal modulus: {}\n", self.min_modulus));
        s.push_str(&format!("free parameters: {}\n", list(&self.free_params)));
        let tors: Vec<String> = self
            .torsion_params
            .iter()
            .map(|p| format!("{} (order {})", p.name, p.order.unwrap_or(0)))
            .collect();
        s.push_str(&format!("torsion parameters: {}\n", list(&tors)));
        for (i, v) in self.value_map.iter().enumerate() {
            s.push_str(&format!("t{} = ({})\n", i + 1, v.join(", ")));
        }
        s
    }

    fn case_line(&self) -> String {
        case_line(&self.case)
    }
}

fn case_line(c: &CaseDoc) -> String {
    format!("{}{} {}", c.type_tag, c.rank, c.isogeny)
}

fn list(v: &[String]) -> String {
    if v.is_empty() {
        "none".into()
    } else {
        v.join(", ")
    }
}

/// Labels as strings, `"inf"` for infinite order.
pub fn profile_labels(p: &OrderProfile) -> Vec<String> {
    p.labels().iter().map(Label::to_string).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileDoc {
    pub labels: Vec<String>,
    /// `ζ`-exponents of the parameters for one realising section.
    pub witness: Option<Vec<i64>>,
    pub torsion_classes: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfilesDoc {
    pub schema: u32,
    pub case: CaseDoc,
    pub min_modulus: i64,
    pub modulus_used: i64,
    pub profiles: Vec<ProfileDoc>,
    /// `(lower, upper)` indices into `profiles`; upper is more homomorphic.
    pub hasse: Vec<(usize, usize)>,
    pub optimal: Option<Vec<String>>,
    pub optimal_error: Option<String>,
    pub continuous_invariants: usize,
    /// A `kj` family detected from `j ∈ {1,2,3}`; conjectural for larger `j`.
    pub family: Option<String>,
    /// Parameter names the witnesses refer to.
    pub params: Vec<String>,
}

/// `Some(k)` when the finite profiles are uniform, with labels `k·j` and
/// `k, 2k, 3k` all present.
pub fn detect_family(profiles: &[OrderProfile]) -> Option<i64> {
    let mut ks = BTreeSet::new();
    for p in profiles.iter().filter(|p| p.is_finite()) {
        let first = p.labels()[0];
        if p.labels().iter().any(|l| *l != first) {
            return None;
        }
        if let Label::Finite(k) = first {
            ks.insert(k);
        }
    }
    let base = ks.iter().fold(0i64, |g, k| g.gcd(k));
    (base > 0 && (1..=3).all(|j| ks.contains(&(base * j)))).then_some(base)
}

impl ProfilesDoc {
    pub fn new(case: CaseDoc, fam: &SectionFamily, set: &ProfileSet) -> Self {
        let profiles = set.profiles();
        ProfilesDoc {
            schema: SCHEMA,
            case,
            min_modulus: fam.min_modulus(),
            modulus_used: set.modulus,
            profiles: set
                .entries
                .iter()
                .map(|e| ProfileDoc {
                    labels: profile_labels(&e.profile),
                    witness: e.witness.clone(),
                    torsion_classes: e.torsion_classes,
                })
                .collect(),
            hasse: set.hasse.clone(),
            optimal: set.optimal.as_ref().ok().map(profile_labels),
            optimal_error: set.optimal.as_ref().err().map(|e| e.to_string()),
            continuous_invariants: set.continuous_invariants,
            family: detect_family(&profiles).map(|k| format!("{k}j")),
            params: fam.params().iter().map(|p| p.name.clone()).collect(),
        }
    }

    pub fn render_text(&self, lat: &IsogenyLattice) -> String {
        let sys = lat.sys();
        let mut s = format!("{} (M = {})\n", case_line(&self.case), self.modulus_used);
        s.push_str(&format!("minimal modulus: {}\n", self.min_modulus));
        s.push_str(&format!("{} order profiles\n\n", self.profiles.len()));
        for (k, p) in self.profiles.iter().enumerate() {
            let mark = if self.optimal.as_ref() == Some(&p.labels) {
                "  (optimal)"
            } else {
                ""
            };
            s.push_str(&format!("[{}]{mark}\n", k + 1));
            s.push_str(&render::dynkin(sys, &p.labels));
            s.push('\n');
            if let Some(c) = p.torsion_classes {
                if c > 1 {
                    s.push_str(&format!(
                        "{c} conjugacy classes up to continuous parameters\n"
                    ));
                }
            }
            s.push('\n');
        }
        if !self.hasse.is_empty() {
            let edges: Vec<String> = self
                .hasse
                .iter()
                .map(|(a, b)| format!("[{}] < [{}]", a + 1, b + 1))
                .collect();
            s.push_str(&format!("Hasse diagram: {}\n", edges.join(", ")));
        }
        match (&self.optimal, &self.optimal_error) {
            (Some(o), _) => s.push_str(&format!("optimal: ({})\n", o.join(","))),
            (None, Some(e)) => s.push_str(&format!("optimal: none ({e})\n")),
            _ => {}
        }
        if let Some(f) = &self.family {
            s.push_str(&format!(
                "family: {f} (seen for j = 1, 2, 3; larger j not tested)\n"
            ));
        }
        if self.continuous_invariants > 0 {
            s.push_str(&format!(
                "continuous conjugacy invariants: {}\n",
                self.continuous_invariants
            ));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantDoc {
    /// Product of unknowns, e.g. `a_{1,1}·a_{1,2}^2`.
    pub monomial: String,
    /// Exponents over `a_{i,j}`, row-major.
    pub exponents: Vec<i64>,
    pub order: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyDoc {
    pub schema: u32,
    pub case: CaseDoc,
    pub min_modulus: i64,
    pub invariants: Vec<InvariantDoc>,
    /// No invariants: every section is conjugate to every other.
    pub all_conjugate: bool,
}

/// Formats exponents over the unknowns `a_{i,j}` as a product.
pub fn format_unknown_monomial(exps: &[i64], rank: usize) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(k, &e)| {
            let name = unknown_name(k / rank, k % rank);
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("·")
    }
}

impl ConjugacyDoc {
    pub fn new(case: CaseDoc, fam: &SectionFamily, inv: &ConjugacyInvariants) -> Self {
        let rank = fam.lattice().rank();
        ConjugacyDoc {
            schema: SCHEMA,
            case,
            min_modulus: fam.min_modulus(),
            invariants: inv
                .generators
                .iter()
                .map(|g| InvariantDoc {
                    monomial: format_unknown_monomial(&g.monomial, rank),
                    exponents: g.monomial.clone(),
                    order: g.order,
                })
                .collect(),
            all_conjugate: inv.generators.is_empty(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("{}\n", case_line(&self.case));
        s.push_str(&format!("minimal modulus: {}\n", self.min_modulus));
        if self.all_conjugate {
            s.push_str("no invariants: all sections are T-conjugate\n");
        }
        for g in &self.invariants {
            let ord = g
                .order
                .map_or("infinite order".to_string(), |o| format!("order {o}"));
            s.push_str(&format!("{}  ({ord})\n", g.monomial));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateDoc {
    pub variant: String,
    pub word: Vec<usize>,
    pub order: u32,
    pub pattern_checked: Vec<usize>,
    pub matches_pattern: bool,
    pub matches_shifted_pattern: bool,
}

impl From<&CycleCandidate> for CandidateDoc {
    fn from(c: &CycleCandidate) -> Self {
        CandidateDoc {
            variant: format!("{:?}", c.variant).to_lowercase(),
            word: one_based(c.word.letters()),
            order: c.order,
            pattern_checked: c.pattern_checked.clone(),
            matches_pattern: c.matches_pattern,
            matches_shifted_pattern: c.matches_shifted_pattern,
        }
    }
}

pub fn one_based(letters: &[usize]) -> Vec<usize> {
    letters.iter().map(|i| i + 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftDoc {
    pub schema: u32,
    pub case: CaseDoc,
    pub min_modulus: i64,
    pub section: String,
    /// The section's torus parts `t_i`, one per node.
    pub section_values: Vec<Vec<String>>,
    /// Reduced word, 1-based letters.
    pub element: Vec<usize>,
    pub element_order: u32,
    pub r_max: u32,
    pub results: Vec<bool>,
    pub discrepancies: Vec<Option<Vec<String>>>,
    pub passed: bool,
    pub first_failure: Option<u32>,
    /// For `an-cycle`, both readings of the cycle against the coroot pattern.
    pub candidates: Vec<CandidateDoc>,
}

impl LiftDoc {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        case: CaseDoc,
        min_modulus: i64,
        section: &str,
        values: &[TorusElement],
        order: u32,
        report: &LiftCheckReport,
        candidates: &[CycleCandidate],
    ) -> Self {
        LiftDoc {
            schema: SCHEMA,
            case,
            min_modulus,
            section: section.to_string(),
            section_values: values.iter().map(coords).collect(),
            element: one_based(report.element.letters()),
            element_order: order,
            r_max: report.r_max,
            results: report.results.clone(),
            discrepancies: report
                .discrepancies
                .iter()
                .map(|d| d.as_ref().map(coords))
                .collect(),
            passed: report.passed(),
            first_failure: report.first_failure(),
            candidates: candidates.iter().map(CandidateDoc::from).collect(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = format!(
            "{} (M = {}), {} section\n",
            case_line(&self.case),
            self.case.modulus,
            self.section
        );
        s.push_str(&format!("minimal modulus: {}\n", self.min_modulus));
        for (i, v) in self.section_values.iter().enumerate() {
            s.push_str(&format!("t{} = ({})\n", i + 1, v.join(", ")));
        }
        let word: Vec<String> = self.element.iter().map(|i| format!("s{i}")).collect();
        s.push_str(&format!(
            "w = {} (order {})\n",
            if word.is_empty() {
                "1".into()
            } else {
                word.join(" ")
            },
            self.element_order
        ));
        for c in &self.candidates {
            s.push_str(&format!(
                "candidate {}: order {}, checked at i = {:?}: pattern {}, shifted pattern {}\n",
                c.variant,
                c.order,
                c.pattern_checked,
                yes_no(c.matches_pattern),
                yes_no(c.matches_shifted_pattern)
            ));
        }
        for (k, (ok, d)) in self.results.iter().zip(&self.discrepancies).enumerate() {
            match d {
                Some(d) if !ok => s.push_str(&format!(
                    "r = {}: fails, S(w)^r S(w^r)^-1 = ({})\n",
                    k + 1,
                    d.join(", ")
                )),
                _ => s.push_str(&format!("r = {}: ok\n", k + 1)),
            }
        }
        s.push_str(if self.passed {
            "lift: PASS\n"
        } else {
            "lift: FAIL\n"
        });
        s
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "matches"
    } else {
        "differs"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescribeDoc {
    pub schema: u32,
    pub case: CaseDoc,
    pub dynkin: String,
    pub cartan: Vec<Vec<i64>>,
    pub num_roots: usize,
    /// `[X_*(T) : Q^∨]`.
    pub lattice_index: i64,
    pub lattice_basis: Vec<String>,
    pub isogenies: Vec<String>,
}

impl DescribeDoc {
    pub fn new(case: CaseDoc, lat: &IsogenyLattice) -> Self {
        let sys = lat.sys();
        DescribeDoc {
            schema: SCHEMA,
            case,
            dynkin: render::dynkin_numbered(sys),
            cartan: sys.cartan().to_vec(),
            num_roots: sys.num_roots(),
            lattice_index: lat.index(),
            lattice_basis: lat.basis_names().to_vec(),
            isogenies: weylsect::Isogeny::all_for(sys.type_tag(), sys.rank())
                .iter()
                .map(|i| i.to_string())
                .collect(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("{}\n{}\n", case_line(&self.case), self.dynkin);
        s.push_str("Cartan matrix:\n");
        for row in &self.cartan {
            let r: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            s.push_str(&r.join(""));
            s.push('\n');
        }
        s.push_str(&format!("roots: {}\n", self.num_roots));
        s.push_str(&format!(
            "[X : Q^v] = {}, basis {}\n",
            self.lattice_index,
            self.lattice_basis.join(", ")
        ));
        s.push_str(&format!("isogenies: {}\n", self.isogenies.join(", ")));
        s
    }
}
