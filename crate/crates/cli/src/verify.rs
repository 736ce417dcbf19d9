//! Recomputes table rows and diffs them against [`ExpectedTable`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use weylsect::analysis::{enumerate_profiles, Label, OrderProfile};
use weylsect::solver::solve_lattice;
use weylsect::{Isogeny, TypeTag};

use crate::spec::{CaseDoc, CaseSpec};
use crate::sweep::SweepReport;
use crate::table::{
    expected_profiles, is_family_member, Expectation, ExpectedTable, TableKind, TableRow,
};
use crate::{CliError, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Summary,
    LowRank,
    All,
}

impl FromStr for Scope {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "summary" => Ok(Scope::Summary),
            "lowrank" => Ok(Scope::LowRank),
            "all" => Ok(Scope::All),
            _ => Err(CliError::Usage(format!(
                "unknown scope `{s}` (summary, lowrank, all)"
            ))),
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Summary => "summary",
            Scope::LowRank => "lowrank",
            Scope::All => "all",
        })
    }
}

/// Family ranks checked against the summary table.
pub const SUMMARY_RANKS: [usize; 2] = [6, 7];

fn classical_cases(ranks: &[usize]) -> Vec<(TypeTag, usize, Isogeny)> {
    let mut out = Vec::new();
    for &n in ranks {
        for t in [TypeTag::A, TypeTag::B, TypeTag::C, TypeTag::D] {
            out.extend(Isogeny::all_for(t, n).into_iter().map(|iso| (t, n, iso)));
        }
    }
    out
}

fn exceptional_cases() -> Vec<(TypeTag, usize, Isogeny)> {
    [
        (TypeTag::E, 6),
        (TypeTag::E, 7),
        (TypeTag::E, 8),
        (TypeTag::F, 4),
        (TypeTag::G, 2),
    ]
    .into_iter()
    .flat_map(|(t, n)| {
        Isogeny::all_for(t, n)
            .into_iter()
            .map(move |iso| (t, n, iso))
    })
    .collect()
}

fn lowrank_cases() -> Vec<(TypeTag, usize, Isogeny)> {
    vec![
        (TypeTag::A, 1, Isogeny::SimplyConnected),
        (TypeTag::A, 1, Isogeny::Adjoint),
        (TypeTag::D, 3, Isogeny::SimplyConnected),
        (TypeTag::D, 3, Isogeny::Adjoint),
        (TypeTag::D, 3, Isogeny::Coweight(1)),
        (TypeTag::D, 4, Isogeny::Coweight(3)),
        (TypeTag::D, 4, Isogeny::Coweight(4)),
    ]
}

/// `(kind, case)` pairs examined by a scope. The odd-`a` middle row of
/// type A has no instance in ranks 6 and 7, so `A8 middle:3` stands in.
pub fn scope_cases(scope: Scope) -> Vec<(TableKind, TypeTag, usize, Isogeny)> {
    let summary = || {
        let mut v = classical_cases(&SUMMARY_RANKS);
        v.push((TypeTag::A, 8, Isogeny::Middle(3)));
        v.extend(exceptional_cases());
        v.into_iter()
            .map(|(t, n, i)| (TableKind::Summary, t, n, i))
            .collect::<Vec<_>>()
    };
    let low = || {
        lowrank_cases()
            .into_iter()
            .map(|(t, n, i)| (TableKind::LowRank, t, n, i))
            .collect::<Vec<_>>()
    };
    match scope {
        Scope::Summary => summary(),
        Scope::LowRank => low(),
        Scope::All => {
            let mut v = summary();
            v.extend(low());
            v.extend(
                classical_cases(&[8])
                    .into_iter()
                    .map(|(t, n, i)| (TableKind::Summary, t, n, i)),
            );
            v.sort();
            v.dedup();
            v
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCheck {
    pub table: TableKind,
    pub row: Option<String>,
    pub case: CaseDoc,
    pub modulus_used: i64,
    pub expected: String,
    pub got: Vec<String>,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub scope: Scope,
    pub checks: Vec<RowCheck>,
    /// Table rows of the scope that no case exercised.
    pub unexercised_rows: Vec<String>,
    /// Random identity sweeps, present when a seed was given.
    #[serde(default)]
    pub sweeps: Vec<SweepReport>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn add_sweep(&mut self, s: SweepReport) {
        self.passed &= s.passed();
        self.sweeps.push(s);
    }
}

fn check_case(table: &ExpectedTable, kind: TableKind, case: &CaseSpec) -> RowCheck {
    let rows: Vec<&TableRow> = table.lookup(kind, case.type_tag, case.rank, case.isogeny);
    let mut out = RowCheck {
        table: kind,
        row: None,
        case: CaseDoc::from(case),
        modulus_used: case.modulus,
        expected: String::new(),
        got: Vec::new(),
        passed: false,
        detail: None,
    };
    let row = match rows.as_slice() {
        [r] => *r,
        [] => {
            out.detail = Some("no table row applies".into());
            return out;
        }
        many => {
            out.detail = Some(format!("{} table rows apply", many.len()));
            return out;
        }
    };
    out.row = Some(row.name.clone());
    out.expected = row.expected.describe(case.rank);
    let result = (|| -> Result<(Vec<OrderProfile>, i64), CliError> {
        let lat = case.build_lattice()?;
        let fam = solve_lattice(&lat, case.modulus)?;
        let mut m = case.modulus.lcm(&fam.min_modulus());
        if let Expectation::Family { base } = row.expected {
            // orders base·j for j ≤ 3 need 3·base/2 to divide M
            m = m.lcm(&(3 * base));
        }
        let set = enumerate_profiles(&fam, m)?;
        if let Err(e) = &set.optimal {
            return Err(CliError::Engine(weylsect::Error::from(e.clone())));
        }
        Ok((set.profiles(), m))
    })();
    let (profiles, m) = match result {
        Ok(x) => x,
        Err(e) => {
            out.detail = Some(e.to_string());
            return out;
        }
    };
    out.modulus_used = m;
    out.got = profiles.iter().map(|p| p.to_string()).collect();
    match &row.expected {
        Expectation::Profiles(_) => {
            let want = expected_profiles(&row.expected, case.rank).expect("exact row");
            let got: BTreeSet<OrderProfile> = profiles.iter().cloned().collect();
            out.passed = got == want;
            if !out.passed {
                let missing: Vec<String> = want.difference(&got).map(|p| p.to_string()).collect();
                let extra: Vec<String> = got.difference(&want).map(|p| p.to_string()).collect();
                out.detail = Some(format!("missing {missing:?}, unexpected {extra:?}"));
            }
        }
        Expectation::Family { base } => {
            let mut js = BTreeSet::new();
            let mut bad = Vec::new();
            for p in &profiles {
                if let Some(j) = is_family_member(p, *base) {
                    js.insert(j);
                } else if !p.labels().iter().all(|l| *l == Label::Infinite) {
                    bad.push(p.to_string());
                }
            }
            let missing: Vec<i64> = (1..=3).filter(|j| !js.contains(j)).collect();
            out.passed = bad.is_empty() && missing.is_empty();
            if !out.passed {
                out.detail = Some(format!(
                    "not of the form {base}j: {bad:?}; j values missing: {missing:?}"
                ));
            }
        }
    }
    out
}

/// Recomputes every case of `scope` at modulus `modulus`.
pub fn run_verify(table: &ExpectedTable, scope: Scope, modulus: i64) -> VerifyReport {
    let cases = scope_cases(scope);
    let mut checks: Vec<RowCheck> = cases
        .par_iter()
        .map(|&(kind, t, n, iso)| {
            let case = CaseSpec {
                type_tag: t,
                rank: n,
                isogeny: iso,
                modulus,
            };
            check_case(table, kind, &case)
        })
        .collect();
    checks.sort_by(|a, b| {
        (a.table, &a.case.type_tag, a.case.rank, &a.case.isogeny).cmp(&(
            b.table,
            &b.case.type_tag,
            b.case.rank,
            &b.case.isogeny,
        ))
    });
    let kinds: Vec<TableKind> = match scope {
        Scope::Summary => vec![TableKind::Summary],
        Scope::LowRank => vec![TableKind::LowRank],
        Scope::All => vec![TableKind::Summary, TableKind::LowRank],
    };
    let hit: BTreeSet<&str> = checks.iter().filter_map(|c| c.row.as_deref()).collect();
    let unexercised_rows: Vec<String> = table
        .rows
        .iter()
        .filter(|r| kinds.contains(&r.kind) && !hit.contains(r.name.as_str()))
        .map(|r| r.name.clone())
        .collect();
    let passed = unexercised_rows.is_empty() && checks.iter().all(|c| c.passed);
    VerifyReport {
        schema: SCHEMA,
        scope,
        checks,
        unexercised_rows,
        sweeps: Vec::new(),
        passed,
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "ok  " } else { "DIFF" };
            let row = c.row.as_deref().unwrap_or("-");
            writeln!(
                f,
                "{status} {}{} {:<12} [{row}]",
                c.case.type_tag, c.case.rank, c.case.isogeny
            )?;
            if !c.passed {
                writeln!(f, "     expected {}", c.expected)?;
                writeln!(f, "     got      {{{}}}", c.got.join(", "))?;
                if let Some(d) = &c.detail {
                    writeln!(f, "     {d}")?;
                }
            }
        }
        for r in &self.unexercised_rows {
            writeln!(f, "DIFF row never exercised: [{r}]")?;
        }
        for s in &self.sweeps {
            let status = if s.passed() { "ok  " } else { "DIFF" };
            writeln!(
                f,
                "{status} {} sweep, seed {}: {} trials, {} failures",
                s.name,
                s.seed,
                s.trials,
                s.failures.len()
            )?;
            for x in s.failures.iter().take(5) {
                writeln!(f, "     {x}")?;
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count()
            + self.sweeps.iter().filter(|s| !s.passed()).count();
        write!(
            f,
            "verify {}: {} cases, {} differ: {}",
            self.scope,
            self.checks.len(),
            failed + self.unexercised_rows.len(),
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}
