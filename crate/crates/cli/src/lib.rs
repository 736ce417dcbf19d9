//! Command-line front end for `weylsect`.
//!
//! [`run`] is the whole program; the binary only forwards its exit code.
//! Exit codes: 0 success, 1 a check came out negative (or the engine gave
//! up), 2 usage error or invalid case.

pub mod doc;
pub mod render;
pub mod spec;
pub mod sweep;
pub mod table;
pub mod verify;

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_integer::Integer;
use thiserror::Error;
use weylsect::analysis::{
    conjugacy_invariants, enumerate_profiles, specialize_family, AnalysisError,
};
use weylsect::kottwitz::{
    an_cycle_candidates, an_cycle_power, cn_adjoint_element, lift_check, CycleVariant,
    KottwitzError,
};
use weylsect::solver::{solve_lattice, SectionFamily, SolverError};
use weylsect::{
    Isogeny, IsogenyLattice, LatticeError, MonomialGroup, Normalizer, RootSystemError, Section,
    TorusError, TypeTag, WeylWord,
};

use crate::doc::{ConjugacyDoc, DescribeDoc, FamilyDoc, LiftDoc, ProfilesDoc};
use crate::spec::CaseSpec;
use crate::table::ExpectedTable;
use crate::verify::{run_verify, Scope};

/// Version of every JSON document.
pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(weylsect::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<weylsect::Error> for CliError {
    fn from(e: weylsect::Error) -> Self {
        match e {
            weylsect::Error::RootSystem(e) => e.into(),
            weylsect::Error::Lattice(e) => e.into(),
            e => CliError::Engine(e),
        }
    }
}

impl From<RootSystemError> for CliError {
    fn from(e: RootSystemError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<TorusError> for CliError {
    fn from(e: TorusError) -> Self {
        CliError::Engine(e.into())
    }
}

impl From<weylsect::ExtWeylError> for CliError {
    fn from(e: weylsect::ExtWeylError) -> Self {
        CliError::Engine(e.into())
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        CliError::Engine(e.into())
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        CliError::Engine(e.into())
    }
}

impl From<KottwitzError> for CliError {
    fn from(e: KottwitzError) -> Self {
        match e {
            KottwitzError::RootSystem(e) => e.into(),
            e => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "weylsect",
    version,
    about = "Braid-respecting sections of Weyl groups into torus normalizers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON on standard output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also run seeded random sweeps of the cocycle and powers identities.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CaseArgs {
    /// Root system type: A..G, optionally with the rank (`A5`, `E8`).
    #[arg(long = "type", short = 't')]
    pub type_tag: String,
    #[arg(long, short = 'n')]
    pub rank: Option<usize>,
    /// sc, adjoint, middle:a (type A), coweight:{1,n-1,n} (type D).
    #[arg(long, short = 'i')]
    pub isogeny: Option<String>,
    /// Order of the roots of unity used; must be even.
    #[arg(long, short = 'm')]
    pub modulus: Option<i64>,
}

impl CaseArgs {
    fn spec(&self) -> Result<CaseSpec, CliError> {
        CaseSpec::parse(
            &self.type_tag,
            self.rank,
            self.isogeny.as_deref(),
            self.modulus,
        )
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the braid constraints and print the parametrized family.
    Solve(CaseArgs),
    /// Enumerate order profiles with Dynkin labelings and the Hasse diagram.
    Profiles(CaseArgs),
    /// Invariants classifying sections up to torus conjugation.
    Conjugacy(CaseArgs),
    /// Recompute the expected tables and report differences.
    Verify {
        /// summary, lowrank or all.
        #[arg(default_value = "all")]
        scope: String,
        #[arg(long, short = 'm')]
        modulus: Option<i64>,
    },
    /// Check S(w)^r = S(w^r) for r up to r-max.
    LiftCheck {
        #[command(flatten)]
        case: CaseArgs,
        /// tits or optimal.
        #[arg(long, default_value = "optimal")]
        section: String,
        /// cn-adjoint, an-cycle[:a][:full|ncycle], or a word of 1-based
        /// node numbers such as `1,2,1`.
        #[arg(long)]
        element: String,
        /// Defaults to the order of the element.
        #[arg(long)]
        r_max: Option<u32>,
    },
    /// Dynkin diagram, Cartan matrix and lattice data of a case.
    Describe(CaseArgs),
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit<T: serde::Serialize>(
    json: bool,
    out: &mut dyn Write,
    doc: &T,
    text: impl FnOnce() -> String,
) -> Result<(), CliError> {
    if json {
        serde_json::to_writer_pretty(&mut *out, doc)?;
        writeln!(out)?;
    } else {
        write!(out, "{}", text())?;
    }
    Ok(())
}

fn solve(spec: &CaseSpec) -> Result<(std::sync::Arc<IsogenyLattice>, SectionFamily), CliError> {
    let lat = spec.build_lattice()?;
    let fam = solve_lattice(&lat, spec.modulus)?;
    Ok((lat, fam))
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Solve(a) => {
            let spec = a.spec()?;
            let (_, fam) = solve(&spec)?;
            let doc = FamilyDoc::new((&spec).into(), &fam);
            emit(cli.json, out, &doc, || doc.render_text())?;
            Ok(0)
        }
        Command::Profiles(a) => {
            let spec = a.spec()?;
            let (lat, fam) = solve(&spec)?;
            let m = spec.modulus.lcm(&fam.min_modulus());
            if m != spec.modulus {
                writeln!(
                    err,
                    "note: modulus raised to {m} (minimal modulus {})",
                    fam.min_modulus()
                )?;
            }
            let set = enumerate_profiles(&fam, m)?;
            let doc = ProfilesDoc::new((&spec).into(), &fam, &set);
            emit(cli.json, out, &doc, || doc.render_text(&lat))?;
            Ok(0)
        }
        Command::Conjugacy(a) => {
            let spec = a.spec()?;
            let (_, fam) = solve(&spec)?;
            let inv = conjugacy_invariants(&fam)?;
            let doc = ConjugacyDoc::new((&spec).into(), &fam, &inv);
            emit(cli.json, out, &doc, || doc.render_text())?;
            Ok(0)
        }
        Command::Verify { scope, modulus } => {
            let scope: Scope = scope.parse()?;
            let m = modulus.unwrap_or(spec::DEFAULT_MODULUS);
            if m < 2 || m % 2 != 0 {
                return Err(CliError::Usage(format!(
                    "--modulus must be a positive even integer, got {m}"
                )));
            }
            let mut report = run_verify(&ExpectedTable::default(), scope, m);
            if let Some(seed) = cli.seed {
                report.add_sweep(sweep::cocycle_sweep(seed, 1000)?);
                report.add_sweep(sweep::powers_sweep(seed, 500)?);
            }
            emit(cli.json, out, &report, || format!("{report}\n"))?;
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::LiftCheck {
            case,
            section,
            element,
            r_max,
        } => {
            let spec = case.spec()?;
            let doc = lift_doc(&spec, section, element, *r_max)?;
            emit(cli.json, out, &doc, || doc.render_text())?;
            Ok(if doc.passed { 0 } else { 1 })
        }
        Command::Describe(a) => {
            let spec = a.spec()?;
            let lat = spec.build_lattice()?;
            let doc = DescribeDoc::new((&spec).into(), &lat);
            emit(cli.json, out, &doc, || doc.render_text())?;
            Ok(0)
        }
    }
}

/// Resolves `--element` to a word in the case's Weyl group, together with
/// the cycle candidates when it names `w_a`.
pub fn parse_element(
    spec: &CaseSpec,
    element: &str,
) -> Result<(WeylWord, Vec<weylsect::kottwitz::CycleCandidate>), CliError> {
    let (t, n) = (spec.type_tag, spec.rank);
    let e = element.trim();
    if e == "cn-adjoint" {
        if t != TypeTag::C {
            return Err(CliError::Usage("cn-adjoint needs type C".into()));
        }
        return Ok((cn_adjoint_element(n)?, Vec::new()));
    }
    if let Some(rest) = e.strip_prefix("an-cycle") {
        if t != TypeTag::A {
            return Err(CliError::Usage("an-cycle needs type A".into()));
        }
        let mut a = match spec.isogeny {
            Isogeny::Middle(a) => Some(a),
            _ => None,
        };
        let mut variant = CycleVariant::FullCycle;
        for part in rest.split(':').filter(|p| !p.is_empty()) {
            match part {
                "full" => variant = CycleVariant::FullCycle,
                "ncycle" => variant = CycleVariant::NCycle,
                p => {
                    a = Some(
                        p.parse()
                            .map_err(|_| CliError::Usage(format!("bad an-cycle option `{p}`")))?,
                    )
                }
            }
        }
        let a = a.ok_or_else(|| {
            CliError::Usage("an-cycle needs a, from middle:a or an-cycle:a".into())
        })?;
        let word = an_cycle_power(n, a, variant)?;
        return Ok((word, an_cycle_candidates(n, a)?));
    }
    let letters: Vec<usize> = e
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            let s = s.trim_start_matches('s');
            match s.parse::<usize>() {
                Ok(k) if (1..=n).contains(&k) => Ok(k - 1),
                _ => Err(CliError::Usage(format!(
                    "bad element letter `{s}` (nodes are 1..={n})"
                ))),
            }
        })
        .collect::<Result<_, _>>()?;
    Ok((WeylWord::new(letters), Vec::new()))
}

/// Runs one lift check.
pub fn lift_doc(
    spec: &CaseSpec,
    section: &str,
    element: &str,
    r_max: Option<u32>,
) -> Result<LiftDoc, CliError> {
    let (lat, fam) = solve(spec)?;
    let (word, candidates) = parse_element(spec, element)?;
    let m = spec.modulus.lcm(&fam.min_modulus());
    let ctx = Normalizer::new(lat.clone(), MonomialGroup::constants(m)?);
    let sec = match section {
        "tits" => Section::tits(ctx),
        "optimal" => {
            let set = enumerate_profiles(&fam, m)?;
            let opt = set.optimal.clone()?;
            let y = set.witness(&opt).ok_or_else(|| {
                CliError::Usage(format!(
                    "optimal profile {opt} needs transcendental parameters"
                ))
            })?;
            let fam_m = fam.with_modulus(m)?;
            let values = specialize_family(&fam_m, y)?;
            Section::new(ctx, values)?
        }
        s => {
            return Err(CliError::Usage(format!(
                "unknown section `{s}` (tits, optimal)"
            )))
        }
    };
    let sys = lat.sys();
    let order = sys.order(&sys.element(&word));
    let r_max = r_max.unwrap_or(order);
    if r_max == 0 {
        return Err(CliError::Usage("--r-max must be at least 1".into()));
    }
    let report = lift_check(&sec, &word, r_max);
    Ok(LiftDoc::new(
        spec.into(),
        fam.min_modulus(),
        section,
        sec.values(),
        order,
        &report,
        &candidates,
    ))
}
