//! The subcommands. Each returns an [`Outcome`]; printing and exit codes are
//! left to the binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use bicross_core::bicrossed::{dual_build, negative_controls, theta_report, FiniteQG};
use bicross_core::cohomology::{
    is_cocycle, normalization_defects, AbelianInvariants, CocyclePair, CohomologyContext,
};
use bicross_core::continuous::axb::axb_example_check;
use bicross_core::continuous::cocycle::{cocycle_example_check, CocycleCheckConfig};
use bicross_core::continuous::infinitesimal::infinitesimal_check;
use bicross_core::continuous::sl2::sl2_example_check;
use bicross_core::continuous::ExampleReport;
use bicross_core::fixtures;
use bicross_core::group::{FiniteGroup, GroupConfig};
use bicross_core::matched::MatchedPair;
use bicross_core::quadrature::QuadConfig;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::formats::{
    parse_json, write_json, AxiomLine, CocycleFile, ControlLine, GammaReport, GroupFile, GroupRef,
    OperatorDump, PairFile, PairTables,
};

/// Result of one subcommand: a JSON payload, the verdict, and a line of prose.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub passed: bool,
    pub result: Value,
    pub summary: String,
}

impl Outcome {
    fn new(passed: bool, result: impl Serialize, summary: String) -> Outcome {
        Outcome { passed, result: serde_json::to_value(result).expect("serializable"), summary }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// The document printed on standard output.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub passed: bool,
    pub result: Value,
}

/// Input files read so far, with their digests.
#[derive(Debug, Default)]
pub struct Session {
    pub inputs: Vec<InputDigest>,
    pub config: GroupConfig,
}

impl Session {
    pub fn read(&mut self, path: &Path) -> Result<Vec<u8>, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: format!("{:x}", Sha256::digest(&bytes)),
        });
        Ok(bytes)
    }

    pub fn load<T: serde::de::DeserializeOwned>(&mut self, path: &Path) -> Result<T, CliError> {
        let bytes = self.read(path)?;
        parse_json(path, &bytes)
    }

    pub fn load_group(&mut self, path: &Path) -> Result<(String, FiniteGroup), CliError> {
        let file: GroupFile = self.load(path)?;
        Ok((file.name().to_string(), file.build(&self.config)?))
    }

    /// Reads a pair file and the group file it refers to.
    pub fn load_pair(&mut self, path: &Path) -> Result<(String, MatchedPair), CliError> {
        let file: PairFile = self.load(path)?;
        let ambient = match &file.group {
            GroupRef::Inline(g) => g.build(&self.config)?,
            GroupRef::Path(p) => {
                let base = path.parent().unwrap_or(Path::new(""));
                self.load_group(&base.join(p))?.1
            }
        };
        Ok((file.name.clone(), file.build(&ambient)?))
    }

    pub fn report(self, command: Vec<String>, outcome: &Outcome) -> RunReport {
        RunReport { command, inputs: self.inputs, passed: outcome.passed, result: outcome.result.clone() }
    }
}

/// `Z/2 × Z/3`, `T^1 × Z/4`, or `trivial`.
pub fn describe_gamma(inv: &AbelianInvariants) -> String {
    let mut parts: Vec<String> = Vec::new();
    if inv.torus_rank > 0 {
        parts.push(format!("T^{}", inv.torus_rank));
    }
    parts.extend(inv.invariant_factors.iter().map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        String::from("trivial")
    } else {
        parts.join(" × ")
    }
}

#[derive(Serialize)]
struct FactorizeResult {
    name: String,
    tables: PairTables,
}

pub fn factorize(
    session: &mut Session,
    group: &Path,
    h1: &[usize],
    h2: &[usize],
    name: Option<&str>,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let (gname, g) = session.load_group(group)?;
    let name = name.map(str::to_string).unwrap_or_else(|| format!("{gname}-pair"));
    let file = PairFile {
        name: name.clone(),
        group: GroupRef::Inline(GroupFile::from_group(&gname, &g)),
        h1: h1.to_vec(),
        h2: h2.to_vec(),
    };
    let pair = file.build(&g)?;
    if let Some(out) = out {
        write_json(out, &file)?;
    }
    let tables = PairTables::new(&pair);
    let passed = tables.identities_hold;
    let summary = format!(
        "{name}: |H1| = {}, |H2| = {}, matched-pair identities {}",
        tables.n1,
        tables.n2,
        if passed { "hold" } else { "FAIL" }
    );
    Ok(Outcome::new(passed, FactorizeResult { name, tables }, summary))
}

pub fn extgroup(session: &mut Session, pair_path: &Path) -> Result<Outcome, CliError> {
    let (name, pair) = session.load_pair(pair_path)?;
    let inv = CohomologyContext::new(&pair).invariants();
    let summary = format!("{name}: Γ ≅ {}", describe_gamma(&inv));
    Ok(Outcome::new(true, GammaReport::from(&inv), summary))
}

#[derive(Serialize)]
struct CocyclesResult {
    invariants: GammaReport,
    order: u64,
    complete: bool,
    all_cocycles: bool,
    pairwise_distinct: bool,
    cocycles: Vec<CocycleFile>,
}

pub fn cocycles(
    session: &mut Session,
    pair_path: &Path,
    order: u64,
    out_dir: Option<&Path>,
) -> Result<Outcome, CliError> {
    if order == 0 {
        return Err(CliError::Usage(String::from("--order must be positive")));
    }
    let (name, pair) = session.load_pair(pair_path)?;
    let ctx = CohomologyContext::new(&pair);
    let reps = ctx.representatives(&pair, order);
    let all_cocycles = reps.cocycles.par_iter().all(|c| is_cocycle(&pair, c).is_empty());
    let pairs: Vec<(usize, usize)> = (0..reps.cocycles.len())
        .flat_map(|a| (a + 1..reps.cocycles.len()).map(move |b| (a, b)))
        .collect();
    let pairwise_distinct = all_cocycles
        && pairs.par_iter().all(|&(a, b)| {
            matches!(ctx.cohomologous(&pair, &reps.cocycles[a], &reps.cocycles[b]), Ok(None))
        });
    let files: Vec<CocycleFile> = reps.cocycles.iter().map(CocycleFile::from_pair).collect();
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        for (k, f) in files.iter().enumerate() {
            write_json(&dir.join(format!("class-{k}.json")), f)?;
        }
    }
    let summary = format!(
        "{name}: {} classes of order dividing {order} (Γ ≅ {}{})",
        files.len(),
        describe_gamma(&reps.invariants),
        if reps.complete { "" } else { ", not all classes reached" }
    );
    Ok(Outcome::new(
        all_cocycles && pairwise_distinct,
        CocyclesResult {
            invariants: GammaReport::from(&reps.invariants),
            order,
            complete: reps.complete,
            all_cocycles,
            pairwise_distinct,
            cocycles: files,
        },
        summary,
    ))
}

/// Which cocycles to use: the trivial one, every class representative, or a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleChoice {
    Trivial,
    AllClasses,
    File(PathBuf),
}

impl std::str::FromStr for CocycleChoice {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "trivial" => CocycleChoice::Trivial,
            "all" => CocycleChoice::AllClasses,
            path => CocycleChoice::File(PathBuf::from(path)),
        })
    }
}

fn resolve_cocycles(
    session: &mut Session,
    pair: &MatchedPair,
    choice: &CocycleChoice,
) -> Result<Vec<(String, CocyclePair)>, CliError> {
    Ok(match choice {
        CocycleChoice::Trivial => vec![(String::from("trivial"), CocyclePair::trivial(pair))],
        CocycleChoice::AllClasses => {
            let ctx = CohomologyContext::new(pair);
            let inv = ctx.invariants();
            if inv.torus_rank > 0 {
                return Err(CliError::input("Γ has a torus part; classes cannot be enumerated"));
            }
            let reps = ctx.representatives(pair, inv.exponent());
            reps.cocycles.into_iter().enumerate().map(|(k, c)| (format!("class {k}"), c)).collect()
        }
        CocycleChoice::File(path) => {
            let file: CocycleFile = session.load(path)?;
            vec![(path.display().to_string(), file.build(pair)?)]
        }
    })
}

#[derive(Serialize)]
struct ClassReport {
    label: String,
    denominator: i64,
    is_cocycle: bool,
    violations: Vec<String>,
    axioms: Vec<AxiomLine>,
    theta: Vec<AxiomLine>,
    dual: Vec<AxiomLine>,
    controls: Vec<ControlLine>,
    passed: bool,
}

fn line(axiom: &str, passed: bool) -> AxiomLine {
    AxiomLine { axiom: axiom.to_string(), passed, witness: None }
}

fn verify_class(pair: &MatchedPair, label: String, c: &CocyclePair) -> Result<(ClassReport, Option<FiniteQG>), CliError> {
    let violations = is_cocycle(pair, c);
    let mut report = ClassReport {
        label,
        denominator: c.denominator(),
        is_cocycle: violations.is_empty(),
        violations: violations.iter().take(5).map(|v| v.to_string()).collect(),
        axioms: Vec::new(),
        theta: Vec::new(),
        dual: Vec::new(),
        controls: Vec::new(),
        passed: false,
    };
    if !report.is_cocycle {
        return Ok((report, None));
    }
    let qg = FiniteQG::new(pair, c)?;
    report.axioms = qg.verify().iter().map(AxiomLine::from).collect();
    report.theta = theta_report(pair, &qg.cocycle).all().iter().map(|r| AxiomLine::from(*r)).collect();
    let dual = dual_build(&qg)?;
    report.dual.push(line("dual cocycle equations", dual.dual_is_cocycle));
    for r in [&dual.identification, &dual.biduality, &dual.dimensions, &dual.compact] {
        report.dual.push(AxiomLine::from(r));
    }
    for r in dual.dual.verify() {
        let mut l = AxiomLine::from(&r);
        l.axiom = format!("dual: {}", l.axiom);
        report.dual.push(l);
    }
    report.controls = negative_controls(&qg).iter().map(ControlLine::from).collect();
    report.passed = report.axioms.iter().chain(&report.theta).chain(&report.dual).all(|l| l.passed)
        && report.controls.iter().all(|c| c.detected);
    Ok((report, Some(qg)))
}

#[derive(Serialize)]
struct VerifyResult {
    pair: String,
    classes: Vec<ClassReport>,
}

pub fn verify(
    session: &mut Session,
    pair_path: &Path,
    choice: &CocycleChoice,
    dump_w: Option<&Path>,
) -> Result<Outcome, CliError> {
    let (name, pair) = session.load_pair(pair_path)?;
    let chosen = resolve_cocycles(session, &pair, choice)?;
    if dump_w.is_some() && chosen.len() != 1 {
        return Err(CliError::Usage(String::from("--dump-w needs a single cocycle")));
    }
    let results: Vec<(ClassReport, Option<FiniteQG>)> = chosen
        .into_par_iter()
        .map(|(label, c)| verify_class(&pair, label, &c))
        .collect::<Result<_, _>>()?;
    if let Some(path) = dump_w {
        match &results[0].1 {
            Some(qg) => write_json(path, &OperatorDump::from(&qg.w))?,
            None => return Err(CliError::input("no W to dump: the input is not a cocycle")),
        }
    }
    let classes: Vec<ClassReport> = results.into_iter().map(|r| r.0).collect();
    let passed = classes.iter().all(|c| c.passed);
    let mut summary = format!("{name}:");
    for c in &classes {
        let ok = c.axioms.iter().chain(&c.theta).chain(&c.dual).filter(|l| l.passed).count();
        let total = c.axioms.len() + c.theta.len() + c.dual.len();
        let detected = c.controls.iter().filter(|x| x.detected).count();
        let _ = write!(
            summary,
            " [{}: {}{ok}/{total} checks, {detected}/{} controls detected]",
            c.label,
            if c.is_cocycle { "" } else { "NOT A COCYCLE, " },
            c.controls.len()
        );
    }
    Ok(Outcome::new(passed, VerifyResult { pair: name, classes }, summary))
}

#[derive(Serialize)]
struct ThetaResult {
    is_cocycle: bool,
    normalized: bool,
    checks: Vec<AxiomLine>,
}

pub fn theta(session: &mut Session, pair_path: &Path, choice: &CocycleChoice) -> Result<Outcome, CliError> {
    let (name, pair) = session.load_pair(pair_path)?;
    if *choice == CocycleChoice::AllClasses {
        return Err(CliError::Usage(String::from("theta takes `trivial` or a cocycle file")));
    }
    let (label, c) = resolve_cocycles(session, &pair, choice)?.remove(0);
    let report = theta_report(&pair, &c);
    let normalized = normalization_defects(&pair, &c).is_empty();
    // The inverse formulas presuppose normalized input.
    let passed = report.factorizes.passed
        && report.multiplicative.passed
        && report.pointwise.passed
        && (!normalized || report.inverse_recovers.passed);
    let summary = format!(
        "{name}, {label}: Θ·Ŵ0 {}multiplicative",
        if report.multiplicative.passed { "" } else { "NOT " }
    );
    let result = ThetaResult {
        is_cocycle: is_cocycle(&pair, &c).is_empty(),
        normalized,
        checks: report.all().iter().map(|r| AxiomLine::from(*r)).collect(),
    };
    Ok(Outcome::new(passed, result, summary))
}

/// The continuous examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleKind {
    Axb,
    Sl2,
    Cocycle,
    Infinitesimal,
}

#[derive(Clone, Debug)]
pub struct ExampleArgs {
    pub kind: ExampleKind,
    pub n: i64,
    pub samples: Option<usize>,
    pub seed: u64,
    pub line_points: usize,
    pub bank: usize,
    pub quad: QuadConfig,
}

pub fn example(args: &ExampleArgs) -> Result<Outcome, CliError> {
    if args.quad.max_evals == 0 || !(args.quad.abs_tol >= 0.0) || !(args.quad.rel_tol >= 0.0) {
        return Err(CliError::Usage(String::from("quadrature tolerances must be non-negative and the budget positive")));
    }
    let report: ExampleReport = match args.kind {
        ExampleKind::Axb => axb_example_check(args.samples.unwrap_or(10_000), args.seed),
        ExampleKind::Sl2 => sl2_example_check(args.samples.unwrap_or(10_000), args.seed),
        ExampleKind::Cocycle => cocycle_example_check(&CocycleCheckConfig {
            n: args.n,
            samples: args.samples.unwrap_or(1000),
            line_points: args.line_points,
            bank: args.bank,
            seed: args.seed,
            quad: args.quad,
        }),
        ExampleKind::Infinitesimal => infinitesimal_check(args.n),
    };
    let failed: Vec<&str> = report.lines.iter().filter(|l| !l.passed).map(|l| l.name).collect();
    let summary = if failed.is_empty() {
        format!("{}: all {} checks pass", report.example, report.lines.len())
    } else {
        format!("{}: failed: {}", report.example, failed.join("; "))
    };
    Ok(Outcome::new(report.passed(), &report, summary))
}

#[derive(Serialize)]
struct FixturesResult {
    written: Vec<String>,
}

/// Writes `<name>.group.json` and `<name>.pair.json` for every bundled pair.
pub fn write_fixtures(dir: &Path) -> Result<Outcome, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::new();
    for spec in fixtures::all_specs() {
        let group_name = format!("{}.group.json", spec.name);
        write_json(&dir.join(&group_name), &GroupFile::from_group(spec.name, &spec.group))?;
        let pair = PairFile {
            name: spec.name.to_string(),
            group: GroupRef::Path(PathBuf::from(&group_name)),
            h1: spec.h1.clone(),
            h2: spec.h2.clone(),
        };
        let pair_name = format!("{}.pair.json", spec.name);
        write_json(&dir.join(&pair_name), &pair)?;
        written.push(group_name);
        written.push(pair_name);
    }
    let summary = format!("wrote {} files to {}", written.len(), dir.display());
    Ok(Outcome::new(true, FixturesResult { written }, summary))
}
