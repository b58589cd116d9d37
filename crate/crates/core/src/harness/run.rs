//! Batch runs over a corpus: one record per `(entry, π, check)`, written as
//! JSON lines plus a CSV summary. Output depends only on the corpus, the
//! configuration and the seed, never on the number of worker threads.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::harness::corpus::{default_corpus, load_corpus, BuiltEntry};
use crate::harness::inequality::{verify_main_inequality_with, Branch, Inequality};
use crate::harness::record::{Check, Status, VerificationRecord};
use crate::linear::{check_hypotheses_with, HypothesisReport, MatrixGroup, Mode};
use crate::orbits::{pair_exists_with, qualifying_orbits_with, regular_orbit_small_centralizer, Unit};
use crate::perm::{normal_lattice, separability_from_lattice, NormalLattice, PermGroup};
use crate::pi::PiSet;
use crate::radicals::{hall_subgroup_unchecked, stream_seed, ClassClosures};
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Corpus file; the shipped corpus when absent.
    pub corpus: Option<PathBuf>,
    pub checks: Vec<Check>,
    pub unit: Unit,
    pub mode: Mode,
    pub seed: u64,
    /// Worker threads; 0 means one per available core.
    pub jobs: usize,
    /// Record wall-clock times. Reports are then no longer reproducible.
    pub timings: bool,
    /// Restrict the run to these entry names.
    pub entries: Vec<String>,
    /// Check exactly these π-sets on every entry instead of each entry's own.
    pub pi_sets: Option<Vec<PiSet>>,
    pub limits: Limits,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            corpus: None,
            checks: Check::ALL.to_vec(),
            unit: Unit::H,
            mode: Mode::Lenient,
            seed: 0,
            jobs: 0,
            timings: false,
            entries: Vec::new(),
            pi_sets: None,
            limits: Limits::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> std::result::Result<Self, RunError> {
        toml::from_str(text).map_err(|e| RunError::Config(format!("config: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("corpus error: {0}")]
    Corpus(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Corpus(_) => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    /// Sorted: failures first, then by entry, π and check.
    pub records: Vec<VerificationRecord>,
}

impl RunOutcome {
    pub fn violations(&self) -> impl Iterator<Item = &VerificationRecord> {
        self.records.iter().filter(|r| !r.holds)
    }

    /// 0 when every record holds, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.violations().next().is_some() {
            1
        } else {
            0
        }
    }

    pub fn report_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["entry", "pi", "check", "status", "holds", "hypothesis", "value", "bound"])
            .expect("in-memory write");
        let opt = |x: Option<u128>| x.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.records {
            w.write_record([
                r.entry.clone(),
                r.pi.to_string(),
                r.check.to_string(),
                r.status.as_str().to_string(),
                r.holds.to_string(),
                r.hypothesis.clone(),
                opt(r.value),
                opt(r.bound),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    /// Writes `report.jsonl` and `summary.csv` into `dir`.
    pub fn write(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.jsonl"), self.report_jsonl())?;
        std::fs::write(dir.join("summary.csv"), self.summary_csv())
    }
}

/// Loads the configured corpus and runs every requested check.
pub fn run_all(config: &RunConfig) -> std::result::Result<RunOutcome, RunError> {
    let corpus = match &config.corpus {
        Some(path) => load_corpus(path, config.limits),
        None => default_corpus(config.limits),
    }
    .map_err(|e| RunError::Corpus(e.0))?;
    run_corpus(&corpus, config)
}

/// The π-sets an entry is checked for: its explicit list closed under
/// complements, or every non-empty set of primes dividing `|G|`.
pub fn pi_sets_for(entry: &BuiltEntry) -> Vec<PiSet> {
    let order = entry.order();
    let mut sets = match &entry.entry.pi_sets {
        None => PiSet::all_nonempty_subsets(order),
        Some(explicit) => {
            let mut v = explicit.clone();
            for pi in explicit {
                let c = pi.complement_for(order);
                if !c.is_empty() {
                    v.push(c);
                }
            }
            v
        }
    };
    sets.sort_by(|a, b| a.primes().len().cmp(&b.primes().len()).then(a.cmp(b)));
    sets.dedup();
    sets
}

/// Per-entry data shared by every π.
struct Prepared<'a> {
    built: &'a BuiltEntry,
    closures: ClassClosures,
    lattice: Option<NormalLattice>,
    /// Class closures of the module's point action, when it differs from
    /// the entry group.
    image_closures: Option<ClassClosures>,
}

impl Prepared<'_> {
    fn branch(&self, pi: &PiSet) -> Option<Branch> {
        if self.built.solvable {
            return Some(Branch::Solvable);
        }
        let lattice = self.lattice.as_ref().expect("prepared for non-solvable groups");
        separability_from_lattice(lattice, pi).separable.then_some(Branch::PiSeparable)
    }
}

pub fn run_corpus(corpus: &[BuiltEntry], config: &RunConfig) -> std::result::Result<RunOutcome, RunError> {
    if config.checks.is_empty() {
        return Err(RunError::Config("no checks requested".into()));
    }
    if config.pi_sets.iter().flatten().any(|pi| pi.is_empty()) {
        return Err(RunError::Config("empty π-set".into()));
    }
    for name in &config.entries {
        if !corpus.iter().any(|e| e.name() == name) {
            return Err(RunError::Config(format!("no corpus entry named {name:?}")));
        }
    }
    let selected: Vec<&BuiltEntry> = corpus
        .iter()
        .filter(|e| config.entries.is_empty() || config.entries.iter().any(|n| n == e.name()))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| RunError::Config(format!("thread pool: {e}")))?;
    let corpus_err = |name: &str, e: Error| RunError::Corpus(format!("entry {name:?}: {e}"));

    let records = pool.install(|| {
        let prepared = selected
            .par_iter()
            .map(|&built| prepare(built).map_err(|e| corpus_err(built.name(), e)))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let tasks: Vec<(&Prepared, PiSet)> = prepared
            .iter()
            .flat_map(|p| {
                let sets = config.pi_sets.clone().unwrap_or_else(|| pi_sets_for(p.built));
                sets.into_iter().map(move |pi| (p, pi))
            })
            .collect();
        let nested = tasks
            .par_iter()
            .map(|(p, pi)| verify_entry(p, pi, config).map_err(|e| corpus_err(p.built.name(), e)))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok::<_, RunError>(nested.into_iter().flatten().collect::<Vec<_>>())
    })?;
    let mut records = records;
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(RunOutcome { records })
}

fn prepare(built: &BuiltEntry) -> Result<Prepared<'_>> {
    let closures = ClassClosures::new(&built.group)?;
    let lattice = if built.solvable {
        None
    } else {
        Some(normal_lattice(&built.group)?)
    };
    let image_closures = match &built.module {
        Some(m) if m.abstract_generators().is_some() => Some(ClassClosures::new(&m.perm_image()?.group)?),
        _ => None,
    };
    Ok(Prepared {
        built,
        closures,
        lattice,
        image_closures,
    })
}

struct Draft {
    check: Check,
    status: Status,
    holds: bool,
    hypothesis: String,
    value: Option<u128>,
    bound: Option<u128>,
    details: Value,
}

impl Draft {
    fn skipped(check: Check, why: impl Into<String>) -> Draft {
        Draft {
            check,
            status: Status::Skipped,
            holds: true,
            hypothesis: why.into(),
            value: None,
            bound: None,
            details: Value::Null,
        }
    }

    fn decided(check: Check, holds: bool, hypothesis: String, value: Option<u128>, bound: Option<u128>, details: Value) -> Draft {
        Draft {
            check,
            status: if holds { Status::Ok } else { Status::Violation },
            holds,
            hypothesis,
            value,
            bound,
            details,
        }
    }
}

/// All requested checks for one entry and one π.
fn verify_entry(p: &Prepared, pi: &PiSet, config: &RunConfig) -> Result<Vec<VerificationRecord>> {
    let built = p.built;
    let name = built.name();
    let seed = stream_seed(config.seed, name, pi);
    let branch = p.branch(pi);
    let mut out = Vec::with_capacity(config.checks.len());
    // the module-side Hall subgroup is shared by the orbit checks
    let mut module_hall: Option<PermGroup> = None;
    for &check in &config.checks {
        let start = Instant::now();
        let draft = match check {
            Check::MainInequality => main_inequality(p, branch, pi, seed)?,
            _ => match (&built.module, branch) {
                (None, _) => Draft::skipped(check, "no module: permutation entry"),
                (Some(_), None) => Draft::skipped(check, format!("not {{{pi}}}-separable")),
                (Some(_), Some(Branch::PiSeparable)) if check == Check::OrbitTheorem => {
                    Draft::skipped(check, "not solvable")
                }
                (Some(m), Some(_)) => {
                    let image = &m.perm_image()?.group;
                    if module_hall.is_none() {
                        module_hall = Some(hall_subgroup_unchecked(
                            image,
                            pi,
                            stream_seed(seed, "hall-subgroup", pi),
                        )?);
                    }
                    let h = module_hall.as_ref().expect("just set");
                    module_check(p, m, h, check, pi, config)?
                }
            },
        };
        let mut record = VerificationRecord {
            entry: name.to_string(),
            pi: pi.clone(),
            check,
            status: draft.status,
            holds: draft.holds,
            hypothesis: draft.hypothesis,
            value: draft.value,
            bound: draft.bound,
            seed: config.seed,
            details: draft.details,
            expectation_diffs: Vec::new(),
            elapsed_ms: config.timings.then(|| start.elapsed().as_millis() as u64),
        };
        debug_assert_eq!(record.check, draft.check);
        record.apply_expectations(&built.entry.expectations);
        out.push(record);
    }
    Ok(out)
}

fn main_inequality(p: &Prepared, branch: Option<Branch>, pi: &PiSet, seed: u64) -> Result<Draft> {
    let check = Check::MainInequality;
    let Some(branch) = branch else {
        return Ok(Draft::skipped(check, format!("not {{{pi}}}-separable")));
    };
    let built = p.built;
    match verify_main_inequality_with(&built.group, &p.closures, branch, pi, seed)? {
        Inequality::Skipped(why) => Ok(Draft::skipped(check, why)),
        Inequality::Verified { report, hall } => {
            let mut details = serde_json::to_value(&report).expect("report serializes");
            if let Some(m) = built.module.as_ref().filter(|m| m.abstract_generators().is_none()) {
                details["hall_matrices"] = matrices_json(m, &hall)?;
            }
            let hypothesis = match branch {
                Branch::Solvable => "solvable".to_string(),
                Branch::PiSeparable => format!("{{{pi}}}-separable"),
            };
            Ok(Draft::decided(
                check,
                report.holds,
                hypothesis,
                Some(report.lhs),
                Some(report.rhs),
                details,
            ))
        }
    }
}

fn matrices_json(m: &MatrixGroup, h: &PermGroup) -> Result<Value> {
    let gens = h
        .generators()
        .iter()
        .map(|g| Ok(m.matrices_of(g)?.iter().map(|b| b.entries().to_vec()).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    Ok(json!(gens))
}

fn describe(h: &HypothesisReport) -> String {
    let mut missing = Vec::new();
    if !h.faithful {
        missing.push("module not faithful".to_string());
    }
    if h.mode == Mode::Strict && !h.characteristic_in_pi {
        missing.push("characteristic not in π".to_string());
    }
    for (c, ok) in h.completely_reducible.iter().enumerate() {
        if !ok {
            missing.push(format!("component {c} not completely reducible under O_π(G)"));
        }
    }
    if missing.is_empty() {
        format!("eligible ({})", h.mode)
    } else {
        format!("ineligible ({}): {}", h.mode, missing.join("; "))
    }
}

fn module_check(
    p: &Prepared,
    m: &MatrixGroup,
    h: &PermGroup,
    check: Check,
    pi: &PiSet,
    config: &RunConfig,
) -> Result<Draft> {
    let image = &m.perm_image()?.group;
    let closures = p.image_closures.as_ref().unwrap_or(&p.closures);
    let core = closures.o_pi(image, pi)?;
    let hall_matrices = matrices_json(m, h)?;
    match check {
        Check::OrbitTheorem | Check::PairExists => {
            let hyp = check_hypotheses_with(m, &core, pi, config.mode)?;
            let eligible = hyp.eligible;
            let hypothesis = describe(&hyp);
            let (holds, value, bound, mut details) = if check == Check::OrbitTheorem {
                let r = qualifying_orbits_with(m, h, &core, hyp, pi, config.unit)?;
                let v = (r.threshold_met, Some(r.qualifying as u128), Some(r.threshold as u128));
                (v.0, v.1, v.2, serde_json::to_value(&r).expect("report serializes"))
            } else {
                let r = pair_exists_with(m, h, &core, hyp, pi)?;
                let pair = r.witness.as_ref().map(|w| w.pair as u128);
                (pair.is_some(), pair, None, serde_json::to_value(&r).expect("report serializes"))
            };
            details["hall_matrices"] = hall_matrices;
            if !eligible {
                let mut d = Draft::skipped(check, hypothesis);
                (d.value, d.bound, d.details) = (value, bound, details);
                return Ok(d);
            }
            Ok(Draft::decided(check, holds, hypothesis, value, bound, details))
        }
        Check::SmallCentralizer => {
            let r = regular_orbit_small_centralizer(h)?;
            let hypothesis = if r.regular_orbit_exists {
                "regular orbit on V+V".to_string()
            } else {
                "no regular orbit on V+V".to_string()
            };
            let mut details = serde_json::to_value(&r).expect("report serializes");
            details["hall_matrices"] = hall_matrices;
            let value = r.centralizer_order.map(|c| c * c);
            Ok(Draft::decided(check, r.holds, hypothesis, value, Some(r.group_order), details))
        }
        Check::MainInequality => unreachable!("handled by main_inequality"),
    }
}
