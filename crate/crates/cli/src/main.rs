use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hallbound::chars::dixon;
use hallbound::harness::{
    default_corpus, load_corpus, pi_sets_for, run_corpus, BuiltEntry, Check, RunConfig, RunError, RunOutcome,
};
use hallbound::linear::Mode;
use hallbound::orbits::{fd_csv, fd_scan, gamma_direct_check, regular_orbit_small_centralizer, Unit};
use hallbound::perm::conjugacy_classes;
use hallbound::pi::PiSet;
use hallbound::radicals::{o_pi, o_pi_prime_pi};

#[derive(Parser)]
#[command(name = "hallbound", version, about = "Verify orbit theorems and |G:O_{π'π}(G)|_π ≤ b(H)² on a corpus of groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Batch runs over a corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Single checks on one corpus entry.
    Verify {
        #[command(subcommand)]
        check: VerifyCheck,
    },
    /// Tables that do not depend on a corpus.
    Scan {
        #[command(subcommand)]
        table: ScanTable,
    },
    /// Facts about corpus groups.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Run every check on every entry; writes report.jsonl and summary.csv.
    Run(Common),
}

#[derive(Subcommand)]
enum VerifyCheck {
    /// |G : O_{π'π}(G)|_π ≤ b(H)² for a Hall π-subgroup H.
    Inequality(Common),
    /// Qualifying orbits of H (or G) on V ⊕ V.
    Orbits(Common),
    /// A pair (v₁, v₂) with C_H(v₁) ∩ C_H(v₂) ≤ O_π(G).
    Pair(Common),
    /// A regular orbit on V ⊕ V forces a point with |C(v)|² ≤ |G|. Uses G
    /// unless --pi selects a Hall subgroup.
    Lemma(Common),
    /// Every π-subgroup of Γ(p^d) for the small (p, d) left open by f(d).
    Gamma(GammaArgs),
}

#[derive(Subcommand)]
enum ScanTable {
    /// Certified signs of f(d).
    Fd(FdArgs),
}

#[derive(Subcommand)]
enum GroupAction {
    /// Order, classes, character degrees and π-cores of an entry.
    Info(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Corpus file (JSON); defaults to the shipped corpus.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Run configuration (TOML); flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Corpus entry name; repeatable.
    #[arg(long = "entry")]
    entries: Vec<String>,
    /// Comma-separated primes, e.g. 2,3; repeatable.
    #[arg(long = "pi")]
    pi: Vec<String>,
    #[arg(long, value_parser = ["H", "G"])]
    unit: Option<String>,
    #[arg(long, value_parser = ["strict", "lenient"])]
    mode: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Output file, or output directory for `corpus run`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Record wall-clock times in reports (makes them non-reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct GammaArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    pi: String,
    #[arg(long, value_parser = ["strict", "lenient"], default_value = "lenient")]
    mode: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FdArgs {
    #[arg(long, default_value_t = 2)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    from: u32,
    /// Last d; 64 for p = 2 and 40 for p = 3 by default.
    #[arg(long)]
    to: Option<u32>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}

fn run(cli: Cli) -> Result<i32, RunError> {
    match cli.command {
        Command::Corpus {
            action: CorpusAction::Run(c),
        } => corpus_run(&c),
        Command::Verify { check } => match check {
            VerifyCheck::Inequality(c) => verify_one(&c, Check::MainInequality),
            VerifyCheck::Orbits(c) => verify_one(&c, Check::OrbitTheorem),
            VerifyCheck::Pair(c) => verify_one(&c, Check::PairExists),
            VerifyCheck::Lemma(c) if !c.pi.is_empty() => verify_one(&c, Check::SmallCentralizer),
            VerifyCheck::Lemma(c) => verify_lemma(&c),
            VerifyCheck::Gamma(g) => verify_gamma(&g),
        },
        Command::Scan {
            table: ScanTable::Fd(f),
        } => scan_fd(&f),
        Command::Group {
            action: GroupAction::Info(c),
        } => group_info(&c),
    }
}

fn config_err(e: impl std::fmt::Display) -> RunError {
    RunError::Config(e.to_string())
}

fn build_config(c: &Common) -> Result<RunConfig, RunError> {
    let mut config = match &c.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
            RunConfig::from_toml_str(&text)?
        }
        None => RunConfig::default(),
    };
    if c.corpus.is_some() {
        config.corpus = c.corpus.clone();
    }
    if !c.entries.is_empty() {
        config.entries = c.entries.clone();
    }
    if !c.pi.is_empty() {
        let sets = c.pi.iter().map(|s| s.parse::<PiSet>()).collect::<Result<Vec<_>, _>>();
        config.pi_sets = Some(sets.map_err(config_err)?);
    }
    if let Some(u) = &c.unit {
        config.unit = u.parse::<Unit>().map_err(config_err)?;
    }
    if let Some(m) = &c.mode {
        config.mode = m.parse::<Mode>().map_err(config_err)?;
    }
    if let Some(s) = c.seed {
        config.seed = s;
    }
    if let Some(j) = c.jobs {
        config.jobs = j;
    }
    config.timings |= c.timings;
    Ok(config)
}

fn load(config: &RunConfig) -> Result<Vec<BuiltEntry>, RunError> {
    match &config.corpus {
        Some(path) => load_corpus(path, config.limits),
        None => default_corpus(config.limits),
    }
    .map_err(|e| RunError::Corpus(e.0))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), RunError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| config_err(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_violations(outcome: &RunOutcome) {
    for r in outcome.violations() {
        eprintln!("{} [{}] {}: {}", r.status.as_str(), r.pi, r.check, r.entry);
    }
}

fn corpus_run(c: &Common) -> Result<i32, RunError> {
    let config = build_config(c)?;
    let corpus = load(&config)?;
    let outcome = run_corpus(&corpus, &config)?;
    let dir = c.out.clone().unwrap_or_else(|| PathBuf::from("hallbound-report"));
    outcome.write(&dir).map_err(|e| config_err(format!("{}: {e}", dir.display())))?;
    report_violations(&outcome);
    let failed = outcome.violations().count();
    eprintln!(
        "{} entries, {} records, {} failed; reports in {}",
        corpus.len(),
        outcome.records.len(),
        failed,
        dir.display()
    );
    Ok(outcome.exit_code())
}

fn single_entry<'a>(c: &Common, corpus: &'a [BuiltEntry]) -> Result<&'a BuiltEntry, RunError> {
    let [name] = c.entries.as_slice() else {
        return Err(config_err("exactly one --entry is required"));
    };
    corpus
        .iter()
        .find(|e| e.name() == name)
        .ok_or_else(|| config_err(format!("no corpus entry named {name:?}")))
}

fn verify_one(c: &Common, check: Check) -> Result<i32, RunError> {
    let mut config = build_config(c)?;
    config.checks = vec![check];
    let corpus = load(&config)?;
    single_entry(c, &corpus)?;
    let outcome = run_corpus(&corpus, &config)?;
    let text = match c.format.unwrap_or(Format::Json) {
        Format::Json => outcome.report_jsonl(),
        Format::Csv => outcome.summary_csv(),
    };
    emit(&text, c.out.as_deref())?;
    report_violations(&outcome);
    Ok(outcome.exit_code())
}

fn verify_lemma(c: &Common) -> Result<i32, RunError> {
    let config = build_config(c)?;
    let corpus = load(&config)?;
    let entry = single_entry(c, &corpus)?;
    let group = match &entry.module {
        Some(m) => &m.perm_image().map_err(config_err)?.group,
        None => &entry.group,
    };
    let r = regular_orbit_small_centralizer(group).map_err(|e| RunError::Corpus(e.to_string()))?;
    let text = match c.format.unwrap_or(Format::Json) {
        Format::Json => format!("{}\n", json!({"entry": entry.name(), "report": r})),
        Format::Csv => {
            let opt = |x: Option<u128>| x.map(|v| v.to_string()).unwrap_or_default();
            format!(
                "entry,group_order,regular_orbit_exists,witness,centralizer_order,holds\n{},{},{},{},{},{}\n",
                entry.name(),
                r.group_order,
                r.regular_orbit_exists,
                opt(r.witness.map(u128::from)),
                opt(r.centralizer_order),
                r.holds
            )
        }
    };
    emit(&text, c.out.as_deref())?;
    Ok(if r.holds { 0 } else { 1 })
}

fn verify_gamma(g: &GammaArgs) -> Result<i32, RunError> {
    let pi: PiSet = g.pi.parse().map_err(config_err)?;
    let mode: Mode = g.mode.parse().map_err(config_err)?;
    let cases = gamma_direct_check(g.p, g.d, &pi, mode).map_err(config_err)?;
    let failed = cases
        .iter()
        .filter(|c| c.report.hypothesis.eligible && !c.report.threshold_met)
        .count();
    let text = format!("{}\n", serde_json::to_string_pretty(&cases).expect("cases serialize"));
    emit(&text, g.out.as_deref())?;
    Ok(if failed == 0 { 0 } else { 1 })
}

fn scan_fd(f: &FdArgs) -> Result<i32, RunError> {
    let to = f.to.unwrap_or(if f.p == 3 { 40 } else { 64 });
    let rows = fd_scan(f.p, f.from..=to).map_err(config_err)?;
    let text = match f.format {
        Format::Csv => fd_csv(&rows),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&rows).expect("rows serialize")),
    };
    emit(&text, f.out.as_deref())?;
    Ok(0)
}

fn group_info(c: &Common) -> Result<i32, RunError> {
    let config = build_config(c)?;
    let corpus = load(&config)?;
    let entry = single_entry(c, &corpus)?;
    let g = &entry.group;
    let failed = |e: hallbound::Error| RunError::Corpus(format!("entry {:?}: {e}", entry.name()));
    let classes = conjugacy_classes(g).map_err(failed)?;
    let chars = dixon(g, config.seed).map_err(failed)?;
    let pis = config.pi_sets.clone().unwrap_or_else(|| pi_sets_for(entry));
    let mut cores = Vec::new();
    for pi in &pis {
        let (upper, lower) = o_pi_prime_pi(g, pi).map_err(failed)?;
        cores.push(json!({
            "pi": pi,
            "o_pi": o_pi(g, pi).map_err(failed)?.order(),
            "o_pi_prime": lower.order(),
            "o_pi_prime_pi": upper.order(),
        }));
    }
    let mut info = json!({
        "name": entry.name(),
        "order": g.order(),
        "degree": g.degree(),
        "solvable": entry.solvable,
        "classes": classes.len(),
        "exponent": classes.exponent,
        "character_degrees": chars.degrees,
        "dixon_prime": chars.prime,
        "cores": cores,
    });
    if let Some(m) = &entry.module {
        let image = m.perm_image().map_err(failed)?;
        info["module"] = json!({
            "space": m.space().to_string(),
            "points": m.space().points(),
            "faithful": image.faithful,
            "image_order": image.group.order(),
        });
    }
    let text = match c.format.unwrap_or(Format::Json) {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&info).expect("info serializes")),
        Format::Csv => format!(
            "name,order,solvable,classes,exponent,degrees\n{},{},{},{},{},\"{}\"\n",
            entry.name(),
            g.order(),
            entry.solvable,
            classes.len(),
            classes.exponent,
            chars.degrees
        ),
    };
    emit(&text, c.out.as_deref())?;
    Ok(0)
}
