//! Corpus-driven verification with machine-readable reports.

mod corpus;
mod inequality;
mod record;
mod run;

pub use corpus::{
    build_entry, default_corpus, load_corpus, parse_corpus, AbstractSpec, BuiltEntry, ComponentSpec, Construct,
    CorpusEntry, CorpusError, EntryKind, GenSpec, DEFAULT_CORPUS,
};
pub use inequality::{verify_main_inequality, verify_main_inequality_with, Branch, Inequality, InequalityReport};
pub use record::{Check, ExpectationDiff, Status, VerificationRecord};
pub use run::{pi_sets_for, run_all, run_corpus, RunConfig, RunError, RunOutcome};
