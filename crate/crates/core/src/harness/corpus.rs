//! Corpus files: a JSON list of permutation and matrix group entries.
//!
//! ```json
//! [
//!   {"name": "S4", "kind": "perm", "degree": 4, "gens": ["(0 1)", "(0 1 2 3)"]},
//!   {"name": "GL23", "kind": "mat", "field": "GF(3)", "dim": 2,
//!    "gens": [[1, 1, 0, 1], [0, 1, 1, 0]]},
//!   {"name": "Gamma8", "kind": "mat", "construct": {"family": "Gamma", "p": 2, "d": 3}}
//! ]
//! ```
//!
//! Permutation generators are cycle strings or image arrays. Matrix
//! generators are row-major lists of canonical field indices; with several
//! `components` each generator is a list of blocks, one per component.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::field::FieldSpec;
use crate::linear::{Component, Matrix, MatrixGroup, ModuleSpace};
use crate::perm::{is_solvable, PermGroup, Permutation};
use crate::pi::PiSet;
use crate::Limits;

/// The corpus shipped with the crate.
pub const DEFAULT_CORPUS: &str = include_str!("../../corpus/default.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Perm,
    Mat,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GenSpec {
    Cycles(String),
    Flat(Vec<u32>),
    Blocks(Vec<Vec<u32>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub field: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", deny_unknown_fields)]
pub enum Construct {
    GL { field: String, dim: usize },
    SL { field: String, dim: usize },
    Gamma { p: u64, d: u32 },
}

/// An abstract permutation group whose `i`-th generator maps to matrix
/// generator `i`; used for modules that are not faithful.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbstractSpec {
    pub degree: usize,
    pub gens: Vec<GenSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub kind: EntryKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construct: Option<Construct>,
    #[serde(default)]
    pub gens: Vec<GenSpec>,
    #[serde(default, rename = "abstract", skip_serializing_if = "Option::is_none")]
    pub abstract_group: Option<AbstractSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi_sets: Option<Vec<PiSet>>,
    /// `"<check>[<primes>].<field path>"` → expected value.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expectations: BTreeMap<String, Value>,
}

/// An entry with its groups built.
#[derive(Clone, Debug)]
pub struct BuiltEntry {
    pub entry: CorpusEntry,
    /// The group the inequality is checked on: the abstract group when one is
    /// attached, otherwise the action on points.
    pub group: PermGroup,
    pub module: Option<MatrixGroup>,
    pub solvable: bool,
}

impl BuiltEntry {
    pub fn name(&self) -> &str {
        &self.entry.name
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct CorpusError(pub String);

pub fn load_corpus(path: &Path, limits: Limits) -> Result<Vec<BuiltEntry>, CorpusError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CorpusError(format!("cannot read {}: {e}", path.display())))?;
    parse_corpus(&text, limits).map_err(|e| CorpusError(format!("{}: {}", path.display(), e.0)))
}

pub fn default_corpus(limits: Limits) -> Result<Vec<BuiltEntry>, CorpusError> {
    parse_corpus(DEFAULT_CORPUS, limits)
}

pub fn parse_corpus(text: &str, limits: Limits) -> Result<Vec<BuiltEntry>, CorpusError> {
    let entries: Vec<CorpusEntry> =
        serde_json::from_str(text).map_err(|e| CorpusError(format!("parse error: {e}")))?;
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(entries.len());
    for (i, entry) in entries.into_iter().enumerate() {
        if !seen.insert(entry.name.clone()) {
            return Err(CorpusError(format!("entry #{i}: duplicate name {:?}", entry.name)));
        }
        let name = entry.name.clone();
        out.push(build_entry(entry, limits).map_err(|e| CorpusError(format!("entry #{i} {name:?}: {e}")))?);
    }
    Ok(out)
}

pub fn build_entry(entry: CorpusEntry, limits: Limits) -> Result<BuiltEntry, String> {
    let (group, module) = match entry.kind {
        EntryKind::Perm => {
            let degree = entry.degree.ok_or("perm entry needs \"degree\"")?;
            for key in ["field", "dim", "components", "construct", "abstract"] {
                let present = match key {
                    "field" => entry.field.is_some(),
                    "dim" => entry.dim.is_some(),
                    "components" => entry.components.is_some(),
                    "construct" => entry.construct.is_some(),
                    _ => entry.abstract_group.is_some(),
                };
                if present {
                    return Err(format!("field {key:?} is not allowed on a perm entry"));
                }
            }
            let gens = perm_gens(degree, &entry.gens, "gens")?;
            let g = PermGroup::with_limits(degree, gens, limits).map_err(|e| e.to_string())?;
            (g, None)
        }
        EntryKind::Mat => {
            let m = matrix_group(&entry, limits)?;
            let g = match &entry.abstract_group {
                Some(a) => {
                    let gens = perm_gens(a.degree, &a.gens, "abstract.gens")?;
                    PermGroup::with_limits(a.degree, gens, limits).map_err(|e| e.to_string())?
                }
                None => m.perm_image().map_err(|e| e.to_string())?.group.clone(),
            };
            (g, Some(m))
        }
    };
    let solvable = is_solvable(&group).map_err(|e| e.to_string())?;
    if let Some(sets) = &entry.pi_sets {
        for pi in sets {
            if pi.is_empty() {
                return Err("pi_sets: empty prime set".into());
            }
        }
    }
    Ok(BuiltEntry {
        entry,
        group,
        module,
        solvable,
    })
}

fn perm_gens(degree: usize, gens: &[GenSpec], what: &str) -> Result<Vec<Permutation>, String> {
    gens.iter()
        .enumerate()
        .map(|(i, g)| {
            let p = match g {
                GenSpec::Cycles(s) => Permutation::from_cycles(degree, s),
                GenSpec::Flat(images) => {
                    if images.len() != degree {
                        return Err(format!("{what}[{i}]: {} images for degree {degree}", images.len()));
                    }
                    Permutation::from_images(images.clone())
                }
                GenSpec::Blocks(_) => return Err(format!("{what}[{i}]: expected a cycle string or image list")),
            };
            p.map_err(|e| format!("{what}[{i}]: {e}"))
        })
        .collect()
}

fn matrix_group(entry: &CorpusEntry, limits: Limits) -> Result<MatrixGroup, String> {
    let field = |name: &str| FieldSpec::parse(name, &limits).map_err(|e| e.to_string());
    let err = |e: crate::Error| e.to_string();
    if let Some(c) = &entry.construct {
        if entry.field.is_some() || entry.components.is_some() || !entry.gens.is_empty() {
            return Err("\"construct\" excludes field, components and gens".into());
        }
        let m = match c {
            Construct::GL { field: f, dim } => MatrixGroup::general_linear(field(f)?, *dim, limits),
            Construct::SL { field: f, dim } => MatrixGroup::special_linear(field(f)?, *dim, limits),
            Construct::Gamma { p, d } => MatrixGroup::semilinear(*p, *d, limits),
        };
        return attach_abstract(m.map_err(err)?, entry, limits);
    }
    let components: Vec<Component> = match (&entry.components, &entry.field, entry.dim) {
        (Some(cs), None, None) => cs
            .iter()
            .map(|c| Ok(Component { field: field(&c.field)?, dim: c.dim }))
            .collect::<Result<_, String>>()?,
        (None, Some(f), Some(dim)) => vec![Component { field: field(f)?, dim }],
        _ => return Err("mat entry needs either \"field\" and \"dim\" or \"components\"".into()),
    };
    let single = entry.components.is_none();
    let mut gens = Vec::with_capacity(entry.gens.len());
    for (i, g) in entry.gens.iter().enumerate() {
        let blocks: Vec<&[u32]> = match (g, single) {
            (GenSpec::Flat(flat), true) => vec![flat.as_slice()],
            (GenSpec::Blocks(bs), false) => bs.iter().map(|b| b.as_slice()).collect(),
            _ if single => return Err(format!("gens[{i}]: expected a flat row-major list")),
            _ => return Err(format!("gens[{i}]: expected one block per component")),
        };
        if blocks.len() != components.len() {
            return Err(format!(
                "gens[{i}]: {} blocks for {} components",
                blocks.len(),
                components.len()
            ));
        }
        let mats = blocks
            .iter()
            .zip(&components)
            .enumerate()
            .map(|(c, (b, comp))| {
                Matrix::new(comp.field.clone(), comp.dim, b.to_vec()).map_err(|e| format!("gens[{i}] block {c}: {e}"))
            })
            .collect::<Result<Vec<_>, String>>()?;
        gens.push(mats);
    }
    let space = ModuleSpace::new(components).map_err(err)?;
    let m = MatrixGroup::new(space, gens, limits).map_err(err)?;
    attach_abstract(m, entry, limits)
}

fn attach_abstract(m: MatrixGroup, entry: &CorpusEntry, limits: Limits) -> Result<MatrixGroup, String> {
    let m = match &entry.abstract_group {
        None => m,
        Some(a) => {
            let gens = perm_gens(a.degree, &a.gens, "abstract.gens")?;
            m.with_abstract(a.degree, gens).map_err(|e| e.to_string())?
        }
    };
    Limits::check("module points", m.space().points() as u128, limits.degree as u128).map_err(|e| e.to_string())?;
    m.perm_image().map_err(|e| e.to_string())?;
    Ok(m)
}
