//! Configuration documents describing one family input.
//!
//! A document is flat TOML with an optional `label` and exactly one of two
//! input modes:
//!
//! ```toml
//! # monodromy mode: a branched cover given by its local monodromies
//! label = "(6e)"
//! group = [3]
//! base_genus = 1
//! branch = [[1], [1], [1]]
//! ```
//!
//! ```toml
//! # explicit mode: unitary generator matrices on holomorphic forms
//! label = "(8)"
//! generators = ["diag(z4^3,z4^3,z4)"]
//! ```
//!
//! Residue tuples may be written flat (`branch = [1, 1, 1]`) when the group
//! has a single invariant factor.  In explicit mode `group` is optional
//! metadata; when present, each listed generator must have the matching
//! order.  Serialisation is canonical: parsing a document and serialising it
//! again is idempotent.

use serde::{Deserialize, Serialize};

use siegel_core::covers::{AbelianGroup, CoverSpec};
use siegel_core::cyclotomic::CycMatrix;

use crate::error::{AtlasError, Result};
use crate::matexpr::{parse_generators, print_matrix};

/// Raw document shape; all validation beyond TOML syntax happens in
/// [`parse_document`].
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    label: Option<String>,
    group: Option<Vec<u32>>,
    base_genus: Option<u32>,
    branch: Option<Vec<ResidueEntry>>,
    generators: Option<Vec<String>>,
}

/// A residue tuple, or a bare integer for rank-one groups.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ResidueEntry {
    Scalar(i64),
    Tuple(Vec<i64>),
}

/// A validated input: either monodromy data or explicit generators.
#[derive(Debug, Clone)]
pub enum ParsedInput {
    Cover {
        label: Option<String>,
        spec: CoverSpec,
    },
    Explicit {
        label: Option<String>,
        group: Option<AbelianGroup>,
        /// Parsed matrices, embedded in one common cyclotomic field.
        generators: Vec<CycMatrix>,
    },
}

impl ParsedInput {
    pub fn label(&self) -> Option<&str> {
        match self {
            ParsedInput::Cover { label, .. } | ParsedInput::Explicit { label, .. } => {
                label.as_deref()
            }
        }
    }
}

/// Parse and validate one configuration document.
pub fn parse_document(text: &str) -> Result<ParsedInput> {
    let raw: RawDocument = toml::from_str(text)?;
    match (&raw.branch, &raw.generators) {
        (Some(_), Some(_)) => Err(AtlasError::Config(
            "`branch` and `generators` are mutually exclusive".into(),
        )),
        (None, None) => Err(AtlasError::Config(
            "exactly one of `branch` or `generators` is required".into(),
        )),
        (Some(branch), None) => {
            let moduli = raw.group.clone().ok_or_else(|| {
                AtlasError::Config("monodromy input requires `group`".into())
            })?;
            let base_genus = raw.base_genus.ok_or_else(|| {
                AtlasError::Config("monodromy input requires `base_genus`".into())
            })?;
            let group = AbelianGroup::new(moduli).map_err(AtlasError::from)?;
            let rank = group.rank();
            let mut residues = Vec::with_capacity(branch.len());
            for (i, entry) in branch.iter().enumerate() {
                let tuple = match entry {
                    ResidueEntry::Scalar(x) => {
                        if rank != 1 {
                            return Err(AtlasError::Config(format!(
                                "branch entry {i} is a bare integer but the group has rank {rank}"
                            )));
                        }
                        vec![*x]
                    }
                    ResidueEntry::Tuple(t) => {
                        if t.len() != rank {
                            return Err(AtlasError::Config(format!(
                                "branch entry {i} has {} coordinates, expected {rank}",
                                t.len()
                            )));
                        }
                        t.clone()
                    }
                };
                residues.push(tuple);
            }
            let spec = CoverSpec::new(group, base_genus, residues).map_err(AtlasError::from)?;
            Ok(ParsedInput::Cover {
                label: raw.label,
                spec,
            })
        }
        (None, Some(texts)) => {
            if raw.base_genus.is_some_and(|b| b != 0) {
                return Err(AtlasError::Config(
                    "explicit generators describe an action on forms; `base_genus` must be 0 or absent"
                        .into(),
                ));
            }
            if texts.is_empty() {
                return Err(AtlasError::Config("`generators` must not be empty".into()));
            }
            let generators = parse_generators(texts)?;
            let group = match raw.group {
                None => None,
                Some(moduli) => {
                    let group = AbelianGroup::new(moduli).map_err(AtlasError::from)?;
                    if group.rank() != generators.len() {
                        return Err(AtlasError::Config(format!(
                            "group has {} invariant factors but {} generators were given",
                            group.rank(),
                            generators.len()
                        )));
                    }
                    for (i, (m, &order)) in
                        generators.iter().zip(group.moduli()).enumerate()
                    {
                        if !matrix_has_order_dividing(m, order) {
                            return Err(AtlasError::Config(format!(
                                "generator {i} does not have order dividing {order}"
                            )));
                        }
                    }
                    Some(group)
                }
            };
            Ok(ParsedInput::Explicit {
                label: raw.label,
                group,
                generators,
            })
        }
    }
}

fn matrix_has_order_dividing(m: &CycMatrix, order: u32) -> bool {
    let mut acc = CycMatrix::identity(m.rows(), m.conductor());
    for _ in 0..order {
        acc = &acc * m;
    }
    acc == CycMatrix::identity(m.rows(), m.conductor())
}

/// Canonical serialised shape, in fixed key order.
#[derive(Debug, Serialize)]
struct CanonicalDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    base_genus: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    branch: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<String>>,
}

/// Render a parsed input back to canonical TOML: residues reduced into the
/// group and always written as tuples, matrices printed canonically.
pub fn to_canonical(input: &ParsedInput) -> String {
    let doc = match input {
        ParsedInput::Cover { label, spec } => CanonicalDocument {
            label: label.clone(),
            group: Some(spec.group.moduli().to_vec()),
            base_genus: Some(spec.base_genus),
            branch: Some(spec.branch.clone()),
            generators: None,
        },
        ParsedInput::Explicit {
            label,
            group,
            generators,
        } => CanonicalDocument {
            label: label.clone(),
            group: group.as_ref().map(|g| g.moduli().to_vec()),
            base_genus: None,
            branch: None,
            generators: Some(generators.iter().map(print_matrix).collect()),
        },
    };
    toml::to_string(&doc).expect("canonical documents always serialise")
}
