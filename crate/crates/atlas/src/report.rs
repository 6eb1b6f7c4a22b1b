//! Report emission: a serialisable record of one pipeline run.
//!
//! Serialisation is deterministic — struct fields serialise in declaration
//! order and all lists have a fixed sort — so two runs of the same fixture
//! produce byte-identical JSON apart from the timing field.  Rationals are
//! rendered as `p/q` strings and cyclotomic numbers as exponent–coefficient
//! lists over the power basis of their field.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use siegel_core::cyclotomic::{CycMatrix, CycNum};

use crate::matexpr::print_matrix;

/// Eigenspace dimension of one character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharDim {
    /// Character as a dual tuple, one residue per group invariant factor.
    pub character: Vec<u32>,
    pub dim: u32,
}

/// Character data of a monodromy input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotypicReport {
    /// All characters in lexicographic order, zero dimensions included.
    pub dims: Vec<CharDim>,
    /// Human-readable decomposition, e.g. `χ₀+2χ₁`.
    pub decomposition: String,
}

/// One exponent–coefficient pair of a cyclotomic number: the coefficient of
/// `ζ^exponent` in the power basis, as a `p/q` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTerm {
    pub exponent: u32,
    pub coeff: String,
}

/// One nonzero matrix entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    pub row: u32,
    pub col: u32,
    pub value: Vec<CoeffTerm>,
}

/// One generator matrix: canonical display text, the conductor of the field
/// its entries are written in, and the nonzero entries in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub display: String,
    pub conductor: u32,
    pub entries: Vec<EntryReport>,
}

/// One irreducible factor of the invariant tangent space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub dim_c: u32,
    pub k_dim: u32,
    pub rank: u32,
    pub label: String,
    /// Display labels of catalogue rows isomorphic to the canonical one.
    pub aliases: Vec<String>,
}

/// The elliptic-quotient split of the tangent space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrymReport {
    pub w1_dim: u32,
    pub w2_dim: u32,
}

/// The label the reference table states for this family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublishedReport {
    pub label: String,
    pub table: String,
}

/// One named check with its expected/actual rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// The full record of one run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    /// Fixture id, or `custom` for ad-hoc inputs.
    pub fixture: String,
    pub backend: String,
    pub genus: u32,
    /// Conductor of the ambient cyclotomic field the pipeline worked in.
    pub conductor: u32,
    /// Invariant factors of the group, when known.
    pub group: Option<Vec<u32>>,
    pub base_genus: Option<u32>,
    pub isotypic: Option<IsotypicReport>,
    pub generators: Vec<GeneratorReport>,
    /// Complex dimension of the invariant tangent space `p'`.
    pub dim_p: u32,
    /// Real dimension of the holonomy algebra `k' = [p', p']`.
    pub k_dim: u32,
    pub factors: Vec<FactorReport>,
    /// Product label of the uniformizing symmetric space.
    pub label: String,
    pub prym: Option<PrymReport>,
    pub published: Option<PublishedReport>,
    pub checks: Vec<CheckReport>,
    /// Human-readable anomaly notes (e.g. a reference-table label whose
    /// dimension contradicts the computed space).
    pub flags: Vec<String>,
    pub pass: bool,
    pub elapsed_ms: u64,
}

fn rational_string(q: &num::BigRational) -> String {
    use num_traits::One;
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exponent–coefficient rendering of one cyclotomic number.
pub fn coeff_terms(x: &CycNum) -> Vec<CoeffTerm> {
    x.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| CoeffTerm {
            exponent: k as u32,
            coeff: rational_string(c),
        })
        .collect()
}

/// Build the report block for one generator matrix.
pub fn generator_report(m: &CycMatrix) -> GeneratorReport {
    let mut entries = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.get(r, c);
            if !v.is_zero() {
                entries.push(EntryReport {
                    row: r as u32,
                    col: c as u32,
                    value: coeff_terms(v),
                });
            }
        }
    }
    GeneratorReport {
        display: print_matrix(m),
        conductor: m.conductor(),
        entries,
    }
}

/// Validate a JSON value against the report schema: all required fields
/// present with the right shapes.  Returns the list of violations.
pub fn schema_violations(value: &serde_json::Value) -> Vec<String> {
    use serde_json::Value;
    let mut errs = Vec::new();
    let Some(obj) = value.as_object() else {
        return vec!["report must be a JSON object".into()];
    };
    let mut need = |key: &str, pred: &dyn Fn(&Value) -> bool, ty: &str| match obj.get(key) {
        None => errs.push(format!("missing field `{key}`")),
        Some(v) if !pred(v) => errs.push(format!("field `{key}` must be {ty}")),
        _ => {}
    };
    let is_u64 = |v: &Value| v.is_u64();
    let is_str = |v: &Value| v.is_string();
    let is_bool = |v: &Value| v.is_boolean();
    let is_arr = |v: &Value| v.is_array();
    let nullable_arr = |v: &Value| v.is_null() || v.is_array();
    let nullable_u64 = |v: &Value| v.is_null() || v.is_u64();
    let nullable_obj = |v: &Value| v.is_null() || v.is_object();
    need("fixture", &is_str, "a string");
    need("backend", &is_str, "a string");
    need("genus", &is_u64, "an unsigned integer");
    need("conductor", &is_u64, "an unsigned integer");
    need("group", &nullable_arr, "null or an array");
    need("base_genus", &nullable_u64, "null or an unsigned integer");
    need("isotypic", &nullable_obj, "null or an object");
    need("generators", &is_arr, "an array");
    need("dim_p", &is_u64, "an unsigned integer");
    need("k_dim", &is_u64, "an unsigned integer");
    need("factors", &is_arr, "an array");
    need("label", &is_str, "a string");
    need("prym", &nullable_obj, "null or an object");
    need("published", &nullable_obj, "null or an object");
    need("checks", &is_arr, "an array");
    need("flags", &is_arr, "an array");
    need("pass", &is_bool, "a boolean");
    need("elapsed_ms", &is_u64, "an unsigned integer");
    if let Some(factors) = obj.get("factors").and_then(Value::as_array) {
        for (i, f) in factors.iter().enumerate() {
            for key in ["dim_c", "k_dim", "rank"] {
                if !f.get(key).is_some_and(|v| v.is_u64()) {
                    errs.push(format!("factor {i} needs unsigned `{key}`"));
                }
            }
            if !f.get("label").is_some_and(|v| v.is_string()) {
                errs.push(format!("factor {i} needs string `label`"));
            }
        }
    }
    if let Some(checks) = obj.get("checks").and_then(Value::as_array) {
        for (i, c) in checks.iter().enumerate() {
            for key in ["name", "expected", "actual"] {
                if !c.get(key).is_some_and(|v| v.is_string()) {
                    errs.push(format!("check {i} needs string `{key}`"));
                }
            }
            if !c.get("pass").is_some_and(|v| v.is_boolean()) {
                errs.push(format!("check {i} needs boolean `pass`"));
            }
        }
    }
    errs
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialise")
    }

    /// Plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("fixture {}  [backend {}]", self.fixture, self.backend));
        if let Some(moduli) = &self.group {
            let group = moduli
                .iter()
                .map(|m| format!("Z/{m}"))
                .collect::<Vec<_>>()
                .join(" × ");
            match self.base_genus {
                Some(b) => line(format!("group {group}, base genus {b}")),
                None => line(format!("group {group}")),
            }
        }
        line(format!(
            "genus {}, ambient field Q(zeta_{})",
            self.genus, self.conductor
        ));
        if let Some(iso) = &self.isotypic {
            line(format!("forms decompose as {}", iso.decomposition));
        }
        for g in &self.generators {
            line(format!("generator {}", g.display));
        }
        line(format!(
            "tangent space p': dim_C {},  holonomy k': dim_R {}",
            self.dim_p, self.k_dim
        ));
        for f in &self.factors {
            let aliases = if f.aliases.is_empty() {
                String::new()
            } else {
                format!("  (≅ {})", f.aliases.join(", "))
            };
            line(format!(
                "  factor dim_C {}, k {}, rank {} → {}{}",
                f.dim_c, f.k_dim, f.rank, f.label, aliases
            ));
        }
        line(format!("label {}", self.label));
        if let Some(p) = &self.prym {
            line(format!(
                "elliptic split: dim_C W1 = {}, dim_C W2 = {}",
                p.w1_dim, p.w2_dim
            ));
        }
        if let Some(p) = &self.published {
            line(format!("published {}  [{}]", p.label, p.table));
        }
        for flag in &self.flags {
            line(format!("note: {flag}"));
        }
        let failed: Vec<&CheckReport> = self.checks.iter().filter(|c| !c.pass).collect();
        line(format!(
            "checks {}/{} pass",
            self.checks.len() - failed.len(),
            self.checks.len()
        ));
        for c in failed {
            line(format!(
                "  FAIL {}: expected {}, got {}",
                c.name, c.expected, c.actual
            ));
        }
        line(format!(
            "{} ({} ms)",
            if self.pass { "PASS" } else { "FAIL" },
            self.elapsed_ms
        ));
        out
    }
}
