//! Embedded tables of commutative nilmanifolds and a small multiplicity-free
//! checker.
//!
//! Two tables ship with the crate in `data/registry.json`. The Kač table lists
//! the connected groups `K_m` irreducible on `ℂ^m`, for which
//! `(H_m ⋊ K_m)/K_m` is commutative. The Vinberg table lists the maximal
//! irreducible commutative nilmanifolds `(N ⋊ K)/K` with `𝔫 = 𝔷 + 𝔴`. The file
//! is pinned by SHA-256; `ORBITA_DATA_DIR` may point at another copy, which
//! must carry the same checksum.

mod carcano;
mod expr;


pub use carcano::{
    multiplicity_free_check, symmetric_power_character, weyl_integral_by_quadrature, Constituent, DegreeReport,
    FactorKind, KDescriptor, KFactor, LaurentPoly, MultiplicityReport, MAX_TORUS_RANK,
};
pub use expr::{Formula, Parameters, Predicate};

use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// SHA-256 of the shipped `registry.json`.
pub const REGISTRY_SHA256: &str = "7245233bc099a099d22d7297854404ecc8963ccb211eaee53a2bf5948bd537e5";

pub const KAC_ROWS: usize = 15;
pub const VINBERG_ROWS: usize = 23;

const EMBEDDED: &str = include_str!("../../data/registry.json");

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegistryError {
    #[error("registry data corrupt: {0}")]
    Corrupt(String),
    #[error("registry checksum mismatch: expected {expected}, found {found}")]
    ChecksumMismatch { expected: String, found: String },
    #[error("cannot read registry data: {0}")]
    Io(String),
    #[error("no row {row} in the {table} table")]
    UnknownRow { table: Table, row: u32 },
    #[error("{0}")]
    NotApplicable(String),
    #[error("missing parameter '{0}'")]
    MissingParameter(String),
    #[error("unexpected parameter '{0}'")]
    UnexpectedParameter(String),
    #[error("constraint '{0}' violated")]
    ConstraintViolated(String),
    #[error("cannot parse '{input}': {message}")]
    Parse { input: String, message: String },
    #[error("{0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Table {
    Kac,
    Vinberg,
}

impl std::fmt::Display for Table {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Kac => "Kač",
            Self::Vinberg => "Vinberg",
        })
    }
}

impl std::str::FromStr for Table {
    type Err = RegistryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "kac" | "kač" => Ok(Self::Kac),
            "vinberg" => Ok(Self::Vinberg),
            _ => Err(RegistryError::Parse { input: s.into(), message: "expected 'kac' or 'vinberg'".into() }),
        }
    }
}

/// A group with the space it acts on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Form {
    pub label: String,
    pub group_k: String,
    pub module_w: String,
    /// Complex dimension for the Kač table, real dimension for Vinberg.
    pub w_dim: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Space {
    pub label: String,
    pub dim: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct RawEntry {
    row: u32,
    parameters: Vec<String>,
    forms: Vec<Form>,
    #[serde(default)]
    center_z: Option<Space>,
    constraints: Vec<String>,
    implicit_constraints: Vec<String>,
    #[serde(default)]
    optional_u1: bool,
    #[serde(default)]
    optional_u1_rule: Option<String>,
}

#[derive(Debug, Deserialize)]
struct RawRegistry {
    format: u32,
    kac: Vec<RawEntry>,
    vinberg: Vec<RawEntry>,
}

/// One row of a table, with its formulas and predicates parsed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegistryEntry {
    pub table: Table,
    pub row: u32,
    pub parameters: Vec<String>,
    /// One form, except Kač row 5 which lists `SO(2n)` and `SO(2n+1)`.
    pub forms: Vec<Form>,
    /// Center `𝔷` (Vinberg only).
    pub center_z: Option<Space>,
    /// Conditions printed in the table.
    pub constraints: Vec<String>,
    /// Ranges the table leaves unstated but which keep every dimension positive.
    pub implicit_constraints: Vec<String>,
    /// Whether `K` carries the optional `U(1)` factor.
    pub optional_u1: bool,
    pub optional_u1_rule: Option<String>,
    #[serde(skip)]
    parsed: Parsed,
}

#[derive(Debug, Clone, PartialEq, Default)]
struct Parsed {
    w_dims: Vec<Formula>,
    z_dim: Option<Formula>,
    predicates: Vec<Predicate>,
    u1_rule: Option<Predicate>,
}

impl RegistryEntry {
    fn from_raw(table: Table, raw: RawEntry) -> Result<Self, RegistryError> {
        let corrupt = |msg: String| RegistryError::Corrupt(format!("{table} row {}: {msg}", raw.row));
        if raw.forms.is_empty() {
            return Err(corrupt("no forms".into()));
        }
        let check_vars = |vars: Vec<String>, what: &str| -> Result<(), RegistryError> {
            match vars.iter().find(|v| !raw.parameters.contains(v)) {
                Some(v) => Err(corrupt(format!("{what} uses undeclared parameter '{v}'"))),
                None => Ok(()),
            }
        };
        let mut w_dims = Vec::new();
        for form in &raw.forms {
            let f = Formula::parse(&form.w_dim).map_err(|e| corrupt(e.to_string()))?;
            check_vars(f.variables(), "w dimension")?;
            w_dims.push(f);
        }
        let z_dim = match (&raw.center_z, table) {
            (Some(z), Table::Vinberg) => {
                let f = Formula::parse(&z.dim).map_err(|e| corrupt(e.to_string()))?;
                check_vars(f.variables(), "z dimension")?;
                Some(f)
            }
            (None, Table::Kac) => None,
            (Some(_), Table::Kac) => return Err(corrupt("Kač entries have no center column".into())),
            (None, Table::Vinberg) => return Err(corrupt("missing center".into())),
        };
        let mut predicates = Vec::new();
        for src in raw.constraints.iter().chain(&raw.implicit_constraints) {
            let p = Predicate::parse(src).map_err(|e| corrupt(e.to_string()))?;
            check_vars(p.variables(), "constraint")?;
            predicates.push(p);
        }
        let u1_rule = match &raw.optional_u1_rule {
            Some(src) => {
                if !raw.optional_u1 {
                    return Err(corrupt("U(1) rule without an optional U(1)".into()));
                }
                let p = Predicate::parse(src).map_err(|e| corrupt(e.to_string()))?;
                check_vars(p.variables(), "U(1) rule")?;
                Some(p)
            }
            None => None,
        };
        Ok(Self {
            table,
            row: raw.row,
            parameters: raw.parameters,
            forms: raw.forms,
            center_z: raw.center_z,
            constraints: raw.constraints,
            implicit_constraints: raw.implicit_constraints,
            optional_u1: raw.optional_u1,
            optional_u1_rule: raw.optional_u1_rule,
            parsed: Parsed { w_dims, z_dim, predicates, u1_rule },
        })
    }

    /// Checks that `params` names exactly this entry's parameters and satisfies its constraints.
    pub fn validate(&self, params: &Parameters) -> Result<(), RegistryError> {
        for p in &self.parameters {
            if !params.contains_key(p) {
                return Err(RegistryError::MissingParameter(p.clone()));
            }
        }
        if let Some(extra) = params.keys().find(|k| !self.parameters.contains(k)) {
            return Err(RegistryError::UnexpectedParameter(extra.clone()));
        }
        for pred in &self.parsed.predicates {
            if !pred.eval(params)? {
                return Err(RegistryError::ConstraintViolated(pred.source().to_string()));
            }
        }
        Ok(())
    }

    /// Dimension of `𝔴` for each form (complex for Kač, real for Vinberg).
    pub fn w_dims(&self, params: &Parameters) -> Result<Vec<i64>, RegistryError> {
        self.validate(params)?;
        self.parsed.w_dims.iter().map(|f| f.eval_integer(params)).collect()
    }

    /// Real dimension of `𝔷` (Vinberg only).
    pub fn z_dim(&self, params: &Parameters) -> Result<Option<i64>, RegistryError> {
        self.validate(params)?;
        self.parsed.z_dim.as_ref().map(|f| f.eval_integer(params)).transpose()
    }
}

/// Both tables, in row order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Registry {
    pub sha256: String,
    pub source: String,
    pub kac: Vec<RegistryEntry>,
    pub vinberg: Vec<RegistryEntry>,
}

impl Registry {
    pub fn table(&self, table: Table) -> &[RegistryEntry] {
        match table {
            Table::Kac => &self.kac,
            Table::Vinberg => &self.vinberg,
        }
    }

    pub fn get(&self, table: Table, row: u32) -> Result<&RegistryEntry, RegistryError> {
        self.table(table).iter().find(|e| e.row == row).ok_or(RegistryError::UnknownRow { table, row })
    }

    pub fn entries(&self) -> impl Iterator<Item = &RegistryEntry> {
        self.kac.iter().chain(&self.vinberg)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Parses and verifies registry text.
pub fn parse_registry(text: &str, source: &str) -> Result<Registry, RegistryError> {
    let found = sha256_hex(text.as_bytes());
    if found != REGISTRY_SHA256 {
        return Err(RegistryError::ChecksumMismatch { expected: REGISTRY_SHA256.into(), found });
    }
    parse_unpinned(text, source)
}

pub(crate) fn parse_unpinned(text: &str, source: &str) -> Result<Registry, RegistryError> {
    let raw: RawRegistry = serde_json::from_str(text).map_err(|e| RegistryError::Corrupt(e.to_string()))?;
    if raw.format != 1 {
        return Err(RegistryError::Corrupt(format!("unknown format version {}", raw.format)));
    }
    let build = |table: Table, rows: Vec<RawEntry>, expected: usize| -> Result<Vec<RegistryEntry>, RegistryError> {
        if rows.len() != expected {
            return Err(RegistryError::Corrupt(format!("{table} table has {} rows, expected {expected}", rows.len())));
        }
        rows.into_iter()
            .enumerate()
            .map(|(i, r)| {
                if r.row as usize != i + 1 {
                    return Err(RegistryError::Corrupt(format!("{table} row {} out of order at position {}", r.row, i + 1)));
                }
                RegistryEntry::from_raw(table, r)
            })
            .collect()
    };
    Ok(Registry {
        sha256: sha256_hex(text.as_bytes()),
        source: source.into(),
        kac: build(Table::Kac, raw.kac, KAC_ROWS)?,
        vinberg: build(Table::Vinberg, raw.vinberg, VINBERG_ROWS)?,
    })
}

/// Directory named by `ORBITA_DATA_DIR`, if set.
pub fn data_dir_override() -> Option<PathBuf> {
    std::env::var_os("ORBITA_DATA_DIR").map(PathBuf::from)
}

/// Loads from `ORBITA_DATA_DIR/registry.json` when set, else the embedded copy.
pub fn load_registry() -> Result<Registry, RegistryError> {
    match data_dir_override() {
        Some(dir) => load_registry_from(&dir),
        None => embedded_registry().cloned(),
    }
}

/// Loads `dir/registry.json`, which must match the pinned checksum.
pub fn load_registry_from(dir: &Path) -> Result<Registry, RegistryError> {
    let path = dir.join("registry.json");
    let text = std::fs::read_to_string(&path).map_err(|e| RegistryError::Io(format!("{}: {e}", path.display())))?;
    parse_registry(&text, &path.display().to_string())
}

/// The embedded tables, parsed once.
pub fn embedded_registry() -> Result<&'static Registry, RegistryError> {
    static CELL: OnceLock<Result<Registry, RegistryError>> = OnceLock::new();
    CELL.get_or_init(|| parse_registry(EMBEDDED, "embedded")).as_ref().map_err(Clone::clone)
}

/// Whether the optional `U(1)` factor of a Vinberg row is needed for commutativity.
///
/// Rows 5, 11, 19, 20 and 21 carry a rule in the data; rows 9 and 14 have an
/// optional `U(1)` without one, so it is never required there.
pub fn optional_u1_required(entry: &RegistryEntry, params: &Parameters) -> Result<bool, RegistryError> {
    if !entry.optional_u1 {
        return Err(RegistryError::NotApplicable(format!(
            "{} row {} has no optional U(1) factor",
            entry.table, entry.row
        )));
    }
    entry.validate(params)?;
    match &entry.parsed.u1_rule {
        Some(rule) => rule.eval(params),
        None => Ok(false),
    }
}
