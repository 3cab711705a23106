use clap::Subcommand;
use orbita_core::nilmanifold_registry::{
    load_registry, multiplicity_free_check, optional_u1_required, KDescriptor, Parameters, RegistryEntry, Table,
};
use serde_json::json;

use crate::error::CliError;
use crate::report::{to_value, Report, Table as Rows};
use crate::Global;

#[derive(Debug, Subcommand)]
pub enum RegistryCommand {
    /// Print table entries; with `--row` and `--param`, evaluate dimensions and the optional U(1) rule.
    List {
        #[arg(long)]
        table: Option<Table>,
        #[arg(long, requires = "table")]
        row: Option<u32>,
        /// Parameter assignment `name=value`, repeatable.
        #[arg(long = "param", requires = "row", allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Decompose symmetric powers of a K-module and look for repeated constituents.
    CheckMf {
        /// Group and weights, e.g. `U1:1`, `U2:std`, `U1:1,1`, `SU2:std*U1:1`.
        #[arg(long = "k")]
        k: String,
        #[arg(long, default_value_t = 8)]
        degree_cap: usize,
    },
}

fn parse_params(raw: &[String]) -> Result<Parameters, CliError> {
    raw.iter()
        .map(|p| {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| CliError::invalid(format!("parameter {p:?} is not of the form name=value")))?;
            let v: i64 = v.trim().parse().map_err(|_| CliError::invalid(format!("parameter {p:?} needs an integer value")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn summary_row(e: &RegistryEntry) -> Vec<serde_json::Value> {
    let join = |f: &dyn Fn(&orbita_core::nilmanifold_registry::Form) -> &str| {
        e.forms.iter().map(f).collect::<Vec<_>>().join("; ")
    };
    vec![
        to_value(e.table.to_string()),
        to_value(e.row),
        to_value(e.parameters.join(" ")),
        to_value(join(&|f| &f.group_k)),
        to_value(join(&|f| &f.module_w)),
        to_value(join(&|f| &f.w_dim)),
        to_value(e.center_z.as_ref().map(|z| format!("{} (dim {})", z.label, z.dim)).unwrap_or_default()),
        to_value(e.constraints.join(" and ")),
        to_value(e.optional_u1),
    ]
}

pub fn run(cmd: &RegistryCommand, g: &Global) -> Result<Report, CliError> {
    match cmd {
        RegistryCommand::List { table, row, params } => {
            let registry = load_registry()?;
            let mut report = Report::new("registry list", g.seed);
            report
                .param("table", table.map(|t| t.to_string()))
                .param("row", row)
                .param("source", &registry.source)
                .param("sha256", &registry.sha256);
            let entries: Vec<&RegistryEntry> = match (table, row) {
                (Some(t), Some(r)) => vec![registry.get(*t, *r)?],
                (Some(t), None) => registry.table(*t).iter().collect(),
                _ => registry.entries().collect(),
            };
            let mut rows = Rows::new(&[
                "table", "row", "parameters", "group_k", "module_w", "w_dim", "center_z", "constraints", "optional_u1",
            ]);
            for e in &entries {
                rows.push(summary_row(e));
            }
            let mut results = json!({ "count": entries.len(), "entries": entries });
            report.verdict = format!("{} entries", entries.len());
            if !params.is_empty() {
                let p = parse_params(params)?;
                report.param("parameters", &p);
                let e = entries[0];
                let u1 = if e.optional_u1 { Some(optional_u1_required(e, &p)?) } else { None };
                results["evaluation"] = json!({
                    "w_dims": e.w_dims(&p)?,
                    "z_dim": e.z_dim(&p)?,
                    "optional_u1_required": u1,
                });
                report.verdict = match u1 {
                    Some(true) => format!("{} row {}: optional U(1) required", e.table, e.row),
                    Some(false) => format!("{} row {}: optional U(1) not required", e.table, e.row),
                    None => format!("{} row {}: dim w = {:?}", e.table, e.row, e.w_dims(&p)?),
                };
            }
            report.results = results;
            report.table = Some(rows);
            Ok(report)
        }
        RegistryCommand::CheckMf { k, degree_cap } => {
            let desc = KDescriptor::parse(k)?;
            let r = multiplicity_free_check(&desc, *degree_cap)?;
            let mut report = Report::new("registry check-mf", g.seed);
            report.param("k", k).param("degree_cap", degree_cap);
            let mut rows = Rows::new(&["degree", "dimension", "highest_weight", "multiplicity"]);
            for d in &r.degrees {
                for c in &d.constituents {
                    let hw = c.highest_weight.iter().map(i32::to_string).collect::<Vec<_>>().join(" ");
                    rows.push(vec![to_value(d.degree), to_value(d.dimension), to_value(hw), to_value(c.multiplicity)]);
                }
            }
            report.verdict = match r.first_failure {
                None => format!("{} on C^{} is multiplicity free up to degree {}", r.group, r.module_dim, r.degree_cap),
                Some(d) => format!("{} on C^{} is not multiplicity free (degree {d})", r.group, r.module_dim),
            };
            report.results = to_value(&r);
            report.table = Some(rows);
            Ok(report)
        }
    }
}
