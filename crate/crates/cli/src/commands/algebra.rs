use std::path::PathBuf;

use clap::Subcommand;
use orbita_core::lie_core::parse_algebra;
use serde_json::json;

use super::read_file;
use crate::error::CliError;
use crate::report::Report;
use crate::Global;

#[derive(Debug, Subcommand)]
pub enum AlgebraCommand {
    /// Check antisymmetry, Jacobi and nilpotency of a structure-constant file.
    Check { path: PathBuf },
}

pub fn run(cmd: &AlgebraCommand, g: &Global) -> Result<Report, CliError> {
    let AlgebraCommand::Check { path } = cmd;
    let mut report = Report::new("algebra check", g.seed);
    report.param("path", path.display().to_string());
    let text = read_file(path)?;
    match parse_algebra(&text) {
        Ok(alg) => {
            report.verdict = format!("valid, step {}, center dim {}", alg.step(), alg.center().len());
            report.results = json!({
                "valid": true,
                "name": alg.name(),
                "dim": alg.dim(),
                "basis": alg.labels(),
                "step": alg.step(),
                "center_dim": alg.center().len(),
                "lower_central_series_dims":
                    alg.lower_central_series().terms.iter().map(Vec::len).collect::<Vec<_>>(),
                "abelian": alg.is_abelian(),
            });
            report.passed = Some(true);
        }
        Err(e) => {
            report.verdict = e.to_string();
            report.results = json!({ "valid": false, "error": e.to_string() });
            report.passed = Some(false);
            report.exit_code = CliError::INVALID;
        }
    }
    Ok(report)
}
