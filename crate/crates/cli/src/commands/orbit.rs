use std::path::PathBuf;

use clap::Subcommand;
use orbita_core::exact_algebra::{format_rational, Ring};
use orbita_core::orbit_method::{is_polarization, orbit_report, pfaffian_polynomial, vergne_polarization};
use orbita_core::BigRational;
use serde_json::{json, Value};

use super::{load_algebra, parse_functional};
use crate::error::CliError;
use crate::report::{to_value, Report};
use crate::Global;

#[derive(Debug, Subcommand)]
pub enum OrbitCommand {
    /// Every orbit invariant at one functional.
    Report {
        path: PathBuf,
        /// Coordinates of f on the dual basis, e.g. `0,0,1` or `1/2,0,-0.25`.
        #[arg(long, allow_hyphen_values = true)]
        functional: String,
    },
    /// Pfaffian polynomial on the dual of the center.
    Pfaffian {
        path: PathBuf,
        /// Point of the dual of the center at which to evaluate formal degree and density.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Vergne polarization along the ideal flag, with the axioms checked.
    Polarize {
        path: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        functional: String,
    },
}

fn rationals(v: &[BigRational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn text(v: &Value) -> String {
    v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())
}

pub fn run(cmd: &OrbitCommand, g: &Global) -> Result<Report, CliError> {
    match cmd {
        OrbitCommand::Report { path, functional } => {
            let alg = load_algebra(path)?;
            let f = parse_functional(functional)?;
            let r = orbit_report(&alg, &f)?;
            let mut report = Report::new("orbit report", g.seed);
            report.param("path", path.display().to_string()).param("functional", rationals(&f));
            report.verdict = if !r.has_square_integrable_reps {
                format!("orbit dim {}, no square integrable representations (P ≡ 0)", r.orbit_dimension)
            } else if r.is_square_integrable {
                format!(
                    "orbit dim {}, flat, square-integrable, formal degree {}, density {}",
                    r.orbit_dimension,
                    text(&r.formal_degree),
                    r.plancherel_density.as_ref().map(text).unwrap_or_default()
                )
            } else {
                format!("orbit dim {}, not flat, not square-integrable", r.orbit_dimension)
            };
            report.results = to_value(&r);
            Ok(report)
        }
        OrbitCommand::Pfaffian { path, lambda } => {
            let alg = load_algebra(path)?;
            let pf = pfaffian_polynomial(&alg, None)?;
            let mut report = Report::new("orbit pfaffian", g.seed);
            report.param("path", path.display().to_string());
            let constant = pf.constant().ok().map(|c| format_rational(&c));
            let mut results = json!({
                "algebra": alg.name(),
                "polynomial": pf.poly.to_string(),
                "full": pf.full.to_string(),
                "identically_zero": pf.poly.is_zero(),
                "half_quotient_dim": pf.m,
                "plancherel_constant": constant,
                "complement": pf.complement.iter().map(|v| rationals(v)).collect::<Vec<_>>(),
                "center_basis": pf.center_basis.iter().map(|v| rationals(v)).collect::<Vec<_>>(),
            });
            if let Some(l) = lambda {
                let l = parse_functional(l)?;
                report.param("lambda", rationals(&l));
                results["value"] = json!(format_rational(&pf.value(&l)?));
                results["formal_degree"] = json!(format_rational(&pf.formal_degree(&l)?));
                results["plancherel_density"] = match pf.plancherel_density(&l) {
                    Ok(d) => json!(format_rational(&d)),
                    Err(_) => Value::Null,
                };
            }
            report.verdict = if pf.poly.is_zero() {
                "P ≡ 0: no square integrable representations".to_string()
            } else {
                format!("P = {}", pf.poly)
            };
            report.results = results;
            Ok(report)
        }
        OrbitCommand::Polarize { path, functional } => {
            let alg = load_algebra(path)?;
            let f = parse_functional(functional)?;
            let p = vergne_polarization(&alg, &f, &alg.ideal_flag())?;
            let check = is_polarization(&alg, &f, &p)?;
            let mut report = Report::new("orbit polarize", g.seed);
            report.param("path", path.display().to_string()).param("functional", rationals(&f));
            report.results = json!({
                "algebra": alg.name(),
                "basis": p.iter().map(|v| rationals(v)).collect::<Vec<_>>(),
                "dim": check.dim_p,
                "radical_dim": check.dim_radical,
                "subalgebra": check.subalgebra,
                "contains_radical": check.contains_radical,
                "isotropic": check.isotropic,
                "dimension_condition": check.dimension,
                "defects": check.defects(),
            });
            report.verdict = if check.is_valid() {
                format!("polarization of dimension {}", check.dim_p)
            } else {
                format!("not a polarization: {}", check.defects().join(", "))
            };
            report.passed = Some(check.is_valid());
            if !check.is_valid() {
                report.exit_code = CliError::INVALID;
            }
            Ok(report)
        }
    }
}
