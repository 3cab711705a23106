use std::path::PathBuf;

use clap::Subcommand;
use orbita_core::heisenberg_model::{
    central_reconstruct, coefficient_orthogonality, plancherel_invert, plancherel_invert_at,
    polarization_intertwiner_check, CentralSamples, GaussianFunction, GroupFunction, HeisenbergElement, LambdaGrid,
    PlancherelOptions, SchrodingerModel,
};
use orbita_core::special::QuadratureRule;
use serde_json::json;

use super::{complex_json, parse_w};
use crate::error::CliError;
use crate::report::{to_value, Report, Table};
use crate::Global;

#[derive(Debug, Subcommand)]
pub enum HeisCommand {
    /// Recover the standard Gaussian from its group Fourier transform.
    Invert {
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Largest truncation; the ladder defaults to N/3, 2N/3, N.
        #[arg(long = "N", default_value_t = 48)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        ladder: Option<Vec<usize>>,
        #[arg(long, default_value_t = 8.0)]
        lambda_max: f64,
        /// Dyadic panels toward λ = 0 on each side.
        #[arg(long, default_value_t = 8)]
        levels: usize,
        #[arg(long, default_value_t = 16)]
        points_per_panel: usize,
        /// Evaluation point `z,x1,y1,…` instead of the identity.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        at: Option<Vec<f64>>,
        /// Write `λ ↦ c|λ|^m tr π_λ(f)` per truncation to this file.
        #[arg(long)]
        samples_csv: Option<PathBuf>,
    },
    /// Schur orthogonality of Hermite matrix coefficients.
    Orthogonality {
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long = "N", default_value_t = 48)]
        n: usize,
        /// Hermite levels per axis entering the table.
        #[arg(long, default_value_t = 5)]
        levels: usize,
    },
    /// Fourier intertwiner between the two real polarizations of H_1.
    Intertwiner {
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long = "N", default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = std::f64::consts::PI)]
        z_max: f64,
        #[arg(long, default_value_t = 1.5)]
        w_max: f64,
    },
    /// Central Fourier decomposition and reconstruction of the standard Gaussian.
    Central {
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 12.0)]
        z_max: f64,
        #[arg(long, default_value_t = 241)]
        z_points: usize,
        #[arg(long, default_value_t = 10.0)]
        zeta_max: f64,
        #[arg(long, default_value_t = 401)]
        zeta_nodes: usize,
        /// Point `x1,y1,…` of C^m; defaults to the origin.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        w: Option<Vec<f64>>,
    },
}

fn default_ladder(n: usize) -> Vec<usize> {
    let mut l = vec![(n / 3).max(1), (2 * n / 3).max(1), n];
    l.dedup();
    l
}

pub fn run(cmd: &HeisCommand, g: &Global) -> Result<Report, CliError> {
    match cmd {
        HeisCommand::Invert { m, n, ladder, lambda_max, levels, points_per_panel, at, samples_csv } => {
            let ladder = ladder.clone().unwrap_or_else(|| default_ladder(*n));
            let lambda_grid = LambdaGrid::Graded { max: *lambda_max, levels: *levels, points_per_panel: *points_per_panel };
            let options = PlancherelOptions { ladder: ladder.clone(), lambda_grid, grid: None };
            let f = GaussianFunction::standard(*m);
            let point = match at {
                Some(c) if !c.is_empty() => HeisenbergElement::new(c[0], parse_w(&c[1..], *m)?),
                _ => HeisenbergElement::identity(*m),
            };
            let r = if at.is_some() { plancherel_invert_at(&f, &point, &options)? } else { plancherel_invert(&f, &options)? };
            let tol = g.tolerance_or(1e-3);
            let mut report = Report::new("heis invert", g.seed);
            report.tolerance = Some(tol);
            report
                .param("m", m)
                .param("N", n)
                .param("ladder", &ladder)
                .param("lambda_grid", lambda_grid)
                .param("at", json!({ "z": point.z, "w": point.w.iter().map(|w| complex_json(*w)).collect::<Vec<_>>() }))
                .param("test_function", "exp(-z^2/2 - |w|^2/2)");
            report.residual("inversion", r.residual);
            for raw in &r.raw {
                report.residual(&format!("raw_N{}", raw.truncation), raw.error);
            }
            report.results = json!({
                "value": r.value,
                "target": r.target,
                "residual": r.residual,
                "truncation": r.raw,
                "monotone": r.monotone,
                "plancherel_constant": r.plancherel_constant,
                "lambda_nodes": r.lambda_nodes,
                "grid": r.grid,
            });
            if let Some(path) = samples_csv {
                std::fs::write(path, r.samples_csv())
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
                report.param("samples_csv", path.display().to_string());
            }
            let ok = r.residual < tol && r.monotone;
            report.verdict = format!(
                "f = {:.6} (target {:.6}, residual {:.3e}{})",
                r.value,
                r.target,
                r.residual,
                if r.monotone { "" } else { ", ladder not monotone" }
            );
            report.judge(ok);
            Ok(report)
        }
        HeisCommand::Orthogonality { m, lambda, n, levels } => {
            let model = SchrodingerModel::new(*lambda, *m, *n)?;
            let r = coefficient_orthogonality(&model, *levels)?;
            let tol = g.tolerance_or(1e-6);
            let mut report = Report::new("heis orthogonality", g.seed);
            report.tolerance = Some(tol);
            report.param("m", m).param("lambda", lambda).param("N", n).param("levels", levels);
            report.residual("max_error", r.max_error).residual("quadrature", r.quadrature_residual);
            let mut table = Table::new(&["u1", "v1", "u2", "v2", "value_re", "value_im", "target_re", "target_im", "error"]);
            for e in &r.entries {
                let [a, b, c, d] = e.indices;
                table.push(vec![
                    to_value(a),
                    to_value(b),
                    to_value(c),
                    to_value(d),
                    to_value(e.value.re),
                    to_value(e.value.im),
                    to_value(e.target.re),
                    to_value(e.target.im),
                    to_value(e.error),
                ]);
            }
            report.results = json!({
                "entries": r.entries.len(),
                "max_error": r.max_error,
                "converged": r.converged,
                "formal_degree": model.formal_degree(),
                "nodes_per_axis": r.nodes_per_axis,
            });
            report.table = Some(table);
            report.verdict = format!("{} inner products, max error {:.3e}", r.entries.len(), r.max_error);
            report.judge(r.max_error < tol && r.converged);
            Ok(report)
        }
        HeisCommand::Intertwiner { lambda, n, count, z_max, w_max } => {
            let elements = HeisenbergElement::random_batch(1, *count, *z_max, *w_max, g.seed);
            let r = polarization_intertwiner_check(*lambda, *n, &elements)?;
            let tol = g.tolerance_or(1e-6);
            let mut report = Report::new("heis intertwiner", g.seed);
            report.tolerance = Some(tol);
            report.param("lambda", lambda).param("N", n).param("count", count).param("z_max", z_max).param("w_max", w_max);
            report.residual("max_residual", r.max_residual).residual("fourier_unitarity", r.fourier_unitarity);
            let mut table = Table::new(&["z", "x", "y", "residual"]);
            for (e, res) in elements.iter().zip(&r.residuals) {
                table.push(vec![to_value(e.z), to_value(e.w[0].re), to_value(e.w[0].im), to_value(res)]);
            }
            report.results = to_value(&r);
            report.table = Some(table);
            report.verdict = format!("max residual {:.3e} over {} elements", r.max_residual, elements.len());
            report.judge(r.max_residual < tol);
            Ok(report)
        }
        HeisCommand::Central { m, z_max, z_points, zeta_max, zeta_nodes, w } => {
            let w = match w {
                Some(c) => parse_w(c, *m)?,
                None => parse_w(&vec![0.0; 2 * m], *m)?,
            };
            if *z_points < 2 || *zeta_nodes < 2 {
                return Err(CliError::invalid("grids need at least two points"));
            }
            let f = GaussianFunction::standard(*m);
            let samples = CentralSamples::from_fn(*m, -z_max, *z_max, *z_points, vec![w.clone()], |z, w| f.eval(z, w));
            let rule = QuadratureRule::trapezoid(-zeta_max, *zeta_max, *zeta_nodes);
            let (values, warnings) = central_reconstruct(&samples, &rule);
            let tol = g.tolerance_or(1e-8);
            let mut table = Table::new(&["z", "value_re", "value_im", "exact", "residual"]);
            let mut worst: f64 = 0.0;
            for (&z, v) in samples.z.iter().zip(&values[0]) {
                let exact = f.eval(z, &w);
                let res = (v - exact).norm();
                worst = worst.max(res);
                table.push(vec![to_value(z), to_value(v.re), to_value(v.im), to_value(exact.re), to_value(res)]);
            }
            let mut report = Report::new("heis central", g.seed);
            report.tolerance = Some(tol);
            report
                .param("m", m)
                .param("z_max", z_max)
                .param("z_points", z_points)
                .param("zeta_max", zeta_max)
                .param("zeta_nodes", zeta_nodes)
                .param("w", w.iter().map(|c| complex_json(*c)).collect::<Vec<_>>());
            report.residual("max_residual", worst);
            report.results = json!({ "max_residual": worst, "points": samples.z.len(), "warnings": warnings });
            report.table = Some(table);
            report.verdict = format!("reconstruction max residual {worst:.3e}");
            report.judge(worst < tol);
            Ok(report)
        }
    }
}
