use clap::{Args, Subcommand, ValueEnum};
use orbita_core::heisenberg_model::{GaussianFunction, GroupFunction, HeisenbergElement, LambdaGrid};
use orbita_core::spherical_analysis::{
    eigenfunction_residual, functional_equation_residual_with, positive_definite_check, random_pairs, random_points,
    spherical_invert, GroupPoint, InversionWeights, KIntegrator, Operator, SpectralSamples, SphericalFunction,
    TransformGrid,
};
use orbita_core::Complex64;
use serde_json::json;

use super::complex_json;
use crate::error::CliError;
use crate::report::{to_value, Report, Table};
use crate::Global;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Radial functions on ℝⁿ under SO(n).
    Bessel,
    /// U(n)-invariant functions on H_n.
    Laguerre,
    /// The constant function 1.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Group {
    Euclidean,
    Heisenberg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Integrator {
    Circle,
    Radial,
    MonteCarlo,
}

/// Which spherical function, and on which group.
#[derive(Debug, Clone, Args)]
pub struct Member {
    #[arg(long, value_enum)]
    family: Family,
    /// Rank: ℝⁿ for Bessel, H_n for Laguerre.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    xi: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    zeta: f64,
    #[arg(long, default_value_t = 0)]
    m: usize,
    /// Group for `--family none`.
    #[arg(long, value_enum)]
    group: Option<Group>,
}

impl Member {
    fn group(&self) -> Group {
        match self.family {
            Family::Bessel => Group::Euclidean,
            Family::Laguerre => Group::Heisenberg,
            Family::None => self.group.unwrap_or(Group::Euclidean),
        }
    }

    fn rank(&self) -> usize {
        self.n.unwrap_or(match self.group() {
            Group::Euclidean => 2,
            Group::Heisenberg => 1,
        })
    }

    fn origin(&self) -> GroupPoint {
        match self.group() {
            Group::Euclidean => GroupPoint::origin_euclidean(self.rank()),
            Group::Heisenberg => GroupPoint::origin_heisenberg(self.rank()),
        }
    }

    fn function(&self) -> Result<SphericalFunction, CliError> {
        let n = self.rank();
        if n == 0 {
            return Err(CliError::invalid("rank must be at least 1"));
        }
        Ok(match self.family {
            Family::Bessel => SphericalFunction::bessel(n, self.xi)?,
            Family::Laguerre => SphericalFunction::laguerre(n, self.zeta, self.m)?,
            Family::None => SphericalFunction::Trivial,
        })
    }

    /// `(r, 0, …)` on ℝⁿ, `(z, r e_1)` on H_n.
    fn point(&self, z: f64, r: f64) -> GroupPoint {
        let n = self.rank();
        match self.group() {
            Group::Euclidean => {
                let mut x = vec![0.0; n];
                x[0] = r;
                GroupPoint::Euclidean(x)
            }
            Group::Heisenberg => {
                let mut w = vec![Complex64::new(0.0, 0.0); n];
                w[0] = Complex64::new(r, 0.0);
                GroupPoint::Heisenberg(HeisenbergElement::new(z, w))
            }
        }
    }

    fn operator(&self) -> Operator {
        match self.group() {
            Group::Euclidean => Operator::Laplacian,
            Group::Heisenberg => Operator::Sublaplacian,
        }
    }

    fn record(&self, report: &mut Report) {
        report.param("family", format!("{:?}", self.family).to_lowercase());
        report.param("group", format!("{:?}", self.group()).to_lowercase());
        report.param("n", self.rank());
        match self.family {
            Family::Bessel => {
                report.param("xi", self.xi);
            }
            Family::Laguerre => {
                report.param("zeta", self.zeta).param("m", self.m);
            }
            Family::None => {}
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum SphericalCommand {
    /// Values on a grid, with the eigenfunction residual of the invariant operator.
    Eval {
        #[command(flatten)]
        member: Member,
        #[arg(long, value_delimiter = ',', default_value = "0", allow_hyphen_values = true)]
        r: Vec<f64>,
        /// Central coordinates (H_n only).
        #[arg(long, value_delimiter = ',', default_value = "0", allow_hyphen_values = true)]
        z: Vec<f64>,
    },
    /// Functional equation, positive definiteness and eigen equation on random samples.
    Check {
        #[command(flatten)]
        member: Member,
        #[arg(long, default_value_t = 8)]
        pairs: usize,
        /// Size of the Gram matrix.
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 1.5)]
        scale: f64,
        #[arg(long, value_enum)]
        integrator: Option<Integrator>,
        /// Nodes of the circle or radial rule.
        #[arg(long)]
        nodes: Option<usize>,
        /// Samples of the Monte Carlo rule.
        #[arg(long, default_value_t = 4000)]
        samples: usize,
        /// Run the checks on a K-invariant Gaussian that is not spherical; they must fail.
        #[arg(long)]
        negative_control: bool,
    },
    /// Spherical transform and inversion of the Gaussian on H_n.
    Invert {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 160)]
        m_max: usize,
        #[arg(long, default_value_t = 8.0)]
        zeta_max: f64,
        #[arg(long, default_value_t = 8)]
        levels: usize,
        #[arg(long, default_value_t = 16)]
        points_per_panel: usize,
        #[arg(long, value_delimiter = ',', default_value = "0,0.5", allow_hyphen_values = true)]
        r: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0,0.4", allow_hyphen_values = true)]
        z: Vec<f64>,
    },
}

/// Residual threshold a genuine spherical function must beat.
fn default_tolerance(phi: &SphericalFunction) -> f64 {
    match phi {
        SphericalFunction::Trivial => 1e-12,
        SphericalFunction::Bessel { .. } => 1e-5,
        SphericalFunction::Laguerre { .. } => 1e-10,
    }
}

const CONTROL_RESIDUAL: f64 = 1e-2;
const CONTROL_EIGENVALUE: f64 = -1e-3;
const PSD_FLOOR: f64 = -1e-8;

/// Eigen residual at the step the report recommends for this point.
fn eigen_at(phi: &SphericalFunction, op: Operator, p: &GroupPoint) -> Result<(f64, Vec<String>), CliError> {
    let probe = eigenfunction_residual(phi, op, p, 1e-3)?;
    let r = eigenfunction_residual(phi, op, p, probe.recommended_step)?;
    Ok((r.residual, r.warnings))
}

fn gaussian(p: &GroupPoint) -> Complex64 {
    match p {
        GroupPoint::Euclidean(_) => Complex64::new((-p.radius_sqr()).exp(), 0.0),
        GroupPoint::Heisenberg(h) => GaussianFunction::standard(h.m()).at(h),
    }
}

pub fn run(cmd: &SphericalCommand, g: &Global) -> Result<Report, CliError> {
    match cmd {
        SphericalCommand::Eval { member, r, z } => {
            let phi = member.function()?;
            let mut report = Report::new("spherical eval", g.seed);
            member.record(&mut report);
            let zs: &[f64] = if member.group() == Group::Heisenberg { z } else { &[0.0] };
            report.param("r", r).param("z", zs);
            let mut table = Table::new(&["z", "r", "value_re", "value_im", "residual"]);
            let mut worst: f64 = 0.0;
            let mut warnings = Vec::new();
            let mut first = None;
            for &zv in zs {
                for &rv in r {
                    let p = member.point(zv, rv);
                    let v = phi.eval(&p)?;
                    let (res, w) = eigen_at(&phi, member.operator(), &p)?;
                    worst = worst.max(res);
                    warnings.extend(w);
                    first.get_or_insert(v);
                    table.push(vec![to_value(zv), to_value(rv), to_value(v.re), to_value(v.im), to_value(res)]);
                }
            }
            let first = first.ok_or_else(|| CliError::invalid("empty evaluation grid"))?;
            report.residual("eigen_max", worst);
            report.results = json!({
                "function": phi,
                "value": complex_json(first),
                "points": table.rows.len(),
                "operator": member.operator(),
                "warnings": warnings,
            });
            report.verdict = if table.rows.len() == 1 {
                if first.im == 0.0 { first.re.to_string() } else { first.to_string() }
            } else {
                format!("{} values, eigen residual ≤ {worst:.3e}", table.rows.len())
            };
            report.table = Some(table);
            Ok(report)
        }
        SphericalCommand::Check { member, pairs, points, scale, integrator, nodes, samples, negative_control } => {
            let phi = member.function()?;
            let origin = member.origin();
            let n = member.rank();
            let kind = integrator.unwrap_or(match (member.group(), n) {
                (_, 1) | (Group::Euclidean, 2) => Integrator::Circle,
                (Group::Euclidean, _) if !negative_control => Integrator::Radial,
                _ => Integrator::MonteCarlo,
            });
            let rule = match kind {
                Integrator::Circle => KIntegrator::Circle { nodes: nodes.unwrap_or(128) },
                Integrator::Radial => KIntegrator::Radial { nodes: nodes.unwrap_or(96) },
                Integrator::MonteCarlo => KIntegrator::MonteCarlo { samples: *samples, seed: g.seed },
            };
            let pair_set = random_pairs(&origin, *pairs, *scale, g.seed);
            let gram_points = random_points(&origin, *points, *scale, g.seed.wrapping_add(1));
            let mut report = Report::new("spherical check", g.seed);
            member.record(&mut report);
            report
                .param("pairs", pairs)
                .param("points", points)
                .param("scale", scale)
                .param("integrator", rule)
                .param("negative_control", negative_control);

            let (fe, psd) = if *negative_control {
                let negated = |p: &GroupPoint| -gaussian(p);
                (
                    functional_equation_residual_with(&gaussian, None, &pair_set, rule)?,
                    positive_definite_check(&negated, &gram_points)?,
                )
            } else {
                (
                    functional_equation_residual_with(&phi, Some(&phi), &pair_set, rule)?,
                    positive_definite_check(&phi, &gram_points)?,
                )
            };
            let five_sigma = fe.sigma.map_or(0.0, |s| 5.0 * s);
            report.residual("functional_equation", fe.residual).residual("gram_min_eigenvalue", psd.min_eigenvalue);
            let mut results = json!({
                "function": if *negative_control { json!("gaussian (not spherical)") } else { to_value(phi) },
                "functional_equation": fe,
                "positive_definite": psd,
            });

            if *negative_control {
                let threshold = CONTROL_RESIDUAL + five_sigma;
                report.tolerance = Some(threshold);
                let fe_fails = fe.residual > threshold;
                let psd_fails = psd.min_eigenvalue < CONTROL_EIGENVALUE;
                results["expected_failure"] = json!({ "functional_equation": fe_fails, "positive_definite": psd_fails });
                report.verdict = if fe_fails && psd_fails {
                    format!(
                        "negative control failed as expected (residual {:.3e} > {threshold:.1e}, min eigenvalue {:.3e})",
                        fe.residual, psd.min_eigenvalue
                    )
                } else {
                    "negative control unexpectedly passed".to_string()
                };
                report.results = results;
                report.judge(fe_fails && psd_fails);
                return Ok(report);
            }

            let tol = g.tolerance_or(default_tolerance(&phi)).max(five_sigma);
            report.tolerance = Some(tol);
            let probe = random_points(&origin, 1, *scale, g.seed.wrapping_add(2)).remove(0);
            let (eigen, warnings) = eigen_at(&phi, member.operator(), &probe)?;
            report.residual("eigen", eigen);
            results["eigen"] = json!({ "operator": member.operator(), "residual": eigen, "warnings": warnings });
            let fe_ok = fe.residual < tol;
            let psd_ok = psd.min_eigenvalue >= PSD_FLOOR;
            report.verdict = format!(
                "functional equation residual {:.3e} ({}), Gram min eigenvalue {:.3e} ({})",
                fe.residual,
                if fe_ok { "ok" } else { "FAILED" },
                psd.min_eigenvalue,
                if psd_ok { "ok" } else { "FAILED" }
            );
            report.results = results;
            report.judge(fe_ok && psd_ok);
            Ok(report)
        }
        SphericalCommand::Invert { n, m_max, zeta_max, levels, points_per_panel, r, z } => {
            if *n == 0 {
                return Err(CliError::invalid("H_n needs n ≥ 1"));
            }
            let grid = LambdaGrid::Graded { max: *zeta_max, levels: *levels, points_per_panel: *points_per_panel };
            let f = |p: &GroupPoint| gaussian(p);
            let spectral = SpectralSamples::heisenberg(&f, *n, &grid.rule(), *m_max, &TransformGrid::default())?;
            let member = Member { family: Family::Laguerre, n: Some(*n), xi: 1.0, zeta: 1.0, m: 0, group: None };
            let pts: Vec<(f64, f64, GroupPoint)> =
                z.iter().flat_map(|&zv| r.iter().map(move |&rv| (zv, rv))).map(|(zv, rv)| (zv, rv, member.point(zv, rv))).collect();
            let group_points: Vec<GroupPoint> = pts.iter().map(|p| p.2.clone()).collect();
            let values = spherical_invert(&spectral, &InversionWeights::Heisenberg, &group_points)?;
            let tol = g.tolerance_or(1e-2);
            let mut table = Table::new(&["z", "r", "value_re", "value_im", "exact", "residual"]);
            let mut worst: f64 = 0.0;
            for ((zv, rv, p), v) in pts.iter().zip(&values) {
                let exact = gaussian(p).re;
                let res = (v - exact).norm();
                worst = worst.max(res);
                table.push(vec![to_value(zv), to_value(rv), to_value(v.re), to_value(v.im), to_value(exact), to_value(res)]);
            }
            let mut report = Report::new("spherical invert", g.seed);
            report.tolerance = Some(tol);
            report
                .param("n", n)
                .param("m_max", m_max)
                .param("zeta_grid", grid)
                .param("transform_grid", TransformGrid::default())
                .param("test_function", "exp(-z^2/2 - |w|^2/2)");
            report.residual("max_residual", worst);
            report.results = json!({ "max_residual": worst, "points": values.len(), "zeta_nodes": spectral.zeta.len() });
            report.table = Some(table);
            report.verdict = format!("reconstruction max residual {worst:.3e}");
            report.judge(worst < tol);
            Ok(report)
        }
    }
}
