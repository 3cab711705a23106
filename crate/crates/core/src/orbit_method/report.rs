use serde::Serialize;
use serde_json::Value;

use super::*;
use crate::exact_algebra::format_rational;

/// Flat summary of every orbit invariant at one functional.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub algebra: String,
    pub dim: usize,
    pub center_dim: usize,
    pub step: usize,
    pub exact: bool,
    pub functional: Vec<Value>,
    pub orbit_dimension: usize,
    pub radical_basis: Vec<Vec<Value>>,
    pub is_flat: bool,
    pub is_square_integrable: bool,
    pub central_restriction: Vec<Value>,
    pub pfaffian_polynomial: String,
    pub has_square_integrable_reps: bool,
    pub formal_degree: Value,
    pub plancherel_constant: Option<String>,
    pub plancherel_density: Option<Value>,
    pub degenerate: Option<String>,
    pub note: Option<String>,
}

pub fn orbit_report<F: Scalar>(alg: &NilpotentLieAlgebra, f: &[F]) -> Result<OrbitReport, OrbitError> {
    check_dim(alg, f)?;
    let json = |v: &[F]| v.iter().map(Scalar::to_json).collect::<Vec<_>>();
    let pf = pfaffian_polynomial(alg, None)?;
    let zeta = central_restriction(alg, f)?;
    let has_sq = !pf.poly.is_zero();
    let degree = pf.formal_degree(&zeta)?;
    let (constant, density) = if has_sq {
        (Some(format_rational(&pf.constant()?)), Some(pf.plancherel_density(&zeta)?.to_json()))
    } else {
        (None, None)
    };
    Ok(OrbitReport {
        algebra: alg.name().to_string(),
        dim: alg.dim(),
        center_dim: alg.center().len(),
        step: alg.step(),
        exact: std::any::type_name::<F>() != std::any::type_name::<f64>(),
        functional: json(f),
        orbit_dimension: orbit_dimension(alg, f)?,
        radical_basis: radical(alg, f)?.iter().map(|v| json(v)).collect(),
        is_flat: is_flat_orbit(alg, f)?,
        is_square_integrable: is_square_integrable(alg, f)?,
        central_restriction: json(&zeta),
        pfaffian_polynomial: pf.poly.to_string(),
        has_square_integrable_reps: has_sq,
        formal_degree: degree.to_json(),
        plancherel_constant: constant,
        plancherel_density: density,
        degenerate: pf.degenerate_abelian.then(|| "abelian".to_string()),
        note: (!has_sq).then(|| "no square integrable representations (P is identically 0)".to_string()),
    })
}
