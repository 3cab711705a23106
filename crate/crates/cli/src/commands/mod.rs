pub mod algebra;
pub mod heis;
pub mod orbit;
pub mod registry;
pub mod spherical;

use std::path::Path;

use orbita_core::exact_algebra::parse_rational;
use orbita_core::lie_core::{parse_algebra, NilpotentLieAlgebra};
use orbita_core::{BigRational, Complex64};
use serde_json::{json, Value};

use crate::error::CliError;

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

pub fn load_algebra(path: &Path) -> Result<NilpotentLieAlgebra, CliError> {
    Ok(parse_algebra(&read_file(path)?)?)
}

/// Exact value of `"p"`, `"p/q"` or a terminating decimal such as `"-0.25"`.
pub fn parse_exact(text: &str) -> Result<BigRational, CliError> {
    let t = text.trim();
    let bad = || CliError::invalid(format!("cannot read {text:?} as an exact rational"));
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) || t.contains('/') {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let scale = format!("1{}", "0".repeat(frac.len()));
        return parse_rational(&format!("{digits}/{scale}")).map_err(|_| bad());
    }
    parse_rational(t).map_err(|_| bad())
}

pub fn parse_functional(text: &str) -> Result<Vec<BigRational>, CliError> {
    text.split(',').map(parse_exact).collect()
}

pub fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// `x1,y1,x2,y2,…` as `w = (x1 + i y1, …)`.
pub fn parse_w(coords: &[f64], m: usize) -> Result<Vec<Complex64>, CliError> {
    if coords.len() != 2 * m {
        return Err(CliError::invalid(format!("expected {} real coordinates for w ∈ C^{m}, got {}", 2 * m, coords.len())));
    }
    Ok(coords.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect())
}
