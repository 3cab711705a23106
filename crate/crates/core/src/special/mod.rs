//! Quadrature rules and the special functions used by the numeric modules.

mod bessel;
mod hermite;
mod laguerre;
mod quadrature;

pub use bessel::{bessel_j, gamma_half_integer, normalized_bessel};
pub use hermite::{hermite_functions, hermite_functions_into};
pub use laguerre::{laguerre, laguerre_functions_into, normalized_laguerre};
pub use quadrature::{gauss_hermite, gauss_legendre, graded_panels, GaussHermite, QuadratureRule};
