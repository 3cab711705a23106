use orbita_core::heisenberg_model::HeisenbergError;
use orbita_core::lie_core::LieError;
use orbita_core::nilmanifold_registry::RegistryError;
use orbita_core::orbit_method::OrbitError;
use orbita_core::spherical_analysis::SphericalError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub const IO: u8 = 1;
    pub const INVALID: u8 = 2;
    /// Reported through [`crate::report::Report::judge`] after the report is printed.
    pub const NON_CONVERGENCE: u8 = 3;

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Io(_) => Self::IO,
            Self::Invalid(_) => Self::INVALID,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Self::Invalid(msg.into())
    }
}

macro_rules! invalid_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                Self::Invalid(e.to_string())
            }
        })*
    };
}

invalid_from!(LieError, OrbitError, HeisenbergError, SphericalError);

impl From<RegistryError> for CliError {
    fn from(e: RegistryError) -> Self {
        match e {
            RegistryError::Io(_) => Self::Io(e.to_string()),
            other => Self::Invalid(other.to_string()),
        }
    }
}
