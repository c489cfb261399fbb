use thiserror::Error;

use crate::field::FieldError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a Leibniz algebra: identity fails on {} triple(s), first {:?}", .0.len(), .0.first())]
    LeibnizViolation(Vec<(usize, usize, usize)>),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("unknown builtin algebra {0:?}")]
    UnknownBuiltin(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("comultiplication needs the square case h = g")]
    NotSquare,

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("enumeration budget exceeded: {candidates} candidates > budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },

    #[error("invalid grading: {0}")]
    InvalidGrading(String),

    #[error("invalid bialgebra homomorphism: {0}")]
    InvalidBialgebraHom(String),

    #[error("invalid group action: {0}")]
    InvalidAction(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("quotient is not finite-dimensional")]
    NotFiniteDimensional,

    #[error("malformed input: {0}")]
    Input(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Field(_) => "field",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::LeibnizViolation(_) => "leibniz_violation",
            Error::InvalidAlgebra(_) => "invalid_algebra",
            Error::UnknownBuiltin(_) => "unknown_builtin",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::NotSquare => "not_square",
            Error::InvalidCharacter(_) => "invalid_character",
            Error::NotHomomorphism(_) => "not_homomorphism",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::InvalidGrading(_) => "invalid_grading",
            Error::InvalidBialgebraHom(_) => "invalid_bialgebra_hom",
            Error::InvalidAction(_) => "invalid_action",
            Error::InvalidGroup(_) => "invalid_group",
            Error::NotFiniteDimensional => "not_finite_dimensional",
            Error::Input(_) => "input",
        }
    }
}
