use thiserror::Error;

/// Errors raised by the quantum-plane kernel and its front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("invalid radicand {0}: must be a squarefree integer other than 0 and 1")]
    InvalidRadicand(i64),
    #[error("the parameter q must be nonzero")]
    ZeroParameter,
    #[error("operands use different parameters (q or field)")]
    ParameterMismatch,
    #[error("the zero polynomial has no integer degree")]
    DegreeOfZero,
    #[error("divisor has a non-constant leading coefficient in the requested direction")]
    NonUnitLeadingCoefficient,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("divisor admits no exact division direction")]
    UnsupportedDivisor,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial involves both variables")]
    NotUnivariate,
    #[error("degree {degree} exceeds the supported cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },
    #[error("input is constant")]
    ConstantInput,
    #[error("input is zero")]
    ZeroInput,
    #[error("not a quadratic form")]
    NotQuadraticForm,
    #[error("square root is not representable in a supported field")]
    RootNotRepresentable,
    #[error("polynomial system has a positive-dimensional solution set")]
    DegenerateSystem,
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown symbol '{symbol}' at {position}")]
    UnknownSymbol { position: usize, symbol: String },
    #[error("sqrt({0}) does not lie in the field {1}")]
    RadicalOutsideField(i64, String),
    #[error("invalid field descriptor '{0}'")]
    InvalidFieldDescriptor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
