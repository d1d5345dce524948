//! Crate-wide error type.

/// Everything that can go wrong across field construction, quadratic-form
/// analysis, family validation, and code building.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} must be odd")]
    EvenCharacteristic(u64),
    #[error("extension degree m must be at least 1")]
    ZeroDegree,
    #[error("field order p^m does not fit in 64-bit arithmetic")]
    OrderOverflow,
    #[error(
        "field order {order} exceeds the enumeration guard {guard}; \
         use the large-field override to proceed"
    )]
    FieldTooLarge { order: u64, guard: u64 },
    #[error("inverse of zero is undefined")]
    ZeroInverse,
    #[error("discrete log of zero is undefined")]
    ZeroLog,
    #[error("coefficient vector {coeffs:?} is not an element of GF({p}^{m})")]
    BadElement { coeffs: Vec<u64>, p: u64, m: usize },

    #[error("not a quadratic form: {0}")]
    NotQuadratic(String),
    #[error("trace-term exponent must be at least 1 (got {0})")]
    BadExponent(u64),
    #[error("operation needs extension degree m >= {needs} (got m = {got})")]
    DegreeTooSmall { needs: usize, got: usize },
    #[error("count template undefined: {0}")]
    BadCountTemplate(String),
    #[error("theory violation: {0}")]
    TheoryViolation(String),

    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("family '{family}' rejected: {condition}")]
    InvalidFamilySpec { family: &'static str, condition: String },
    #[error("family '{family}' needs parameter --{param}")]
    MissingParam { family: &'static str, param: &'static str },

    #[error("invalid defining set: {0}")]
    BadDefiningSet(String),
    #[error(
        "defining set is not closed under nonzero scalar multiples \
         (orbit of {orbit_of:?} is incomplete)"
    )]
    NotScalarClosed { orbit_of: Vec<u64> },
    #[error("epsilon must be +1 or -1 for even m (got {0})")]
    BadEpsilon(i8),
    #[error("bound needs k >= 1 and d >= 1")]
    BoundDomain,

    #[error("cannot parse field element '{0}': expected comma-separated coefficients or g^<t>")]
    BadElementSyntax(String),
}

pub type Result<T> = std::result::Result<T, Error>;
