use thiserror::Error;

/// Errors raised across the toolkit.
///
/// `ShapeViolation`, `ConstraintViolation` and `TheoremViolation` are not input
/// errors: they mean a computed object contradicts a proven statement and should
/// fail loudly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u32 },
    #[error("malformed modulus: {0}")]
    BadModulus(String),
    #[error("no built-in modulus for p = {p}, n = {n}")]
    NoBuiltinModulus { p: u32, n: u32 },
    #[error("field F_{p}^{n} is too large for index arithmetic")]
    FieldTooLarge { p: u32, n: u32 },
    #[error("degree {m} does not divide {n}")]
    DegreeNotDividing { m: u32, n: u32 },
    #[error("scalar product convention mismatch: {0}")]
    ConventionMismatch(String),
    #[error("operation needs an odd prime")]
    EvenPrime,
    #[error("operation needs p = 2")]
    OddPrime,
    #[error("cyclotomic operands live over different primes ({0} vs {1})")]
    PrimeMismatch(u32, u32),

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable x{var} out of range (n = {n})")]
    VariableOutOfRange { var: usize, n: u32 },
    #[error("exponent at byte {pos} does not fit")]
    ExponentTooLarge { pos: usize },
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: u64, size: u64 },
    #[error("affine map is not a permutation")]
    NotAPermutation,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("map has a nonzero constant term")]
    NotLinear,
    #[error("table format: {0}")]
    Format(String),

    #[error("map is not bijective")]
    NotBijective,
    #[error("linear map is not surjective")]
    NotSurjective,
    #[error("map is not balanced")]
    NotBalanced,
    #[error("map is not an o-polynomial")]
    NotOPolynomial,
    #[error("coefficient is a forbidden power: {0}")]
    BadLambda(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("gcd({d}, {modulus}) = {gcd}, expected 2")]
    BadGcd { d: u64, modulus: u64, gcd: u64 },
    #[error("function is not bent")]
    NotBent,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("out of range: {0}")]
    RangeError(String),

    #[error("component b = 0 requested")]
    ZeroComponent,
    #[error("function has more than one output coordinate")]
    NotSingleOutput,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("function is not perfect nonlinear")]
    NotPerfectNonlinear,
    #[error("inconsistent totals: {0}")]
    InconsistentTotals(String),
    #[error("shape violation: {0}")]
    ShapeViolation(String),
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("search cap exceeded: {0}")]
    CapExceeded(String),
    #[error("odd n = {0} is not supported")]
    OddN(u32),
    #[error("wrong shape: {0}")]
    WrongShape(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
