pub mod constructions;
pub mod cyclotomic;
pub mod distributions;
pub mod enumeration;
pub mod error;
pub mod field;
pub mod function;
pub mod planar;
pub mod report;
pub mod scalar;
pub mod space;
pub mod spectral;
pub mod suites;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec, ScalarProduct};
pub use scalar::Scalar;
pub use cyclotomic::{gauss_sum, CyclotomicInt};

/// Cyclotomic integers with 64-bit coefficients, enough for every default field size.
pub type Cyclotomic = CyclotomicInt<i64>;
/// Cyclotomic integers with 128-bit coefficients.
pub type WideCyclotomic = CyclotomicInt<i128>;
/// Cyclotomic integers with arbitrary-precision coefficients.
pub type BigCyclotomic = CyclotomicInt<num_bigint::BigInt>;
pub use function::{
    anf_of, apply_affine, derivative_histogram, is_perfect_nonlinear, parse_anf, table_from_anf,
    table_from_trace_poly, AffineMap, AnfPolynomial, FunctionTable, TracePolynomial,
};
pub use space::Space;
pub use distributions::{preimage_map, value_distribution, ExtremalType, PreimageMap, ValueDistribution};
pub use report::{analyze, emit_report, Analysis, Format, Report};
pub use suites::{run_all, run_suite, SuiteOptions, VerificationSuite, SUITES};
