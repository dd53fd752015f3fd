//! Certified positivity tests for entire functions with real zeros, via
//! power sums of zeros and Hausdorff-type difference tables.

pub mod catalog;
pub mod criterion;
pub mod error;
pub mod hausdorff;
pub mod scalars;
pub mod series;
pub mod symfun;
pub mod zeros;

pub use catalog::{CoefficientMode, FunctionKind, FunctionSpec, Params, QuadConfig};
pub use criterion::{
    CertMode, CertificateReport, CertifyConfig, LambdaPolicy, Outcome, ReportFormat, RhoPolicy,
};
pub use error::{Error, Result};
pub use scalars::{BigFloat, Rational, Scalar, Values};
pub use zeros::ZeroTable;
