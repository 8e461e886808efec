//! Exact machinery around ordered set partitions: triangles of Lah-type and
//! Stirling-type numbers, their row-sum (Bell-style) sequences and
//! polynomials, truncated power-series algebra over exact rationals,
//! certified enclosures for the factorial-weighted series evaluations, and a
//! Poisson sampling lab tying the rising-factorial moments back to the exact
//! values.
//!
//! Everything except the Monte-Carlo estimators runs in exact integer or
//! rational arithmetic; the [`verify`] module pits independent computation
//! paths against each other and reports machine-readable evidence.

pub mod dobinski;
pub mod oracle;
pub mod poisson;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod tables;
pub mod verify;

pub use dobinski::{DobinskiError, DobinskiResult, Enclosure};
pub use oracle::{OracleError, OrderedPartitionCount};
pub use poisson::{MomentReport, PoissonError, PoissonSpec};
pub use poly::ExactPoly;
pub use scalar::{BigInt, BigRational};
pub use series::{SeriesError, TruncSeries};
pub use tables::{NumberSequence, NumberTriangle, SequenceFamily, TriangleFamily};
pub use verify::{SuiteId, Verdict, VerifyConfig, VerifyError, VerifyReport};
