//! Exact overpartition statistics and the Lambert-series identities that tie
//! them to multiplicative functions.
//!
//! - [`qseries`]: truncated power series over big integers (or `f64`), the
//!   q-Pochhammer products, theta series, Lambert series and the M̄_k
//!   generating function.
//! - [`arith`]: smallest-prime-factor sieve, named arithmetic functions and
//!   the restricted divisor sum B(a, α, β; n).
//! - [`overpartitions`]: enumeration plus p̄(n), S(k,n), M̄_k(n) and
//!   A(a, α, β; n), each by more than one route.
//! - [`identities`]: checkers that evaluate both sides of an identity along
//!   separate code paths and report per-n residuals.
//! - [`cli`]: the `overpart` command-line front end.

pub mod arith;
pub mod cli;
pub mod coeff;
pub mod identities;
pub mod overpartitions;
pub mod qseries;

pub use arith::{ArithError, ArithmeticSequence, ModulusParams, SequenceKind, Sieve};
pub use coeff::{Coefficient, Real};
pub use identities::{IdentityReport, Verifier};
pub use overpartitions::{AMethod, CountMethod, Overpartition};
pub use qseries::{FloatSeries, ProductSign, Series, SeriesError, TruncatedSeries};
