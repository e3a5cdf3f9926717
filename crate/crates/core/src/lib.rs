//! Exact combinatorics of gap sequences, Schur functions and KP tau
//! functions, together with the hyperelliptic numerics (period matrices,
//! Riemann theta, sigma functions) needed to exercise them on actual curves.
//!
//! The crate splits into an exact half and a numeric half.  The exact half
//! (`partition`, `gaps`, `series`, `schur`, `ugm`, `hirota`, `wave`) works
//! over arbitrary-precision rationals and proves identities term by term.
//! The numeric half (`curve`, `quadrature`, `periods`, `theta`, `sigma`)
//! evaluates the same objects on hyperelliptic curves in complex double
//! precision with explicit error estimates.  `verify` wires both halves
//! into a reportable check suite consumed by the CLI and the test suite.

pub mod curve;
pub mod fixtures;
pub mod gaps;
pub mod hirota;
pub mod jet;
pub mod linalg;
pub mod partition;
pub mod periods;
pub mod quadrature;
pub mod report;
pub mod schur;
pub mod series;
pub mod sigma;
pub mod theta;
pub mod ugm;
pub mod verify;
pub mod wave;

pub use partition::Partition;
pub use series::{ExactSeries, Q};
