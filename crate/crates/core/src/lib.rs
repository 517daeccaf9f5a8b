//! Simpson-rule quadrature with certified a-priori error bounds.
//!
//! The crate pairs the three-point Simpson rule (single interval and
//! composite) with the error bounds that can be computed from properties of
//! the integrand alone:
//!
//! * the classical fourth-derivative bound `(b-a)^5 / 2880 * sup|f''''|`,
//! * bounded-variation bounds `C_n (b-a)^(n+1) V(f^(n))` for `n = 0..=3`,
//! * the quasi-convexity bound, which only needs `|f''''|` at the two
//!   endpoints and the midpoint of each cell,
//!
//! and uses the quasi-convex bound to drive a bisection integrator whose
//! result carries a certificate ([`adaptive::integrate_certified`]).
//!
//! Hypotheses (quasi-convexity, monotonicity, bounded variation) are checked
//! by sampling. Reports say `verified_sampled`, never "proved".

pub mod adaptive;
pub mod bounds;
pub mod error;
pub mod functions;
pub mod kernel;
pub mod quadrature;

pub use adaptive::{integrate_certified, AdaptiveConfig, Fallback};
pub use bounds::{
    Assumption, AssumptionStatus, BoundFamily, BoundReport, BvConstants, Direction,
    QuasiConvexCheck,
};
pub use error::{Error, Result};
pub use functions::{builtin_corpus, lookup, DerivativeSource, FunctionSpec, Interval};
pub use quadrature::{
    actual_error, composite_simpson, reference_integral, simpson_single, CertifiedResult, Partition,
};
