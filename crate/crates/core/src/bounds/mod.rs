//! A-priori error bounds for Simpson's rule and the hypotheses they need.
//!
//! | family | value | needs |
//! |---|---|---|
//! | classical | `(b-a)^5 / 2880 · sup|f''''|` | bounded `f''''` |
//! | bv(n) | `C_n (b-a)^(n+1) V(f^(n))` | `f^(n)` of bounded variation |
//! | quasi-convex | `(b-a)^5 / 5760 · [max(g(a), g(m)) + max(g(m), g(b))]`, `g = |f''''|` | `g` quasi-convex |
//! | quasi-convex, monotone | `(b-a)^5 / 5760 · [g(m) + g(b)]` (increasing) or `[g(a) + g(m)]` (decreasing) | `g` monotone |
//!
//! Composite versions apply the per-interval formula cell by cell and sum.

mod families;
mod sampling;

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use families::{
    bv_bound, classical_bound, composite_bv_bound, composite_classical_bound, composite_qc_bound,
    composite_qc_bound_monotone, per_cell_classical_bound, qc_bound, qc_bound_monotone,
    qc_cell_term,
};
pub use sampling::{
    check_monotone, check_quasiconvex, estimate_sup_abs_derivative, estimate_total_variation,
    QuasiConvexCheck, QuasiConvexWitness,
};

/// Grid size for sup-norm estimation.
pub const DEFAULT_SUP_GRID: usize = 129;
/// Grid size for the sampled quasi-convexity check.
pub const DEFAULT_QC_GRID: usize = 65;
/// Grid size for the sampled monotonicity check.
pub const MONOTONE_GRID: usize = 33;
/// Relative convergence tolerance for total-variation estimates.
pub const DEFAULT_TV_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
        })
    }
}

/// Which inequality produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum BoundFamily {
    Classical,
    Bv {
        order: usize,
    },
    QuasiConvex,
    QuasiConvexMonotone {
        direction: Direction,
    },
    CompositeQc,
    CompositeQcMonotone {
        direction: Direction,
    },
    CompositeClassical,
    CompositeBv {
        order: usize,
    },
    /// Per-cell classical bounds, each with its own sup.
    PerCellClassical,
}

impl fmt::Display for BoundFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundFamily::Classical => f.write_str("classical"),
            BoundFamily::Bv { order } => write!(f, "bv{order}"),
            BoundFamily::QuasiConvex => f.write_str("qc"),
            BoundFamily::QuasiConvexMonotone { direction } => match direction {
                Direction::Increasing => f.write_str("qc-mono-inc"),
                Direction::Decreasing => f.write_str("qc-mono-dec"),
            },
            BoundFamily::CompositeQc => f.write_str("composite-qc"),
            BoundFamily::CompositeQcMonotone { direction } => match direction {
                Direction::Increasing => f.write_str("composite-qc-mono-inc"),
                Direction::Decreasing => f.write_str("composite-qc-mono-dec"),
            },
            BoundFamily::CompositeClassical => f.write_str("composite-classical"),
            BoundFamily::CompositeBv { order } => write!(f, "composite-bv{order}"),
            BoundFamily::PerCellClassical => f.write_str("per-cell-classical"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssumptionStatus {
    VerifiedSampled,
    Assumed,
    Failed,
}

impl fmt::Display for AssumptionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AssumptionStatus::VerifiedSampled => "verified_sampled",
            AssumptionStatus::Assumed => "assumed",
            AssumptionStatus::Failed => "failed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assumption {
    pub name: String,
    pub status: AssumptionStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Assumption {
    pub fn new(name: impl Into<String>, status: AssumptionStatus) -> Self {
        Self {
            name: name.into(),
            status,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// A named quantity that went into a bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundInput {
    pub name: String,
    pub value: f64,
}

/// A computed bound on `|∫f - S(f)|` with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub family: BoundFamily,
    pub value: f64,
    pub inputs: Vec<BoundInput>,
    pub assumptions: Vec<Assumption>,
}

impl BoundReport {
    pub(crate) fn new(family: BoundFamily, value: f64) -> Self {
        debug_assert!(value >= 0.0, "bounds are non-negative: {value}");
        Self {
            family,
            value,
            inputs: Vec::new(),
            assumptions: Vec::new(),
        }
    }

    pub(crate) fn input(mut self, name: impl Into<String>, value: f64) -> Self {
        self.inputs.push(BoundInput {
            name: name.into(),
            value,
        });
        self
    }

    pub(crate) fn assume(mut self, assumption: Assumption) -> Self {
        self.assumptions.push(assumption);
        self
    }

    /// A report certifies its value only if no hypothesis check failed.
    pub fn is_certifying(&self) -> bool {
        self.assumptions
            .iter()
            .all(|a| a.status != AssumptionStatus::Failed)
    }

    pub fn failed_assumptions(&self) -> impl Iterator<Item = &Assumption> {
        self.assumptions
            .iter()
            .filter(|a| a.status == AssumptionStatus::Failed)
    }

    pub fn input_value(&self, name: &str) -> Option<f64> {
        self.inputs.iter().find(|i| i.name == name).map(|i| i.value)
    }
}

/// The constants `C_0..C_3` of the bounded-variation bounds.
#[derive(Debug, Clone, Copy)]
pub struct BvConstants;

impl BvConstants {
    const DENOMINATORS: [i64; 4] = [3, 24, 324, 1152];

    pub fn exact(n: usize) -> Result<Rational64> {
        Self::DENOMINATORS
            .get(n)
            .map(|&d| Rational64::new(1, d))
            .ok_or(Error::UnsupportedOrder(n))
    }

    pub fn get(n: usize) -> Result<f64> {
        let d = *Self::DENOMINATORS
            .get(n)
            .ok_or(Error::UnsupportedOrder(n))?;
        Ok(1.0 / d as f64)
    }

    pub fn table() -> [f64; 4] {
        Self::DENOMINATORS.map(|d| 1.0 / d as f64)
    }
}
