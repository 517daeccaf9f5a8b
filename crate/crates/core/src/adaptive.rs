//! Bound-driven adaptive Simpson integration.
//!
//! The composite quasi-convex bound holds for every division of `[a, b]`, so
//! any refinement strategy stays certified. We bisect, greedily, the cell
//! with the largest bound term until the summed bound meets the tolerance.

use serde::{Deserialize, Serialize};

use crate::bounds::{
    check_quasiconvex, composite_qc_bound, estimate_sup_abs_derivative, per_cell_classical_bound,
    qc_cell_term, Assumption, AssumptionStatus, BoundReport, DEFAULT_QC_GRID, DEFAULT_SUP_GRID,
};
use crate::error::{Error, Result};
use crate::functions::{FunctionSpec, Interval};
use crate::quadrature::{composite_simpson, CertifiedResult, Partition};

pub const DEFAULT_MAX_CELLS: usize = 4096;

/// What to do when `|f''''|` fails the quasi-convexity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fallback {
    /// Certify with per-cell classical bounds instead.
    #[default]
    Classical,
    Reject,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdaptiveConfig {
    pub tol: f64,
    pub max_cells: usize,
    pub fallback: Fallback,
}

impl AdaptiveConfig {
    pub fn new(tol: f64) -> Result<Self> {
        let cfg = Self {
            tol,
            max_cells: DEFAULT_MAX_CELLS,
            fallback: Fallback::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_max_cells(mut self, max_cells: usize) -> Result<Self> {
        self.max_cells = max_cells;
        self.validate()?;
        Ok(self)
    }

    pub fn with_fallback(mut self, fallback: Fallback) -> Self {
        self.fallback = fallback;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_cells < 1 {
            return Err(Error::InvalidArgument("max_cells must be >= 1".into()));
        }
        Ok(())
    }
}

/// Which per-cell bound drives the refinement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellRule {
    QuasiConvex,
    Classical,
}

impl CellRule {
    fn term(self, f: &FunctionSpec, cell: Interval) -> Result<f64> {
        match self {
            CellRule::QuasiConvex => qc_cell_term(f, cell),
            CellRule::Classical => {
                let m = estimate_sup_abs_derivative(f, 4, cell, DEFAULT_SUP_GRID)?;
                Ok(cell.width().powi(5) * m / 2880.0)
            }
        }
    }
}

/// The outcome of the refinement loop, before certification.
#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub partition: Partition,
    pub rule: CellRule,
    /// Summed bound at the start of every iteration.
    pub bound_history: Vec<f64>,
}

struct Cell {
    iv: Interval,
    term: f64,
}

/// Runs the greedy bisection loop. Ties on the largest term go to the
/// leftmost cell, so equal inputs give equal partitions.
pub fn refine(f: &FunctionSpec, iv: Interval, cfg: &AdaptiveConfig) -> Result<Refinement> {
    cfg.validate()?;
    f.check_interval(&iv)?;
    let check = check_quasiconvex(f, 4, iv, DEFAULT_QC_GRID)?;
    let rule = match (check.passed(), cfg.fallback) {
        (true, _) => CellRule::QuasiConvex,
        (false, Fallback::Classical) => CellRule::Classical,
        (false, Fallback::Reject) => {
            return Err(Error::HypothesisFailed(format!(
                "|f''''| of {} is not quasi-convex on {iv}: {}",
                f.name(),
                check.describe()
            )))
        }
    };

    let mut cells = vec![Cell {
        iv,
        term: rule.term(f, iv)?,
    }];
    let mut history = Vec::new();
    loop {
        let total: f64 = cells.iter().map(|c| c.term).sum();
        history.push(total);
        if total <= cfg.tol {
            break;
        }
        if cells.len() >= cfg.max_cells {
            return Err(Error::ToleranceUnreachable {
                tol: cfg.tol,
                max_cells: cfg.max_cells,
                bound: total,
            });
        }
        let mut worst = 0;
        for (i, c) in cells.iter().enumerate() {
            if c.term > cells[worst].term {
                worst = i;
            }
        }
        let (left, right) = cells[worst]
            .iv
            .bisect()
            .map_err(|_| Error::ToleranceUnreachable {
                tol: cfg.tol,
                max_cells: cfg.max_cells,
                bound: total,
            })?;
        cells[worst] = Cell {
            iv: left,
            term: rule.term(f, left)?,
        };
        cells.insert(
            worst + 1,
            Cell {
                iv: right,
                term: rule.term(f, right)?,
            },
        );
    }

    let intervals: Vec<Interval> = cells.iter().map(|c| c.iv).collect();
    Ok(Refinement {
        partition: Partition::from_cells(&intervals)?,
        rule,
        bound_history: history,
    })
}

/// Integrates `f` over `iv` to a certified tolerance.
///
/// The certifying bound is recomputed from scratch on the final partition.
pub fn integrate_certified(
    f: &FunctionSpec,
    iv: Interval,
    cfg: &AdaptiveConfig,
) -> Result<CertifiedResult> {
    let refinement = refine(f, iv, cfg)?;
    let partition = refinement.partition;
    let bound: BoundReport = match refinement.rule {
        CellRule::QuasiConvex => composite_qc_bound(f, &partition)?,
        CellRule::Classical => per_cell_classical_bound(f, &partition)?.assume(
            Assumption::new("quasi_convex_abs_f4", AssumptionStatus::Assumed)
                .with_detail("check failed; certified by per-cell classical bounds"),
        ),
    };
    if !bound.is_certifying() || bound.value > cfg.tol {
        return Err(Error::ToleranceUnreachable {
            tol: cfg.tol,
            max_cells: cfg.max_cells,
            bound: bound.value,
        });
    }
    Ok(CertifiedResult {
        estimate: composite_simpson(f, &partition)?,
        bound,
        partition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::BoundFamily;
    use crate::functions::{builtin_corpus, lookup};
    use crate::quadrature::reference_integral;

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(AdaptiveConfig::new(0.0).is_err());
        assert!(AdaptiveConfig::new(f64::NAN).is_err());
        assert!(AdaptiveConfig::new(1e-6)
            .unwrap()
            .with_max_cells(0)
            .is_err());
        assert_eq!(AdaptiveConfig::new(1e-6).unwrap().max_cells, 4096);
    }

    #[test]
    fn exp_x2_to_one_micro() {
        let f = lookup("exp_x2").unwrap();
        let cfg = AdaptiveConfig::new(1e-6).unwrap();
        let r = integrate_certified(&f, unit(), &cfg).unwrap();
        assert!(r.bound.value <= 1e-6);
        assert_eq!(r.bound.family, BoundFamily::CompositeQc);
        assert!((r.estimate - 1.462651746).abs() <= 1e-6);
        assert!(r.partition.covers(&unit()));
    }

    #[test]
    fn cubic_needs_no_refinement() {
        let f = lookup("x3").unwrap();
        let cfg = AdaptiveConfig::new(1e-12).unwrap();
        let r = integrate_certified(&f, unit(), &cfg).unwrap();
        assert_eq!(r.partition.nodes(), &[0.0, 1.0]);
        assert_eq!(r.bound.value, 0.0);
        assert_eq!(r.estimate, 0.25);
    }

    #[test]
    fn quartic_refines_to_closed_form_requirement() {
        let f = lookup("x4").unwrap();
        let cfg = AdaptiveConfig::new(1e-6).unwrap();
        let r = integrate_certified(&f, unit(), &cfg).unwrap();
        assert!(r.bound.value <= 1e-6);
        assert!((r.estimate - 0.2).abs() <= r.bound.value);
        // Uniform-equivalent: at least 10 cells are needed since 1/(120 n^4) <= 1e-6.
        assert!(r.partition.len() >= 10, "{}", r.partition.len());
        // f'''' is constant, so the bound is exact: error equals the bound.
        assert!(((r.estimate - 0.2).abs() - r.bound.value).abs() < 1e-15);
    }

    #[test]
    fn bound_history_never_increases() {
        for name in ["exp_x2", "exp_x", "x4", "poly5", "sqrt1px"] {
            let f = lookup(name).unwrap();
            let cfg = AdaptiveConfig::new(1e-9).unwrap();
            let r = refine(&f, f.default_interval(), &cfg).unwrap();
            for w in r.bound_history.windows(2) {
                assert!(w[1] <= w[0], "{name}: {} -> {}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn deterministic_partitions() {
        let f = lookup("exp_x2").unwrap();
        let cfg = AdaptiveConfig::new(1e-8).unwrap();
        let a = refine(&f, unit(), &cfg).unwrap();
        let b = refine(&f, unit(), &cfg).unwrap();
        assert_eq!(a.partition, b.partition);
    }

    #[test]
    fn fallback_behaviour_when_not_quasiconvex() {
        let f = lookup("sin").unwrap();
        let iv = f.domain();
        let reject = AdaptiveConfig::new(1e-6)
            .unwrap()
            .with_fallback(Fallback::Reject);
        assert!(matches!(
            integrate_certified(&f, iv, &reject),
            Err(Error::HypothesisFailed(_))
        ));
        let classical = AdaptiveConfig::new(1e-6).unwrap();
        let r = integrate_certified(&f, iv, &classical).unwrap();
        assert_eq!(r.bound.family, BoundFamily::PerCellClassical);
        assert!(r.bound.is_certifying());
        assert!((r.estimate - 2.0).abs() <= r.bound.value);
    }

    #[test]
    fn cell_cap_reports_unreachable_tolerance() {
        let f = lookup("exp_x2").unwrap();
        let cfg = AdaptiveConfig::new(1e-12)
            .unwrap()
            .with_max_cells(8)
            .unwrap();
        assert!(matches!(
            integrate_certified(&f, unit(), &cfg),
            Err(Error::ToleranceUnreachable { max_cells: 8, .. })
        ));
    }

    #[test]
    fn corpus_reaches_1e_minus_8_and_certifies() {
        for f in builtin_corpus() {
            if f.name() == "x_sin_pi_over_x" {
                continue;
            }
            let iv = f.default_interval();
            let cfg = AdaptiveConfig::new(1e-8).unwrap();
            let r =
                integrate_certified(&f, iv, &cfg).unwrap_or_else(|e| panic!("{}: {e}", f.name()));
            let truth = reference_integral(&f, iv, 1e-13).unwrap();
            assert!(
                (truth - r.estimate).abs() <= r.bound.value + 1e-13,
                "{}: err {} bound {}",
                f.name(),
                (truth - r.estimate).abs(),
                r.bound.value
            );
        }
    }
}
