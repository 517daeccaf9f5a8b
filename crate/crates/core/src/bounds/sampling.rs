use crate::error::{Error, Result};
use crate::functions::{FunctionSpec, Interval, MAX_ORDER};

use super::{AssumptionStatus, Direction};

const GOLDEN_ITERATIONS: usize = 20;
const TV_MIN_LOG2: u32 = 6;
const TV_MAX_LOG2: u32 = 20;
const TV_DIVERGENCE_GROWTH: f64 = 0.01;
const HYPOTHESIS_SLACK: f64 = 1e-9;

fn check_order(order: usize, max: usize) -> Result<()> {
    if order <= max {
        Ok(())
    } else {
        Err(Error::UnsupportedOrder(order))
    }
}

// Golden-section search for the maximum of g on [lo, hi]. Returns the
// largest value evaluated.
fn golden_max(g: impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<f64> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut g1 = g(x1)?;
    let mut g2 = g(x2)?;
    let mut best = g1.max(g2);
    for _ in 0..GOLDEN_ITERATIONS {
        if g1 >= g2 {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - INV_PHI * (hi - lo);
            g1 = g(x1)?;
            best = best.max(g1);
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + INV_PHI * (hi - lo);
            g2 = g(x2)?;
            best = best.max(g2);
        }
    }
    Ok(best)
}

/// Estimates `sup |f^(order)|` on `iv`: the maximum over a uniform grid of
/// `grid` points, refined by 20 golden-section steps around the grid argmax.
pub fn estimate_sup_abs_derivative(
    f: &FunctionSpec,
    order: usize,
    iv: Interval,
    grid: usize,
) -> Result<f64> {
    check_order(order, MAX_ORDER)?;
    if grid < 33 {
        return Err(Error::InvalidArgument(format!(
            "sup grid must be >= 33, got {grid}"
        )));
    }
    f.check_interval(&iv)?;
    let g = |x: f64| f.derivative(order, x).map(f64::abs);
    let points = iv.grid(grid);
    let mut best = (0, f64::NEG_INFINITY);
    for (i, &x) in points.iter().enumerate() {
        let v = g(x)?;
        if v > best.1 {
            best = (i, v);
        }
    }
    let (i, grid_max) = best;
    let lo = points[i.saturating_sub(1)];
    let hi = points[(i + 1).min(grid - 1)];
    Ok(grid_max.max(golden_max(g, lo, hi)?))
}

/// Estimates the total variation of `f^(order)` on `iv`.
///
/// Sums `|g(t_{i+1}) - g(t_i)|` over uniform grids of `2^6 .. 2^20` cells,
/// stopping when successive sums differ by less than `tol (1 + sum)`. If the
/// cap is reached while the sum still grows by more than 1% per doubling,
/// the function is reported as not of bounded variation.
pub fn estimate_total_variation(
    f: &FunctionSpec,
    order: usize,
    iv: Interval,
    tol: f64,
) -> Result<f64> {
    check_order(order, 3)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tv tolerance must be positive, got {tol}"
        )));
    }
    f.check_interval(&iv)?;
    let g = |x: f64| f.derivative(order, x);

    let mut cells = 1usize << TV_MIN_LOG2;
    let mut values: Vec<f64> = iv
        .grid(cells + 1)
        .into_iter()
        .map(g)
        .collect::<Result<_>>()?;
    let variation = |v: &[f64]| v.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>();
    let mut sum = variation(&values);
    let mut growth = f64::INFINITY;

    while cells < (1usize << TV_MAX_LOG2) {
        let step = iv.width() / (2 * cells) as f64;
        let mut finer = Vec::with_capacity(2 * cells + 1);
        for (i, &v) in values.iter().enumerate() {
            finer.push(v);
            if i < cells {
                finer.push(g(iv.a() + (2 * i + 1) as f64 * step)?);
            }
        }
        values = finer;
        cells *= 2;
        let next = variation(&values);
        let change = (next - sum).abs();
        growth = if sum > 0.0 {
            (next - sum) / sum
        } else if next > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        sum = next;
        if change < tol * (1.0 + sum) {
            return Ok(sum);
        }
    }

    if growth > TV_DIVERGENCE_GROWTH {
        Err(Error::TvDiverging {
            order,
            growth_pct: 100.0 * growth,
            points: cells + 1,
        })
    } else {
        Ok(sum)
    }
}

/// A point set violating `g(λx + (1-λ)y) <= max(g(x), g(y))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiConvexWitness {
    pub x: f64,
    pub y: f64,
    pub lambda: f64,
    /// `λx + (1-λ)y`.
    pub point: f64,
    /// `g` at `point`.
    pub value: f64,
    /// `max(g(x), g(y))`.
    pub envelope: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuasiConvexCheck {
    pub status: AssumptionStatus,
    pub witness: Option<QuasiConvexWitness>,
    /// Largest sampled `|f^(order)|`, which sets the comparison slack.
    pub scale: f64,
}

impl QuasiConvexCheck {
    pub fn passed(&self) -> bool {
        self.status == AssumptionStatus::VerifiedSampled
    }

    pub fn describe(&self) -> String {
        match &self.witness {
            None => format!("sampled, scale {:e}", self.scale),
            Some(w) => format!(
                "violated at x={}, y={}, lambda={}: g({}) = {} > {}",
                w.x, w.y, w.lambda, w.point, w.value, w.envelope
            ),
        }
    }
}

/// Sampled quasi-convexity test of `|f^(order)|` on `iv`.
///
/// Checks every pair of a `grid`-point mesh against the definition with
/// `λ ∈ {1/8, ..., 7/8}` and slack `1e-9 (1 + scale)`, stopping at the first
/// violation.
pub fn check_quasiconvex(
    f: &FunctionSpec,
    order: usize,
    iv: Interval,
    grid: usize,
) -> Result<QuasiConvexCheck> {
    check_order(order, MAX_ORDER)?;
    if grid < 17 {
        return Err(Error::InvalidArgument(format!(
            "quasi-convexity grid must be >= 17, got {grid}"
        )));
    }
    f.check_interval(&iv)?;
    let g = |x: f64| f.derivative(order, x).map(f64::abs);
    let points = iv.grid(grid);
    let values: Vec<f64> = points.iter().map(|&x| g(x)).collect::<Result<_>>()?;
    let scale = values.iter().copied().fold(0.0, f64::max);
    let slack = HYPOTHESIS_SLACK * (1.0 + scale);

    for i in 0..grid {
        for j in (i + 1)..grid {
            let (x, y) = (points[i], points[j]);
            let envelope = values[i].max(values[j]);
            for k in 1..8 {
                let lambda = k as f64 / 8.0;
                let point = lambda * x + (1.0 - lambda) * y;
                let value = g(point)?;
                if value > envelope + slack {
                    return Ok(QuasiConvexCheck {
                        status: AssumptionStatus::Failed,
                        witness: Some(QuasiConvexWitness {
                            x,
                            y,
                            lambda,
                            point,
                            value,
                            envelope,
                        }),
                        scale,
                    });
                }
            }
        }
    }
    Ok(QuasiConvexCheck {
        status: AssumptionStatus::VerifiedSampled,
        witness: None,
        scale,
    })
}

/// Sampled monotonicity test of `|f^(order)|` on a `grid`-point mesh.
pub fn check_monotone(
    f: &FunctionSpec,
    order: usize,
    iv: Interval,
    direction: Direction,
    grid: usize,
) -> Result<AssumptionStatus> {
    check_order(order, MAX_ORDER)?;
    if grid < 2 {
        return Err(Error::InvalidArgument(
            "monotonicity grid needs two points".into(),
        ));
    }
    f.check_interval(&iv)?;
    let values: Vec<f64> = iv
        .grid(grid)
        .into_iter()
        .map(|x| f.derivative(order, x).map(f64::abs))
        .collect::<Result<_>>()?;
    let scale = values.iter().copied().fold(0.0, f64::max);
    let slack = HYPOTHESIS_SLACK * (1.0 + scale);
    let ok = values.windows(2).all(|w| match direction {
        Direction::Increasing => w[1] >= w[0] - slack,
        Direction::Decreasing => w[1] <= w[0] + slack,
    });
    Ok(if ok {
        AssumptionStatus::VerifiedSampled
    } else {
        AssumptionStatus::Failed
    })
}
