use crate::error::{Error, Result};
use crate::functions::{DerivativeSource, FunctionSpec, Interval};
use crate::quadrature::Partition;

use super::{
    check_monotone, check_quasiconvex, estimate_sup_abs_derivative, estimate_total_variation,
    Assumption, AssumptionStatus, BoundFamily, BoundReport, BvConstants, Direction,
    DEFAULT_QC_GRID, DEFAULT_SUP_GRID, DEFAULT_TV_TOL, MONOTONE_GRID,
};

const CLASSICAL_DENOM: f64 = 2880.0;
const QC_DENOM: f64 = 5760.0;

fn provenance(f: &FunctionSpec, order: usize) -> Result<Assumption> {
    let source = f.source(order)?;
    let status = match source {
        DerivativeSource::Analytic => AssumptionStatus::VerifiedSampled,
        DerivativeSource::FiniteDifference => AssumptionStatus::Assumed,
    };
    Ok(Assumption::new(format!("f{order}_provider"), status).with_detail(source.to_string()))
}

fn abs_f4(f: &FunctionSpec, x: f64) -> Result<f64> {
    Ok(f.derivative(4, x)?.abs())
}

fn quasiconvex_assumption(f: &FunctionSpec, iv: Interval) -> Result<Assumption> {
    let check = check_quasiconvex(f, 4, iv, DEFAULT_QC_GRID)?;
    Ok(Assumption::new("quasi_convex_abs_f4", check.status).with_detail(check.describe()))
}

fn monotone_assumption(f: &FunctionSpec, iv: Interval, direction: Direction) -> Result<Assumption> {
    let status = check_monotone(f, 4, iv, direction, MONOTONE_GRID)?;
    let mut a = Assumption::new(format!("monotone_{direction}_abs_f4"), status);
    if status == AssumptionStatus::Failed {
        a = a.with_detail(format!(
            "|f''''| is not {direction} on a {MONOTONE_GRID}-point grid"
        ));
    }
    Ok(a)
}

/// `(b-a)^5 / 2880 · M` with `M` the sampled `sup |f''''|`.
pub fn classical_bound(f: &FunctionSpec, iv: Interval) -> Result<BoundReport> {
    let m = estimate_sup_abs_derivative(f, 4, iv, DEFAULT_SUP_GRID)?;
    let value = iv.width().powi(5) * m / CLASSICAL_DENOM;
    Ok(BoundReport::new(BoundFamily::Classical, value)
        .input("sup_abs_f4", m)
        .assume(provenance(f, 4)?))
}

/// `(M / 2880) Σ (x_{i+1} - x_i)^5` with one global sup.
pub fn composite_classical_bound(f: &FunctionSpec, p: &Partition) -> Result<BoundReport> {
    let iv = p.interval();
    let m = estimate_sup_abs_derivative(f, 4, iv, DEFAULT_SUP_GRID)?;
    let widths: f64 = p.cells().map(|c| c.width().powi(5)).sum();
    Ok(BoundReport::new(
        BoundFamily::CompositeClassical,
        m * widths / CLASSICAL_DENOM,
    )
    .input("sup_abs_f4", m)
    .input("cells", p.len() as f64)
    .assume(provenance(f, 4)?))
}

/// `Σ (x_{i+1} - x_i)^5 M_i / 2880` with a separate sup per cell.
pub fn per_cell_classical_bound(f: &FunctionSpec, p: &Partition) -> Result<BoundReport> {
    let mut sum = 0.0;
    let mut largest = 0.0f64;
    for cell in p.cells() {
        let m = estimate_sup_abs_derivative(f, 4, cell, DEFAULT_SUP_GRID)?;
        largest = largest.max(m);
        sum += cell.width().powi(5) * m;
    }
    Ok(
        BoundReport::new(BoundFamily::PerCellClassical, sum / CLASSICAL_DENOM)
            .input("max_cell_sup_abs_f4", largest)
            .input("cells", p.len() as f64)
            .assume(provenance(f, 4)?),
    )
}

/// `C_n (b-a)^(n+1) V(f^(n))`. Fails with [`Error::TvDiverging`] when the
/// variation estimate does not settle.
pub fn bv_bound(f: &FunctionSpec, n: usize, iv: Interval) -> Result<BoundReport> {
    let c = BvConstants::get(n)?;
    let tv = estimate_total_variation(f, n, iv, DEFAULT_TV_TOL)?;
    let value = c * iv.width().powi(n as i32 + 1) * tv;
    Ok(BoundReport::new(BoundFamily::Bv { order: n }, value)
        .input(format!("tv_f{n}"), tv)
        .input(format!("c{n}"), c)
        .assume(Assumption::new(
            format!("bounded_variation_f{n}"),
            AssumptionStatus::VerifiedSampled,
        ))
        .assume(provenance(f, n)?))
}

/// Composite bounded-variation bound `C_n (max_i w_i)^(n+1) V_a^b(f^(n))`.
///
/// Dominates `Σ C_n w_i^(n+1) V_i(f^(n))` because variation is additive over
/// cells; the two agree on uniform partitions.
pub fn composite_bv_bound(f: &FunctionSpec, n: usize, p: &Partition) -> Result<BoundReport> {
    let c = BvConstants::get(n)?;
    let tv = estimate_total_variation(f, n, p.interval(), DEFAULT_TV_TOL)?;
    let value = c * p.max_width().powi(n as i32 + 1) * tv;
    Ok(
        BoundReport::new(BoundFamily::CompositeBv { order: n }, value)
            .input(format!("tv_f{n}"), tv)
            .input(format!("c{n}"), c)
            .input("cells", p.len() as f64)
            .assume(Assumption::new(
                format!("bounded_variation_f{n}"),
                AssumptionStatus::VerifiedSampled,
            ))
            .assume(provenance(f, n)?),
    )
}

/// One cell's term `w^5 [max(g(a), g(m)) + max(g(m), g(b))]`, `g = |f''''|`,
/// before division by 5760.
fn qc_term_unscaled(f: &FunctionSpec, cell: Interval) -> Result<(f64, [f64; 3])> {
    let ga = abs_f4(f, cell.a())?;
    let gm = abs_f4(f, cell.midpoint())?;
    let gb = abs_f4(f, cell.b())?;
    let sups = ga.max(gm) + gm.max(gb);
    Ok((cell.width().powi(5) * sups, [ga, gm, gb]))
}

/// The quasi-convex bound of a single cell.
pub fn qc_cell_term(f: &FunctionSpec, cell: Interval) -> Result<f64> {
    Ok(qc_term_unscaled(f, cell)?.0 / QC_DENOM)
}

/// `(b-a)^5 / 5760 [max(|f''''(a)|, |f''''(m)|) + max(|f''''(m)|, |f''''(b)|)]`.
///
/// Certifying only when `|f''''|` passes the sampled quasi-convexity check.
pub fn qc_bound(f: &FunctionSpec, iv: Interval) -> Result<BoundReport> {
    f.check_interval(&iv)?;
    let (term, [ga, gm, gb]) = qc_term_unscaled(f, iv)?;
    Ok(BoundReport::new(BoundFamily::QuasiConvex, term / QC_DENOM)
        .input("abs_f4_a", ga)
        .input("abs_f4_mid", gm)
        .input("abs_f4_b", gb)
        .assume(quasiconvex_assumption(f, iv)?)
        .assume(provenance(f, 4)?))
}

fn monotone_term_unscaled(f: &FunctionSpec, cell: Interval, direction: Direction) -> Result<f64> {
    let gm = abs_f4(f, cell.midpoint())?;
    let end = match direction {
        Direction::Increasing => abs_f4(f, cell.b())?,
        Direction::Decreasing => abs_f4(f, cell.a())?,
    };
    Ok(cell.width().powi(5) * (gm + end))
}

/// Monotone specialization of [`qc_bound`]: `(b-a)^5/5760 [g(m) + g(b)]`
/// when `g = |f''''|` increases, `[g(a) + g(m)]` when it decreases.
pub fn qc_bound_monotone(
    f: &FunctionSpec,
    iv: Interval,
    direction: Direction,
) -> Result<BoundReport> {
    f.check_interval(&iv)?;
    let value = monotone_term_unscaled(f, iv, direction)? / QC_DENOM;
    Ok(
        BoundReport::new(BoundFamily::QuasiConvexMonotone { direction }, value)
            .input("abs_f4_a", abs_f4(f, iv.a())?)
            .input("abs_f4_mid", abs_f4(f, iv.midpoint())?)
            .input("abs_f4_b", abs_f4(f, iv.b())?)
            .assume(monotone_assumption(f, iv, direction)?)
            .assume(provenance(f, 4)?),
    )
}

/// `(1/5760) Σ w_i^5 [max(g(x_i), g(m_i)) + max(g(m_i), g(x_{i+1}))]`.
///
/// Quasi-convexity of `|f''''|` is checked once on the whole interval.
pub fn composite_qc_bound(f: &FunctionSpec, p: &Partition) -> Result<BoundReport> {
    let iv = p.interval();
    f.check_interval(&iv)?;
    let mut sum = 0.0;
    let mut largest = 0.0f64;
    for cell in p.cells() {
        let (term, _) = qc_term_unscaled(f, cell)?;
        largest = largest.max(term);
        sum += term;
    }
    Ok(BoundReport::new(BoundFamily::CompositeQc, sum / QC_DENOM)
        .input("cells", p.len() as f64)
        .input("max_cell_term", largest / QC_DENOM)
        .assume(quasiconvex_assumption(f, iv)?)
        .assume(provenance(f, 4)?))
}

/// Cell-by-cell monotone specialization, with monotonicity checked once on
/// the whole interval.
pub fn composite_qc_bound_monotone(
    f: &FunctionSpec,
    p: &Partition,
    direction: Direction,
) -> Result<BoundReport> {
    let iv = p.interval();
    f.check_interval(&iv)?;
    let sum = p.cells().try_fold(0.0, |acc, cell| {
        Ok::<_, Error>(acc + monotone_term_unscaled(f, cell, direction)?)
    })?;
    Ok(BoundReport::new(
        BoundFamily::CompositeQcMonotone { direction },
        sum / QC_DENOM,
    )
    .input("cells", p.len() as f64)
    .assume(monotone_assumption(f, iv, direction)?)
    .assume(provenance(f, 4)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::lookup;
    use crate::quadrature::actual_error;
    use std::f64::consts::E;

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    // Printed values from the worked exp(x^2) example.
    const F4_HALF: f64 = 32.10063542;
    const F4_ONE: f64 = 206.5894189;

    #[test]
    fn classical_values() {
        let r = classical_bound(&lookup("exp_x2").unwrap(), unit()).unwrap();
        assert!((r.value - 0.07173243712).abs() < 1e-6);
        assert!(r.is_certifying());
        let r = classical_bound(&lookup("x4").unwrap(), unit()).unwrap();
        assert!((r.value - 1.0 / 120.0).abs() < 1e-15);
        assert_eq!(
            classical_bound(&lookup("x3").unwrap(), unit())
                .unwrap()
                .value,
            0.0
        );
    }

    #[test]
    fn classical_records_fd_provenance() {
        let r = classical_bound(&lookup("sqrt1px").unwrap(), unit()).unwrap();
        let a = &r.assumptions[0];
        assert_eq!(a.status, AssumptionStatus::Assumed);
        assert_eq!(a.detail.as_deref(), Some("finite-difference"));
    }

    #[test]
    fn bv_values() {
        let exp_x = lookup("exp_x").unwrap();
        let r0 = bv_bound(&exp_x, 0, unit()).unwrap();
        assert!((r0.value - 0.572760609).abs() < 1e-5);
        let r3 = bv_bound(&exp_x, 3, unit()).unwrap();
        assert!((r3.value - (E - 1.0) / 1152.0).abs() < 1e-7);
        assert!((r3.value - 1.49156e-3).abs() < 1e-7);
        assert_eq!(
            bv_bound(&lookup("const1").unwrap(), 0, unit())
                .unwrap()
                .value,
            0.0
        );
        assert!(bv_bound(&exp_x, 4, unit()).is_err());
        let x_sin = lookup("x_sin_pi_over_x").unwrap();
        assert!(matches!(
            bv_bound(&x_sin, 0, x_sin.domain()),
            Err(Error::TvDiverging { .. })
        ));
    }

    #[test]
    fn qc_values() {
        let r = qc_bound(&lookup("exp_x2").unwrap(), unit()).unwrap();
        let literal = (F4_HALF + F4_ONE) / 5760.0;
        assert!((r.value - literal).abs() < 1e-6, "{} vs {literal}", r.value);
        assert!((r.value - 0.0414392455).abs() < 1e-9);
        assert!(r.is_certifying());
        assert!((r.input_value("abs_f4_mid").unwrap() - F4_HALF).abs() < 1e-7);
        let r = qc_bound(&lookup("x4").unwrap(), unit()).unwrap();
        assert_eq!(r.value, 48.0 / 5760.0);
        assert_eq!(qc_bound(&lookup("x3").unwrap(), unit()).unwrap().value, 0.0);
    }

    #[test]
    fn qc_not_certifying_without_quasiconvexity() {
        let s = lookup("sin").unwrap();
        let r = qc_bound(&s, s.domain()).unwrap();
        assert!(!r.is_certifying());
        assert!(r.failed_assumptions().next().unwrap().detail.is_some());
    }

    #[test]
    fn monotone_values() {
        let exp_x2 = lookup("exp_x2").unwrap();
        let inc = qc_bound_monotone(&exp_x2, unit(), Direction::Increasing).unwrap();
        let qc = qc_bound(&exp_x2, unit()).unwrap();
        assert!(inc.is_certifying());
        assert!((inc.value - qc.value).abs() <= 1e-15);
        let dec = qc_bound_monotone(&exp_x2, unit(), Direction::Decreasing).unwrap();
        assert!(!dec.is_certifying());

        let x4 = lookup("x4").unwrap();
        for d in [Direction::Increasing, Direction::Decreasing] {
            let r = qc_bound_monotone(&x4, unit(), d).unwrap();
            assert_eq!(r.value, 1.0 / 120.0);
            assert!(r.is_certifying());
        }
        let exp_x = lookup("exp_x").unwrap();
        let r = qc_bound_monotone(&exp_x, unit(), Direction::Increasing).unwrap();
        assert!((r.value - (0.5f64.exp() + E) / 5760.0).abs() < 1e-15);
        assert!((r.value - 7.5816e-4).abs() < 1e-7);
    }

    #[test]
    fn composite_qc_values() {
        let exp_x2 = lookup("exp_x2").unwrap();
        let single = composite_qc_bound(&exp_x2, &Partition::single(unit())).unwrap();
        assert_eq!(single.value, qc_bound(&exp_x2, unit()).unwrap().value);

        // Independent recomputation from f'''' = exp(x^2)(16x^4 + 48x^2 + 12).
        let g = |x: f64| (x * x).exp() * (16.0 * x.powi(4) + 48.0 * x * x + 12.0);
        let [g0, g1, g2, g3, g4] = [0.0, 0.25, 0.5, 0.75, 1.0].map(g);
        let left = 0.5f64.powi(5) * (g0.max(g1) + g1.max(g2)) / 5760.0;
        let right = 0.5f64.powi(5) * (g2.max(g3) + g3.max(g4)) / 5760.0;
        assert!((left - 2.62e-4).abs() < 2e-6, "{left}");
        assert!((right - 1.54e-3).abs() < 1e-5, "{right}");
        let two = composite_qc_bound(&exp_x2, &Partition::uniform(unit(), 2).unwrap()).unwrap();
        assert!((two.value - (left + right)).abs() < 1e-15);
        assert!((two.value - 1.80e-3).abs() < 5e-6);
        assert!(two.value < single.value);

        let x4 = lookup("x4").unwrap();
        for n in [1usize, 2, 3, 4, 8] {
            let r = composite_qc_bound(&x4, &Partition::uniform(unit(), n).unwrap()).unwrap();
            let exact = 1.0 / (120.0 * (n as f64).powi(4));
            assert!((r.value - exact).abs() <= 1e-12 * exact, "n={n}");
        }
    }

    #[test]
    fn composite_classical_and_bv_reduce_on_single_cell() {
        let exp_x = lookup("exp_x").unwrap();
        let single = Partition::single(unit());
        assert_eq!(
            composite_classical_bound(&exp_x, &single).unwrap().value,
            classical_bound(&exp_x, unit()).unwrap().value
        );
        for n in 0..=3 {
            assert_eq!(
                composite_bv_bound(&exp_x, n, &single).unwrap().value,
                bv_bound(&exp_x, n, unit()).unwrap().value
            );
        }
        let per_cell = per_cell_classical_bound(&exp_x, &single).unwrap();
        assert_eq!(
            per_cell.value,
            classical_bound(&exp_x, unit()).unwrap().value
        );
    }

    #[test]
    fn per_cell_classical_is_tighter_than_global() {
        let f = lookup("exp_x2").unwrap();
        let p = Partition::uniform(unit(), 4).unwrap();
        let local = per_cell_classical_bound(&f, &p).unwrap().value;
        let global = composite_classical_bound(&f, &p).unwrap().value;
        assert!(local < global);
        assert!(actual_error(&f, &p, 1e-13).unwrap() <= local);
    }

    #[test]
    fn composite_monotone_matches_composite_qc_for_increasing_g() {
        let f = lookup("exp_x2").unwrap();
        let p = Partition::uniform(unit(), 4).unwrap();
        let mono = composite_qc_bound_monotone(&f, &p, Direction::Increasing).unwrap();
        let qc = composite_qc_bound(&f, &p).unwrap();
        assert!(mono.is_certifying());
        assert!((mono.value - qc.value).abs() <= 1e-15);
    }
}
