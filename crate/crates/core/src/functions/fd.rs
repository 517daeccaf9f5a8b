use super::{FunctionSpec, MAX_ORDER};
use crate::error::{Error, Result};

// Central stencils, offsets -2..=2. Second-order accurate.
const CENTRAL: [[f64; 5]; MAX_ORDER] = [
    [0.0, -0.5, 0.0, 0.5, 0.0],
    [0.0, 1.0, -2.0, 1.0, 0.0],
    [-0.5, 1.0, 0.0, -1.0, 0.5],
    [1.0, -4.0, 6.0, -4.0, 1.0],
];

// Forward stencils, offsets 0..=5. Second-order accurate. The backward
// stencil for order k is (-1)^k times these weights at offsets 0..=-5.
const FORWARD: [[f64; 6]; MAX_ORDER] = [
    [-1.5, 2.0, -0.5, 0.0, 0.0, 0.0],
    [2.0, -5.0, 4.0, -1.0, 0.0, 0.0],
    [-2.5, 9.0, -12.0, 7.0, -1.5, 0.0],
    [3.0, -14.0, 26.0, -24.0, 11.0, -2.0],
];

fn central_reach(order: usize) -> f64 {
    if order <= 2 {
        1.0
    } else {
        2.0
    }
}

fn one_sided_reach(order: usize) -> f64 {
    (order + 1) as f64
}

fn check_order(order: usize) -> Result<()> {
    if (1..=MAX_ORDER).contains(&order) {
        Ok(())
    } else {
        Err(Error::UnsupportedOrder(order))
    }
}

fn check_step(step: f64) -> Result<()> {
    if step > 0.0 && step.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "finite-difference step must be positive, got {step}"
        )))
    }
}

fn apply(f: &FunctionSpec, x: f64, step: f64, offsets: &[f64], weights: &[f64]) -> Result<f64> {
    let mut acc = 0.0;
    for (&k, &w) in offsets.iter().zip(weights) {
        if w != 0.0 {
            acc += w * f.eval(x + k * step)?;
        }
    }
    Ok(acc)
}

/// Central-difference estimate of `f^(order)(x)` with step `step`.
///
/// Order 4 uses `(f(x-2h) - 4f(x-h) + 6f(x) - 4f(x+h) + f(x+2h)) / h^4`.
/// Fails with [`Error::StencilOutOfDomain`] when a stencil point leaves the
/// domain of `f`.
pub fn fd_derivative(f: &FunctionSpec, order: usize, x: f64, step: f64) -> Result<f64> {
    check_order(order)?;
    check_step(step)?;
    let reach = central_reach(order) * step;
    let domain = f.domain();
    if !(domain.contains(x - reach) && domain.contains(x + reach)) {
        return Err(Error::StencilOutOfDomain { order, x, step });
    }
    let sum = apply(
        f,
        x,
        step,
        &[-2.0, -1.0, 0.0, 1.0, 2.0],
        &CENTRAL[order - 1],
    )?;
    Ok(sum / step.powi(order as i32))
}

/// Like [`fd_derivative`] but switches to a one-sided stencil of the same
/// accuracy when the central one would leave the domain.
pub fn fd_derivative_in_domain(f: &FunctionSpec, order: usize, x: f64, step: f64) -> Result<f64> {
    match fd_derivative(f, order, x, step) {
        Err(Error::StencilOutOfDomain { .. }) => {}
        other => return other,
    }
    let domain = f.domain();
    let reach = one_sided_reach(order) * step;
    let weights = &FORWARD[order - 1];
    let scale = step.powi(order as i32);
    if domain.contains(x) && domain.contains(x + reach) {
        let sum = apply(f, x, step, &[0.0, 1.0, 2.0, 3.0, 4.0, 5.0], weights)?;
        Ok(sum / scale)
    } else if domain.contains(x) && domain.contains(x - reach) {
        let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
        let sum = apply(f, x, step, &[0.0, -1.0, -2.0, -3.0, -4.0, -5.0], weights)?;
        Ok(sign * sum / scale)
    } else {
        Err(Error::StencilOutOfDomain { order, x, step })
    }
}
