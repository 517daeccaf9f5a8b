//! The Peano-type kernel of the Simpson rule.
//!
//! For `f'''` absolutely continuous on `[a, b]`,
//!
//! ```text
//! ∫ f - (b-a)/6 [f(a) + 4 f((a+b)/2) + f(b)] = (b-a)^5 ∫₀¹ p(t) f''''(ta + (1-t)b) dt
//! ```
//!
//! with `p(t) = t³(t - 2/3)/24` on `[0, 1/2]` and `(t-1)³(t - 1/3)/24` on
//! `(1/2, 1]`. The kernel is non-positive, symmetric about `1/2`, and its
//! absolute integral over each half is `1/5760`.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::functions::{FunctionSpec, Interval};
use crate::quadrature::{reference_integral, reference_integral_with, simpson_single};

/// A kernel weight at a point of `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub t: f64,
    pub value: f64,
}

impl KernelValue {
    pub fn at(t: f64) -> Result<Self> {
        Ok(Self {
            t,
            value: kernel_eval(t)?,
        })
    }
}

/// Evaluates `p(t)`. The branch point `t = 1/2` belongs to the left piece.
pub fn kernel_eval(t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "kernel argument {t} outside [0, 1]"
        )));
    }
    let value = if t <= 0.5 {
        t * t * t * (t - 2.0 / 3.0) / 24.0
    } else {
        let s = t - 1.0;
        s * s * s * (t - 1.0 / 3.0) / 24.0
    };
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelHalf {
    Left,
    Right,
    Full,
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

// Antiderivative of the left piece: (t^5/5 - t^4/6) / 24.
fn left_antiderivative(t: Rational64) -> Rational64 {
    let t4 = t * t * t * t;
    (t4 * t / r(5, 1) - t4 / r(6, 1)) / r(24, 1)
}

// Right piece in u = t - 1: (u^4 + (2/3) u^3) / 24, antiderivative
// (u^5/5 + u^4/6) / 24.
fn right_antiderivative(t: Rational64) -> Rational64 {
    let u = t - r(1, 1);
    let u4 = u * u * u * u;
    (u4 * u / r(5, 1) + u4 / r(6, 1)) / r(24, 1)
}

/// Exact signed integral of `p` over the requested half (or all of `[0, 1]`).
pub fn kernel_signed_integral_exact(half: KernelHalf) -> Rational64 {
    let left = left_antiderivative(r(1, 2)) - left_antiderivative(r(0, 1));
    let right = right_antiderivative(r(1, 1)) - right_antiderivative(r(1, 2));
    match half {
        KernelHalf::Left => left,
        KernelHalf::Right => right,
        KernelHalf::Full => left + right,
    }
}

/// Exact `∫|p|`; `p ≤ 0`, so this is the negated signed integral.
pub fn kernel_abs_integral_exact(half: KernelHalf) -> Rational64 {
    -kernel_signed_integral_exact(half)
}

fn to_f64(q: Rational64) -> f64 {
    // Both parts are small integers, so the quotient is correctly rounded.
    *q.numer() as f64 / *q.denom() as f64
}

/// `∫|p|` over the half: `1/5760` for either half, `1/2880` for the whole.
pub fn kernel_abs_integral(half: KernelHalf) -> f64 {
    to_f64(kernel_abs_integral_exact(half))
}

/// `∫₀¹ p = -1/2880`.
pub fn kernel_signed_integral() -> f64 {
    to_f64(kernel_signed_integral_exact(KernelHalf::Full))
}

/// The two sides of the kernel identity on `iv`, each evaluated with the
/// reference quadrature at tolerance `quad_tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentitySides {
    /// `∫ f - simpson(f)`.
    pub simpson_error: f64,
    /// `(b-a)^5 ∫₀¹ p(t) f''''(ta + (1-t)b) dt`.
    pub kernel_form: f64,
}

pub fn identity_sides(f: &FunctionSpec, iv: Interval, quad_tol: f64) -> Result<IdentitySides> {
    f.check_interval(&iv)?;
    let simpson_error = reference_integral(f, iv, quad_tol)? - simpson_single(f, iv)?;

    let (a, b) = (iv.a(), iv.b());
    let weighted = |t: f64| -> Result<f64> {
        let x = (t * a + (1.0 - t) * b).clamp(a, b);
        Ok(kernel_eval(t)? * f.derivative(4, x)?)
    };
    // p has a kink at 1/2: integrate each smooth piece separately.
    let left = reference_integral_with(weighted, Interval::new(0.0, 0.5)?, quad_tol)?;
    let right = reference_integral_with(weighted, Interval::new(0.5, 1.0)?, quad_tol)?;
    let kernel_form = iv.width().powi(5) * (left + right);

    Ok(IdentitySides {
        simpson_error,
        kernel_form,
    })
}

/// `|LHS - RHS|` of the kernel identity on `iv`.
pub fn identity_residual(f: &FunctionSpec, iv: Interval, quad_tol: f64) -> Result<f64> {
    let sides = identity_sides(f, iv, quad_tol)?;
    Ok((sides.simpson_error - sides.kernel_form).abs())
}
