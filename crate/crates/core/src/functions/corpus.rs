use std::f64::consts::PI;

use super::{FunctionSpec, Interval};

fn iv(a: f64, b: f64) -> Interval {
    Interval::new(a, b).expect("corpus intervals are valid")
}

fn exp_x2() -> FunctionSpec {
    let e = |x: f64| (x * x).exp();
    FunctionSpec::new("exp_x2", iv(-1.5, 1.5), e)
        .with_derivative(1, move |x| 2.0 * x * e(x))
        .with_derivative(2, move |x| (4.0 * x * x + 2.0) * e(x))
        .with_derivative(3, move |x| (8.0 * x * x * x + 12.0 * x) * e(x))
        .with_derivative(4, move |x| {
            let x2 = x * x;
            (16.0 * x2 * x2 + 48.0 * x2 + 12.0) * e(x)
        })
        .with_default_interval(iv(0.0, 1.0))
}

fn exp_x() -> FunctionSpec {
    let mut f = FunctionSpec::new("exp_x", iv(-2.0, 2.0), f64::exp);
    for order in 1..=4 {
        f = f.with_derivative(order, f64::exp);
    }
    f.with_default_interval(iv(0.0, 1.0))
}

fn x4() -> FunctionSpec {
    FunctionSpec::new("x4", iv(-2.0, 2.0), |x| x.powi(4))
        .with_derivative(1, |x| 4.0 * x.powi(3))
        .with_derivative(2, |x| 12.0 * x * x)
        .with_derivative(3, |x| 24.0 * x)
        .with_derivative(4, |_| 24.0)
        .with_default_interval(iv(0.0, 1.0))
}

fn x3() -> FunctionSpec {
    FunctionSpec::new("x3", iv(-2.0, 2.0), |x| x.powi(3))
        .with_derivative(1, |x| 3.0 * x * x)
        .with_derivative(2, |x| 6.0 * x)
        .with_derivative(3, |_| 6.0)
        .with_derivative(4, |_| 0.0)
        .with_default_interval(iv(0.0, 1.0))
}

fn poly5() -> FunctionSpec {
    FunctionSpec::new("poly5", iv(-2.0, 2.0), |x| x.powi(5))
        .with_derivative(1, |x| 5.0 * x.powi(4))
        .with_derivative(2, |x| 20.0 * x.powi(3))
        .with_derivative(3, |x| 60.0 * x * x)
        .with_derivative(4, |x| 120.0 * x)
        .with_default_interval(iv(0.0, 1.0))
}

fn const1() -> FunctionSpec {
    let mut f = FunctionSpec::new("const1", iv(-2.0, 2.0), |_| 1.0);
    for order in 1..=4 {
        f = f.with_derivative(order, |_| 0.0);
    }
    f.with_default_interval(iv(0.0, 1.0))
}

// f'''' = sin, so |f''''| peaks inside [pi/4, 3pi/4]: not quasi-convex there.
fn sin() -> FunctionSpec {
    FunctionSpec::new("sin", iv(0.0, PI), f64::sin)
        .with_derivative(1, f64::cos)
        .with_derivative(2, |x| -x.sin())
        .with_derivative(3, |x| -x.cos())
        .with_derivative(4, f64::sin)
}

// Only f itself is analytic; every derivative goes through finite differences.
fn sqrt1px() -> FunctionSpec {
    FunctionSpec::new("sqrt1px", iv(0.0, 1.0), |x| (1.0 + x).sqrt())
}

// Continuous on [0, 2] but of unbounded variation near 0.
fn x_sin_pi_over_x() -> FunctionSpec {
    FunctionSpec::new("x_sin_pi_over_x", iv(0.0, 2.0), |x| {
        if x == 0.0 {
            0.0
        } else {
            x * (PI / x).sin()
        }
    })
}

type Constructor = fn() -> FunctionSpec;

static REGISTRY: &[(&str, Constructor)] = &[
    ("exp_x2", exp_x2),
    ("exp_x", exp_x),
    ("x4", x4),
    ("x3", x3),
    ("poly5", poly5),
    ("const1", const1),
    ("sin", sin),
    ("sqrt1px", sqrt1px),
    ("x_sin_pi_over_x", x_sin_pi_over_x),
];

/// Every registered integrand, in registry order.
pub fn builtin_corpus() -> Vec<FunctionSpec> {
    REGISTRY.iter().map(|(_, make)| make()).collect()
}

pub fn registry_names() -> impl Iterator<Item = &'static str> {
    REGISTRY.iter().map(|(name, _)| *name)
}

pub fn lookup(name: &str) -> Option<FunctionSpec> {
    REGISTRY
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, make)| make())
}
