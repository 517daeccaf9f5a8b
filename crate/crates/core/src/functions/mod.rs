//! Integrands, their derivative providers, and the built-in corpus.

mod corpus;
mod fd;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use corpus::{builtin_corpus, lookup, registry_names};
pub use fd::{fd_derivative, fd_derivative_in_domain};

/// Highest derivative order any provider supports.
pub const MAX_ORDER: usize = 4;

/// Fraction of the domain width used as the default finite-difference step.
pub const DEFAULT_FD_STEP_FRACTION: f64 = 1e-2;

/// A closed interval `[a, b]` with finite endpoints and `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a.is_finite() && b.is_finite() && a < b {
            Ok(Self { a, b })
        } else {
            Err(Error::InvalidInterval { a, b })
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.contains(other.a) && self.contains(other.b)
    }

    /// Splits at the arithmetic midpoint. Fails once the midpoint is no
    /// longer representable strictly between the endpoints.
    pub fn bisect(&self) -> Result<(Interval, Interval)> {
        let m = self.midpoint();
        Ok((Interval::new(self.a, m)?, Interval::new(m, self.b)?))
    }

    /// `count` uniformly spaced points from `a` to `b`, both endpoints exact.
    pub fn grid(&self, count: usize) -> Vec<f64> {
        assert!(count >= 2, "a grid needs at least two points");
        let steps = (count - 1) as f64;
        let mut points: Vec<f64> = (0..count)
            .map(|i| self.a + self.width() * (i as f64 / steps))
            .collect();
        points[count - 1] = self.b;
        points
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;

    fn try_from(value: [f64; 2]) -> Result<Self> {
        Interval::new(value[0], value[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(iv: Interval) -> Self {
        [iv.a, iv.b]
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

/// How a derivative of a given order is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeSource {
    Analytic,
    FiniteDifference,
}

impl fmt::Display for DerivativeSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DerivativeSource::Analytic => "analytic",
            DerivativeSource::FiniteDifference => "finite-difference",
        })
    }
}

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// An integrand together with derivative providers for orders 0 through 4.
///
/// Orders without an analytic provider fall back to finite differences with
/// step [`FunctionSpec::fd_step`], using one-sided stencils near the domain
/// boundary so every point of the domain can be evaluated.
#[derive(Clone)]
pub struct FunctionSpec {
    name: String,
    domain: Interval,
    default_interval: Interval,
    eval: RealFn,
    derivatives: [Option<RealFn>; MAX_ORDER],
    fd_step: f64,
}

impl fmt::Debug for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionSpec")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("default_interval", &self.default_interval)
            .field("sources", &self.sources())
            .field("fd_step", &self.fd_step)
            .finish()
    }
}

impl FunctionSpec {
    pub fn new(
        name: impl Into<String>,
        domain: Interval,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            domain,
            default_interval: domain,
            eval: Arc::new(eval),
            derivatives: Default::default(),
            fd_step: DEFAULT_FD_STEP_FRACTION * domain.width(),
        }
    }

    /// Registers an analytic provider for `order` in `1..=4`.
    pub fn with_derivative(
        mut self,
        order: usize,
        derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        assert!(
            (1..=MAX_ORDER).contains(&order),
            "derivative order must be in 1..=4"
        );
        self.derivatives[order - 1] = Some(Arc::new(derivative));
        self
    }

    /// Interval used when a caller does not name one (CLI defaults).
    pub fn with_default_interval(mut self, iv: Interval) -> Self {
        assert!(self.domain.contains_interval(&iv));
        self.default_interval = iv;
        self
    }

    pub fn with_fd_step(mut self, step: f64) -> Self {
        assert!(step > 0.0 && step.is_finite());
        self.fd_step = step;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn default_interval(&self) -> Interval {
        self.default_interval
    }

    pub fn fd_step(&self) -> f64 {
        self.fd_step
    }

    pub fn source(&self, order: usize) -> Result<DerivativeSource> {
        match order {
            0 => Ok(DerivativeSource::Analytic),
            1..=MAX_ORDER => Ok(match self.derivatives[order - 1] {
                Some(_) => DerivativeSource::Analytic,
                None => DerivativeSource::FiniteDifference,
            }),
            _ => Err(Error::UnsupportedOrder(order)),
        }
    }

    pub fn sources(&self) -> [DerivativeSource; MAX_ORDER + 1] {
        let mut out = [DerivativeSource::Analytic; MAX_ORDER + 1];
        for (order, slot) in out.iter_mut().enumerate().skip(1) {
            if self.derivatives[order - 1].is_none() {
                *slot = DerivativeSource::FiniteDifference;
            }
        }
        out
    }

    fn check_point(&self, x: f64) -> Result<()> {
        if self.domain.contains(x) {
            Ok(())
        } else {
            Err(Error::Domain {
                x,
                lo: self.domain.a(),
                hi: self.domain.b(),
            })
        }
    }

    /// Fails with a domain error unless `iv` lies inside the domain.
    pub fn check_interval(&self, iv: &Interval) -> Result<()> {
        self.check_point(iv.a())?;
        self.check_point(iv.b())
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.check_point(x)?;
        Ok((self.eval)(x))
    }

    /// Evaluates `f^(order)(x)`; order 0 is the function itself.
    pub fn derivative(&self, order: usize, x: f64) -> Result<f64> {
        match order {
            0 => self.eval(x),
            1..=MAX_ORDER => {
                self.check_point(x)?;
                match &self.derivatives[order - 1] {
                    Some(g) => Ok(g(x)),
                    None => fd_derivative_in_domain(self, order, x, self.fd_step),
                }
            }
            _ => Err(Error::UnsupportedOrder(order)),
        }
    }

    /// The order-`order` provider as a closure.
    pub fn derivative_provider(&self, order: usize) -> Result<impl Fn(f64) -> Result<f64> + '_> {
        if order > MAX_ORDER {
            return Err(Error::UnsupportedOrder(order));
        }
        Ok(move |x| self.derivative(order, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_rejects_degenerate_and_reversed() {
        assert!(matches!(
            Interval::new(1.0, 1.0),
            Err(Error::InvalidInterval { .. })
        ));
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(0.0, f64::NAN).is_err());
        assert!(Interval::new(f64::NEG_INFINITY, 0.0).is_err());
        assert!(Interval::new(0.0, 1e-300).is_ok());
    }

    #[test]
    fn grid_hits_both_endpoints_and_midpoint() {
        let iv = Interval::new(0.0, 1.0).unwrap();
        let g = iv.grid(129);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[64], 0.5);
        assert_eq!(g[128], 1.0);
        let iv = Interval::new(0.1, 0.7).unwrap();
        assert_eq!(*iv.grid(33).last().unwrap(), 0.7);
    }

    #[test]
    fn bisect_stops_at_resolution_limit() {
        let iv = Interval::new(1.0, 1.0 + f64::EPSILON).unwrap();
        assert!(iv.bisect().is_err());
        let (l, r) = Interval::new(0.0, 1.0).unwrap().bisect().unwrap();
        assert_eq!((l.b(), r.a()), (0.5, 0.5));
    }

    #[test]
    fn interval_converts_to_and_from_pair() {
        let iv = Interval::new(-1.0, 2.5).unwrap();
        let pair: [f64; 2] = iv.into();
        assert_eq!(pair, [-1.0, 2.5]);
        assert_eq!(Interval::try_from(pair).unwrap(), iv);
        assert!(Interval::try_from([3.0, 1.0]).is_err());
    }

    #[test]
    fn eval_and_order_zero_provider_agree() {
        for f in builtin_corpus() {
            let provider = f.derivative_provider(0).unwrap();
            for x in f.domain().grid(17) {
                assert_eq!(f.eval(x).unwrap().to_bits(), provider(x).unwrap().to_bits());
            }
        }
    }

    #[test]
    fn out_of_domain_and_bad_order() {
        let f = lookup("exp_x2").unwrap();
        assert!(matches!(f.eval(10.0), Err(Error::Domain { .. })));
        assert!(matches!(
            f.derivative(5, 0.0),
            Err(Error::UnsupportedOrder(5))
        ));
        assert!(f.derivative_provider(7).is_err());
    }

    #[test]
    fn fd_only_orders_report_their_source() {
        let f = lookup("sqrt1px").unwrap();
        assert_eq!(f.source(0).unwrap(), DerivativeSource::Analytic);
        assert_eq!(f.source(4).unwrap(), DerivativeSource::FiniteDifference);
        let g = lookup("exp_x2").unwrap();
        assert!(g.sources().iter().all(|s| *s == DerivativeSource::Analytic));
    }
}
