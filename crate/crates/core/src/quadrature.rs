//! Simpson's rule, the composite formula over a partition, and a
//! high-accuracy reference oracle for "true" integral values.

use crate::bounds::BoundReport;
use crate::error::{Error, Result};
use crate::functions::{FunctionSpec, Interval};

/// Smallest tolerance the reference oracle accepts.
pub const MIN_REFERENCE_TOL: f64 = 1e-13;
/// Subinterval cap of the reference oracle.
pub const MAX_REFERENCE_CELLS: usize = 1 << 20;
const MIN_REFERENCE_CELLS: usize = 16;

/// A division `a = x_0 < x_1 < ... < x_n = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    nodes: Vec<f64>,
}

impl Partition {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidPartition(format!(
                "need at least two nodes, got {}",
                nodes.len()
            )));
        }
        if nodes.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidPartition("non-finite node".into()));
        }
        if let Some(w) = nodes.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "nodes not strictly increasing at {} >= {}",
                w[0], w[1]
            )));
        }
        Ok(Self { nodes })
    }

    /// `n` equal cells over `iv`; end nodes are exactly `a` and `b`.
    pub fn uniform(iv: Interval, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPartition("zero cells".into()));
        }
        Self::new(iv.grid(n + 1))
    }

    pub fn single(iv: Interval) -> Self {
        Self {
            nodes: vec![iv.a(), iv.b()],
        }
    }

    pub fn from_cells(cells: &[Interval]) -> Result<Self> {
        let first = cells
            .first()
            .ok_or_else(|| Error::InvalidPartition("no cells".into()))?;
        let mut nodes = vec![first.a()];
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 && cell.a() != cells[i - 1].b() {
                return Err(Error::InvalidPartition("cells are not contiguous".into()));
            }
            nodes.push(cell.b());
        }
        Self::new(nodes)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.nodes[0], self.nodes[self.nodes.len() - 1])
            .expect("partition endpoints are ordered")
    }

    pub fn covers(&self, iv: &Interval) -> bool {
        self.interval() == *iv
    }

    pub fn cells(&self) -> impl Iterator<Item = Interval> + '_ {
        self.nodes
            .windows(2)
            .map(|w| Interval::new(w[0], w[1]).expect("partition nodes are increasing"))
    }

    /// `h_i = (x_{i+1} - x_i) / 2`.
    pub fn half_widths(&self) -> Vec<f64> {
        self.nodes.windows(2).map(|w| 0.5 * (w[1] - w[0])).collect()
    }

    pub fn max_width(&self) -> f64 {
        self.nodes
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }
}

/// An integral estimate, the bound certifying it, and the partition used.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedResult {
    pub estimate: f64,
    pub bound: BoundReport,
    pub partition: Partition,
}

/// `(b-a)/6 [f(a) + 4 f((a+b)/2) + f(b)]`.
pub fn simpson_single(f: &FunctionSpec, iv: Interval) -> Result<f64> {
    f.check_interval(&iv)?;
    let (a, b) = (iv.a(), iv.b());
    let fa = f.eval(a)?;
    let fm = f.eval(iv.midpoint())?;
    let fb = f.eval(b)?;
    Ok((b - a) / 6.0 * (fa + 4.0 * fm + fb))
}

/// Simpson's rule per cell, summed left to right.
pub fn composite_simpson(f: &FunctionSpec, p: &Partition) -> Result<f64> {
    f.check_interval(&p.interval())?;
    p.cells()
        .try_fold(0.0, |acc, cell| Ok(acc + simpson_single(f, cell)?))
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    carry: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Reference integral of an arbitrary integrand.
///
/// Composite Simpson on uniformly doubled grids plus one Richardson level
/// (`R = S_2n + (S_2n - S_n)/15`), stopping once successive extrapolants
/// differ by less than `tol / 2`. Function values are accumulated with
/// compensated summation so the oracle is not limited by rounding.
pub fn reference_integral_with<G>(g: G, iv: Interval, tol: f64) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    if tol.is_nan() || tol < MIN_REFERENCE_TOL || !tol.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "reference tolerance must be >= {MIN_REFERENCE_TOL:e}, got {tol:e}"
        )));
    }
    let (a, b) = (iv.a(), iv.b());
    let width = iv.width();
    let ends = 0.5 * (g(a)? + g(b)?);
    let mut interior = Neumaier::default();

    // Trapezoid sum with `panels` panels; Simpson with n cells is
    // (4 T_2n - T_n) / 3.
    let mut panels = 1usize;
    let mut trap = width * ends;
    let mut prev_simpson: Option<f64> = None;
    let mut prev_extrap: Option<f64> = None;
    let mut last_change = f64::INFINITY;

    loop {
        let step = width / (2 * panels) as f64;
        for i in 0..panels {
            let x = a + (2 * i + 1) as f64 * step;
            interior.add(g(x)?);
        }
        panels *= 2;
        let finer = (width / panels as f64) * (ends + interior.total());
        let simpson = (4.0 * finer - trap) / 3.0;
        trap = finer;
        let cells = panels / 2;

        if let Some(coarse) = prev_simpson {
            let extrap = simpson + (simpson - coarse) / 15.0;
            if let Some(prev) = prev_extrap {
                last_change = (extrap - prev).abs();
                if cells >= MIN_REFERENCE_CELLS && last_change < 0.5 * tol {
                    return Ok(extrap);
                }
            }
            prev_extrap = Some(extrap);
        }
        prev_simpson = Some(simpson);

        if cells >= MAX_REFERENCE_CELLS {
            return Err(Error::NoConvergence { cells, last_change });
        }
    }
}

/// Reference value of `∫_a^b f` to absolute tolerance `tol` (`tol >= 1e-13`).
pub fn reference_integral(f: &FunctionSpec, iv: Interval, tol: f64) -> Result<f64> {
    f.check_interval(&iv)?;
    reference_integral_with(|x| f.eval(x), iv, tol)
}

/// `|reference - composite Simpson|` on the partition.
pub fn actual_error(f: &FunctionSpec, p: &Partition, tol: f64) -> Result<f64> {
    let reference = reference_integral(f, p.interval(), tol)?;
    Ok((reference - composite_simpson(f, p)?).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{builtin_corpus, lookup};
    use proptest::prelude::*;

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![0.0]).is_err());
        assert!(Partition::new(vec![0.0, 0.5, 0.5, 1.0]).is_err());
        assert!(Partition::new(vec![0.0, f64::NAN]).is_err());
        assert!(Partition::uniform(unit(), 0).is_err());
        let p = Partition::uniform(unit(), 4).unwrap();
        assert_eq!(p.nodes(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(p.half_widths(), vec![0.125; 4]);
        assert!(p.covers(&unit()));
        let cells: Vec<_> = p.cells().collect();
        assert_eq!(Partition::from_cells(&cells).unwrap(), p);
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn simpson_single_values() {
        let exp_x2 = lookup("exp_x2").unwrap();
        let printed = (1.0 + 4.0 * 1.284025417 + 2.718281828) / 6.0;
        let s = simpson_single(&exp_x2, unit()).unwrap();
        assert!((s - printed).abs() < 1e-8);
        assert!((s - 1.475730583).abs() < 1e-8);
        assert_eq!(
            simpson_single(&lookup("x3").unwrap(), unit()).unwrap(),
            0.25
        );
        let x4 = simpson_single(&lookup("x4").unwrap(), unit()).unwrap();
        assert!((x4 - 5.0 / 24.0).abs() < 1e-16);
    }

    #[test]
    fn simpson_outside_domain() {
        let f = lookup("sqrt1px").unwrap();
        let iv = Interval::new(-0.5, 1.0).unwrap();
        assert!(matches!(simpson_single(&f, iv), Err(Error::Domain { .. })));
        assert!(composite_simpson(&f, &Partition::uniform(iv, 3).unwrap()).is_err());
    }

    #[test]
    fn composite_single_cell_reduction() {
        for f in builtin_corpus() {
            let iv = f.default_interval();
            let one = composite_simpson(&f, &Partition::single(iv)).unwrap();
            assert_eq!(one.to_bits(), simpson_single(&f, iv).unwrap().to_bits());
        }
    }

    #[test]
    fn composite_known_values() {
        let exp_x = lookup("exp_x").unwrap();
        let oracle = (1.0 + 4.0 * 0.5f64.exp() + 1f64.exp()) / 6.0;
        let s = composite_simpson(&exp_x, &Partition::uniform(unit(), 1).unwrap()).unwrap();
        assert!((s - oracle).abs() < 1e-15);
        assert!((s - 1.718861152).abs() < 1e-8);

        // Each half-cell of width 1/2 errs by (1/2)^5 * 24 / 2880.
        let x4 = lookup("x4").unwrap();
        let s = composite_simpson(&x4, &Partition::uniform(unit(), 2).unwrap()).unwrap();
        assert!(((s - 0.2).abs() - 1.0 / 1920.0).abs() < 1e-15);
    }

    #[test]
    fn reference_values() {
        let exp_x2 = lookup("exp_x2").unwrap();
        let v = reference_integral(&exp_x2, unit(), 1e-9).unwrap();
        assert!((v - 1.462651746).abs() < 1e-8, "{v}");
        let x4 = lookup("x4").unwrap();
        assert!((reference_integral(&x4, unit(), 1e-12).unwrap() - 0.2).abs() < 1e-12);
        let exp_x = lookup("exp_x").unwrap();
        let e1 = std::f64::consts::E - 1.0;
        assert!((reference_integral(&exp_x, unit(), 1e-12).unwrap() - e1).abs() < 1e-12);
    }

    #[test]
    fn reference_rejects_tiny_tolerance_and_reports_non_convergence() {
        let x4 = lookup("x4").unwrap();
        assert!(matches!(
            reference_integral(&x4, unit(), 1e-14),
            Err(Error::InvalidArgument(_))
        ));
        // |x|^0.5 near 0 converges too slowly for this tolerance.
        let iv = Interval::new(-1.0, 1.0).unwrap();
        let err = reference_integral_with(|x| Ok(x.abs().sqrt()), iv, 1e-13).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { .. }), "{err}");
    }

    #[test]
    fn actual_error_values() {
        let exp_x2 = lookup("exp_x2").unwrap();
        let single = Partition::single(unit());
        let e = actual_error(&exp_x2, &single, 1e-12).unwrap();
        assert!((e - 0.013078837).abs() < 1e-7, "{e}");
        let exp_x = lookup("exp_x").unwrap();
        let e = actual_error(&exp_x, &single, 1e-12).unwrap();
        assert!((e - 5.79324e-4).abs() < 1e-8, "{e}");
    }

    #[test]
    fn refinement_convergence_factor() {
        let f = lookup("exp_x2").unwrap();
        let errs: Vec<f64> = [1, 2, 4, 8]
            .iter()
            .map(|&n| actual_error(&f, &Partition::uniform(unit(), n).unwrap(), 1e-13).unwrap())
            .collect();
        for w in errs.windows(2) {
            assert!(w[0] / w[1] >= 12.0, "{errs:?}");
        }
    }

    fn partition_strategy() -> impl Strategy<Value = Partition> {
        (prop::collection::vec(0.01f64..1.0, 1..12), -1.0f64..0.0).prop_map(|(gaps, start)| {
            let mut nodes = vec![start];
            let scale = 1.5 / gaps.iter().sum::<f64>();
            for g in gaps {
                nodes.push(nodes.last().unwrap() + g * scale);
            }
            Partition::new(nodes).unwrap()
        })
    }

    proptest! {
        #[test]
        fn composite_is_left_to_right_sum(p in partition_strategy()) {
            let f = lookup("exp_x").unwrap();
            let mut expected = 0.0;
            for cell in p.cells() {
                expected += simpson_single(&f, cell).unwrap();
            }
            prop_assert_eq!(composite_simpson(&f, &p).unwrap().to_bits(), expected.to_bits());
        }

        #[test]
        fn cubics_integrated_exactly(
            p in partition_strategy(),
            c in prop::array::uniform4(-3.0f64..3.0),
        ) {
            let dom = Interval::new(-2.0, 2.0).unwrap();
            let f = FunctionSpec::new("cubic", dom, move |x| c[0] + x * (c[1] + x * (c[2] + x * c[3])));
            prop_assert!(actual_error(&f, &p, 1e-13).unwrap() <= 1e-12);
        }
    }
}
