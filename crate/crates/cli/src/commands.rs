use std::time::Instant;

use serde::{Deserialize, Serialize};
use simpson_cert::bounds::{
    classical_bound, composite_bv_bound, composite_classical_bound, composite_qc_bound,
    estimate_sup_abs_derivative, qc_bound, DEFAULT_SUP_GRID,
};
use simpson_cert::functions::{registry_names, MAX_ORDER};
use simpson_cert::{
    composite_simpson, integrate_certified, lookup, reference_integral, AdaptiveConfig, Error,
    Fallback, FunctionSpec, Interval, Partition,
};

use crate::args::{CompareArgs, FallbackArg, IntegrateArgs};
use crate::error::CliError;
use crate::format::sig;
use crate::report::{evaluate, BoundEntry, RunReport};

/// Tolerance of every reference integral computed by the CLI.
pub const REFERENCE_TOL: f64 = 1e-13;

fn function(name: &str) -> Result<FunctionSpec, CliError> {
    lookup(name).ok_or_else(|| CliError::UnknownFunction(name.to_string()))
}

/// `Ok(None)` when the reference integral does not converge.
fn reference(f: &FunctionSpec, iv: Interval) -> Result<Option<f64>, CliError> {
    match reference_integral(f, iv, REFERENCE_TOL) {
        Ok(v) => Ok(Some(v)),
        Err(Error::NoConvergence { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn integrate(args: &IntegrateArgs) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let f = function(&args.function)?;
    let default = f.default_interval();
    let iv = Interval::new(args.a.unwrap_or(default.a()), args.b.unwrap_or(default.b()))?;
    f.check_interval(&iv)?;

    let (partition, estimate, mut bounds) = match args.tol {
        Some(tol) => {
            let fallback = match args.fallback {
                FallbackArg::Classical => Fallback::Classical,
                FallbackArg::Reject => Fallback::Reject,
            };
            let cfg = AdaptiveConfig::new(tol)?
                .with_max_cells(args.max_cells)?
                .with_fallback(fallback);
            let r = integrate_certified(&f, iv, &cfg)?;
            let certificate = BoundEntry::from(&r.bound);
            (r.partition, r.estimate, vec![certificate])
        }
        None => {
            let p = Partition::uniform(iv, args.n.unwrap_or(1))?;
            let estimate = composite_simpson(&f, &p)?;
            (p, estimate, Vec::new())
        }
    };
    for &choice in &args.bounds.0 {
        let entry = evaluate(&f, &partition, choice);
        if !bounds.iter().any(|b| b.family == entry.family) {
            bounds.push(entry);
        }
    }
    let reference = reference(&f, iv)?;

    Ok(RunReport {
        function: f.name().to_string(),
        interval: [iv.a(), iv.b()],
        n: partition.len(),
        estimate,
        reference,
        actual_error: reference.map(|r| (r - estimate).abs()),
        bounds,
        ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// A `compare` table cell: a number or `NA(<reason>)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Value(f64),
    Na(String),
}

impl Cell {
    fn na(code: &str) -> Self {
        Cell::Na(format!("NA({code})"))
    }

    fn from_entry(e: &BoundEntry) -> Self {
        match (e.value, e.certifying) {
            (Some(v), true) => Cell::Value(v),
            _ => Cell::Na(e.cell()),
        }
    }

    fn value(&self) -> Option<f64> {
        match self {
            Cell::Value(v) => Some(*v),
            Cell::Na(_) => None,
        }
    }

    fn render(&self) -> String {
        match self {
            Cell::Value(v) => sig(*v),
            Cell::Na(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    #[serde(rename = "fn")]
    pub function: String,
    pub a: f64,
    pub b: f64,
    pub n: usize,
    pub actual_error: Cell,
    pub classical: Cell,
    pub bv0: Cell,
    pub bv1: Cell,
    pub bv2: Cell,
    pub bv3: Cell,
    pub qc_composite: Cell,
    pub tightness_classical: Cell,
    pub tightness_qc: Cell,
}

pub const COMPARE_HEADER: [&str; 13] = [
    "fn",
    "a",
    "b",
    "n",
    "actual_error",
    "classical",
    "bv0",
    "bv1",
    "bv2",
    "bv3",
    "qc_composite",
    "tightness_classical",
    "tightness_qc",
];

impl CompareRow {
    pub fn fields(&self) -> Vec<String> {
        let mut v = vec![
            self.function.clone(),
            sig(self.a),
            sig(self.b),
            self.n.to_string(),
        ];
        v.extend(
            [
                &self.actual_error,
                &self.classical,
                &self.bv0,
                &self.bv1,
                &self.bv2,
                &self.bv3,
                &self.qc_composite,
                &self.tightness_classical,
                &self.tightness_qc,
            ]
            .iter()
            .map(|c| c.render()),
        );
        v
    }
}

fn tightness(bound: &Cell, actual: &Cell) -> Cell {
    match (bound.value(), actual) {
        (None, _) => bound.clone(),
        (_, Cell::Na(s)) => Cell::Na(s.clone()),
        // Errors below the reference tolerance are indistinguishable from zero.
        (Some(_), Cell::Value(e)) if *e <= REFERENCE_TOL => Cell::na("ZeroError"),
        (Some(b), Cell::Value(e)) => Cell::Value(b / e),
    }
}

/// One row per function and cell count, on each function's default interval.
pub fn compare(args: &CompareArgs) -> Result<Vec<CompareRow>, CliError> {
    let names: Vec<String> = if args.fns.is_empty() {
        registry_names().map(String::from).collect()
    } else {
        args.fns.clone()
    };
    let mut rows = Vec::new();
    for name in &names {
        let f = function(name)?;
        let iv = f.default_interval();
        let truth = reference(&f, iv)?;
        for &n in &args.ns {
            let p = Partition::uniform(iv, n)?;
            let estimate = composite_simpson(&f, &p)?;
            let actual = match truth {
                Some(t) => Cell::Value((t - estimate).abs()),
                None => Cell::na("NoConvergence"),
            };
            let classical =
                Cell::from_entry(&BoundEntry::from(&composite_classical_bound(&f, &p)?));
            let qc = Cell::from_entry(&BoundEntry::from(&composite_qc_bound(&f, &p)?));
            let bv: Vec<Cell> = (0..MAX_ORDER)
                .map(|order| match composite_bv_bound(&f, order, &p) {
                    Ok(r) => Cell::from_entry(&BoundEntry::from(&r)),
                    Err(e) => Cell::na(e.code()),
                })
                .collect();
            rows.push(CompareRow {
                function: f.name().to_string(),
                a: iv.a(),
                b: iv.b(),
                n,
                tightness_classical: tightness(&classical, &actual),
                tightness_qc: tightness(&qc, &actual),
                actual_error: actual,
                classical,
                bv0: bv[0].clone(),
                bv1: bv[1].clone(),
                bv2: bv[2].clone(),
                bv3: bv[3].clone(),
                qc_composite: qc,
            });
        }
    }
    Ok(rows)
}

pub fn compare_csv(rows: &[CompareRow]) -> String {
    let mut s = COMPARE_HEADER.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&r.fields().join(","));
        s.push('\n');
    }
    s
}

pub fn compare_text(rows: &[CompareRow]) -> String {
    let table: Vec<Vec<String>> = std::iter::once(COMPARE_HEADER.map(String::from).to_vec())
        .chain(rows.iter().map(CompareRow::fields))
        .collect();
    let widths: Vec<usize> = (0..COMPARE_HEADER.len())
        .map(|i| table.iter().map(|r| r[i].len()).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    for row in &table {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        s.push_str(line.join("  ").trim_end());
        s.push('\n');
    }
    s
}

pub const MATCHES: &str = "matches";
pub const DIFFERS: &str = "differs-from-paper-print";
pub const MISMATCH: &str = "mismatch";

/// One published quantity next to its recomputation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PublishedCheck {
    pub quantity: String,
    /// The value as printed.
    pub published: f64,
    /// What the recomputation must reproduce. Equals `published` except where the
    /// printed value is known to be inconsistent with its own inputs.
    pub expected: f64,
    pub recomputed: f64,
    pub tolerance: f64,
    pub status: String,
}

impl PublishedCheck {
    fn new(quantity: &str, published: f64, expected: f64, recomputed: f64, tolerance: f64) -> Self {
        let status = if (recomputed - expected).abs() > tolerance {
            MISMATCH
        } else if (recomputed - published).abs() > tolerance {
            DIFFERS
        } else {
            MATCHES
        };
        PublishedCheck {
            quantity: quantity.to_string(),
            published,
            expected,
            recomputed,
            tolerance,
            status: status.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkedExample {
    pub report: RunReport,
    pub checks: Vec<PublishedCheck>,
    pub note: String,
}

const PUBLISHED_F4_HALF: f64 = 32.10063542;
const PUBLISHED_F4_ONE: f64 = 206.5894189;
const PUBLISHED_QC: f64 = 0.03586621856;

/// Reruns the single-cell exp(x^2) example on [0, 1].
#[allow(clippy::approx_constant)]
pub fn worked_example() -> Result<WorkedExample, CliError> {
    let start = Instant::now();
    let f = function("exp_x2")?;
    let iv = Interval::new(0.0, 1.0)?;
    let p = Partition::single(iv);
    let estimate = composite_simpson(&f, &p)?;
    let truth = reference(&f, iv)?;
    let classical = classical_bound(&f, iv)?;
    let qc = qc_bound(&f, iv)?;
    let sup = estimate_sup_abs_derivative(&f, 4, iv, DEFAULT_SUP_GRID)?;
    let report = RunReport {
        function: f.name().to_string(),
        interval: [iv.a(), iv.b()],
        n: 1,
        estimate,
        reference: truth,
        actual_error: truth.map(|t| (t - estimate).abs()),
        bounds: vec![BoundEntry::from(&classical), BoundEntry::from(&qc)],
        ms: start.elapsed().as_secs_f64() * 1e3,
    };

    let same =
        |q: &str, value: f64, got: f64, tol: f64| PublishedCheck::new(q, value, value, got, tol);
    let qc_from_printed = (PUBLISHED_F4_HALF + PUBLISHED_F4_ONE) / 5760.0;
    let checks = vec![
        same("f(0)", 1.0, f.eval(0.0)?, 1e-9),
        same("f(1)", 2.718281828, f.eval(1.0)?, 1e-9),
        same("f(1/2)", 1.284025417, f.eval(0.5)?, 1e-9),
        same("f''''(1)", PUBLISHED_F4_ONE, f.derivative(4, 1.0)?, 1e-4),
        same("f''''(1/2)", PUBLISHED_F4_HALF, f.derivative(4, 0.5)?, 1e-4),
        same("sup|f''''|", PUBLISHED_F4_ONE, sup, 1e-4),
        same("integral", 1.462651746, truth.unwrap_or(f64::NAN), 1e-8),
        same("classical_bound", 0.07173243712, classical.value, 1e-6),
        PublishedCheck::new("qc_bound", PUBLISHED_QC, qc_from_printed, qc.value, 1e-6),
    ];
    let note = format!(
        "qc_bound evaluates (b-a)^5/5760 [max(|f''''(0)|, |f''''(1/2)|) + max(|f''''(1/2)|, |f''''(1)|)] \
         = ({} + {})/5760 = {}. The printed {} equals sup|f''''|/5760 = {} and is not reproduced.",
        sig(PUBLISHED_F4_HALF),
        sig(PUBLISHED_F4_ONE),
        sig(qc_from_printed),
        sig(PUBLISHED_QC),
        sig(PUBLISHED_F4_ONE / 5760.0),
    );
    Ok(WorkedExample {
        report,
        checks,
        note,
    })
}

impl WorkedExample {
    pub fn to_text(&self) -> String {
        let mut s = self.report.to_text();
        s.push('\n');
        s.push_str(&format!(
            "{:<16} {:<16} {:<16} {:<10} {}\n",
            "quantity", "published", "recomputed", "tolerance", "status"
        ));
        for c in &self.checks {
            s.push_str(&format!(
                "{:<16} {:<16} {:<16} {:<10} {}\n",
                c.quantity,
                sig(c.published),
                sig(c.recomputed),
                sig(c.tolerance),
                c.status
            ));
        }
        s.push_str(&format!("\n{}\n", self.note));
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("quantity,published,expected,recomputed,tolerance,status\n");
        for c in &self.checks {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                c.quantity,
                sig(c.published),
                sig(c.expected),
                sig(c.recomputed),
                sig(c.tolerance),
                c.status
            ));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionInfo {
    pub name: String,
    pub domain: [f64; 2],
    pub default_interval: [f64; 2],
    /// `analytic` or `finite-difference` for orders 0 through 4.
    pub derivatives: Vec<String>,
}

pub fn list_fns() -> Vec<FunctionInfo> {
    simpson_cert::builtin_corpus()
        .iter()
        .map(|f| FunctionInfo {
            name: f.name().to_string(),
            domain: [f.domain().a(), f.domain().b()],
            default_interval: [f.default_interval().a(), f.default_interval().b()],
            derivatives: f.sources().iter().map(|s| s.to_string()).collect(),
        })
        .collect()
}

pub fn list_fns_text(fns: &[FunctionInfo]) -> String {
    fns.iter()
        .map(|f| {
            format!(
                "{:<16} domain [{}, {}]  default [{}, {}]  f'''' {}\n",
                f.name,
                sig(f.domain[0]),
                sig(f.domain[1]),
                sig(f.default_interval[0]),
                sig(f.default_interval[1]),
                f.derivatives[4]
            )
        })
        .collect()
}

pub fn list_fns_csv(fns: &[FunctionInfo]) -> String {
    let mut s = String::from("name,domain_a,domain_b,default_a,default_b,d0,d1,d2,d3,d4\n");
    for f in fns {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            f.name,
            sig(f.domain[0]),
            sig(f.domain[1]),
            sig(f.default_interval[0]),
            sig(f.default_interval[1]),
            f.derivatives.join(",")
        ));
    }
    s
}
