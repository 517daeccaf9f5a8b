use serde::{Deserialize, Serialize};
use simpson_cert::bounds::{
    bv_bound, classical_bound, composite_bv_bound, composite_classical_bound, composite_qc_bound,
    composite_qc_bound_monotone, qc_bound, qc_bound_monotone,
};
use simpson_cert::{AssumptionStatus, BoundReport, Direction, FunctionSpec, Partition};

use crate::args::BoundChoice;
use crate::format::sig;

/// The result of one `integrate` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    #[serde(rename = "fn")]
    pub function: String,
    pub interval: [f64; 2],
    pub n: usize,
    pub estimate: f64,
    /// `null` when the reference integral did not converge.
    pub reference: Option<f64>,
    pub actual_error: Option<f64>,
    pub bounds: Vec<BoundEntry>,
    pub ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub family: String,
    /// `null` when the bound could not be computed.
    pub value: Option<f64>,
    pub certifying: bool,
    pub assumptions: Vec<AssumptionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssumptionEntry {
    pub name: String,
    pub status: AssumptionStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl From<&BoundReport> for BoundEntry {
    fn from(r: &BoundReport) -> Self {
        let failed: Vec<&str> = r.failed_assumptions().map(|a| a.name.as_str()).collect();
        BoundEntry {
            family: r.family.to_string(),
            value: Some(r.value),
            certifying: r.is_certifying(),
            assumptions: r
                .assumptions
                .iter()
                .map(|a| AssumptionEntry {
                    name: a.name.clone(),
                    status: a.status,
                    detail: a.detail.clone(),
                })
                .collect(),
            reason: (!failed.is_empty()).then(|| format!("HypothesisFailed({})", failed.join(","))),
        }
    }
}

impl BoundEntry {
    fn unavailable(family: String, choice: BoundChoice, err: &simpson_cert::Error) -> Self {
        let assumptions = match choice {
            BoundChoice::Bv(n) => vec![AssumptionEntry {
                name: format!("bounded_variation_f{n}"),
                status: AssumptionStatus::Failed,
                detail: Some(err.to_string()),
            }],
            _ => Vec::new(),
        };
        BoundEntry {
            family,
            value: None,
            certifying: false,
            assumptions,
            reason: Some(err.code().to_string()),
        }
    }

    /// The value if it certifies, otherwise `NA(<reason>)`.
    pub fn cell(&self) -> String {
        match (self.value, self.certifying) {
            (Some(v), true) => sig(v),
            _ => format!(
                "NA({})",
                self.reason.as_deref().unwrap_or("HypothesisFailed")
            ),
        }
    }
}

/// Evaluates one requested bound family on `p`. Single-cell partitions use
/// the single-interval formulas.
pub fn evaluate(f: &FunctionSpec, p: &Partition, choice: BoundChoice) -> BoundEntry {
    let single = p.len() == 1;
    let iv = p.interval();
    let result = match (choice, single) {
        (BoundChoice::Classical, true) => classical_bound(f, iv),
        (BoundChoice::Classical, false) => composite_classical_bound(f, p),
        (BoundChoice::Bv(n), true) => bv_bound(f, n, iv),
        (BoundChoice::Bv(n), false) => composite_bv_bound(f, n, p),
        (BoundChoice::Qc, true) => qc_bound(f, iv),
        (BoundChoice::Qc, false) => composite_qc_bound(f, p),
        (BoundChoice::QcMonoInc, true) => qc_bound_monotone(f, iv, Direction::Increasing),
        (BoundChoice::QcMonoInc, false) => composite_qc_bound_monotone(f, p, Direction::Increasing),
        (BoundChoice::QcMonoDec, true) => qc_bound_monotone(f, iv, Direction::Decreasing),
        (BoundChoice::QcMonoDec, false) => composite_qc_bound_monotone(f, p, Direction::Decreasing),
    };
    match result {
        Ok(r) => BoundEntry::from(&r),
        Err(e) => {
            let label = if single {
                choice.label()
            } else {
                format!("composite-{}", choice.label())
            };
            BoundEntry::unavailable(label, choice, &e)
        }
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(sig).unwrap_or_else(|| "NA(NoConvergence)".into())
}

impl RunReport {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "fn           {}\ninterval     [{}, {}]\ncells        {}\nestimate     {}\nreference    {}\nactual_error {}\n",
            self.function,
            sig(self.interval[0]),
            sig(self.interval[1]),
            self.n,
            sig(self.estimate),
            opt(self.reference),
            opt(self.actual_error),
        );
        for b in &self.bounds {
            let flag = if b.certifying {
                "certifying"
            } else {
                "not certifying"
            };
            s.push_str(&format!(
                "bound        {:<22} {:<18} {flag}\n",
                b.family,
                b.cell()
            ));
            for a in &b.assumptions {
                s.push_str(&format!("  {:<26} {}", a.name, a.status));
                if let Some(d) = &a.detail {
                    s.push_str(&format!(" ({d})"));
                }
                s.push('\n');
            }
        }
        s.push_str(&format!("ms           {:.3}\n", self.ms));
        s
    }

    pub fn to_csv(&self) -> String {
        let mut header = vec![
            "fn".to_string(),
            "a".into(),
            "b".into(),
            "n".into(),
            "estimate".into(),
            "reference".into(),
            "actual_error".into(),
        ];
        let mut row = vec![
            self.function.clone(),
            sig(self.interval[0]),
            sig(self.interval[1]),
            self.n.to_string(),
            sig(self.estimate),
            opt(self.reference),
            opt(self.actual_error),
        ];
        for b in &self.bounds {
            header.push(b.family.clone());
            row.push(b.cell());
        }
        format!("{}\n{}\n", header.join(","), row.join(","))
    }
}
