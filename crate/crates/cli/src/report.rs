//! Report structures and emission: versioned JSON, fixed-order CSV,
//! 12-significant-digit floats, atomic writes.

use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// Rounds to 12 significant digits so reports are byte-stable across
/// platforms and refactors.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("round trip")
}

pub fn round_all(xs: &[f64]) -> Vec<f64> {
    xs.iter().copied().map(round_sig).collect()
}

/// A single verdict: `measured` compared against `bound`, either as an
/// upper bound (`at_most`) or an equality within `slack` (`equals`).
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub check: String,
    pub kind: &'static str,
    pub measured: f64,
    pub bound: f64,
    pub slack: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn at_most(name: &str, measured: f64, bound: f64, slack: f64) -> Self {
        Check {
            check: name.into(),
            kind: "at_most",
            measured: round_sig(measured),
            bound: round_sig(bound),
            slack,
            pass: measured <= bound + slack,
            detail: None,
        }
    }

    pub fn equals(name: &str, measured: f64, expected: f64, slack: f64) -> Self {
        Check {
            check: name.into(),
            kind: "equals",
            measured: round_sig(measured),
            bound: round_sig(expected),
            slack,
            pass: (measured - expected).abs() <= slack,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }
}

#[derive(Debug, Serialize)]
pub struct SimulateReport {
    pub schema: u32,
    pub command: &'static str,
    pub algorithm: String,
    pub convention: String,
    pub positions: usize,
    pub queries: usize,
    pub epsilon: f64,
    pub per_input: Vec<InputProbability>,
}

#[derive(Debug, Serialize)]
pub struct InputProbability {
    pub input: String,
    pub expected: usize,
    pub probability: f64,
}

#[derive(Debug, Serialize)]
pub struct TraceReport {
    pub schema: u32,
    pub command: &'static str,
    pub mode: &'static str,
    pub algorithm: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub convention: String,
    pub positions: usize,
    pub queries: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub overlap_factor: Option<f64>,
    pub step_bound: f64,
    pub sums: Vec<f64>,
    pub deltas: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distances: Option<Vec<f64>>,
    pub gram_identity_constant: f64,
    pub checks: Vec<Check>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParametersOut {
    pub x_size: u64,
    pub y_size: u64,
    pub pairs: u64,
    pub m: u64,
    pub m_prime: u64,
    pub l: u64,
    pub l_prime: u64,
    pub l_max: u64,
}

impl From<adversim_core::relation::RelationParameters> for ParametersOut {
    fn from(p: adversim_core::relation::RelationParameters) -> Self {
        ParametersOut {
            x_size: p.x_size,
            y_size: p.y_size,
            pairs: p.pair_count,
            m: p.min_x_degree,
            m_prime: p.min_y_degree,
            l: p.max_x_flip,
            l_prime: p.max_y_flip,
            l_max: p.max_flip_product,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RatioOut {
    pub num: u64,
    pub den: u64,
}

#[derive(Debug, Serialize)]
pub struct ClosedFormCheck {
    pub m: u64,
    pub m_prime: u64,
    pub l: u64,
    pub l_prime: u64,
    pub ratio: RatioOut,
    pub predicted_ratio: RatioOut,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct BoundReport {
    pub schema: u32,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub positions: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<String>,
    pub parameters: ParametersOut,
    pub basic_bound: f64,
    pub refined_bound: f64,
    pub basic_step_budget: f64,
    pub refined_step_budget: f64,
    pub expected_start_sum: f64,
    /// Queries certified for exact algorithms (error 0).
    pub certified_queries_exact: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ClosedFormCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_bound: Option<Check>,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct BsReport {
    pub schema: u32,
    pub command: &'static str,
    pub positions: usize,
    pub bs: usize,
    pub witness: String,
    pub blocks: Vec<Vec<usize>>,
    pub bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<ParametersOut>,
}

/// CSV rendering of the per-query trace rows. The first row (k = 0) has no
/// decrease to judge, so its delta and pass fields stay empty.
pub fn trace_csv(
    sums: &[f64],
    deltas: &[f64],
    distances: Option<&[f64]>,
    step_bound: f64,
    slack: f64,
) -> String {
    let mut out = String::from("k,sum,delta,bound,pass");
    if distances.is_some() {
        out.push_str(",distance");
    }
    out.push('\n');
    for (k, &sum) in sums.iter().enumerate() {
        let (delta, pass) = if k == 0 {
            (String::new(), String::new())
        } else {
            let d = deltas[k - 1];
            (
                format!("{:.11e}", round_sig(d)),
                (d <= step_bound + slack).to_string(),
            )
        };
        out.push_str(&format!(
            "{k},{:.11e},{delta},{:.11e},{pass}",
            round_sig(sum),
            round_sig(step_bound)
        ));
        if let Some(ds) = distances {
            out.push_str(&format!(",{:.11e}", round_sig(ds[k])));
        }
        out.push('\n');
    }
    out
}

pub fn simulate_csv(rows: &[InputProbability]) -> String {
    let mut out = String::from("input,expected,probability\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{:.11e}\n",
            r.input,
            r.expected,
            round_sig(r.probability)
        ));
    }
    out
}

pub fn bound_csv(report: &BoundReport) -> String {
    let p = &report.parameters;
    format!(
        "m,m_prime,l,l_prime,l_max,basic_bound,refined_bound\n{},{},{},{},{},{:.11e},{:.11e}\n",
        p.m, p.m_prime, p.l, p.l_prime, p.l_max, report.basic_bound, report.refined_bound
    )
}

pub fn bs_csv(report: &BsReport) -> String {
    format!(
        "bs,witness,bound\n{},{},{:.11e}\n",
        report.bs, report.witness, report.bound
    )
}

pub fn to_json<T: Serialize>(report: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(report).context("serializing report")?;
    text.push('\n');
    Ok(text)
}

/// Writes via a temporary sibling and a rename, so readers never observe a
/// half-written report.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    std::fs::write(&tmp, contents)
        .with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path)
        .with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_stable_at_twelve_digits() {
        assert_eq!(round_sig(0.0), 0.0);
        assert_eq!(round_sig(1.0), 1.0);
        let x = 0.123456789012345;
        assert_eq!(round_sig(x), 0.123456789012);
        assert_eq!(round_sig(round_sig(x)), round_sig(x));
    }

    #[test]
    fn trace_csv_leaves_first_delta_blank() {
        let csv = trace_csv(&[3.0, 1.0], &[2.0], None, 2.5, 1e-9);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "k,sum,delta,bound,pass");
        assert!(lines[1].starts_with("0,3.00000000000e0,,"));
        assert!(lines[2].contains(",true"));
    }

    #[test]
    fn checks_carry_verdicts() {
        let c = Check::at_most("step_decrease_bound", 1.0, 2.0, 1e-9);
        assert!(c.pass);
        let c = Check::at_most("step_decrease_bound", 2.1, 2.0, 1e-9);
        assert!(!c.pass);
        let c = Check::equals("initial_offdiag_sum", 3.0 + 1e-12, 3.0, 1e-10);
        assert!(c.pass);
    }
}
