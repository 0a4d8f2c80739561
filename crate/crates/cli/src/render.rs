//! Report document and its two renderings. The JSON schema mirrors the
//! in-memory check reports field for field; the text form is a line per
//! check plus capped witness lines. Both renderings are deterministic.

use clap::ValueEnum;
use serde::Serialize;

use filippov_core::exactlin::{Matrix, Scalar};
use filippov_core::extension::ModuleCriterion;
use filippov_core::report::{CheckReport, Witness};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Serialize)]
pub struct Document {
    pub command: String,
    pub verdict: &'static str,
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solvable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Vec<Scalar>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<Vec<Scalar>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derivation_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derivations: Option<Vec<Vec<Vec<Scalar>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module_criterion: Option<ModuleCriterion>,
}

impl Document {
    pub fn new(command: &str) -> Self {
        Document {
            command: command.to_string(),
            verdict: "pass",
            checks: Vec::new(),
            solvable: None,
            gamma: None,
            delta: None,
            derivation_dimension: None,
            derivations: None,
            module_criterion: None,
        }
    }

    pub fn push(&mut self, report: CheckReport) {
        self.checks.push(report);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(mut self, format: ReportFormat, witness_cap: usize) -> String {
        self.verdict = if self.passed() { "pass" } else { "fail" };
        match format {
            ReportFormat::Json => self.render_json(witness_cap),
            ReportFormat::Text => self.render_text(witness_cap),
        }
    }

    fn render_json(mut self, witness_cap: usize) -> String {
        for check in &mut self.checks {
            check.witnesses.truncate(witness_cap);
        }
        let mut out = serde_json::to_string_pretty(&self).expect("document serializes");
        out.push('\n');
        out
    }

    fn render_text(&self, witness_cap: usize) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        if let Some(dim) = self.derivation_dimension {
            writeln!(out, "derivation_dimension: {dim}").unwrap();
        }
        if let Some(derivations) = &self.derivations {
            for (i, rows) in derivations.iter().enumerate() {
                writeln!(out, "derivation[{i}]: {}", rows_to_string(rows)).unwrap();
            }
        }
        if let Some(solvable) = self.solvable {
            writeln!(out, "solvable: {solvable}").unwrap();
        }
        if let Some(gamma) = &self.gamma {
            writeln!(out, "gamma: {}", rows_to_string(gamma)).unwrap();
        }
        if let Some(delta) = &self.delta {
            writeln!(out, "delta: {}", rows_to_string(delta)).unwrap();
        }
        if let Some(mc) = &self.module_criterion {
            writeln!(
                out,
                "module_criterion: is_module={} beta_mu_zero={}",
                mc.is_module, mc.beta_mu_zero
            )
            .unwrap();
        }
        for check in &self.checks {
            if check.passed {
                writeln!(out, "{}: pass ({} tuples)", check.name, check.checked).unwrap();
            } else {
                writeln!(
                    out,
                    "{}: fail ({} tuples, {} violations)",
                    check.name, check.checked, check.violations
                )
                .unwrap();
                for w in check.capped_witnesses(witness_cap) {
                    writeln!(out, "  witness {}", witness_to_string(w)).unwrap();
                }
            }
        }
        writeln!(out, "verdict: {}", self.verdict).unwrap();
        out
    }
}

pub fn matrix_rows(m: &Matrix) -> Vec<Vec<Scalar>> {
    (0..m.rows()).map(|r| m.row_vec(r)).collect()
}

fn rows_to_string(rows: &[Vec<Scalar>]) -> String {
    let body: Vec<String> = rows
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(Scalar::to_string).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", body.join(", "))
}

fn witness_to_string(w: &Witness) -> String {
    let idx: Vec<String> = w.indices.iter().map(usize::to_string).collect();
    let lhs: Vec<String> = w.lhs.iter().map(Scalar::to_string).collect();
    let rhs: Vec<String> = w.rhs.iter().map(Scalar::to_string).collect();
    format!(
        "{} @ ({}) lhs=[{}] rhs=[{}]",
        w.identity,
        idx.join(","),
        lhs.join(","),
        rhs.join(",")
    )
}
