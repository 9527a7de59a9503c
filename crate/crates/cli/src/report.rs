//! Versioned discord reports.

use gqd_core::discord::{BoundsReport, ClosestStateResult, CrossTermSign, DiscordResult};
use gqd_core::oracle::{Comparison, OracleConfig};
use gqd_core::CMatrix;
use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA: &str = "gqd.report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscordSection {
    pub value: f64,
    pub g_eigenvalues: Vec<f64>,
    pub trace_g: f64,
    pub top_sum: f64,
    pub degenerate_boundary: bool,
}

impl From<&DiscordResult> for DiscordSection {
    fn from(r: &DiscordResult) -> Self {
        Self {
            value: r.value,
            g_eigenvalues: r.g_eigenvalues.clone(),
            trace_g: r.trace_g,
            top_sum: r.top_sum,
            degenerate_boundary: r.degenerate_boundary,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsSection {
    pub lower: f64,
    pub upper_correlation: f64,
    pub upper_marginal: f64,
    pub ceiling: f64,
    pub upper_purity_marginals: f64,
    pub upper_purity_spectrum: f64,
    pub min_upper: f64,
    pub brackets: bool,
}

pub const BRACKET_TOL: f64 = 1e-9;

impl From<&BoundsReport> for BoundsSection {
    fn from(b: &BoundsReport) -> Self {
        Self {
            lower: b.lower,
            upper_correlation: b.upper_correlation,
            upper_marginal: b.upper_marginal,
            ceiling: b.ceiling,
            upper_purity_marginals: b.upper_purity_marginals,
            upper_purity_spectrum: b.upper_purity_spectrum,
            min_upper: b.min_upper(),
            brackets: b.brackets(BRACKET_TOL),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosestSection {
    pub achieved_distance_sq: f64,
    pub formula_value: f64,
    pub sign: String,
    pub rejected_distance_sq: f64,
    pub alphas: Vec<f64>,
    pub sigma_positivity: Vec<f64>,
    pub pointer_positivity: Vec<f64>,
    pub feasible: bool,
    pub degenerate: bool,
}

impl From<&ClosestStateResult> for ClosestSection {
    fn from(c: &ClosestStateResult) -> Self {
        Self {
            achieved_distance_sq: c.achieved_distance_sq,
            formula_value: c.formula_value,
            sign: match c.sign {
                CrossTermSign::Plus => "plus".into(),
                CrossTermSign::Minus => "minus".into(),
            },
            rejected_distance_sq: c.rejected_distance_sq,
            alphas: c.alphas.clone(),
            sigma_positivity: c.sigma_positivity.clone(),
            pointer_positivity: c.pointer_positivity.clone(),
            feasible: c.feasible,
            degenerate: c.degenerate,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSection {
    pub value: f64,
    pub gap: f64,
    pub consistent: bool,
    pub converged: bool,
    pub restarts_used: usize,
    pub seed: u64,
    pub per_restart_values: Vec<f64>,
    /// Row-major `[re, im]` entries; columns are the basis vectors.
    pub best_basis: Vec<[f64; 2]>,
}

pub fn flatten(m: &CMatrix) -> Vec<[f64; 2]> {
    let n = m.ncols();
    (0..m.nrows() * n)
        .map(|k| {
            let z = m[(k / n, k % n)];
            [z.re, z.im]
        })
        .collect()
}

impl OracleSection {
    pub fn new(c: &Comparison, config: &OracleConfig) -> Self {
        Self {
            value: c.oracle.value,
            gap: c.gap,
            consistent: c.consistent,
            converged: c.oracle.converged,
            restarts_used: c.oracle.restarts_used,
            seed: config.seed,
            per_restart_values: c.oracle.per_restart_values.clone(),
            best_basis: flatten(&c.oracle.best_basis),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema: String,
    pub tool_version: String,
    pub input_digest: String,
    pub dims: [usize; 2],
    pub discord: DiscordSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closest: Option<ClosestSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
}

impl ReportFile {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "dims        {}x{}\ndigest      {}\ndiscord     {}\nG spectrum  {:?}\n",
            self.dims[0],
            self.dims[1],
            self.input_digest,
            self.discord.value,
            self.discord.g_eigenvalues
        );
        if self.discord.degenerate_boundary {
            out += "note        optimal frame is not unique\n";
        }
        if let Some(b) = &self.bounds {
            out += &format!(
                "lower       {}\nupper corr  {}\nupper marg  {}\nupper pur-m {}\nupper pur-s {}\nceiling     {}\nbracketed   {}\n",
                b.lower, b.upper_correlation, b.upper_marginal, b.upper_purity_marginals,
                b.upper_purity_spectrum, b.ceiling, b.brackets
            );
        }
        if let Some(c) = &self.closest {
            out += &format!(
                "closest     distance² {} (sign {}, other sign {})\nfeasible    {}\n",
                c.achieved_distance_sq, c.sign, c.rejected_distance_sq, c.feasible
            );
        }
        if let Some(o) = &self.oracle {
            out += &format!(
                "oracle      {} (gap {}, converged {}, restarts {})\n",
                o.value, o.gap, o.converged, o.restarts_used
            );
        }
        out
    }
}
