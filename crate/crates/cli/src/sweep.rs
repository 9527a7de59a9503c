//! Formula-versus-oracle tables over seeded state families.

use std::time::Instant;

use gqd_core::discord::{discord_bounds, geometric_discord};
use gqd_core::oracle::{minimize, OracleConfig};
use gqd_core::qstate::{random_mixed, random_pure, random_separable};
use gqd_core::DensityMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::io::StateFile;

pub const SWEEP_SCHEMA: &str = "gqd.sweep/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SweepFamily {
    Mixed,
    Pure,
    Separable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub dims: Vec<[usize; 2]>,
    pub count: usize,
    pub seed: u64,
    pub family: SweepFamily,
    pub oracle: bool,
    pub restarts: usize,
    pub grid_resolution: usize,
    pub max_iters: usize,
    pub timing: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let o = OracleConfig::default();
        Self {
            dims: vec![[2, 2]],
            count: 10,
            seed: 7,
            family: SweepFamily::Mixed,
            oracle: true,
            restarts: o.restarts,
            grid_resolution: o.grid_resolution,
            max_iters: o.max_iters,
            timing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub d1: usize,
    pub d2: usize,
    pub index: usize,
    pub state_seed: u64,
    pub digest: String,
    pub formula: f64,
    pub lower: f64,
    pub min_upper: f64,
    pub oracle: Option<f64>,
    pub gap: Option<f64>,
    pub converged: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub rows: usize,
    /// Largest `|gap|` over cells with a two-level measured side.
    pub max_abs_gap_qubit: Option<f64>,
    pub min_gap: Option<f64>,
    pub max_gap: Option<f64>,
    pub median_gap: Option<f64>,
    pub max_formula: f64,
    pub unconverged: usize,
    /// Set when some cell measures a side of dimension 4 or more, where the
    /// oracle is only an upper bound on the true minimum.
    pub oracle_upper_bound_only: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub schema: String,
    pub config: SweepConfig,
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

/// Per-row seed, a SplitMix64 finalizer over the sweep seed and row key.
pub fn row_seed(seed: u64, d1: usize, d2: usize, index: usize) -> u64 {
    let mut z = seed ^ ((d1 as u64) << 56) ^ ((d2 as u64) << 48) ^ index as u64;
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn sample(
    family: SweepFamily,
    d1: usize,
    d2: usize,
    seed: u64,
) -> Result<DensityMatrix, CliError> {
    Ok(match family {
        SweepFamily::Mixed => random_mixed(d1, d2, d1 * d2, seed)?,
        SweepFamily::Pure => random_pure(d1, d2, seed)?,
        SweepFamily::Separable => random_separable(d1, d2, d1 * d2, false, seed)?.1,
    })
}

fn run_row(config: &SweepConfig, d1: usize, d2: usize, index: usize) -> Result<SweepRow, CliError> {
    let start = Instant::now();
    let state_seed = row_seed(config.seed, d1, d2, index);
    let rho = sample(config.family, d1, d2, state_seed)?;
    let digest = StateFile::from_state(&rho, None)?.digest();
    let formula = geometric_discord(&rho)?.value;
    let bounds = discord_bounds(&rho)?;
    let (oracle, gap, converged) = if config.oracle {
        let oc = OracleConfig {
            restarts: config.restarts,
            seed: state_seed,
            grid_resolution: config.grid_resolution,
            max_iters: config.max_iters,
            ..OracleConfig::default()
        };
        let r = minimize(&rho, &oc)?;
        (Some(r.value), Some(r.value - formula), Some(r.converged))
    } else {
        (None, None, None)
    };
    Ok(SweepRow {
        d1,
        d2,
        index,
        state_seed,
        digest,
        formula,
        lower: bounds.lower,
        min_upper: bounds.min_upper(),
        oracle,
        gap,
        converged,
        runtime_ms: config.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}

fn summarize(rows: &[SweepRow]) -> SweepSummary {
    let mut gaps: Vec<f64> = rows.iter().filter_map(|r| r.gap).collect();
    gaps.sort_by(f64::total_cmp);
    let median_gap = (!gaps.is_empty()).then(|| {
        let n = gaps.len();
        if n % 2 == 1 {
            gaps[n / 2]
        } else {
            0.5 * (gaps[n / 2 - 1] + gaps[n / 2])
        }
    });
    SweepSummary {
        rows: rows.len(),
        max_abs_gap_qubit: rows
            .iter()
            .filter(|r| r.d2 == 2)
            .filter_map(|r| r.gap.map(f64::abs))
            .reduce(f64::max),
        min_gap: gaps.first().copied(),
        max_gap: gaps.last().copied(),
        median_gap,
        max_formula: rows.iter().map(|r| r.formula).fold(0.0, f64::max),
        unconverged: rows.iter().filter(|r| r.converged == Some(false)).count(),
        oracle_upper_bound_only: rows.iter().any(|r| r.d2 >= 4 && r.oracle.is_some()),
    }
}

/// Runs every `(dims, index)` cell in parallel; rows come back sorted by
/// dims (in config order) then index.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepTable, CliError> {
    for &[d1, d2] in &config.dims {
        if d1 < 2 || d2 < 2 {
            return Err(CliError::InvalidInput(format!("invalid cell {d1}x{d2}")));
        }
    }
    let cells: Vec<(usize, usize, usize)> = config
        .dims
        .iter()
        .flat_map(|&[d1, d2]| (0..config.count).map(move |i| (d1, d2, i)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(d1, d2, i)| run_row(config, d1, d2, i))
        .collect::<Result<Vec<_>, _>>()?;
    let summary = summarize(&rows);
    Ok(SweepTable {
        schema: SWEEP_SCHEMA.into(),
        config: config.clone(),
        rows,
        summary,
    })
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl SweepTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Row table, a blank line, then a `metric,value` summary table.
    pub fn to_csv(&self) -> String {
        let timing = self.config.timing;
        let mut out = String::from(
            "d1,d2,index,state_seed,digest,formula,lower,min_upper,oracle,gap,converged",
        );
        if timing {
            out += ",runtime_ms";
        }
        out.push('\n');
        for r in &self.rows {
            out += &format!(
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.d1,
                r.d2,
                r.index,
                r.state_seed,
                r.digest,
                r.formula,
                r.lower,
                r.min_upper,
                opt(r.oracle),
                opt(r.gap),
                opt(r.converged)
            );
            if timing {
                out += &format!(",{}", opt(r.runtime_ms));
            }
            out.push('\n');
        }
        let s = &self.summary;
        out += &format!(
            "\nmetric,value\nrows,{}\nmax_abs_gap_qubit,{}\nmin_gap,{}\nmax_gap,{}\nmedian_gap,{}\nmax_formula,{}\nunconverged,{}\noracle_upper_bound_only,{}\n",
            s.rows, opt(s.max_abs_gap_qubit), opt(s.min_gap), opt(s.max_gap), opt(s.median_gap),
            s.max_formula, s.unconverged, s.oracle_upper_bound_only
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SweepConfig {
        SweepConfig {
            dims: vec![[2, 2], [2, 3]],
            count: 3,
            restarts: 2,
            grid_resolution: 40,
            max_iters: 200,
            ..SweepConfig::default()
        }
    }

    #[test]
    fn rows_are_ordered_and_deterministic() {
        let a = run_sweep(&small()).unwrap();
        let b = run_sweep(&small()).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let keys: Vec<_> = a.rows.iter().map(|r| (r.d2, r.index)).collect();
        assert_eq!(keys, vec![(2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2)]);
        assert!(a.summary.min_gap.unwrap() >= -1e-6);
    }

    #[test]
    fn timing_column_is_optional() {
        let t = run_sweep(&SweepConfig {
            oracle: false,
            ..small()
        })
        .unwrap();
        assert!(!t.to_csv().contains("runtime_ms"));
        assert!(t.rows.iter().all(|r| r.gap.is_none()));
        let t = run_sweep(&SweepConfig {
            oracle: false,
            timing: true,
            ..small()
        })
        .unwrap();
        assert!(t.to_csv().lines().next().unwrap().ends_with("runtime_ms"));
    }

    #[test]
    fn row_seeds_differ() {
        assert_ne!(row_seed(1, 2, 2, 0), row_seed(1, 2, 2, 1));
        assert_ne!(row_seed(1, 2, 3, 0), row_seed(1, 3, 2, 0));
    }
}
