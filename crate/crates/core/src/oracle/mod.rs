//! Brute-force verifier: minimizes `tr[(ρ-χ)²]` over quantum-classical `χ`
//! directly.
//!
//! For a fixed basis `{|k⟩}` of the second factor, the best `χ` is the
//! dephasing `Σ_k A_k ⊗ |k⟩⟨k|` with `A_k = (I⊗⟨k|)ρ(I⊗|k⟩)`, so only the
//! basis is searched. A qubit basis is a point on the Bloch hemisphere and is
//! found by grid search plus simplex polish; larger bases use random local
//! descent on the unitary group with restarts.

mod simplex;

pub use simplex::{nelder_mead, SimplexOutcome};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::discord::{closest_qc_state, geometric_discord, ClosestStateResult};
use crate::error::Result;
use crate::linalg::{ensure_orthonormal_basis, reorthonormalize, CMatrix, C64};
use crate::qstate::{
    assemble_classical, conditional_blocks, hermitian_eigensystem, hs_distance_sq_raw,
    random_unitary_with_rng, DensityMatrix,
};

/// Orthonormality tolerance for caller-supplied bases.
pub const BASIS_TOL: f64 = 1e-10;
/// Allowed excess of the formula over the oracle.
pub const GAP_TOL: f64 = 1e-6;
const REORTHONORMALIZE_EVERY: usize = 100;
const REJECTION_STREAK: usize = 8;
const INITIAL_STEP: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub restarts: usize,
    pub seed: u64,
    /// Grid points per `π` along each Bloch angle (qubit measurements only).
    pub grid_resolution: usize,
    pub max_iters: usize,
    pub tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            seed: 0x5eed,
            grid_resolution: 400,
            max_iters: 2000,
            tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub value: f64,
    /// Columns are the measurement basis vectors.
    pub best_basis: CMatrix,
    pub restarts_used: usize,
    pub converged: bool,
    pub per_restart_values: Vec<f64>,
}

fn check_basis(rho: &DensityMatrix, basis: &CMatrix) -> Result<(usize, usize)> {
    let (d1, d2) = rho.bipartite_dims()?;
    ensure_orthonormal_basis(basis, d2, BASIS_TOL)?;
    Ok((d1, d2))
}

/// Closest quantum-classical state with measurement basis `basis`.
pub fn dephase(rho: &DensityMatrix, basis: &CMatrix) -> Result<DensityMatrix> {
    let (d1, d2) = check_basis(rho, basis)?;
    let blocks = conditional_blocks(rho.matrix(), d1, d2, basis);
    DensityMatrix::new(vec![d1, d2], assemble_classical(&blocks, basis))
}

/// `tr[ρ²] - Σ_k tr[A_k²]`, without building `χ`.
fn disturbance_fast(m: &CMatrix, purity: f64, d1: usize, d2: usize, basis: &CMatrix) -> f64 {
    let kept: f64 = conditional_blocks(m, d1, d2, basis)
        .iter()
        .map(|a| a.iter().map(|z| z.norm_sqr()).sum::<f64>())
        .sum();
    (purity - kept).max(0.0)
}

/// `tr[(ρ - dephase(ρ, basis))²]`.
pub fn disturbance(rho: &DensityMatrix, basis: &CMatrix) -> Result<f64> {
    let (d1, d2) = check_basis(rho, basis)?;
    let m = rho.matrix();
    let purity = m.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let fast = disturbance_fast(m, purity, d1, d2, basis);
    debug_assert!({
        let chi = assemble_classical(&conditional_blocks(m, d1, d2, basis), basis);
        (hs_distance_sq_raw(m, &chi) - fast).abs() < 1e-10
    });
    Ok(fast)
}

/// Qubit basis whose first vector has Bloch angles `(θ, φ)`.
pub fn qubit_basis(theta: f64, phi: f64) -> CMatrix {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e = C64::from_polar(1.0, phi);
    CMatrix::from_row_slice(
        2,
        2,
        &[C64::new(c, 0.0), -e.conj() * s, e * s, C64::new(c, 0.0)],
    )
}

/// Searches for the measurement basis minimizing [`disturbance`].
pub fn minimize(rho: &DensityMatrix, config: &OracleConfig) -> Result<OracleResult> {
    let (d1, d2) = rho.bipartite_dims()?;
    let m = rho.matrix();
    let purity = m.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let mut result = if d2 == 2 {
        minimize_qubit(m, purity, d1, config)
    } else {
        minimize_unitary(m, purity, d1, d2, config)?
    };
    result.best_basis = reorthonormalize(&result.best_basis);
    let chi = assemble_classical(
        &conditional_blocks(m, d1, d2, &result.best_basis),
        &result.best_basis,
    );
    result.value = hs_distance_sq_raw(m, &chi).max(0.0);
    Ok(result)
}

fn minimize_qubit(m: &CMatrix, purity: f64, d1: usize, config: &OracleConfig) -> OracleResult {
    let f = |theta: f64, phi: f64| disturbance_fast(m, purity, d1, 2, &qubit_basis(theta, phi));
    let step = PI / config.grid_resolution.max(1) as f64;
    let n_theta = config.grid_resolution.div_ceil(2).max(1);
    let n_phi = 2 * config.grid_resolution.max(1);
    let (grid_value, gt, gp) = (0..=n_theta)
        .into_par_iter()
        .map(|i| {
            let theta = i as f64 * step;
            (0..n_phi)
                .map(|j| (f(theta, j as f64 * step), i, j))
                .min_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))))
                .expect("non-empty")
        })
        .min_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))))
        .expect("non-empty");
    let start = [gt as f64 * step, gp as f64 * step];
    let polish = nelder_mead(
        |p| f(p[0], p[1]),
        &start,
        step,
        config.tol,
        config.max_iters,
    );
    let (value, point) = if polish.value <= grid_value {
        (polish.value, polish.point)
    } else {
        (grid_value, start.to_vec())
    };
    OracleResult {
        value,
        best_basis: qubit_basis(point[0], point[1]),
        restarts_used: 1,
        converged: polish.converged,
        per_restart_values: vec![value],
    }
}

/// Deterministic generator for restart `index`.
fn restart_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// `exp(i s H)` for a random unit-norm Hermitian `H`.
fn random_step<R: Rng + ?Sized>(d: usize, s: f64, rng: &mut R) -> Result<CMatrix> {
    let mut h = CMatrix::from_fn(d, d, |_, _| {
        C64::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        )
    });
    h = (&h + h.adjoint()) * C64::new(0.5, 0.0);
    let norm = h.norm();
    if norm > 0.0 {
        h /= C64::new(norm, 0.0);
    }
    let eig = hermitian_eigensystem(&h)?;
    let phases = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        d,
        eig.values.iter().map(|&l| C64::from_polar(1.0, s * l)),
    ));
    Ok(&eig.vectors * phases * eig.vectors.adjoint())
}

struct Descent {
    value: f64,
    basis: CMatrix,
    converged: bool,
}

fn descend(
    m: &CMatrix,
    purity: f64,
    d1: usize,
    d2: usize,
    index: usize,
    config: &OracleConfig,
) -> Result<Descent> {
    let mut rng = restart_rng(config.seed, index);
    let mut u = if index == 0 {
        CMatrix::identity(d2, d2)
    } else {
        random_unitary_with_rng(d2, &mut rng)?
    };
    let mut value = disturbance_fast(m, purity, d1, d2, &u);
    let mut step = INITIAL_STEP;
    let floor = config.tol.sqrt();
    let mut rejections = 0;
    let mut converged = false;
    for iter in 1..=config.max_iters {
        let candidate = &u * random_step(d2, step, &mut rng)?;
        let cv = disturbance_fast(m, purity, d1, d2, &candidate);
        if cv < value {
            u = candidate;
            value = cv;
            step = (step * 1.5).min(PI);
            rejections = 0;
        } else {
            rejections += 1;
            if rejections >= REJECTION_STREAK {
                step *= 0.5;
                rejections = 0;
            }
        }
        if iter % REORTHONORMALIZE_EVERY == 0 {
            u = reorthonormalize(&u);
            value = disturbance_fast(m, purity, d1, d2, &u);
        }
        if step < floor {
            converged = true;
            break;
        }
    }
    Ok(Descent {
        value,
        basis: u,
        converged,
    })
}

fn minimize_unitary(
    m: &CMatrix,
    purity: f64,
    d1: usize,
    d2: usize,
    config: &OracleConfig,
) -> Result<OracleResult> {
    let restarts = config.restarts.max(1);
    let runs = (0..restarts)
        .into_par_iter()
        .map(|i| descend(m, purity, d1, d2, i, config))
        .collect::<Result<Vec<_>>>()?;
    let best = (0..runs.len())
        .min_by(|&a, &b| runs[a].value.total_cmp(&runs[b].value).then(a.cmp(&b)))
        .expect("at least one restart");
    Ok(OracleResult {
        value: runs[best].value,
        best_basis: runs[best].basis.clone(),
        restarts_used: restarts,
        converged: runs[best].converged,
        per_restart_values: runs.iter().map(|r| r.value).collect(),
    })
}

/// Formula value, oracle value and their difference for one state.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub formula: f64,
    pub oracle: OracleResult,
    /// `oracle - formula`.
    pub gap: f64,
    /// `gap ≥ -GAP_TOL`.
    pub consistent: bool,
    pub closest: ClosestStateResult,
}

pub fn compare(rho: &DensityMatrix, config: &OracleConfig) -> Result<Comparison> {
    let formula = geometric_discord(rho)?.value;
    let oracle = minimize(rho, config)?;
    let gap = oracle.value - formula;
    Ok(Comparison {
        formula,
        gap,
        consistent: gap >= -GAP_TOL,
        oracle,
        closest: closest_qc_state(rho)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::orthonormality_deviation;
    use crate::qstate::{
        ghz_state, product_state, qc_structure_deviation, quantum_classical_state, random_mixed,
        random_unitary,
    };

    fn quick() -> OracleConfig {
        OracleConfig {
            restarts: 4,
            grid_resolution: 100,
            max_iters: 800,
            ..OracleConfig::default()
        }
    }

    #[test]
    fn ghz_qubit_dephasing() {
        let rho = ghz_state(2).unwrap();
        let id = CMatrix::identity(2, 2);
        let chi = dephase(&rho, &id).unwrap();
        let mut want = CMatrix::zeros(4, 4);
        want[(0, 0)] = C64::new(0.5, 0.0);
        want[(3, 3)] = C64::new(0.5, 0.0);
        assert!((chi.matrix() - want).norm() < 1e-15);
        assert!((disturbance(&rho, &id).unwrap() - 0.5).abs() < 1e-15);
        assert!(
            (disturbance(&ghz_state(3).unwrap(), &CMatrix::identity(3, 3)).unwrap() - 2.0 / 3.0)
                .abs()
                < 1e-15
        );
    }

    #[test]
    fn dephasing_fixes_qc_states() {
        let u = random_unitary(3, 9).unwrap();
        let sig: Vec<_> = (0..3)
            .map(|k| {
                DensityMatrix::new(vec![2], random_mixed(2, 1, 2, k).unwrap().into_matrix())
                    .unwrap()
            })
            .collect();
        let qc = quantum_classical_state(&sig, &[0.2, 0.3, 0.5], &u).unwrap();
        let chi = dephase(&qc, &u).unwrap();
        assert!((chi.matrix() - qc.matrix()).norm() < 1e-12);
        assert!(disturbance(&qc, &u).unwrap() < 1e-12);
        assert!(minimize(&qc, &quick()).unwrap().value < 1e-8);
    }

    #[test]
    fn product_in_eigenbasis() {
        let a =
            DensityMatrix::new(vec![3], random_mixed(3, 1, 3, 1).unwrap().into_matrix()).unwrap();
        let b =
            DensityMatrix::new(vec![2], random_mixed(2, 1, 2, 2).unwrap().into_matrix()).unwrap();
        let rho = product_state(&a, &b).unwrap();
        let basis = hermitian_eigensystem(b.matrix()).unwrap().vectors;
        assert!(disturbance(&rho, &basis).unwrap() < 1e-14);
    }

    #[test]
    fn rejects_bad_basis() {
        let rho = ghz_state(2).unwrap();
        let bad = CMatrix::from_element(2, 2, C64::new(1.0, 0.0));
        assert!(dephase(&rho, &bad).is_err());
        assert!(disturbance(&rho, &CMatrix::identity(3, 3)).is_err());
    }

    #[test]
    fn dephase_output_is_qc_and_invariant_under_relabeling() {
        let rho = random_mixed(2, 3, 6, 11).unwrap();
        let u = random_unitary(3, 12).unwrap();
        let chi = dephase(&rho, &u).unwrap();
        assert!(qc_structure_deviation(chi.matrix(), 2, 3, &u) < 1e-12);
        let base = disturbance(&rho, &u).unwrap();
        let mut w = u.clone();
        w.swap_columns(0, 2);
        w.column_mut(1).scale_mut(0.6);
        let phase = C64::from_polar(1.0, 1.3);
        let col: Vec<C64> = u.column(1).iter().map(|z| z * phase).collect();
        w.set_column(1, &crate::linalg::CVector::from_vec(col));
        assert!((disturbance(&rho, &w).unwrap() - base).abs() < 1e-12);
        assert!((hs_distance_sq_raw(rho.matrix(), chi.matrix()) - base).abs() < 1e-12);
    }

    #[test]
    fn qubit_oracle_matches_formula() {
        for seed in 0..5 {
            let rho = random_mixed(2, 2, 1 + (seed as usize % 4), seed).unwrap();
            let c = compare(&rho, &OracleConfig::default()).unwrap();
            assert!(c.gap.abs() < 1e-6, "seed {seed}: {}", c.gap);
            assert!(c.oracle.converged);
        }
        let g = minimize(&ghz_state(2).unwrap(), &OracleConfig::default()).unwrap();
        assert!((g.value - 0.5).abs() < 1e-6);
    }

    #[test]
    fn qutrit_oracle_bounds_formula() {
        let g = compare(&ghz_state(3).unwrap(), &quick()).unwrap();
        assert!((g.formula - 2.0 / 3.0).abs() < 1e-10 && (g.oracle.value - 2.0 / 3.0).abs() < 1e-6);
        let rho = random_mixed(2, 3, 3, 5).unwrap();
        let c = compare(&rho, &quick()).unwrap();
        assert!(c.consistent);
        assert!(orthonormality_deviation(&c.oracle.best_basis) < 1e-12);
        let check = disturbance(&rho, &c.oracle.best_basis).unwrap();
        assert!((check - c.oracle.value).abs() < 1e-12);
    }

    #[test]
    fn restarts_are_monotone_and_deterministic() {
        let rho = random_mixed(3, 3, 4, 21).unwrap();
        let few = minimize(
            &rho,
            &OracleConfig {
                restarts: 2,
                ..quick()
            },
        )
        .unwrap();
        let more = minimize(
            &rho,
            &OracleConfig {
                restarts: 5,
                ..quick()
            },
        )
        .unwrap();
        assert_eq!(few.per_restart_values[..], more.per_restart_values[..2]);
        assert!(more.value <= few.value);
        let again = minimize(
            &rho,
            &OracleConfig {
                restarts: 5,
                ..quick()
            },
        )
        .unwrap();
        assert_eq!(again.value.to_bits(), more.value.to_bits());
    }
}
