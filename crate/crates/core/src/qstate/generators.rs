//! Seeded test-state families.
//!
//! Every generator seeds its own `ChaCha8Rng`; the `_with_rng` variants let
//! callers thread one stream through several draws.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{DensityMatrix, PSD_TOL};
use crate::error::{Error, Result};
use crate::linalg::{ensure_orthonormal_basis, trace, CMatrix, CVector, C64};

const WEIGHT_TOL: f64 = 1e-12;
const ORTHONORMAL_TOL: f64 = 1e-10;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn check_dims(d1: usize, d2: usize) -> Result<()> {
    if d1 < 2 || d2 < 2 {
        return Err(Error::InvalidDimension(format!(
            "subsystem dimensions must be at least 2, got {d1}x{d2}"
        )));
    }
    Ok(())
}

/// `(1/√d) Σ_k |k⟩ ⊗ |k⟩` on `d ⊗ d`.
pub fn ghz_state(d: usize) -> Result<DensityMatrix> {
    check_dims(d, d)?;
    let mut psi = CVector::zeros(d * d);
    for k in 0..d {
        psi[k * d + k] = C64::new(1.0, 0.0);
    }
    DensityMatrix::from_pure(vec![d, d], &psi)
}

/// Normalized complex Gaussian vector on `d1 · d2`.
pub fn random_pure(d1: usize, d2: usize, seed: u64) -> Result<DensityMatrix> {
    random_pure_with_rng(d1, d2, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_pure_with_rng<R: Rng + ?Sized>(
    d1: usize,
    d2: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    check_dims(d1, d2)?;
    let psi = CVector::from_fn(d1 * d2, |_, _| gaussian(rng));
    DensityMatrix::from_pure(vec![d1, d2], &psi)
}

/// Ginibre state `G G† / tr[G G†]` with `G` a complex Gaussian
/// `d1 d2 × rank` matrix.
pub fn random_mixed(d1: usize, d2: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    random_mixed_with_rng(d1, d2, rank, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_mixed_with_rng<R: Rng + ?Sized>(
    d1: usize,
    d2: usize,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::InvalidDimension(format!("dims {d1}x{d2}")));
    }
    let n = d1 * d2;
    if rank == 0 || rank > n {
        return Err(Error::Precondition(format!(
            "rank must lie in 1..={n}, got {rank}"
        )));
    }
    let g = CMatrix::from_fn(n, rank, |_, _| gaussian(rng));
    let m = &g * g.adjoint();
    let m = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    let tr = trace(&m).re;
    Ok(DensityMatrix::from_parts(
        vec![d1, d2],
        m / C64::new(tr, 0.0),
    ))
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix with
/// the phases of `R`'s diagonal absorbed.
pub fn random_unitary(d: usize, seed: u64) -> Result<CMatrix> {
    random_unitary_with_rng(d, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_unitary_with_rng<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<CMatrix> {
    if d == 0 {
        return Err(Error::InvalidDimension("unitary of order 0".into()));
    }
    let g = CMatrix::from_fn(d, d, |_, _| gaussian(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    Ok(q)
}

/// `ρ_A ⊗ ρ_B`.
pub fn product_state(a: &DensityMatrix, b: &DensityMatrix) -> Result<DensityMatrix> {
    if a.dims().len() != 1 || b.dims().len() != 1 {
        return Err(Error::InvalidDimension(
            "product_state takes single-system factors".into(),
        ));
    }
    Ok(DensityMatrix::from_parts(
        vec![a.order(), b.order()],
        a.matrix().kronecker(b.matrix()),
    ))
}

/// One term `β ρ_A ⊗ ρ_B` of a separable decomposition.
#[derive(Debug, Clone)]
pub struct SeparableComponent {
    pub weight: f64,
    pub a: DensityMatrix,
    pub b: DensityMatrix,
}

/// `Σ_k β_k ρ_A^(k) ⊗ ρ_B^(k)` with positive weights summing to one.
pub fn separable_mixture(
    components: &[SeparableComponent],
    dims: (usize, usize),
) -> Result<DensityMatrix> {
    if components.is_empty() {
        return Err(Error::Precondition("empty separable decomposition".into()));
    }
    let sum: f64 = components.iter().map(|c| c.weight).sum();
    let min = components
        .iter()
        .map(|c| c.weight)
        .fold(f64::INFINITY, f64::min);
    if (sum - 1.0).abs() > WEIGHT_TOL || min <= 0.0 {
        return Err(Error::InvalidWeights { sum, min });
    }
    let (d1, d2) = dims;
    let mut out = CMatrix::zeros(d1 * d2, d1 * d2);
    for c in components {
        if c.a.dims() != [d1] || c.b.dims() != [d2] {
            return Err(Error::ShapeMismatch(format!(
                "component dims {:?}/{:?} for mixture {d1}x{d2}",
                c.a.dims(),
                c.b.dims()
            )));
        }
        out += c.a.matrix().kronecker(c.b.matrix()) * C64::new(c.weight, 0.0);
    }
    Ok(DensityMatrix::from_parts(vec![d1, d2], out))
}

/// `Σ_k α_k σ_k ⊗ |k⟩⟨k|` over the first `sigmas.len()` columns of `basis`.
pub fn quantum_classical_state(
    sigmas: &[DensityMatrix],
    alphas: &[f64],
    basis: &CMatrix,
) -> Result<DensityMatrix> {
    let d2 = basis.nrows();
    ensure_orthonormal_basis(basis, d2, ORTHONORMAL_TOL)?;
    if sigmas.is_empty() || sigmas.len() != alphas.len() || sigmas.len() > d2 {
        return Err(Error::ShapeMismatch(format!(
            "{} sigmas, {} weights for a basis of {d2}",
            sigmas.len(),
            alphas.len()
        )));
    }
    let sum: f64 = alphas.iter().sum();
    let min = alphas.iter().copied().fold(f64::INFINITY, f64::min);
    if (sum - 1.0).abs() > ORTHONORMAL_TOL || min < -PSD_TOL {
        return Err(Error::InvalidWeights { sum, min });
    }
    let d1 = sigmas[0].order();
    if sigmas.iter().any(|s| s.dims() != [d1]) {
        return Err(Error::ShapeMismatch(
            "sigmas must share one dimension".into(),
        ));
    }
    let mut out = CMatrix::zeros(d1 * d2, d1 * d2);
    for (k, (sigma, &alpha)) in sigmas.iter().zip(alphas).enumerate() {
        let v = basis.column(k);
        let proj = v * v.adjoint();
        out += sigma.matrix().kronecker(&proj) * C64::new(alpha, 0.0);
    }
    Ok(DensityMatrix::from_parts(vec![d1, d2], out))
}

/// Ginibre state on a single system of dimension `d`.
pub fn random_local_with_rng<R: Rng + ?Sized>(
    d: usize,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    let m = random_mixed_with_rng(d, 1, rank, rng)?;
    Ok(DensityMatrix::from_parts(vec![d], m.into_matrix()))
}

/// Flat Dirichlet weights: normalized exponential draws.
fn simplex_weights<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..n)
        .map(|_| -(1.0 - rng.random::<f64>()).ln() + f64::MIN_POSITIVE)
        .collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / sum).collect()
}

/// Random separable decomposition with `terms` components. Components are
/// pure when `pure` is set, full-rank Ginibre states otherwise.
pub fn random_separable(
    d1: usize,
    d2: usize,
    terms: usize,
    pure: bool,
    seed: u64,
) -> Result<(Vec<SeparableComponent>, DensityMatrix)> {
    check_dims(d1, d2)?;
    if terms == 0 {
        return Err(Error::Precondition("at least one term required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = simplex_weights(terms, &mut rng);
    let components = weights
        .into_iter()
        .map(|weight| {
            let (ra, rb) = if pure { (1, 1) } else { (d1, d2) };
            Ok(SeparableComponent {
                weight,
                a: random_local_with_rng(d1, ra, &mut rng)?,
                b: random_local_with_rng(d2, rb, &mut rng)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let rho = separable_mixture(&components, (d1, d2))?;
    Ok((components, rho))
}

/// Random quantum-classical state: Ginibre `σ_k`, flat weights, Haar basis.
pub fn random_qc_state(d1: usize, d2: usize, seed: u64) -> Result<(DensityMatrix, CMatrix)> {
    check_dims(d1, d2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = random_unitary_with_rng(d2, &mut rng)?;
    let alphas = simplex_weights(d2, &mut rng);
    let sigmas = (0..d2)
        .map(|_| random_local_with_rng(d1, d1, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    Ok((quantum_classical_state(&sigmas, &alphas, &basis)?, basis))
}
