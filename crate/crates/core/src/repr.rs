//! Generalized Pauli representation `(r1, r2, T)` of bipartite states.
//!
//! ```text
//! ρ = I⊗I/(d1 d2) + √((d1-1)/(2d1)) (r1·Υ)⊗I/d2 + √((d2-1)/(2d2)) I/d1⊗(r2·Υ)
//!     + ¼ Σ_ij T_ij Υ_i⊗Υ_j
//! ```

use crate::basis::{gell_mann_basis, OperatorBasis};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, RMatrix, RVector, C64};
use crate::qstate::{
    hermitian_eigensystem, partial_trace, symmetric_eigensystem, DensityMatrix, Subsystem, PSD_TOL,
};

/// Slack allowed on the `‖r‖ ≤ 1` and purity inequalities.
pub const NORM_TOL: f64 = 1e-10;
pub const PURITY_IDENTITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct BlochRepr {
    pub d1: usize,
    pub d2: usize,
    /// Bloch vector of the first reduced state, length `d1² - 1`.
    pub r1: RVector,
    /// Bloch vector of the second reduced state, length `d2² - 1`.
    pub r2: RVector,
    /// Correlation matrix, `(d1² - 1) × (d2² - 1)`.
    pub t: RMatrix,
}

fn bloch_scale(d: usize) -> f64 {
    (d as f64 / (2.0 * (d as f64 - 1.0))).sqrt()
}

/// Bloch vector `r_j = √(d/(2(d-1))) tr[ρ Υ_j]` of a single-system state.
pub fn bloch_vector(rho: &DensityMatrix, basis: &OperatorBasis) -> Result<RVector> {
    if rho.dims().len() != 1 || rho.order() != basis.dim() {
        return Err(Error::ShapeMismatch(format!(
            "state dims {:?} vs basis dimension {}",
            rho.dims(),
            basis.dim()
        )));
    }
    let scale = bloch_scale(basis.dim());
    Ok(RVector::from_iterator(
        basis.len(),
        basis
            .expectations(rho.matrix())
            .into_iter()
            .map(|x| x * scale),
    ))
}

/// `(r1, r2, T)` of a bipartite state.
pub fn extract(
    rho: &DensityMatrix,
    basis_a: &OperatorBasis,
    basis_b: &OperatorBasis,
) -> Result<BlochRepr> {
    let (d1, d2) = rho.bipartite_dims()?;
    if basis_a.dim() != d1 || basis_b.dim() != d2 {
        return Err(Error::ShapeMismatch(format!(
            "state is {d1}x{d2}, bases are {}x{}",
            basis_a.dim(),
            basis_b.dim()
        )));
    }
    let r1 = bloch_vector(&partial_trace(rho, Subsystem::First)?, basis_a)?;
    let r2 = bloch_vector(&partial_trace(rho, Subsystem::Second)?, basis_b)?;
    let m = rho.matrix();
    // tr[ρ (A⊗B)] = Σ A[p,q] B[s,t] ρ[(q,t),(p,s)]
    let t = RMatrix::from_fn(basis_a.len(), basis_b.len(), |i, j| {
        let mut acc = C64::new(0.0, 0.0);
        for &(p, q, a) in basis_a.entries(i) {
            for &(s, tt, b) in basis_b.entries(j) {
                acc += a * b * m[(q * d2 + tt, p * d2 + s)];
            }
        }
        acc.re
    });
    Ok(BlochRepr { d1, d2, r1, r2, t })
}

/// Result of assembling an operator from `(r1, r2, T)`.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub dims: [usize; 2],
    pub matrix: CMatrix,
    pub min_eigenvalue: f64,
    /// False when the assembled operator has an eigenvalue below `-PSD_TOL`.
    pub is_state: bool,
}

impl Reconstruction {
    pub fn into_state(self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.dims.to_vec(), self.matrix)
    }
}

/// Assembles the operator from its representation. Arbitrary `(r1, r2, T)`
/// need not give a positive operator; that case is flagged, not rejected.
pub fn reconstruct(
    repr: &BlochRepr,
    basis_a: &OperatorBasis,
    basis_b: &OperatorBasis,
) -> Result<Reconstruction> {
    let (d1, d2) = (repr.d1, repr.d2);
    if basis_a.dim() != d1
        || basis_b.dim() != d2
        || repr.r1.len() != basis_a.len()
        || repr.r2.len() != basis_b.len()
        || repr.t.shape() != (basis_a.len(), basis_b.len())
    {
        return Err(Error::ShapeMismatch(format!(
            "representation shapes r1={}, r2={}, T={:?} do not fit bases {}x{}",
            repr.r1.len(),
            repr.r2.len(),
            repr.t.shape(),
            basis_a.dim(),
            basis_b.dim()
        )));
    }
    let n = d1 * d2;
    let c = |x: f64| C64::new(x, 0.0);
    let id1 = CMatrix::identity(d1, d1);
    let id2 = CMatrix::identity(d2, d2);
    let mut out = CMatrix::identity(n, n) * c(1.0 / n as f64);
    let ra = basis_a.combine(repr.r1.as_slice())?;
    out += ra.kronecker(&id2) * c(((d1 as f64 - 1.0) / (2.0 * d1 as f64)).sqrt() / d2 as f64);
    let rb = basis_b.combine(repr.r2.as_slice())?;
    out += id1.kronecker(&rb) * c(((d2 as f64 - 1.0) / (2.0 * d2 as f64)).sqrt() / d1 as f64);
    for i in 0..basis_a.len() {
        let row: Vec<f64> = repr.t.row(i).iter().map(|x| x * 0.25).collect();
        if row.iter().all(|x| *x == 0.0) {
            continue;
        }
        let right = basis_b.combine(&row)?;
        out += basis_a.generator(i).kronecker(&right);
    }
    let min_eigenvalue = *hermitian_eigensystem(&out)?
        .values
        .last()
        .expect("non-empty");
    Ok(Reconstruction {
        dims: [d1, d2],
        matrix: out,
        min_eigenvalue,
        is_state: min_eigenvalue >= -PSD_TOL,
    })
}

impl BlochRepr {
    /// Representation in the canonical Gell-Mann bases.
    pub fn of(rho: &DensityMatrix) -> Result<Self> {
        let (d1, d2) = rho.bipartite_dims()?;
        extract(rho, &gell_mann_basis(d1)?, &gell_mann_basis(d2)?)
    }

    /// `TᵀT`, order `d2² - 1`.
    pub fn ttt(&self) -> RMatrix {
        self.t.transpose() * &self.t
    }

    /// `tr[TᵀT] = Σ_ij T_ij²`.
    pub fn trace_ttt(&self) -> f64 {
        self.t.iter().map(|x| x * x).sum()
    }

    /// Singular values of `T` (square roots of the eigenvalues of `TᵀT`),
    /// descending.
    pub fn singular_values(&self) -> Result<Vec<f64>> {
        Ok(symmetric_eigensystem(&self.ttt())?
            .values
            .into_iter()
            .map(|v| v.max(0.0).sqrt())
            .collect())
    }

    /// `((d1-1)/(d1d2))‖r1‖² + ((d2-1)/(d1d2))‖r2‖² + ¼ tr[TᵀT]`, which is
    /// `tr[ρ²] - 1/(d1 d2)`.
    pub fn purity_combination(&self) -> f64 {
        let (d1, d2) = (self.d1 as f64, self.d2 as f64);
        (d1 - 1.0) / (d1 * d2) * self.r1.norm_squared()
            + (d2 - 1.0) / (d1 * d2) * self.r2.norm_squared()
            + 0.25 * self.trace_ttt()
    }

    /// Upper limit `(d1d2 - 1)/(d1d2)` of [`Self::purity_combination`],
    /// reached by pure states.
    pub fn purity_limit(&self) -> f64 {
        let n = (self.d1 * self.d2) as f64;
        (n - 1.0) / n
    }

    /// Checks the norm and purity inequalities of a representation.
    pub fn within_bloch_limits(&self) -> bool {
        self.r1.norm() <= 1.0 + NORM_TOL
            && self.r2.norm() <= 1.0 + NORM_TOL
            && self.purity_combination() <= self.purity_limit() + PURITY_IDENTITY_TOL
    }
}

/// Checks that only apply when both subsystems have the same dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct EqualDimChecks {
    /// `2(d-1)/d`.
    pub operator_norm_bound: f64,
    pub operator_norm_ok: bool,
    /// `‖r1‖² + ‖r2‖² + d²/(4(d-1)) tr[TᵀT]`; at most `d + 1`, equal for pure states.
    pub combination: f64,
    pub combination_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationNormReport {
    /// Largest singular value `‖T‖₀`.
    pub operator_norm: f64,
    pub trace_ttt: f64,
    /// `None` when `d1 ≠ d2` (not applicable).
    pub equal_dims: Option<EqualDimChecks>,
}

pub fn correlation_norm_checks(repr: &BlochRepr) -> Result<CorrelationNormReport> {
    let operator_norm = repr.singular_values()?[0];
    let trace_ttt = repr.trace_ttt();
    let equal_dims = (repr.d1 == repr.d2).then(|| {
        let d = repr.d1 as f64;
        let bound = 2.0 * (d - 1.0) / d;
        EqualDimChecks {
            operator_norm_bound: bound,
            operator_norm_ok: operator_norm <= bound + PURITY_IDENTITY_TOL,
            combination: repr.r1.norm_squared()
                + repr.r2.norm_squared()
                + d * d / (4.0 * (d - 1.0)) * trace_ttt,
            combination_bound: d + 1.0,
        }
    });
    Ok(CorrelationNormReport {
        operator_norm,
        trace_ttt,
        equal_dims,
    })
}
