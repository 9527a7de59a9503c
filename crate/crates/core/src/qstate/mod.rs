//! Density matrices and the state-level quantities built on them.

mod eigen;
mod generators;

use std::fmt;

pub use eigen::{hermitian_eigensystem, symmetric_eigensystem, EigenSystem, HERMITIAN_INPUT_TOL};
pub use generators::{
    ghz_state, product_state, quantum_classical_state, random_local_with_rng, random_mixed,
    random_mixed_with_rng, random_pure, random_pure_with_rng, random_qc_state, random_separable,
    random_unitary, random_unitary_with_rng, separable_mixture, SeparableComponent,
};

use crate::error::{Error, Result};
use crate::linalg::{hermiticity_deviation, trace, trace_product, CMatrix, CVector, C64, ZERO};

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue accepted as non-negative.
pub const PSD_TOL: f64 = 1e-10;
/// Purity tolerance for operations restricted to pure states.
pub const PURITY_TOL: f64 = 1e-8;

/// Which factor of a bipartite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    First,
    Second,
}

/// Measured deviations of a matrix from the density-matrix axioms.
#[derive(Debug, Clone, PartialEq)]
pub struct StateDiagnostics {
    pub order: usize,
    pub dims_product: usize,
    pub hermiticity: f64,
    pub trace_deviation: f64,
    pub min_eigenvalue: f64,
}

impl StateDiagnostics {
    /// Human-readable list of the violated invariants.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.order != self.dims_product {
            out.push(format!(
                "matrix order {} does not equal product of dims {}",
                self.order, self.dims_product
            ));
        }
        if self.hermiticity > HERMITIAN_TOL {
            out.push(format!("hermiticity deviation {:.3e}", self.hermiticity));
        }
        if self.trace_deviation > TRACE_TOL {
            out.push(format!("trace deviation {:.3e}", self.trace_deviation));
        }
        if self.min_eigenvalue < -PSD_TOL {
            out.push(format!("negative eigenvalue {:.3e}", self.min_eigenvalue));
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }
}

impl fmt::Display for StateDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.violations().join("; "))
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix on a product of
/// subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates `matrix` against the density-matrix invariants.
    pub fn new(dims: Vec<usize>, matrix: CMatrix) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidDimension(format!(
                "bad subsystem dims {dims:?}"
            )));
        }
        let diag = diagnose(&dims, &matrix);
        if !diag.is_valid() {
            return Err(Error::InvalidState(diag));
        }
        Ok(Self { dims, matrix })
    }

    /// Rank-one state `|ψ⟩⟨ψ|`; `psi` is normalized first.
    pub fn from_pure(dims: Vec<usize>, psi: &CVector) -> Result<Self> {
        let n: usize = dims.iter().product();
        if psi.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "state vector of length {} for dims {dims:?}",
                psi.len()
            )));
        }
        let norm = psi.norm();
        if norm == 0.0 {
            return Err(Error::Precondition("zero state vector".into()));
        }
        let v = psi.unscale(norm);
        Ok(Self::from_parts(dims, &v * v.adjoint()))
    }

    /// `I / n` on the given subsystems.
    pub fn maximally_mixed(dims: Vec<usize>) -> Self {
        let n: usize = dims.iter().product();
        Self::from_parts(dims, CMatrix::identity(n, n) / C64::new(n as f64, 0.0))
    }

    /// For matrices that are states by construction.
    pub(crate) fn from_parts(dims: Vec<usize>, matrix: CMatrix) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), matrix.nrows());
        Self { dims, matrix }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Matrix order.
    pub fn order(&self) -> usize {
        self.matrix.nrows()
    }

    /// `(d1, d2)` for a bipartite state.
    pub fn bipartite_dims(&self) -> Result<(usize, usize)> {
        match self.dims.as_slice() {
            &[d1, d2] => Ok((d1, d2)),
            other => Err(Error::InvalidDimension(format!(
                "expected a bipartite state, got dims {other:?}"
            ))),
        }
    }

    pub fn diagnostics(&self) -> StateDiagnostics {
        diagnose(&self.dims, &self.matrix)
    }
}

/// Measures the density-matrix invariants of `matrix` without failing.
pub fn diagnose(dims: &[usize], matrix: &CMatrix) -> StateDiagnostics {
    let order = matrix.nrows();
    let dims_product = dims.iter().product();
    let square = matrix.nrows() == matrix.ncols() && order > 0;
    let hermiticity = if square {
        hermiticity_deviation(matrix)
    } else {
        f64::INFINITY
    };
    let trace_deviation = if square {
        (trace(matrix) - C64::new(1.0, 0.0)).norm()
    } else {
        f64::INFINITY
    };
    let min_eigenvalue = if square && hermiticity <= HERMITIAN_TOL {
        let sym = (matrix + matrix.adjoint()) * C64::new(0.5, 0.0);
        hermitian_eigensystem(&sym)
            .map(|e| *e.values.last().expect("non-empty"))
            .unwrap_or(f64::NEG_INFINITY)
    } else {
        f64::NAN
    };
    StateDiagnostics {
        order,
        dims_product,
        hermiticity,
        trace_deviation,
        min_eigenvalue,
    }
}

/// Reduced state on `keep` of a bipartite state.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> Result<DensityMatrix> {
    let (d1, d2) = rho.bipartite_dims()?;
    let m = rho.matrix();
    let out = match keep {
        Subsystem::First => CMatrix::from_fn(d1, d1, |a, b| {
            (0..d2).map(|j| m[(a * d2 + j, b * d2 + j)]).sum()
        }),
        Subsystem::Second => CMatrix::from_fn(d2, d2, |i, j| {
            (0..d1).map(|a| m[(a * d2 + i, a * d2 + j)]).sum()
        }),
    };
    let dim = if keep == Subsystem::First { d1 } else { d2 };
    Ok(DensityMatrix::from_parts(vec![dim], out))
}

/// Partial transpose over the second subsystem.
pub fn partial_transpose(rho: &DensityMatrix) -> Result<CMatrix> {
    let (d1, d2) = rho.bipartite_dims()?;
    let m = rho.matrix();
    Ok(CMatrix::from_fn(d1 * d2, d1 * d2, |r, c| {
        let (a, i) = (r / d2, r % d2);
        let (b, j) = (c / d2, c % d2);
        m[(a * d2 + j, b * d2 + i)]
    }))
}

/// `tr[ρ²]`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    trace_product(rho.matrix(), rho.matrix()).re
}

/// Squared Hilbert–Schmidt distance `tr[(A - B)²]`.
pub fn hs_distance_sq(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dims() != b.dims() {
        return Err(Error::ShapeMismatch(format!(
            "dims {:?} vs {:?}",
            a.dims(),
            b.dims()
        )));
    }
    Ok(hs_distance_sq_raw(a.matrix(), b.matrix()))
}

/// `tr[(A - B)²]` for Hermitian `A`, `B` of equal order.
pub fn hs_distance_sq_raw(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm_sqr()).sum()
}

/// Sum of `|λ|` over the negative eigenvalues of the partial transpose.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    let pt = partial_transpose(rho)?;
    let eig = hermitian_eigensystem(&pt)?;
    Ok(eig.values.iter().filter(|&&v| v < 0.0).map(|v| -v).sum())
}

/// Concurrence of a pure bipartite state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Concurrence {
    /// `√(2(1 - tr[ρ_j²]))`.
    pub value: f64,
    /// Rescaled so a maximally entangled state gives 1.
    pub normalized: f64,
}

/// Concurrence from the reduced-state purity; fails on mixed input.
pub fn concurrence_pure(psi: &DensityMatrix) -> Result<Concurrence> {
    let (d1, d2) = psi.bipartite_dims()?;
    let p = purity(psi);
    if (p - 1.0).abs() > PURITY_TOL {
        return Err(Error::Precondition(format!(
            "concurrence formula needs a pure state, purity is {p}"
        )));
    }
    let reduced = purity(&partial_trace(psi, Subsystem::First)?);
    let value = (2.0 * (1.0 - reduced)).max(0.0).sqrt();
    let dk = d1.min(d2) as f64;
    let normalized = value / (2.0 * (dk - 1.0) / dk).sqrt();
    Ok(Concurrence { value, normalized })
}

/// Blocks `A_k = (I ⊗ ⟨k|) ρ (I ⊗ |k⟩)` for each column `|k⟩` of `basis`.
pub(crate) fn conditional_blocks(
    m: &CMatrix,
    d1: usize,
    d2: usize,
    basis: &CMatrix,
) -> Vec<CMatrix> {
    (0..basis.ncols())
        .map(|k| {
            let v = basis.column(k);
            CMatrix::from_fn(d1, d1, |a, b| {
                let mut acc = ZERO;
                for i in 0..d2 {
                    let vi = v[i].conj();
                    if vi == ZERO {
                        continue;
                    }
                    let row = a * d2 + i;
                    let mut inner = ZERO;
                    for j in 0..d2 {
                        inner += m[(row, b * d2 + j)] * v[j];
                    }
                    acc += vi * inner;
                }
                acc
            })
        })
        .collect()
}

/// `Σ_k A_k ⊗ |k⟩⟨k|` from blocks and basis columns.
pub(crate) fn assemble_classical(blocks: &[CMatrix], basis: &CMatrix) -> CMatrix {
    let d1 = blocks[0].nrows();
    let d2 = basis.nrows();
    let mut out = CMatrix::zeros(d1 * d2, d1 * d2);
    for (k, block) in blocks.iter().enumerate() {
        let v = basis.column(k);
        let proj = v * v.adjoint();
        out += block.kronecker(&proj);
    }
    out
}

/// Frobenius distance between `m` and its dephasing in `basis` on the
/// second factor; zero iff `m` has quantum-classical structure in that basis.
pub fn qc_structure_deviation(m: &CMatrix, d1: usize, d2: usize, basis: &CMatrix) -> f64 {
    let blocks = conditional_blocks(m, d1, d2, basis);
    (m - assemble_classical(&blocks, basis)).norm()
}

/// Swaps the two factors, `ρ_{AB} → ρ_{BA}`.
pub fn swap_subsystems(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let (d1, d2) = rho.bipartite_dims()?;
    let m = rho.matrix();
    let out = CMatrix::from_fn(d1 * d2, d1 * d2, |r, c| {
        let (i, a) = (r / d1, r % d1);
        let (j, b) = (c / d1, c % d1);
        m[(a * d2 + i, b * d2 + j)]
    });
    Ok(DensityMatrix::from_parts(vec![d2, d1], out))
}
