//! Matrix aliases and the small dense helpers shared across modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;
pub type RMatrix = DMatrix<f64>;
pub type RVector = DVector<f64>;

pub(crate) const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub(crate) const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Largest `|H_ij - conj(H_ji)|`.
pub fn hermiticity_deviation(h: &CMatrix) -> f64 {
    let n = h.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((h[(i, j)] - h[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Largest `|S_ij - S_ji|`.
pub fn symmetry_deviation(s: &RMatrix) -> f64 {
    let n = s.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.max((s[(i, j)] - s[(j, i)]).abs());
        }
    }
    worst
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().iter().sum()
}

/// `tr[A B]` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
    let n = a.nrows();
    let mut acc = ZERO;
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Frobenius norm of `a - b`.
pub fn frobenius_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).norm()
}

/// Maximum deviation of the columns of `v` from an orthonormal set.
pub fn orthonormality_deviation(v: &CMatrix) -> f64 {
    let gram = v.adjoint() * v;
    let n = gram.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((gram[(i, j)] - target).norm());
        }
    }
    worst
}

/// Maximum deviation of a list of real vectors from an orthonormal set.
pub fn real_orthonormality_deviation(vectors: &[RVector]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate().skip(i) {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((a.dot(b) - target).abs());
        }
    }
    worst
}

/// Checks that the columns of `basis` form an orthonormal basis of `C^d`.
pub fn ensure_orthonormal_basis(basis: &CMatrix, d: usize, tol: f64) -> Result<()> {
    if basis.nrows() != d || basis.ncols() != d {
        return Err(Error::ShapeMismatch(format!(
            "basis must be {d}x{d}, got {}x{}",
            basis.nrows(),
            basis.ncols()
        )));
    }
    let dev = orthonormality_deviation(basis);
    if dev > tol {
        return Err(Error::NotOrthonormal(dev));
    }
    Ok(())
}

/// Modified Gram–Schmidt on the columns of a square complex matrix.
pub fn reorthonormalize(u: &CMatrix) -> CMatrix {
    let mut q = u.clone();
    for j in 0..q.ncols() {
        for i in 0..j {
            let proj = q.column(i).dotc(&q.column(j));
            let qi = q.column(i).clone_owned();
            q.column_mut(j).axpy(-proj, &qi, ONE);
        }
        let norm = q.column(j).norm();
        q.column_mut(j).unscale_mut(norm);
    }
    q
}

/// Outer product `|v⟩⟨v|` of a real vector.
pub fn real_outer(v: &RVector) -> RMatrix {
    v * v.transpose()
}
