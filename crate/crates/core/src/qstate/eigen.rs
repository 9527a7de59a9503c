use nalgebra::{ComplexField, DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::linalg::{hermiticity_deviation, symmetry_deviation, CMatrix, RMatrix, C64};

/// Inputs further than this from Hermitian are rejected.
pub const HERMITIAN_INPUT_TOL: f64 = 1e-10;

/// Eigenvalues sorted descending with eigenvectors as matching columns.
///
/// Inside a degenerate block the eigenvectors are whatever the solver
/// returns; consumers should only rely on spectral projectors or sums.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem<T: nalgebra::Scalar> {
    pub values: Vec<f64>,
    pub vectors: DMatrix<T>,
}

impl<T> EigenSystem<T>
where
    T: ComplexField<RealField = f64>,
{
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `Σ_n λ_n |e_n⟩⟨e_n|`.
    pub fn reconstruct(&self) -> DMatrix<T> {
        let n = self.vectors.nrows();
        let mut out = DMatrix::<T>::zeros(n, n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let v = self.vectors.column(k);
            out += &v * v.adjoint() * T::from_real(lambda);
        }
        out
    }

    /// Sum of the `k` largest eigenvalues.
    pub fn top_sum(&self, k: usize) -> f64 {
        self.values.iter().take(k).sum()
    }
}

/// Eigensystem of a complex Hermitian matrix.
pub fn hermitian_eigensystem(h: &CMatrix) -> Result<EigenSystem<C64>> {
    check_square(h.nrows(), h.ncols())?;
    let dev = hermiticity_deviation(h);
    if dev > HERMITIAN_INPUT_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let sym = (h + h.adjoint()) * C64::new(0.5, 0.0);
    Ok(sorted(SymmetricEigen::new(sym)))
}

/// Eigensystem of a real symmetric matrix.
pub fn symmetric_eigensystem(s: &RMatrix) -> Result<EigenSystem<f64>> {
    check_square(s.nrows(), s.ncols())?;
    let dev = symmetry_deviation(s);
    if dev > HERMITIAN_INPUT_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let sym = (s + s.transpose()) * 0.5;
    Ok(sorted(SymmetricEigen::new(sym)))
}

fn check_square(r: usize, c: usize) -> Result<()> {
    if r != c || r == 0 {
        return Err(Error::ShapeMismatch(format!(
            "eigensystem needs a non-empty square matrix, got {r}x{c}"
        )));
    }
    Ok(())
}

fn sorted<T>(eig: SymmetricEigen<T, nalgebra::Dyn>) -> EigenSystem<T>
where
    T: ComplexField<RealField = f64>,
{
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .total_cmp(&eig.eigenvalues[a])
            .then(a.cmp(&b))
    });
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::<T>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = eig.eigenvectors.column(src).clone_owned();
        fix_phase(&mut col);
        vectors.set_column(dst, &col);
    }
    EigenSystem { values, vectors }
}

/// Rotates the phase so the first dominant component is real and positive.
fn fix_phase<T>(v: &mut nalgebra::DVector<T>)
where
    T: ComplexField<RealField = f64>,
{
    let max = v.iter().fold(0.0f64, |m, z| m.max(z.clone().modulus()));
    if max == 0.0 {
        return;
    }
    if let Some(pivot) = v
        .iter()
        .find(|z| (*z).clone().modulus() >= max * (1.0 - 1e-9))
        .cloned()
    {
        let phase = pivot.clone().signum().conjugate();
        v.iter_mut().for_each(|z| *z = z.clone() * phase.clone());
    }
}
