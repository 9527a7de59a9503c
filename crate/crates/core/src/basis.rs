//! Generalized Gell-Mann operator basis.
//!
//! Generators are ordered symmetric off-diagonal (pairs `j < k`,
//! lexicographic), then antisymmetric off-diagonal (same order), then the
//! `d - 1` diagonal generators. For `d = 2` this is `(σx, σy, σz)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{hermiticity_deviation, trace, trace_product, CMatrix, C64};

/// Tolerance for the orthonormality axioms of a basis.
pub const BASIS_TOL: f64 = 1e-12;

/// Non-zero entry of a generator, `(row, col, value)`.
pub type Entry = (usize, usize, C64);

/// The tuple of `d² - 1` traceless Hermitian generators with
/// `tr[Υ_i Υ_j] = 2 δ_ij`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorBasis {
    dim: usize,
    generators: Vec<CMatrix>,
    entries: Vec<Vec<Entry>>,
}

impl OperatorBasis {
    /// Wraps arbitrary generators without checking the axioms; use
    /// [`validate_basis`] to inspect them.
    pub fn from_generators(dim: usize, generators: Vec<CMatrix>) -> Result<Self> {
        if let Some(bad) = generators
            .iter()
            .find(|g| g.nrows() != dim || g.ncols() != dim)
        {
            return Err(Error::ShapeMismatch(format!(
                "generator is {}x{}, expected {dim}x{dim}",
                bad.nrows(),
                bad.ncols()
            )));
        }
        let entries = generators.iter().map(sparse_entries).collect();
        Ok(Self {
            dim,
            generators,
            entries,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators (`d² - 1` for a valid basis).
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &CMatrix {
        &self.generators[i]
    }

    /// Non-zero entries of generator `i`.
    pub fn entries(&self, i: usize) -> &[Entry] {
        &self.entries[i]
    }

    /// `Σ_i c_i Υ_i` for real coefficients.
    pub fn combine(&self, coeffs: &[f64]) -> Result<CMatrix> {
        if coeffs.len() != self.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for {} generators",
                coeffs.len(),
                self.len()
            )));
        }
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (c, entries) in coeffs.iter().zip(&self.entries) {
            for &(r, k, v) in entries {
                out[(r, k)] += v * *c;
            }
        }
        Ok(out)
    }

    /// `tr[M Υ_i]` for every generator, real part only (exact for Hermitian `M`).
    pub fn expectations(&self, m: &CMatrix) -> Vec<f64> {
        self.entries
            .iter()
            .map(|entries| entries.iter().map(|&(r, k, v)| (v * m[(k, r)]).re).sum())
            .collect()
    }
}

fn sparse_entries(m: &CMatrix) -> Vec<Entry> {
    let mut out = Vec::new();
    for r in 0..m.nrows() {
        for k in 0..m.ncols() {
            let v = m[(r, k)];
            if v.norm() > 0.0 {
                out.push((r, k, v));
            }
        }
    }
    out
}

/// The canonical generalized Gell-Mann basis for dimension `d ≥ 2`.
pub fn gell_mann_basis(d: usize) -> Result<OperatorBasis> {
    if d < 2 {
        return Err(Error::InvalidDimension(format!(
            "basis dimension must be at least 2, got {d}"
        )));
    }
    let mut generators = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in j + 1..d {
            let mut m = CMatrix::zeros(d, d);
            m[(j, k)] = C64::new(1.0, 0.0);
            m[(k, j)] = C64::new(1.0, 0.0);
            generators.push(m);
        }
    }
    for j in 0..d {
        for k in j + 1..d {
            let mut m = CMatrix::zeros(d, d);
            m[(j, k)] = C64::new(0.0, -1.0);
            m[(k, j)] = C64::new(0.0, 1.0);
            generators.push(m);
        }
    }
    for l in 1..d {
        let scale = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut m = CMatrix::zeros(d, d);
        for i in 0..l {
            m[(i, i)] = C64::new(scale, 0.0);
        }
        m[(l, l)] = C64::new(-(l as f64) * scale, 0.0);
        generators.push(m);
    }
    OperatorBasis::from_generators(d, generators)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisViolationKind {
    Count,
    NotHermitian,
    NotTraceless,
    Zero,
    Normalization,
    Orthogonality,
}

impl fmt::Display for BasisViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Count => "generator count",
            Self::NotHermitian => "hermitian",
            Self::NotTraceless => "traceless",
            Self::Zero => "nonzero",
            Self::Normalization => "normalization",
            Self::Orthogonality => "orthogonality",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasisViolation {
    pub kind: BasisViolationKind,
    /// Generator indices involved (one for per-generator checks, two for
    /// orthogonality, none for the count check).
    pub indices: Vec<usize>,
    pub magnitude: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BasisReport {
    pub violations: Vec<BasisViolation>,
}

impl BasisReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: BasisViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

/// Lists every violated basis axiom with the size of the violation.
pub fn validate_basis(b: &OperatorBasis) -> BasisReport {
    let d = b.dim();
    let mut violations = Vec::new();
    let expected = d * d - 1;
    if b.len() != expected {
        violations.push(BasisViolation {
            kind: BasisViolationKind::Count,
            indices: vec![],
            magnitude: (b.len() as f64 - expected as f64).abs(),
        });
    }
    for (i, g) in b.generators().iter().enumerate() {
        let herm = hermiticity_deviation(g);
        if herm > BASIS_TOL {
            violations.push(BasisViolation {
                kind: BasisViolationKind::NotHermitian,
                indices: vec![i],
                magnitude: herm,
            });
        }
        let tr = trace(g).norm();
        if tr > BASIS_TOL {
            violations.push(BasisViolation {
                kind: BasisViolationKind::NotTraceless,
                indices: vec![i],
                magnitude: tr,
            });
        }
        if g.norm() <= BASIS_TOL {
            violations.push(BasisViolation {
                kind: BasisViolationKind::Zero,
                indices: vec![i],
                magnitude: g.norm(),
            });
        }
        let norm_dev = (trace_product(g, g) - C64::new(2.0, 0.0)).norm();
        if norm_dev > BASIS_TOL {
            violations.push(BasisViolation {
                kind: BasisViolationKind::Normalization,
                indices: vec![i],
                magnitude: norm_dev,
            });
        }
        for (j, h) in b.generators().iter().enumerate().skip(i + 1) {
            let overlap = trace_product(g, h).norm();
            if overlap > BASIS_TOL {
                violations.push(BasisViolation {
                    kind: BasisViolationKind::Orthogonality,
                    indices: vec![i, j],
                    magnitude: overlap,
                });
            }
        }
    }
    BasisReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::hermitian_eigensystem;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn qubit_basis_is_pauli() {
        let b = gell_mann_basis(2).unwrap();
        let sx = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let sy = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
        let sz = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]);
        assert_eq!(b.generators(), &[sx, sy, sz]);
    }

    #[test]
    fn qutrit_diagonal_pair() {
        let b = gell_mann_basis(3).unwrap();
        assert_eq!(b.len(), 8);
        let g6 = b.generator(6);
        let g7 = b.generator(7);
        assert_eq!(g6.diagonal().map(|z| z.re).as_slice(), &[1.0, -1.0, 0.0]);
        let s = 1.0 / 3f64.sqrt();
        for (got, want) in g7.diagonal().iter().zip([s, s, -2.0 * s]) {
            assert!((got.re - want).abs() < 1e-15);
        }
        for i in 0..8 {
            for j in 0..8 {
                let want = if i == j { 2.0 } else { 0.0 };
                let got = trace_product(b.generator(i), b.generator(j));
                assert!((got - c(want, 0.0)).norm() < 1e-12, "pair ({i},{j})");
            }
        }
    }

    #[test]
    fn bases_up_to_eight_validate() {
        for d in 2..=8 {
            let b = gell_mann_basis(d).unwrap();
            assert_eq!(b.len(), d * d - 1);
            let report = validate_basis(&b);
            assert!(report.is_valid(), "d={d}: {:?}", report.violations);
        }
    }

    #[test]
    fn rejects_dimension_below_two() {
        assert!(matches!(
            gell_mann_basis(1),
            Err(Error::InvalidDimension(_))
        ));
        assert!(matches!(
            gell_mann_basis(0),
            Err(Error::InvalidDimension(_))
        ));
    }

    #[test]
    fn zeroed_generator_is_reported() {
        let mut gens = gell_mann_basis(3).unwrap().generators().to_vec();
        gens[2] = CMatrix::zeros(3, 3);
        let report = validate_basis(&OperatorBasis::from_generators(3, gens).unwrap());
        assert!(report.has(BasisViolationKind::Zero));
        assert_eq!(BasisViolationKind::Zero.to_string(), "nonzero");
    }

    #[test]
    fn doubled_generator_reports_normalization_six() {
        let mut gens = gell_mann_basis(3).unwrap().generators().to_vec();
        gens[4] *= c(2.0, 0.0);
        let report = validate_basis(&OperatorBasis::from_generators(3, gens).unwrap());
        let v: Vec<_> = report
            .violations
            .iter()
            .filter(|v| v.kind == BasisViolationKind::Normalization)
            .collect();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].indices, vec![4]);
        assert!((v[0].magnitude - 6.0).abs() < 1e-12);
        assert!(!report.has(BasisViolationKind::Orthogonality));
    }

    #[test]
    fn casimir_sum_is_scalar() {
        for d in 2..=8 {
            let b = gell_mann_basis(d).unwrap();
            let sum = b
                .generators()
                .iter()
                .fold(CMatrix::zeros(d, d), |acc, g| acc + g * g);
            let coeff = 2.0 * (d * d - 1) as f64 / d as f64;
            let target = CMatrix::identity(d, d) * c(coeff, 0.0);
            assert!((sum - target).norm() < 1e-10, "d={d}");
        }
    }

    #[test]
    fn operator_norm_of_unit_combination_is_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 2..=6 {
            let b = gell_mann_basis(d).unwrap();
            let lo = (2.0 / d as f64).sqrt();
            let hi = (2.0 * (d - 1) as f64 / d as f64).sqrt();
            for _ in 0..100 {
                let mut r: Vec<f64> = (0..b.len()).map(|_| rng.sample(StandardNormal)).collect();
                let n = r.iter().map(|x| x * x).sum::<f64>().sqrt();
                r.iter_mut().for_each(|x| *x /= n);
                let m = b.combine(&r).unwrap();
                let eig = hermitian_eigensystem(&m).unwrap();
                let op = eig.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                assert!(op >= lo - 1e-10 && op <= hi + 1e-10, "d={d} norm={op}");
            }
        }
    }

    #[test]
    fn combine_inverts_expectations() {
        let b = gell_mann_basis(4).unwrap();
        let coeffs: Vec<f64> = (0..b.len()).map(|i| (i as f64 * 0.37).sin()).collect();
        let m = b.combine(&coeffs).unwrap();
        let back: Vec<f64> = b.expectations(&m).iter().map(|x| x / 2.0).collect();
        for (a, z) in coeffs.iter().zip(&back) {
            assert!((a - z).abs() < 1e-14);
        }
    }
}
