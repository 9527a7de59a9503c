//! Geometric discord (classicality on the second subsystem).
//!
//! With `G = ((d2-1)/(d1 d2)) |r2⟩⟨r2| + ¼ TᵀT` and eigenvalues
//! `η_1 ≥ … ≥ η_{d2²-1}`, the discord is `Σ_{n ≥ d2} η_n`, i.e. `tr[G]` minus
//! the `d2 - 1` largest eigenvalues. The maximizing frame is aligned with the
//! leading eigenvectors of `G`; [`closest_qc_state`] turns it into an explicit
//! quantum-classical operator.

use crate::basis::gell_mann_basis;
use crate::error::{Error, Result};
use crate::frames::aligned_frame;
use crate::linalg::{real_outer, CMatrix, RMatrix, RVector, C64};
use crate::qstate::{
    concurrence_pure, hermitian_eigensystem, hs_distance_sq_raw, purity, separable_mixture,
    swap_subsystems, symmetric_eigensystem, DensityMatrix, SeparableComponent, PURITY_TOL,
};
use crate::repr::BlochRepr;

/// Agreement required between the two forms of the discord sum.
pub const FORM_AGREEMENT_TOL: f64 = 1e-12;
/// Gap between `η_{d2-1}` and `η_{d2}` below which the optimum is flagged as
/// degenerate.
pub const DEGENERACY_TOL: f64 = 1e-10;
/// Slack for positivity of the reconstructed closest-state pieces.
pub const FEASIBILITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscordResult {
    pub value: f64,
    /// Spectrum of `G`, descending.
    pub g_eigenvalues: Vec<f64>,
    pub trace_g: f64,
    /// Sum of the `d2 - 1` largest eigenvalues of `G`.
    pub top_sum: f64,
    /// `η_{d2-1}` and `η_{d2}` closer than [`DEGENERACY_TOL`]: the value is
    /// unaffected but the closest state is not unique.
    pub degenerate_boundary: bool,
}

/// `G = ((d2-1)/(d1 d2)) |r2⟩⟨r2| + ¼ TᵀT`.
pub fn g_operator(repr: &BlochRepr) -> Result<RMatrix> {
    let n2 = repr.d2 * repr.d2 - 1;
    if repr.r2.len() != n2 || repr.t.ncols() != n2 || repr.t.nrows() != repr.d1 * repr.d1 - 1 {
        return Err(Error::ShapeMismatch(format!(
            "representation for {}x{} has r2 of length {} and T of shape {:?}",
            repr.d1,
            repr.d2,
            repr.r2.len(),
            repr.t.shape()
        )));
    }
    let (d1, d2) = (repr.d1 as f64, repr.d2 as f64);
    let g = real_outer(&repr.r2) * ((d2 - 1.0) / (d1 * d2)) + repr.ttt() * 0.25;
    Ok((&g + g.transpose()) * 0.5)
}

/// Discord of a state given its representation.
pub fn discord_from_repr(repr: &BlochRepr) -> Result<DiscordResult> {
    let g = g_operator(repr)?;
    let eig = symmetric_eigensystem(&g)?;
    let d2 = repr.d2;
    let trace_g = g.trace();
    let top_sum = eig.top_sum(d2 - 1);
    let tail: f64 = eig.values[d2 - 1..].iter().sum();
    if ((trace_g - top_sum) - tail).abs() > FORM_AGREEMENT_TOL {
        return Err(Error::ContractViolation(format!(
            "discord forms disagree: tr[G] - top = {}, tail = {tail}",
            trace_g - top_sum
        )));
    }
    let degenerate_boundary = (eig.values[d2 - 2] - eig.values[d2 - 1]).abs() < DEGENERACY_TOL;
    Ok(DiscordResult {
        value: tail.max(0.0),
        g_eigenvalues: eig.values,
        trace_g,
        top_sum,
        degenerate_boundary,
    })
}

/// Geometric discord with classicality on the second subsystem.
pub fn geometric_discord(rho: &DensityMatrix) -> Result<DiscordResult> {
    discord_from_repr(&BlochRepr::of(rho)?)
}

/// Discord with classicality on the first subsystem.
pub fn geometric_discord_left(rho: &DensityMatrix) -> Result<DiscordResult> {
    geometric_discord(&swap_subsystems(rho)?)
}

fn ensure_pure(psi: &DensityMatrix) -> Result<()> {
    let p = purity(psi);
    if (p - 1.0).abs() > PURITY_TOL {
        return Err(Error::Precondition(format!(
            "state must be pure, purity is {p}"
        )));
    }
    Ok(())
}

/// `C²/2` for a pure two-qubit state.
pub fn pure_two_qubit_discord(psi: &DensityMatrix) -> Result<f64> {
    if psi.dims() != [2, 2] {
        return Err(Error::Precondition(format!(
            "two-qubit state required, got dims {:?}",
            psi.dims()
        )));
    }
    ensure_pure(psi)?;
    let c = concurrence_pure(psi)?.value;
    Ok(0.5 * c * c)
}

/// `((d-1)/(d(d+1))) (d + C̃²)` for a pure state on `d ⊗ d`, with `C̃` the
/// normalized concurrence.
pub fn pure_state_upper_bound(psi: &DensityMatrix) -> Result<f64> {
    let (d1, d2) = psi.bipartite_dims()?;
    if d1 != d2 {
        return Err(Error::Precondition(format!(
            "equal subsystem dimensions required, got {d1}x{d2}"
        )));
    }
    ensure_pure(psi)?;
    let cn = concurrence_pure(psi)?.normalized;
    let d = d1 as f64;
    Ok((d - 1.0) / (d * (d + 1.0)) * (d + cn * cn))
}

/// Upper and lower bounds on the discord, each computed from the
/// representation alone.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub value: f64,
    /// `¼ tr[TᵀT] - ¼ Σ_{n<d2} λ_n`, `λ` the eigenvalues of `TᵀT`.
    pub lower: f64,
    /// `min{¼ tr[TᵀT], ¼ tr[TᵀT] + ((d2-1)/(d1d2))‖r2‖² - ¼ Σ_{n<d2} λ_n}`.
    pub upper_correlation: f64,
    /// `((d2-1)/d2)(1 - ‖r2‖²/(d2+1))`.
    pub upper_marginal: f64,
    /// `(d2-1)/d2`.
    pub ceiling: f64,
    /// `(d1d2-1)/(d1d2) - ((d1-1)/(d1d2))‖r1‖² - ((d2-1)/(d1d2))‖r2‖²`.
    pub upper_purity_marginals: f64,
    /// `(d1d2-1)/(d1d2) - ((d1-1)/(d1d2))‖r1‖² - ¼ Σ_{n<d2} λ_n`.
    pub upper_purity_spectrum: f64,
}

impl BoundsReport {
    pub fn min_upper(&self) -> f64 {
        [
            self.upper_correlation,
            self.upper_marginal,
            self.upper_purity_marginals,
            self.upper_purity_spectrum,
            self.ceiling,
        ]
        .into_iter()
        .fold(f64::INFINITY, f64::min)
    }

    /// `lower - tol ≤ value ≤ min_upper + tol`.
    pub fn brackets(&self, tol: f64) -> bool {
        self.lower - tol <= self.value && self.value <= self.min_upper() + tol
    }
}

pub fn bounds_from_repr(repr: &BlochRepr, value: f64) -> Result<BoundsReport> {
    let (d1, d2) = (repr.d1 as f64, repr.d2 as f64);
    let lambdas = symmetric_eigensystem(&repr.ttt())?;
    let top_lambda = lambdas.top_sum(repr.d2 - 1);
    let quarter_trace = 0.25 * repr.trace_ttt();
    let r1sq = repr.r1.norm_squared();
    let r2sq = repr.r2.norm_squared();
    let marginal_term = (d2 - 1.0) / (d1 * d2) * r2sq;
    let purity_cap = (d1 * d2 - 1.0) / (d1 * d2) - (d1 - 1.0) / (d1 * d2) * r1sq;
    Ok(BoundsReport {
        value,
        lower: quarter_trace - 0.25 * top_lambda,
        upper_correlation: quarter_trace.min(quarter_trace + marginal_term - 0.25 * top_lambda),
        upper_marginal: (d2 - 1.0) / d2 * (1.0 - r2sq / (d2 + 1.0)),
        ceiling: (d2 - 1.0) / d2,
        upper_purity_marginals: purity_cap - marginal_term,
        upper_purity_spectrum: purity_cap - 0.25 * top_lambda,
    })
}

pub fn discord_bounds(rho: &DensityMatrix) -> Result<BoundsReport> {
    let repr = BlochRepr::of(rho)?;
    let value = discord_from_repr(&repr)?.value;
    bounds_from_repr(&repr, value)
}

/// Sign of the `T y_k` term in the optimal `α_k x_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossTermSign {
    Plus,
    Minus,
}

impl CrossTermSign {
    fn factor(self) -> f64 {
        match self {
            Self::Plus => 1.0,
            Self::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClosestStateResult {
    pub dims: [usize; 2],
    /// `Σ_k α_k σ_k ⊗ P_k`, `P_k` the operator with Bloch vector `y_k`.
    pub chi: CMatrix,
    /// `tr[(ρ - χ)²]`.
    pub achieved_distance_sq: f64,
    /// Discord value from the spectrum of `G`.
    pub formula_value: f64,
    /// Sign of the cross term that gave the smaller distance.
    pub sign: CrossTermSign,
    /// Distance obtained with the other sign.
    pub rejected_distance_sq: f64,
    pub alphas: Vec<f64>,
    /// Smallest eigenvalue of each `σ_k` (of `α_k σ_k` when `α_k ≈ 0`).
    pub sigma_positivity: Vec<f64>,
    /// Smallest eigenvalue of each second-factor operator `P_k`.
    pub pointer_positivity: Vec<f64>,
    /// All `α_k`, `σ_k`, `P_k` non-negative within [`FEASIBILITY_TOL`].
    pub feasible: bool,
    pub degenerate: bool,
    /// Bloch vectors `y_k` of the second-factor operators.
    pub frame: Vec<RVector>,
}

impl ClosestStateResult {
    /// `χ` as a validated density matrix.
    pub fn chi_state(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.dims.to_vec(), self.chi.clone())
    }

    /// Orthonormal basis `{|k⟩}` of the second factor (leading eigenvector of
    /// each `P_k`), or `None` when the result is infeasible.
    pub fn pointer_basis(&self) -> Option<CMatrix> {
        if !self.feasible {
            return None;
        }
        let d2 = self.dims[1];
        let basis = gell_mann_basis(d2).ok()?;
        let mut out = CMatrix::zeros(d2, d2);
        for (k, y) in self.frame.iter().enumerate() {
            let p = pointer_operator(&basis, y).ok()?;
            let eig = hermitian_eigensystem(&p).ok()?;
            out.set_column(k, &eig.vectors.column(0));
        }
        Some(out)
    }
}

/// `I/d + √((d-1)/(2d)) (y·Υ)`.
fn pointer_operator(basis: &crate::basis::OperatorBasis, y: &RVector) -> Result<CMatrix> {
    let d = basis.dim() as f64;
    let mut p = basis.combine(y.as_slice())? * C64::new(((d - 1.0) / (2.0 * d)).sqrt(), 0.0);
    for i in 0..basis.dim() {
        p[(i, i)] += C64::new(1.0 / d, 0.0);
    }
    Ok(p)
}

fn min_eigenvalue(m: &CMatrix) -> Result<f64> {
    Ok(*hermitian_eigensystem(m)?.values.last().expect("non-empty"))
}

/// Closest quantum-classical operator built from the optimal frame.
///
/// For the frame `{y_k}` aligned with `G`, `α_k = 1/d2 + ((d2-1)/d2)(r2·y_k)`
/// and `α_k x_k = r1/d2 ± ½√(d1(d2-1)/(d2(d1-1))) T y_k`. Both signs are
/// evaluated and the one with the smaller distance is kept.
pub fn closest_qc_state(rho: &DensityMatrix) -> Result<ClosestStateResult> {
    let (d1, d2) = rho.bipartite_dims()?;
    let basis_a = gell_mann_basis(d1)?;
    let basis_b = gell_mann_basis(d2)?;
    let repr = crate::repr::extract(rho, &basis_a, &basis_b)?;
    let g = g_operator(&repr)?;
    let eig = symmetric_eigensystem(&g)?;
    let discord = discord_from_repr(&repr)?;
    let frame = aligned_frame(&eig, d2)?;
    let (d1f, d2f) = (d1 as f64, d2 as f64);

    let alphas: Vec<f64> = frame
        .vectors()
        .iter()
        .map(|y| 1.0 / d2f + (d2f - 1.0) / d2f * repr.r2.dot(y))
        .collect();
    let pointers: Vec<CMatrix> = frame
        .vectors()
        .iter()
        .map(|y| pointer_operator(&basis_b, y))
        .collect::<Result<_>>()?;
    let cross = 0.5 * (d1f * (d2f - 1.0) / (d2f * (d1f - 1.0))).sqrt();
    let local = ((d1f - 1.0) / (2.0 * d1f)).sqrt();

    let build = |sign: CrossTermSign| -> Result<(CMatrix, Vec<CMatrix>)> {
        let mut chi = CMatrix::zeros(d1 * d2, d1 * d2);
        let mut blocks = Vec::with_capacity(d2);
        for ((y, &alpha), pointer) in frame.vectors().iter().zip(&alphas).zip(&pointers) {
            let ax = &repr.r1 / d2f + (&repr.t * y) * (sign.factor() * cross);
            let mut block = basis_a.combine(ax.as_slice())? * C64::new(local, 0.0);
            for i in 0..d1 {
                block[(i, i)] += C64::new(alpha / d1f, 0.0);
            }
            chi += block.kronecker(pointer);
            blocks.push(block);
        }
        Ok((chi, blocks))
    };

    let (chi_plus, blocks_plus) = build(CrossTermSign::Plus)?;
    let (chi_minus, blocks_minus) = build(CrossTermSign::Minus)?;
    let dist_plus = hs_distance_sq_raw(rho.matrix(), &chi_plus);
    let dist_minus = hs_distance_sq_raw(rho.matrix(), &chi_minus);
    let (sign, chi, blocks, achieved, rejected) = if dist_plus <= dist_minus {
        (
            CrossTermSign::Plus,
            chi_plus,
            blocks_plus,
            dist_plus,
            dist_minus,
        )
    } else {
        (
            CrossTermSign::Minus,
            chi_minus,
            blocks_minus,
            dist_minus,
            dist_plus,
        )
    };

    let sigma_positivity = blocks
        .iter()
        .zip(&alphas)
        .map(|(block, &alpha)| {
            if alpha > FEASIBILITY_TOL {
                min_eigenvalue(&(block / C64::new(alpha, 0.0)))
            } else {
                min_eigenvalue(block)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let pointer_positivity = pointers
        .iter()
        .map(min_eigenvalue)
        .collect::<Result<Vec<_>>>()?;
    let feasible = alphas.iter().all(|&a| a >= -FEASIBILITY_TOL)
        && sigma_positivity.iter().all(|&m| m >= -FEASIBILITY_TOL)
        && pointer_positivity.iter().all(|&m| m >= -FEASIBILITY_TOL);

    Ok(ClosestStateResult {
        dims: [d1, d2],
        chi,
        achieved_distance_sq: achieved,
        formula_value: discord.value,
        sign,
        rejected_distance_sq: rejected,
        alphas,
        sigma_positivity,
        pointer_positivity,
        feasible,
        degenerate: discord.degenerate_boundary,
        frame: frame.vectors().to_vec(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparableCheck {
    pub value: f64,
    /// `((d-1)/d)²`.
    pub ceiling: f64,
    pub within_ceiling: bool,
    /// The decomposition is a single product of pure states.
    pub pure_product: bool,
    /// For pure products: whether the discord vanishes within `1e-9`.
    pub pure_product_zero: Option<bool>,
}

/// Builds the mixture on `d ⊗ d` and checks it against the separable ceiling.
pub fn separable_bound_check(
    components: &[SeparableComponent],
    d: usize,
) -> Result<SeparableCheck> {
    let rho = separable_mixture(components, (d, d))?;
    let value = geometric_discord(&rho)?.value;
    let df = d as f64;
    let ceiling = ((df - 1.0) / df).powi(2);
    let pure_product = components.len() == 1
        && (purity(&components[0].a) - 1.0).abs() <= PURITY_TOL
        && (purity(&components[0].b) - 1.0).abs() <= PURITY_TOL;
    Ok(SeparableCheck {
        value,
        ceiling,
        within_ceiling: value <= ceiling + 1e-9,
        pure_product,
        pure_product_zero: pure_product.then_some(value.abs() <= 1e-9),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{
        ghz_state, product_state, quantum_classical_state, random_mixed, random_pure,
        random_unitary,
    };

    fn single(d: usize, rank: usize, seed: u64) -> DensityMatrix {
        let r = random_mixed(d, 1, rank, seed).unwrap();
        DensityMatrix::new(vec![d], r.into_matrix()).unwrap()
    }

    #[test]
    fn ghz_values() {
        for d in 2..=5 {
            let r = geometric_discord(&ghz_state(d).unwrap()).unwrap();
            let want = (d as f64 - 1.0) / d as f64;
            assert!((r.value - want).abs() < 1e-10, "d={d}");
            let eta = 1.0 / (d * d) as f64;
            assert!(r.g_eigenvalues.iter().all(|e| (e - eta).abs() < 1e-12));
        }
    }

    #[test]
    fn maximally_mixed_g_vanishes() {
        let repr = BlochRepr::of(&DensityMatrix::maximally_mixed(vec![3, 2])).unwrap();
        assert!(g_operator(&repr).unwrap().norm() < 1e-15);
        assert_eq!(discord_from_repr(&repr).unwrap().value, 0.0);
    }

    #[test]
    fn pure_product_g_rank_one() {
        for d in 2..=4 {
            let rho = product_state(&single(d, 1, 1), &single(d, 1, 2)).unwrap();
            let r = geometric_discord(&rho).unwrap();
            let top = (d as f64 - 1.0) / d as f64;
            assert!((r.g_eigenvalues[0] - top).abs() < 1e-10);
            assert!(r.g_eigenvalues[1..].iter().all(|e| e.abs() < 1e-10));
            assert!(r.value < 1e-10);
        }
    }

    #[test]
    fn forms_agree_and_ceiling_holds() {
        for (i, (d1, d2)) in [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4)]
            .into_iter()
            .enumerate()
        {
            let rho = random_mixed(d1, d2, 1 + i, 40 + i as u64).unwrap();
            let r = geometric_discord(&rho).unwrap();
            let tail: f64 = r.g_eigenvalues[d2 - 1..].iter().sum();
            assert!((r.trace_g - r.top_sum - tail).abs() < 1e-12);
            assert!(r.value <= (d2 as f64 - 1.0) / d2 as f64 + 1e-10);
        }
    }

    #[test]
    fn pure_two_qubit_matches_formula() {
        let s = |x: f64| C64::new(x.sqrt(), 0.0);
        let mut psi = crate::linalg::CVector::zeros(4);
        psi[0] = s(0.9);
        psi[3] = s(0.1);
        let rho = DensityMatrix::from_pure(vec![2, 2], &psi).unwrap();
        let c = concurrence_pure(&rho).unwrap().value;
        assert!((c - 0.6).abs() < 1e-12);
        let closed = pure_two_qubit_discord(&rho).unwrap();
        assert!((closed - 0.18).abs() < 1e-12);
        assert!((geometric_discord(&rho).unwrap().value - closed).abs() < 1e-10);
        assert!((pure_two_qubit_discord(&ghz_state(2).unwrap()).unwrap() - 0.5).abs() < 1e-12);
        assert!(pure_two_qubit_discord(&random_mixed(2, 2, 3, 1).unwrap()).is_err());
        assert!(pure_two_qubit_discord(&random_pure(2, 3, 1).unwrap()).is_err());
    }

    #[test]
    fn pure_two_qubit_ttt_spectrum() {
        for seed in 0..20 {
            let psi = random_pure(2, 2, seed).unwrap();
            let c = concurrence_pure(&psi).unwrap().value;
            let ev = symmetric_eigensystem(&BlochRepr::of(&psi).unwrap().ttt())
                .unwrap()
                .values;
            assert!((ev[0] - 1.0).abs() < 1e-9);
            assert!((ev[1] - c * c).abs() < 1e-9 && (ev[2] - c * c).abs() < 1e-9);
        }
    }

    #[test]
    fn pure_upper_bound_examples() {
        let b = pure_state_upper_bound(&ghz_state(3).unwrap()).unwrap();
        assert!((b - 2.0 / 3.0).abs() < 1e-12);
        let prod = product_state(&single(3, 1, 5), &single(3, 1, 6)).unwrap();
        assert!((pure_state_upper_bound(&prod).unwrap() - 0.5).abs() < 1e-7);
        for seed in 0..20 {
            let psi = random_pure(2, 2, seed).unwrap();
            let c = concurrence_pure(&psi).unwrap().value;
            assert!(pure_state_upper_bound(&psi).unwrap() >= c * c / 2.0 - 1e-10);
        }
        assert!(pure_state_upper_bound(&random_pure(2, 3, 0).unwrap()).is_err());
        assert!(pure_state_upper_bound(&random_mixed(2, 2, 2, 0).unwrap()).is_err());
    }

    #[test]
    fn bounds_on_ghz_and_mixed() {
        let b = discord_bounds(&ghz_state(3).unwrap()).unwrap();
        assert!((b.value - 2.0 / 3.0).abs() < 1e-10);
        assert!((b.ceiling - 2.0 / 3.0).abs() < 1e-15);
        assert!(b.brackets(1e-9));
        let b = discord_bounds(&DensityMatrix::maximally_mixed(vec![2, 3])).unwrap();
        assert_eq!(b.value, 0.0);
        assert!(b.brackets(1e-9));
        assert!(b.min_upper() >= 0.0);
    }

    #[test]
    fn local_unitary_invariance() {
        for (d1, d2) in [(2, 2), (2, 3), (3, 3)] {
            let rho = random_mixed(d1, d2, 3, 77).unwrap();
            let u = random_unitary(d1, 1)
                .unwrap()
                .kronecker(&random_unitary(d2, 2).unwrap());
            let rotated =
                DensityMatrix::new(vec![d1, d2], &u * rho.matrix() * u.adjoint()).unwrap();
            let a = geometric_discord(&rho).unwrap().value;
            let b = geometric_discord(&rotated).unwrap().value;
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn quantum_classical_states_have_zero_discord() {
        for d2 in 2..=3 {
            let u = random_unitary(d2, 4).unwrap();
            let sigmas: Vec<_> = (0..d2).map(|k| single(3, 2, k as u64)).collect();
            let alphas = vec![1.0 / d2 as f64; d2];
            let qc = quantum_classical_state(&sigmas, &alphas, &u).unwrap();
            assert!(geometric_discord(&qc).unwrap().value < 1e-10);
            let closest = closest_qc_state(&qc).unwrap();
            assert!(closest.achieved_distance_sq < 1e-10);
            assert!((closest.chi.clone() - qc.matrix()).norm() < 1e-6);
        }
    }

    #[test]
    fn closest_state_attains_formula_for_qubit_measurement() {
        for (i, d1) in [2usize, 3, 2, 3].into_iter().enumerate() {
            let rho = random_mixed(d1, 2, 1 + i, 300 + i as u64).unwrap();
            let c = closest_qc_state(&rho).unwrap();
            assert!((c.achieved_distance_sq - c.formula_value).abs() < 1e-8);
            assert_eq!(c.sign, CrossTermSign::Plus);
            assert!(c.feasible);
            let chi = c.chi_state().unwrap();
            let basis = c.pointer_basis().unwrap();
            assert!(crate::qstate::qc_structure_deviation(chi.matrix(), d1, 2, &basis) < 1e-10);
            let direct = crate::qstate::hs_distance_sq(&rho, &chi).unwrap();
            assert!((direct - c.achieved_distance_sq).abs() < 1e-12);
        }
    }

    #[test]
    fn closest_state_of_maximally_mixed() {
        let rho = DensityMatrix::maximally_mixed(vec![2, 2]);
        let c = closest_qc_state(&rho).unwrap();
        assert!(c.achieved_distance_sq < 1e-15);
        assert!((c.chi.clone() - rho.matrix()).norm() < 1e-12);
    }

    #[test]
    fn separable_checks() {
        let pure = separable_bound_check(
            &[SeparableComponent {
                weight: 1.0,
                a: single(3, 1, 1),
                b: single(3, 1, 2),
            }],
            3,
        )
        .unwrap();
        assert!(pure.pure_product && pure.pure_product_zero == Some(true));
        let mixed = separable_bound_check(
            &[
                SeparableComponent {
                    weight: 0.5,
                    a: single(2, 1, 3),
                    b: single(2, 1, 4),
                },
                SeparableComponent {
                    weight: 0.5,
                    a: single(2, 1, 5),
                    b: single(2, 1, 6),
                },
            ],
            2,
        )
        .unwrap();
        assert!(mixed.within_ceiling && mixed.value <= 0.25 + 1e-9);
        assert!(mixed.pure_product_zero.is_none());
    }

    #[test]
    fn left_discord_swaps_roles() {
        let rho = random_mixed(2, 3, 2, 8).unwrap();
        let left = geometric_discord_left(&rho).unwrap();
        let swapped = geometric_discord(&swap_subsystems(&rho).unwrap()).unwrap();
        assert_eq!(left, swapped);
        assert_eq!(left.g_eigenvalues.len(), 3);
    }
}
