//! Simplex frames: `d` unit vectors in `R^(d²-1)` that sum to zero with
//! pairwise inner products `-1/(d-1)`, and their projectors
//! `Π = ((d-1)/d) Σ_k |y_k⟩⟨y_k|` (orthogonal projections of rank `d - 1`).
//!
//! [`regular_simplex_frame`] works for every `d`. [`sign_pattern_frame`]
//! reproduces the `±1`-coefficient constructions, which exist only when a
//! Hadamard matrix of the matching order exists. [`aligned_frame`] places a
//! frame in the span of the leading eigenvectors of a symmetric operator,
//! where `tr[G Π]` attains its maximum over all frames.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{real_orthonormality_deviation, real_outer, RMatrix, RVector};
use crate::qstate::EigenSystem;

pub const FRAME_TOL: f64 = 1e-10;
const GRAM_SCHMIDT_DROP: f64 = 1e-12;
const SIGN_SEARCH_BUDGET: u64 = 5_000_000;
/// Largest `d` attempted by the sign-pattern search.
pub const SIGN_PATTERN_MAX_D: usize = 17;

/// Deviations of a vector list from the simplex-frame relations.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameReport {
    pub d: usize,
    /// `‖Σ_k y_k‖`.
    pub sum_deviation: f64,
    /// `max_k |‖y_k‖ - 1|`.
    pub norm_deviation: f64,
    /// `max_{i≠j} |y_i·y_j + 1/(d-1)|`.
    pub pairwise_deviation: f64,
    /// Pair attaining `pairwise_deviation`, with its inner product.
    pub worst_pair: Option<(usize, usize, f64)>,
    pub tolerance: f64,
}

impl FrameReport {
    pub fn passes(&self) -> bool {
        self.sum_deviation <= self.tolerance
            && self.norm_deviation <= self.tolerance
            && self.pairwise_deviation <= self.tolerance
    }
}

impl fmt::Display for FrameReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d={} sum={:.3e} norm={:.3e} pairwise={:.3e}",
            self.d, self.sum_deviation, self.norm_deviation, self.pairwise_deviation
        )?;
        if let Some((i, j, dot)) = self.worst_pair {
            write!(f, " (worst pair {},{} dot {:.6})", i + 1, j + 1, dot)?;
        }
        write!(f, " => {}", if self.passes() { "pass" } else { "FAIL" })
    }
}

/// Measures the three frame relations for an arbitrary list of vectors.
pub fn validate_frame(vectors: &[RVector]) -> FrameReport {
    let d = vectors.len();
    let dim = vectors.first().map_or(0, |v| v.len());
    let mismatched = vectors.iter().any(|v| v.len() != dim);
    if d < 2 || mismatched {
        return FrameReport {
            d,
            sum_deviation: f64::INFINITY,
            norm_deviation: f64::INFINITY,
            pairwise_deviation: f64::INFINITY,
            worst_pair: None,
            tolerance: FRAME_TOL,
        };
    }
    let sum = vectors.iter().fold(RVector::zeros(dim), |acc, v| acc + v);
    let norm_deviation = vectors
        .iter()
        .map(|v| (v.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    let target = -1.0 / (d as f64 - 1.0);
    let mut pairwise_deviation: f64 = 0.0;
    let mut worst_pair = None;
    for i in 0..d {
        for j in i + 1..d {
            let dot = vectors[i].dot(&vectors[j]);
            let dev = (dot - target).abs();
            if worst_pair.is_none() || dev > pairwise_deviation {
                pairwise_deviation = dev;
                worst_pair = Some((i, j, dot));
            }
        }
    }
    FrameReport {
        d,
        sum_deviation: sum.norm(),
        norm_deviation,
        pairwise_deviation,
        worst_pair,
        tolerance: FRAME_TOL,
    }
}

/// A validated simplex frame in `R^(d²-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexFrame {
    d: usize,
    vectors: Vec<RVector>,
}

impl SimplexFrame {
    pub fn new(vectors: Vec<RVector>) -> Result<Self> {
        let d = vectors.len();
        let report = validate_frame(&vectors);
        if !report.passes() {
            return Err(Error::InvalidFrame(report));
        }
        let ambient = vectors[0].len();
        if ambient != d * d - 1 {
            return Err(Error::ShapeMismatch(format!(
                "frame of {d} vectors must live in R^{}, got R^{ambient}",
                d * d - 1
            )));
        }
        Ok(Self { d, vectors })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ambient_dim(&self) -> usize {
        self.d * self.d - 1
    }

    pub fn vectors(&self) -> &[RVector] {
        &self.vectors
    }

    pub fn report(&self) -> FrameReport {
        validate_frame(&self.vectors)
    }

    /// Applies an orthogonal map to every vector.
    pub fn rotate(&self, q: &RMatrix) -> Result<Self> {
        if q.shape() != (self.ambient_dim(), self.ambient_dim()) {
            return Err(Error::ShapeMismatch(format!(
                "rotation {:?} for ambient dimension {}",
                q.shape(),
                self.ambient_dim()
            )));
        }
        Self::new(self.vectors.iter().map(|v| q * v).collect())
    }
}

/// `Π = ((d-1)/d) Σ_k |y_k⟩⟨y_k|`.
pub fn frame_projector(frame: &SimplexFrame) -> RMatrix {
    let n = frame.ambient_dim();
    let d = frame.d() as f64;
    frame
        .vectors()
        .iter()
        .fold(RMatrix::zeros(n, n), |acc, y| acc + real_outer(y))
        * ((d - 1.0) / d)
}

/// First `d - 1` standard unit vectors of `R^(d²-1)`.
pub fn standard_span(d: usize) -> Vec<RVector> {
    let n = d * d - 1;
    (0..d - 1)
        .map(|m| {
            let mut e = RVector::zeros(n);
            e[m] = 1.0;
            e
        })
        .collect()
}

/// Regular simplex centred at the origin inside `span(span_basis)`.
///
/// Vertex `k` is `√(d/(d-1)) (e_k - 𝟙/d)` of `R^d`, written in the Helmert
/// basis of the sum-zero hyperplane and mapped onto `span_basis`.
pub fn regular_simplex_frame(d: usize, span_basis: &[RVector]) -> Result<SimplexFrame> {
    if d < 2 {
        return Err(Error::InvalidDimension(format!(
            "frame needs d >= 2, got {d}"
        )));
    }
    if span_basis.len() != d - 1 {
        return Err(Error::ShapeMismatch(format!(
            "need {} span vectors for d={d}, got {}",
            d - 1,
            span_basis.len()
        )));
    }
    let dev = real_orthonormality_deviation(span_basis);
    if dev > FRAME_TOL {
        return Err(Error::NotOrthonormal(dev));
    }
    let ambient = span_basis[0].len();
    let df = d as f64;
    let scale = (df / (df - 1.0)).sqrt();
    let vectors = (0..d)
        .map(|k| {
            let mut y = RVector::zeros(ambient);
            for (m, basis_vec) in span_basis.iter().enumerate() {
                let m1 = (m + 1) as f64;
                let norm = (m1 * (m1 + 1.0)).sqrt();
                // ⟨e_k - 𝟙/d, h_m⟩ with h_m = (1,…,1, -m, 0,…)/norm; 𝟙 ⟂ h_m.
                let coord = if k <= m {
                    1.0 / norm
                } else if k == m + 1 {
                    -m1 / norm
                } else {
                    0.0
                };
                y.axpy(scale * coord, basis_vec, 1.0);
            }
            y
        })
        .collect();
    SimplexFrame::new(vectors)
}

/// Deterministic Gram–Schmidt over `vectors` in index order, dropping
/// residuals below `1e-12`.
fn gram_schmidt(vectors: &[RVector]) -> Vec<RVector> {
    let mut out: Vec<RVector> = Vec::new();
    for v in vectors {
        let mut r = v.clone();
        for q in &out {
            let c = q.dot(&r);
            r.axpy(-c, q, 1.0);
        }
        let n = r.norm();
        if n > GRAM_SCHMIDT_DROP {
            out.push(r / n);
        }
    }
    out
}

/// Frame whose projector is `Σ_{n<d-1} |e_n⟩⟨e_n|` for the leading
/// eigenvectors `e_n` of `eig`; maximizes `tr[G Π]` over all frames.
pub fn aligned_frame(eig: &EigenSystem<f64>, d: usize) -> Result<SimplexFrame> {
    if d < 2 {
        return Err(Error::InvalidDimension(format!(
            "frame needs d >= 2, got {d}"
        )));
    }
    if eig.len() < d - 1 {
        return Err(Error::ShapeMismatch(format!(
            "need {} eigenvectors, eigensystem has {}",
            d - 1,
            eig.len()
        )));
    }
    let ambient = eig.vectors.nrows();
    if ambient != d * d - 1 {
        return Err(Error::ShapeMismatch(format!(
            "eigenvectors live in R^{ambient}, frame for d={d} needs R^{}",
            d * d - 1
        )));
    }
    let seed = regular_simplex_frame(d, &standard_span(d))?;
    let span = gram_schmidt(seed.vectors());
    if span.len() != d - 1 {
        return Err(Error::ContractViolation(format!(
            "seed frame spans {} dimensions, expected {}",
            span.len(),
            d - 1
        )));
    }
    let targets: Vec<RVector> = (0..d - 1)
        .map(|m| eig.vectors.column(m).into_owned())
        .collect();
    let vectors = seed
        .vectors()
        .iter()
        .map(|y| {
            span.iter()
                .zip(&targets)
                .fold(RVector::zeros(ambient), |acc, (q, e)| acc + e * q.dot(y))
        })
        .collect();
    SimplexFrame::new(vectors)
}

/// Which `±1` construction was attempted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignConstruction {
    /// `y_k = (1/√(d-1)) Σ_n α_kn e_n`, `d` sign rows of length `d - 1`.
    Even,
    /// `y_1 = e_1`, `y_k = -e_1/(d-1) + (√d/(d-1)) Σ_{n≥2} α_kn e_n`,
    /// `d - 1` sign rows of length `d - 2`.
    Odd,
}

/// Relation of the sign matrix that could not be met.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignRelation {
    /// Distinct rows must have inner product `-1`.
    RowProducts,
    /// The dimension is outside the range the search attempts.
    Unsupported,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionReport {
    pub d: usize,
    pub construction: SignConstruction,
    pub relation: SignRelation,
    pub detail: String,
}

impl fmt::Display for ConstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            SignRelation::RowProducts => "pairwise sign-row products equal to -1",
            SignRelation::Unsupported => "supported dimension",
        };
        write!(
            f,
            "{:?} sign construction for d={} violates {}: {}",
            self.construction, self.d, rel, self.detail
        )
    }
}

impl std::error::Error for ConstructionReport {}

/// `±1` rows of length `rows - 1`: the first all `+1`, the others with
/// `(rows - 2)/2` entries `+1`, pairwise inner products `-1`. Appending a
/// `+1` column gives a Hadamard matrix of order `rows`.
fn sign_rows(rows: usize) -> std::result::Result<Vec<Vec<i8>>, (SignRelation, String)> {
    let len = rows - 1;
    if rows == 2 {
        return Ok(vec![vec![1], vec![-1]]);
    }
    if !rows.is_multiple_of(4) {
        return Err((
            SignRelation::RowProducts,
            format!("requires a Hadamard matrix of order {rows}, which does not exist (order must be 1, 2 or a multiple of 4)"),
        ));
    }
    let plus = (rows - 2) / 2;
    let candidates = fixed_weight_rows(len, plus);
    let dot = |a: &[i8], b: &[i8]| {
        a.iter()
            .zip(b)
            .map(|(x, y)| (*x as i32) * (*y as i32))
            .sum::<i32>()
    };
    let mut chosen: Vec<usize> = Vec::with_capacity(rows - 1);
    let mut nodes = 0u64;
    let mut best = 0usize;

    fn search(
        start: usize,
        need: usize,
        candidates: &[Vec<i8>],
        chosen: &mut Vec<usize>,
        nodes: &mut u64,
        best: &mut usize,
        dot: &dyn Fn(&[i8], &[i8]) -> i32,
    ) -> bool {
        if chosen.len() == need {
            return true;
        }
        for c in start..candidates.len() {
            *nodes += 1;
            if *nodes > SIGN_SEARCH_BUDGET {
                return false;
            }
            if chosen
                .iter()
                .all(|&o| dot(&candidates[o], &candidates[c]) == -1)
            {
                chosen.push(c);
                *best = (*best).max(chosen.len());
                if search(c + 1, need, candidates, chosen, nodes, best, dot) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    if search(
        0,
        rows - 1,
        &candidates,
        &mut chosen,
        &mut nodes,
        &mut best,
        &dot,
    ) {
        let mut out = vec![vec![1i8; len]];
        out.extend(chosen.into_iter().map(|c| candidates[c].clone()));
        return Ok(out);
    }
    let reason = if nodes > SIGN_SEARCH_BUDGET {
        "search budget exhausted"
    } else {
        "search exhausted"
    };
    Err((
        SignRelation::RowProducts,
        format!(
            "{reason}: at most {} of {} rows mutually compatible",
            best + 1,
            rows
        ),
    ))
}

/// All `±1` vectors of length `len` with exactly `plus` entries `+1`, in
/// lexicographic order with `+1` before `-1`.
fn fixed_weight_rows(len: usize, plus: usize) -> Vec<Vec<i8>> {
    fn rec(pos: usize, left: usize, len: usize, cur: &mut Vec<i8>, out: &mut Vec<Vec<i8>>) {
        if pos == len {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if left > 0 {
            cur.push(1);
            rec(pos + 1, left - 1, len, cur, out);
            cur.pop();
        }
        if len - pos > left {
            cur.push(-1);
            rec(pos + 1, left, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, plus, len, &mut Vec::with_capacity(len), &mut out);
    out
}

/// The `±1`-coefficient frame over the orthonormal vectors `top_eigvecs`
/// (`d - 1` of them). Fails with a [`ConstructionReport`] when no sign
/// matrix exists.
pub fn sign_pattern_frame(
    d: usize,
    top_eigvecs: &[RVector],
) -> Result<std::result::Result<SimplexFrame, ConstructionReport>> {
    if d < 2 {
        return Err(Error::InvalidDimension(format!(
            "frame needs d >= 2, got {d}"
        )));
    }
    if top_eigvecs.len() != d - 1 {
        return Err(Error::ShapeMismatch(format!(
            "need {} vectors for d={d}, got {}",
            d - 1,
            top_eigvecs.len()
        )));
    }
    let dev = real_orthonormality_deviation(top_eigvecs);
    if dev > FRAME_TOL {
        return Err(Error::NotOrthonormal(dev));
    }
    let construction = if d.is_multiple_of(2) {
        SignConstruction::Even
    } else {
        SignConstruction::Odd
    };
    if d > SIGN_PATTERN_MAX_D {
        return Ok(Err(ConstructionReport {
            d,
            construction,
            relation: SignRelation::Unsupported,
            detail: format!("sign search is limited to d <= {SIGN_PATTERN_MAX_D}"),
        }));
    }
    let rows_needed = if d.is_multiple_of(2) { d } else { d - 1 };
    let rows = match sign_rows(rows_needed) {
        Ok(r) => r,
        Err((relation, detail)) => {
            return Ok(Err(ConstructionReport {
                d,
                construction,
                relation,
                detail,
            }))
        }
    };
    let ambient = top_eigvecs[0].len();
    let df = d as f64;
    let vectors: Vec<RVector> = match construction {
        SignConstruction::Even => rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(top_eigvecs)
                    .fold(RVector::zeros(ambient), |acc, (&a, e)| acc + e * (a as f64))
                    / (df - 1.0).sqrt()
            })
            .collect(),
        SignConstruction::Odd => {
            let e1 = &top_eigvecs[0];
            let mut out = vec![e1.clone()];
            out.extend(rows.iter().map(|row| {
                row.iter()
                    .zip(&top_eigvecs[1..])
                    .fold(e1 * (-1.0 / (df - 1.0)), |acc, (&a, e)| {
                        acc + e * (a as f64 * df.sqrt() / (df - 1.0))
                    })
            }));
            out
        }
    };
    SimplexFrame::new(vectors).map(Ok)
}

/// Published `±1` example frames for `d = 2..=6`, embedded in `R^(d²-1)`
/// with `e_n` the standard unit vectors. The entries are transcribed as
/// printed: the `d = 5` and `d = 6` examples do not satisfy the frame
/// relations, which [`validate_frame`] exposes.
pub fn catalog_frame(d: usize) -> Option<Vec<RVector>> {
    let (scale_rows, offset): (Vec<Vec<f64>>, Option<f64>) = match d {
        2 => (vec![vec![1.0], vec![-1.0]], None),
        3 => {
            let s = 3f64.sqrt() / 2.0;
            return Some(embed(3, &[vec![1.0, 0.0], vec![-0.5, s], vec![-0.5, -s]]));
        }
        4 => (
            vec![
                vec![1.0, 1.0, 1.0],
                vec![1.0, -1.0, -1.0],
                vec![-1.0, 1.0, -1.0],
                vec![-1.0, -1.0, 1.0],
            ],
            None,
        ),
        5 => (
            vec![
                vec![1.0, 1.0, 1.0],
                vec![-1.0, 1.0, 1.0],
                vec![1.0, 1.0, -1.0],
                vec![1.0, -1.0, 1.0],
            ],
            Some(-0.25),
        ),
        6 => (
            vec![
                vec![1.0, 1.0, 1.0, 1.0, 1.0],
                vec![1.0, 1.0, -1.0, -1.0, -1.0],
                vec![-1.0, -1.0, -1.0, 1.0, 1.0],
                vec![-1.0, 1.0, 1.0, -1.0, -1.0],
                vec![-1.0, -1.0, 1.0, 1.0, -1.0],
                vec![1.0, -1.0, -1.0, -1.0, 1.0],
            ],
            None,
        ),
        _ => return None,
    };
    let df = d as f64;
    let coords: Vec<Vec<f64>> = match offset {
        None => scale_rows
            .iter()
            .map(|r| r.iter().map(|a| a / (df - 1.0).sqrt()).collect())
            .collect(),
        Some(first) => {
            let mut out = vec![{
                let mut v = vec![0.0; d - 1];
                v[0] = 1.0;
                v
            }];
            let s = df.sqrt() / (df - 1.0);
            out.extend(scale_rows.iter().map(|r| {
                let mut v = vec![first];
                v.extend(r.iter().map(|a| a * s));
                v
            }));
            out
        }
    };
    Some(embed(d, &coords))
}

fn embed(d: usize, coords: &[Vec<f64>]) -> Vec<RVector> {
    coords
        .iter()
        .map(|c| {
            let mut v = RVector::zeros(d * d - 1);
            v.rows_mut(0, c.len()).copy_from_slice(c);
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::symmetric_eigensystem;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> RMatrix {
        let g = RMatrix::from_fn(n, n, |_, _| rng.sample(StandardNormal));
        g.qr().q()
    }

    fn random_psd(n: usize, rng: &mut ChaCha8Rng) -> RMatrix {
        let g = RMatrix::from_fn(n, n, |_, _| rng.sample(StandardNormal));
        &g * g.transpose()
    }

    fn assert_projector(p: &RMatrix, rank: usize) {
        assert!((p * p - p).norm() < 1e-10);
        assert!((p.trace() - rank as f64).abs() < 1e-10);
    }

    #[test]
    fn qubit_frame_projector() {
        let f = regular_simplex_frame(2, &standard_span(2)).unwrap();
        assert!((&f.vectors()[0] + &f.vectors()[1]).norm() < 1e-15);
        assert!((f.vectors()[0][0] - 1.0).abs() < 1e-15);
        let p = frame_projector(&f);
        let mut want = RMatrix::zeros(3, 3);
        want[(0, 0)] = 1.0;
        assert!((p - want).norm() < 1e-15);
    }

    #[test]
    fn regular_frames_valid_for_all_d() {
        for d in 2..=8 {
            let f = regular_simplex_frame(d, &standard_span(d)).unwrap();
            assert!(f.report().passes(), "d={d}: {}", f.report());
            assert_projector(&frame_projector(&f), d - 1);
        }
    }

    #[test]
    fn five_dimensional_projector_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let q = random_orthogonal(24, &mut rng);
        let f = regular_simplex_frame(5, &standard_span(5))
            .unwrap()
            .rotate(&q)
            .unwrap();
        let eig = symmetric_eigensystem(&frame_projector(&f)).unwrap();
        for (i, v) in eig.values.iter().enumerate() {
            let want = if i < 4 { 1.0 } else { 0.0 };
            assert!((v - want).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_non_orthonormal_span() {
        let mut span = standard_span(3);
        span[1][0] = 0.5;
        assert!(matches!(
            regular_simplex_frame(3, &span),
            Err(Error::NotOrthonormal(_))
        ));
    }

    #[test]
    fn frame_constructor_validates() {
        let mut v = regular_simplex_frame(3, &standard_span(3))
            .unwrap()
            .vectors()
            .to_vec();
        v[0] *= 1.1;
        assert!(matches!(SimplexFrame::new(v), Err(Error::InvalidFrame(_))));
    }

    #[test]
    fn rotation_preserves_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for d in 2..=6 {
            let f = regular_simplex_frame(d, &standard_span(d)).unwrap();
            let q = random_orthogonal(d * d - 1, &mut rng);
            assert!(f.rotate(&q).unwrap().report().passes());
        }
    }

    #[test]
    fn sign_frames_reproduce_catalog_where_valid() {
        for d in [2usize, 3, 4] {
            let f = sign_pattern_frame(d, &standard_span(d)).unwrap().unwrap();
            let cat = catalog_frame(d).unwrap();
            for (a, b) in f.vectors().iter().zip(&cat) {
                assert!((a - b).norm() < 1e-15, "d={d}");
            }
            assert!(validate_frame(&cat).passes());
        }
    }

    #[test]
    fn sign_frames_exist_for_hadamard_orders() {
        for d in [5usize, 8, 9, 12, 13] {
            let f = sign_pattern_frame(d, &standard_span(d)).unwrap();
            let f = f.unwrap_or_else(|r| panic!("{r}"));
            assert!(f.report().passes());
            assert_projector(&frame_projector(&f), d - 1);
        }
    }

    #[test]
    fn sign_frames_fail_without_hadamard() {
        for d in [6usize, 7, 10, 11] {
            let r = sign_pattern_frame(d, &standard_span(d))
                .unwrap()
                .unwrap_err();
            assert_eq!(r.relation, SignRelation::RowProducts);
            assert!(r.detail.contains("Hadamard"), "{r}");
        }
        let r = sign_pattern_frame(20, &standard_span(20))
            .unwrap()
            .unwrap_err();
        assert_eq!(r.relation, SignRelation::Unsupported);
    }

    #[test]
    fn printed_examples_for_five_and_six_fail() {
        let r6 = validate_frame(&catalog_frame(6).unwrap());
        assert!(!r6.passes());
        assert!(r6.sum_deviation < 1e-12);
        assert!((r6.pairwise_deviation - 0.4).abs() < 1e-12);
        let f6 = catalog_frame(6).unwrap();
        assert!(f6
            .iter()
            .enumerate()
            .any(|(i, a)| f6[i + 1..].iter().any(|b| (a.dot(b) + 0.6).abs() < 1e-12)));
        let r5 = validate_frame(&catalog_frame(5).unwrap());
        assert!(!r5.passes());
        assert!(r5.sum_deviation > 0.1);
    }

    #[test]
    fn aligned_frame_on_diagonal() {
        let g = RMatrix::from_diagonal(&RVector::from_vec(vec![
            8.0, 7.0, 6.0, 5.0, 4.0, 3.0, 2.0, 1.0,
        ]));
        let eig = symmetric_eigensystem(&g).unwrap();
        let f = aligned_frame(&eig, 3).unwrap();
        for y in f.vectors() {
            assert!(y.rows(2, 6).norm() < 1e-12);
        }
        let p = frame_projector(&f);
        assert!(((&g * &p).trace() - 15.0).abs() < 1e-10);
    }

    #[test]
    fn aligned_frame_identity_operator() {
        for d in 2..=4 {
            let eig = symmetric_eigensystem(&RMatrix::identity(d * d - 1, d * d - 1)).unwrap();
            let p = frame_projector(&aligned_frame(&eig, d).unwrap());
            assert!((p.trace() - (d - 1) as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn aligned_frame_maximizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for d in 2..=5 {
            let n = d * d - 1;
            let seed = regular_simplex_frame(d, &standard_span(d)).unwrap();
            for _ in 0..5 {
                let g = random_psd(n, &mut rng);
                let eig = symmetric_eigensystem(&g).unwrap();
                let best = (&g * frame_projector(&aligned_frame(&eig, d).unwrap())).trace();
                assert!((best - eig.top_sum(d - 1)).abs() < 1e-10 * (1.0 + best));
                for _ in 0..200 {
                    let q = random_orthogonal(n, &mut rng);
                    let other = (&g * frame_projector(&seed.rotate(&q).unwrap())).trace();
                    assert!(other <= best + 1e-10 * (1.0 + best));
                }
            }
        }
    }

    #[test]
    fn aligned_frame_needs_enough_vectors() {
        let eig = symmetric_eigensystem(&RMatrix::identity(3, 3)).unwrap();
        assert!(aligned_frame(&eig, 3).is_err());
    }
}
