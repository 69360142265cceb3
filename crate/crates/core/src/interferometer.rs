//! Ten-mode linear-optical transformations of the preparation circuit.
//!
//! All matrices use the column convention `a+_j -> sum_i T_ij a+_i`; mode
//! `m` lives in row/column `m - 1`.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{Mode, NUM_MODES};
use crate::protocol::ProtocolParams;

pub type CMatrix = DMatrix<Complex64>;

/// Stages must be unitary to this precision.
pub const UNITARITY_TOLERANCE: f64 = 1e-12;

/// Given rows must be orthonormal to this precision before completion.
pub const ORTHONORMALITY_TOLERANCE: f64 = 1e-10;

/// Completion candidates with a smaller residual are skipped.
const COMPLETION_SKIP: f64 = 1e-8;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `max |T^dagger T - I|` over all entries.
pub fn unitarity_residual(matrix: &CMatrix) -> f64 {
    if !matrix.is_square() {
        return f64::INFINITY;
    }
    let gram = matrix.adjoint() * matrix;
    let n = matrix.nrows();
    (gram - CMatrix::identity(n, n)).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn check_unitary(matrix: &CMatrix, tolerance: f64) -> Result<()> {
    let residual = unitarity_residual(matrix);
    if residual > tolerance {
        return Err(Error::NotUnitary { residual });
    }
    Ok(())
}

/// Unitary acting on a subset of the ten modes.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeUnitary {
    entries: CMatrix,
    support: Vec<Mode>,
}

impl ModeUnitary {
    pub fn new(entries: CMatrix, support: Vec<Mode>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::DimensionMismatch { expected: entries.nrows(), got: entries.ncols() });
        }
        if support.len() != entries.nrows() {
            return Err(Error::DimensionMismatch { expected: entries.nrows(), got: support.len() });
        }
        let mut seen = [false; NUM_MODES];
        for &m in &support {
            if !(1..=NUM_MODES as Mode).contains(&m) {
                return Err(Error::InvalidMode(m as i64));
            }
            if std::mem::replace(&mut seen[m as usize - 1], true) {
                return Err(Error::InvalidPermutation);
            }
        }
        check_unitary(&entries, UNITARITY_TOLERANCE)?;
        Ok(Self { entries, support })
    }

    pub fn dimension(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn support(&self) -> &[Mode] {
        &self.support
    }

    /// 10x10 matrix acting as `self` on the support and trivially elsewhere.
    pub fn embed(&self) -> CMatrix {
        let mut out = CMatrix::identity(NUM_MODES, NUM_MODES);
        self.embed_into(&mut out);
        out
    }

    fn embed_into(&self, target: &mut CMatrix) {
        for (r, &mr) in self.support.iter().enumerate() {
            for (col, &mc) in self.support.iter().enumerate() {
                target[(mr as usize - 1, mc as usize - 1)] = self.entries[(r, col)];
            }
        }
    }
}

/// Several mode unitaries on disjoint supports, identity elsewhere.
pub fn embed_block_diagonal(blocks: &[&ModeUnitary]) -> Result<CMatrix> {
    let mut used = [false; NUM_MODES];
    let mut out = CMatrix::identity(NUM_MODES, NUM_MODES);
    for block in blocks {
        for &m in block.support() {
            if std::mem::replace(&mut used[m as usize - 1], true) {
                return Err(Error::InvalidPermutation);
            }
        }
        block.embed_into(&mut out);
    }
    Ok(out)
}

/// Bijection of the ten modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModePermutation {
    images: [Mode; NUM_MODES],
}

impl ModePermutation {
    /// `images[k]` is the image of mode `k + 1`.
    pub fn new(images: [Mode; NUM_MODES]) -> Result<Self> {
        let mut seen = [false; NUM_MODES];
        for &m in &images {
            if !(1..=NUM_MODES as Mode).contains(&m) || std::mem::replace(&mut seen[m as usize - 1], true) {
                return Err(Error::InvalidPermutation);
            }
        }
        Ok(Self { images })
    }

    pub fn identity() -> Self {
        let mut images = [0; NUM_MODES];
        for (k, m) in images.iter_mut().enumerate() {
            *m = (k + 1) as Mode;
        }
        Self { images }
    }

    /// Path rearrangement between the input and output stages.
    pub fn rearrangement() -> Self {
        Self::new([1, 7, 10, 4, 5, 6, 2, 3, 9, 8]).expect("valid permutation")
    }

    pub fn image(&self, mode: Mode) -> Mode {
        self.images[mode as usize - 1]
    }

    pub fn images(&self) -> &[Mode; NUM_MODES] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut images = [0; NUM_MODES];
        for (k, &m) in self.images.iter().enumerate() {
            images[m as usize - 1] = (k + 1) as Mode;
        }
        Self { images }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Self) -> Self {
        let mut images = [0; NUM_MODES];
        for (k, m) in images.iter_mut().enumerate() {
            *m = self.image(first.images[k]);
        }
        Self { images }
    }

    pub fn to_matrix(&self) -> CMatrix {
        let mut out = CMatrix::zeros(NUM_MODES, NUM_MODES);
        for (j, &m) in self.images.iter().enumerate() {
            out[(m as usize - 1, j)] = c(1.0);
        }
        out
    }
}

/// Input subsystems, output subsystems and dual-rail pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeGrouping {
    pub inputs: [Vec<Mode>; 3],
    pub outputs: [Vec<Mode>; 3],
    pub dual_rail: [[Mode; 2]; 3],
}

impl ModeGrouping {
    pub fn standard() -> Self {
        Self {
            inputs: [vec![1, 2, 3, 4, 5], vec![6, 7], vec![8, 9, 10]],
            outputs: [vec![1, 2, 3, 4, 5], vec![6, 7, 8], vec![9, 10]],
            dual_rail: [[1, 2], [6, 7], [9, 10]],
        }
    }

    pub fn validate(&self) -> Result<()> {
        for groups in [&self.inputs, &self.outputs] {
            let mut all: Vec<Mode> = groups.iter().flatten().copied().collect();
            all.sort_unstable();
            if all != (1..=NUM_MODES as Mode).collect::<Vec<_>>() {
                return Err(Error::InvalidPermutation);
            }
        }
        for (pair, group) in self.dual_rail.iter().zip(&self.outputs) {
            if !pair.iter().all(|m| group.contains(m)) {
                return Err(Error::InvalidPermutation);
            }
        }
        Ok(())
    }

    /// Output modes outside every dual-rail pair.
    pub fn idle_outputs(&self) -> Vec<Mode> {
        (1..=NUM_MODES as Mode)
            .filter(|m| !self.dual_rail.iter().any(|p| p.contains(m)))
            .collect()
    }
}

/// Extends orthonormal rows to a full unitary.
///
/// Canonical basis vectors are tried in ascending order and Gram-Schmidt
/// orthonormalized against the rows collected so far; candidates whose
/// residual falls below `1e-8` are skipped.
pub fn complete_to_unitary(rows: &[Vec<Complex64>], dimension: usize) -> Result<CMatrix> {
    if rows.len() > dimension {
        return Err(Error::DimensionMismatch { expected: dimension, got: rows.len() });
    }
    let mut basis: Vec<DVector<Complex64>> = Vec::with_capacity(dimension);
    for row in rows {
        if row.len() != dimension {
            return Err(Error::DimensionMismatch { expected: dimension, got: row.len() });
        }
        basis.push(DVector::from_column_slice(row));
    }
    let mut residual: f64 = 0.0;
    for (i, u) in basis.iter().enumerate() {
        for (j, v) in basis.iter().enumerate() {
            let expected = if i == j { 1.0 } else { 0.0 };
            residual = residual.max((u.dotc(v) - expected).norm());
        }
    }
    if residual > ORTHONORMALITY_TOLERANCE {
        return Err(Error::NotOrthonormal { residual });
    }

    for k in 0..dimension {
        if basis.len() == dimension {
            break;
        }
        let mut candidate = DVector::<Complex64>::zeros(dimension);
        candidate[k] = c(1.0);
        // two passes of classical Gram-Schmidt
        for _ in 0..2 {
            for b in &basis {
                let overlap = b.dotc(&candidate);
                candidate -= b * overlap;
            }
        }
        let norm = candidate.norm();
        if norm < COMPLETION_SKIP {
            continue;
        }
        basis.push(candidate / c(norm));
    }
    if basis.len() != dimension {
        return Err(Error::NotOrthonormal { residual });
    }
    Ok(CMatrix::from_fn(dimension, dimension, |i, j| basis[i][j]))
}

/// Unitary whose first column is `column`, completed deterministically.
pub fn complete_from_column(column: &[Complex64]) -> Result<CMatrix> {
    Ok(complete_to_unitary(&[column.to_vec()], column.len())?.transpose())
}

/// The input-side stage (uniform splitters on three subsystems) and the path
/// rearrangement.
pub fn build_fixed_stages() -> (CMatrix, ModePermutation) {
    let third = c(1.0 / 3f64.sqrt());
    let tritter = complete_from_column(&[third, third, third]).expect("unit column");
    let splitter = complete_from_column(&[c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]).expect("unit column");
    let u_first = ModeUnitary::new(tritter.clone(), vec![1, 2, 3]).expect("unitary");
    let h = ModeUnitary::new(splitter, vec![6, 7]).expect("unitary");
    let u_third = ModeUnitary::new(tritter, vec![8, 9, 10]).expect("unitary");
    let stage = embed_block_diagonal(&[&u_first, &h, &u_third]).expect("disjoint supports");
    (stage, ModePermutation::rearrangement())
}

/// The two partially specified output unitaries, completed.
pub fn output_unitaries(params: &ProtocolParams) -> Result<(ModeUnitary, ModeUnitary)> {
    params.validate()?;
    let zero = c(0.0);
    let v_rows = [
        vec![params.kappa, zero, zero, params.delta, params.epsilon],
        vec![params.delta.conj(), params.mu, params.nu, -params.kappa.conj(), zero],
    ];
    let v = complete_to_unitary(&v_rows, 5)?;
    let w = complete_to_unitary(&[vec![params.xi, params.tau]], 2)?;
    Ok((ModeUnitary::new(v, vec![1, 2, 3, 4, 5])?, ModeUnitary::new(w, vec![7, 8])?))
}

/// The output-side stage: `V` on modes 1..=5 and `W` on modes 7, 8.
pub fn build_output_stage(params: &ProtocolParams) -> Result<CMatrix> {
    let (v, w) = output_unitaries(params)?;
    embed_block_diagonal(&[&v, &w])
}

/// Single-qubit unitaries realised on the dual-rail pairs {1,2}, {6,7}, {9,10}.
pub fn dual_rail_local_stage(locals: &[Matrix2<Complex64>; 3]) -> Result<CMatrix> {
    let grouping = ModeGrouping::standard();
    let blocks = locals
        .iter()
        .zip(grouping.dual_rail)
        .map(|(l, pair)| {
            ModeUnitary::new(CMatrix::from_fn(2, 2, |i, j| l[(i, j)]), pair.to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    embed_block_diagonal(&blocks.iter().collect::<Vec<_>>())
}

/// All stages of the preparation circuit, in application order.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitSpec {
    pub stage1: CMatrix,
    pub sigma: ModePermutation,
    pub stage3: CMatrix,
}

impl CircuitSpec {
    pub fn build(params: &ProtocolParams) -> Result<Self> {
        let (stage1, sigma) = build_fixed_stages();
        let stage3 = build_output_stage(params)?;
        Ok(Self { stage1, sigma, stage3 })
    }

    pub fn stages(&self) -> Vec<(&'static str, CMatrix)> {
        vec![
            ("input_splitters", self.stage1.clone()),
            ("permutation", self.sigma.to_matrix()),
            ("output_unitaries", self.stage3.clone()),
        ]
    }

    /// Overall 10x10 transformation.
    pub fn total(&self) -> CMatrix {
        &self.stage3 * self.sigma.to_matrix() * &self.stage1
    }

    pub fn max_unitarity_residual(&self) -> f64 {
        self.stages().iter().map(|(_, m)| unitarity_residual(m)).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Stage {
            name: &'static str,
            matrix: Vec<Vec<[f64; 2]>>,
        }
        let stages: Vec<Stage> = self
            .stages()
            .into_iter()
            .map(|(name, m)| Stage { name, matrix: matrix_to_pairs(&m) })
            .collect();
        serde_json::json!({ "modes": NUM_MODES, "convention": "column j is the image of mode j+1", "stages": stages })
    }
}

pub fn matrix_to_pairs(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// Inverse of [`matrix_to_pairs`]; rows must all have the same length.
pub fn matrix_from_pairs(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if let Some(bad) = rows.iter().find(|r| r.len() != m) {
        return Err(Error::DimensionMismatch { expected: m, got: bad.len() });
    }
    Ok(CMatrix::from_fn(n, m, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1])))
}

/// Haar-distributed unitary from the QR decomposition of a complex Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(dimension: usize, rng: &mut R) -> CMatrix {
    let ginibre = CMatrix::from_fn(dimension, dimension, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * FRAC_1_SQRT_2
    });
    let qr = ginibre.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dimension {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0) };
        for i in 0..dimension {
            q[(i, j)] *= phase;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_images() {
        let sigma = ModePermutation::rearrangement();
        assert_eq!(sigma.image(2), 7);
        assert_eq!(sigma.image(10), 8);
        assert_eq!(sigma.compose(&sigma.inverse()), ModePermutation::identity());
        let first: Vec<Mode> = [1, 2, 3].iter().map(|&m| sigma.image(m)).collect();
        assert_eq!(first, vec![1, 7, 10]);
        assert!(ModePermutation::new([1, 1, 3, 4, 5, 6, 7, 8, 9, 10]).is_err());
    }

    #[test]
    fn grouping_is_consistent() {
        let g = ModeGrouping::standard();
        g.validate().unwrap();
        assert_eq!(g.idle_outputs(), vec![3, 4, 5, 8]);
    }

    #[test]
    fn single_row_completes_to_identity() {
        let m = complete_to_unitary(&[vec![c(1.0), c(0.0)]], 2).unwrap();
        assert_eq!(m, CMatrix::identity(2, 2));
    }

    #[test]
    fn two_by_two_completion_is_conjugate_row_up_to_phase() {
        let xi = Complex64::new(0.6, 0.0);
        let tau = Complex64::new(0.0, 0.8);
        let m = complete_to_unitary(&[vec![xi, tau]], 2).unwrap();
        let expected = [tau.conj(), -xi.conj()];
        let overlap = m[(1, 0)] * expected[0].conj() + m[(1, 1)] * expected[1].conj();
        assert!((overlap.norm() - 1.0).abs() < 1e-14);
        assert!(unitarity_residual(&m) < 1e-15);
    }

    #[test]
    fn non_orthonormal_rows_rejected() {
        let rows = [vec![c(1.0), c(0.0)], vec![c(1.0), c(0.0)]];
        assert!(matches!(complete_to_unitary(&rows, 2), Err(Error::NotOrthonormal { .. })));
        assert!(matches!(complete_to_unitary(&[vec![c(2.0), c(0.0)]], 2), Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn fixed_stage_first_columns() {
        let (stage1, _) = build_fixed_stages();
        assert!(unitarity_residual(&stage1) < UNITARITY_TOLERANCE);
        let third = 1.0 / 3f64.sqrt();
        for (col, rows, value) in [(0, [0, 1, 2].as_slice(), third), (5, &[5, 6], FRAC_1_SQRT_2), (7, &[7, 8, 9], third)] {
            for i in 0..NUM_MODES {
                let expected = if rows.contains(&i) { value } else { 0.0 };
                assert!((stage1[(i, col)] - c(expected)).norm() < 1e-15, "column {col} row {i}");
            }
        }
    }

    #[test]
    fn mode_unitary_rejects_bad_input() {
        let m = CMatrix::identity(2, 2);
        assert!(ModeUnitary::new(m.clone(), vec![1]).is_err());
        assert!(ModeUnitary::new(m.clone(), vec![1, 11]).is_err());
        assert!(ModeUnitary::new(m * c(2.0), vec![1, 2]).is_err());
    }

    #[test]
    fn random_unitary_is_unitary() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let u = random_unitary(10, &mut rng);
        assert!(unitarity_residual(&u) < 1e-12);
    }
}
