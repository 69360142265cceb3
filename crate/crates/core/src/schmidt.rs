//! Three-qubit states and their five-term canonical form under local unitaries.
//!
//! Every pure three-qubit state can be written as
//! `(L1 ⊗ L2 ⊗ L3)(a|000> + b e^{i phi}|100> + c|110> + d|101> + e|111>)`
//! with `a..e >= 0` and `phi` in `[0, pi]`. [`decompose`] finds such a form:
//!
//! 1. Split the amplitudes into the 2x2 slices `T0`, `T1` of the first qubit.
//! 2. Rotate the first qubit so the new `|0>` slice `s T0 + t T1` is singular,
//!    i.e. solve the homogeneous quadratic `det(s T0 + t T1) = 0`.
//! 3. Rotate qubits 2 and 3 so that rank-one slice becomes `a|00>`.
//! 4. Remove four of the five remaining phases with diagonal local unitaries.
//!
//! The two roots of the quadratic leave residual phases of opposite sign, so
//! the root whose phase lands in `[0, pi]` is kept.

use std::f64::consts::PI;

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Matrix2c = Matrix2<Complex64>;

/// Normalization tolerance for states and canonical parameters.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Below this, quadratic coefficients or slice entries count as zero.
const DEGENERACY_TOLERANCE: f64 = 1e-12;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn phase_of(z: Complex64) -> Complex64 {
    let n = z.norm();
    if n > 0.0 {
        z / n
    } else {
        c(1.0)
    }
}

/// Basis index of `|ijk>` in lexicographic order.
pub fn basis_index(i: usize, j: usize, k: usize) -> usize {
    (i << 2) | (j << 1) | k
}

/// Pure state of three qubits, amplitudes in lexicographic `|ijk>` order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateJson", into = "StateJson")]
pub struct ThreeQubitState {
    amplitudes: [Complex64; 8],
}

#[derive(Serialize, Deserialize)]
struct StateJson {
    amplitudes: Vec<[f64; 2]>,
}

impl TryFrom<StateJson> for ThreeQubitState {
    type Error = Error;

    fn try_from(raw: StateJson) -> Result<Self> {
        let amplitudes: [Complex64; 8] = raw
            .amplitudes
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect::<Vec<_>>()
            .try_into()
            .map_err(|v: Vec<_>| Error::DimensionMismatch { expected: 8, got: v.len() })?;
        Self::new(amplitudes)
    }
}

impl From<ThreeQubitState> for StateJson {
    fn from(state: ThreeQubitState) -> Self {
        Self { amplitudes: state.amplitudes.iter().map(|z| [z.re, z.im]).collect() }
    }
}

impl ThreeQubitState {
    /// Fails unless the amplitudes have unit norm to `1e-10`.
    pub fn new(amplitudes: [Complex64; 8]) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes })
    }

    pub fn normalized(amplitudes: [Complex64; 8]) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes: amplitudes.map(|z| z / norm) })
    }

    pub fn basis(i: usize, j: usize, k: usize) -> Self {
        let mut amplitudes = [c(0.0); 8];
        amplitudes[basis_index(i, j, k)] = c(1.0);
        Self { amplitudes }
    }

    pub fn ghz() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amplitudes = [c(0.0); 8];
        amplitudes[0] = c(h);
        amplitudes[7] = c(h);
        Self { amplitudes }
    }

    /// `(|100> + |010> + |001>)/sqrt(3)`.
    pub fn w() -> Self {
        let t = 1.0 / 3f64.sqrt();
        let mut amplitudes = [c(0.0); 8];
        for idx in [4, 2, 1] {
            amplitudes[idx] = c(t);
        }
        Self { amplitudes }
    }

    /// Tensor product of three single-qubit states (normalized here).
    pub fn product(qubits: [[Complex64; 2]; 3]) -> Result<Self> {
        let mut amplitudes = [c(0.0); 8];
        for (idx, amp) in amplitudes.iter_mut().enumerate() {
            *amp = qubits[0][idx >> 2] * qubits[1][(idx >> 1) & 1] * qubits[2][idx & 1];
        }
        Self::normalized(amplitudes)
    }

    pub fn amplitudes(&self) -> &[Complex64; 8] {
        &self.amplitudes
    }

    pub fn amplitude(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.amplitudes[basis_index(i, j, k)]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// `(L1 ⊗ L2 ⊗ L3)|self>`.
    pub fn apply_local(&self, locals: &[Matrix2c; 3]) -> Self {
        let mut out = [c(0.0); 8];
        for (row, slot) in out.iter_mut().enumerate() {
            let (i, j, k) = (row >> 2, (row >> 1) & 1, row & 1);
            for col in 0..8 {
                let (p, q, r) = (col >> 2, (col >> 1) & 1, col & 1);
                *slot += locals[0][(i, p)] * locals[1][(j, q)] * locals[2][(k, r)] * self.amplitudes[col];
            }
        }
        Self { amplitudes: out }
    }

    /// First-qubit slices: `T_i[(j, k)] = alpha_ijk`.
    pub fn slices(&self) -> [Matrix2c; 2] {
        let a = &self.amplitudes;
        [
            Matrix2c::new(a[0], a[1], a[2], a[3]),
            Matrix2c::new(a[4], a[5], a[6], a[7]),
        ]
    }
}

/// Seeded random state: eight complex Gaussian draws, normalized.
pub fn random_state(seed: u64) -> ThreeQubitState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut amplitudes = [c(0.0); 8];
    for amp in amplitudes.iter_mut() {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        *amp = Complex64::new(re, im);
    }
    ThreeQubitState::normalized(amplitudes).expect("Gaussian draws are almost surely nonzero")
}

/// Five-term canonical coefficients plus the local unitaries that map the
/// canonical core back onto the original state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CanonicalJson", into = "CanonicalJson")]
pub struct CanonicalParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub phi: f64,
    pub locals: [Matrix2c; 3],
}

#[derive(Serialize, Deserialize)]
struct CanonicalJson {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
    phi: f64,
    locals: Vec<[[[f64; 2]; 2]; 2]>,
}

impl TryFrom<CanonicalJson> for CanonicalParams {
    type Error = Error;

    fn try_from(raw: CanonicalJson) -> Result<Self> {
        if raw.locals.len() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, got: raw.locals.len() });
        }
        let to_matrix = |m: &[[[f64; 2]; 2]; 2]| {
            Matrix2c::from_fn(|i, j| Complex64::new(m[i][j][0], m[i][j][1]))
        };
        let locals = [to_matrix(&raw.locals[0]), to_matrix(&raw.locals[1]), to_matrix(&raw.locals[2])];
        Self::new([raw.a, raw.b, raw.c, raw.d, raw.e], raw.phi, locals)
    }
}

impl From<CanonicalParams> for CanonicalJson {
    fn from(p: CanonicalParams) -> Self {
        let to_pairs = |m: &Matrix2c| {
            let mut out = [[[0.0; 2]; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] = [m[(i, j)].re, m[(i, j)].im];
                }
            }
            out
        };
        Self {
            a: p.a,
            b: p.b,
            c: p.c,
            d: p.d,
            e: p.e,
            phi: p.phi,
            locals: p.locals.iter().map(to_pairs).collect(),
        }
    }
}

impl CanonicalParams {
    /// Validates nonnegativity, `phi` in `[0, pi]`, unit norm and unitary locals.
    pub fn new(coefficients: [f64; 5], phi: f64, locals: [Matrix2c; 3]) -> Result<Self> {
        let names = ["a", "b", "c", "d", "e"];
        for (name, &value) in names.iter().zip(&coefficients) {
            if value.is_nan() || value < 0.0 {
                return Err(Error::ParameterOutOfRange { name, value });
            }
        }
        if !(0.0..=PI).contains(&phi) {
            return Err(Error::ParameterOutOfRange { name: "phi", value: phi });
        }
        let residual = (coefficients.iter().map(|x| x * x).sum::<f64>() - 1.0).abs();
        if residual > NORM_TOLERANCE {
            return Err(Error::ConstraintViolation { name: "a^2+b^2+c^2+d^2+e^2=1", residual });
        }
        for l in &locals {
            let residual = (l.adjoint() * l - Matrix2c::identity()).iter().map(|z| z.norm()).fold(0.0, f64::max);
            if residual > NORM_TOLERANCE {
                return Err(Error::NotUnitary { residual });
            }
        }
        let [a, b, c, d, e] = coefficients;
        Ok(Self { a, b, c, d, e, phi, locals })
    }

    /// Canonical parameters with identity locals.
    pub fn core_only(coefficients: [f64; 5], phi: f64) -> Result<Self> {
        Self::new(coefficients, phi, [Matrix2c::identity(); 3])
    }

    pub fn coefficients(&self) -> [f64; 5] {
        [self.a, self.b, self.c, self.d, self.e]
    }

    /// `a|000> + b e^{i phi}|100> + c|110> + d|101> + e|111>`.
    pub fn core_state(&self) -> ThreeQubitState {
        let mut amplitudes = [c(0.0); 8];
        amplitudes[basis_index(0, 0, 0)] = c(self.a);
        amplitudes[basis_index(1, 0, 0)] = Complex64::from_polar(self.b, self.phi);
        amplitudes[basis_index(1, 1, 0)] = c(self.c);
        amplitudes[basis_index(1, 0, 1)] = c(self.d);
        amplitudes[basis_index(1, 1, 1)] = c(self.e);
        ThreeQubitState { amplitudes }
    }
}

/// Applies the local unitaries to the canonical core.
pub fn reconstruct(params: &CanonicalParams) -> Result<ThreeQubitState> {
    let checked = CanonicalParams::new(params.coefficients(), params.phi, params.locals)?;
    let state = checked.core_state().apply_local(&checked.locals);
    ThreeQubitState::new(*state.amplitudes())
}

/// Homogeneous roots `(s, t)` of `det(s T0 + t T1) = 0`, normalized.
fn slice_roots(t0: &Matrix2c, t1: &Matrix2c) -> Vec<(Complex64, Complex64)> {
    let qa = t0.determinant();
    let qb = t0[(0, 0)] * t1[(1, 1)] + t1[(0, 0)] * t0[(1, 1)]
        - t0[(0, 1)] * t1[(1, 0)]
        - t1[(0, 1)] * t0[(1, 0)];
    let qc = t1.determinant();
    if qa.norm() < DEGENERACY_TOLERANCE && qb.norm() < DEGENERACY_TOLERANCE && qc.norm() < DEGENERACY_TOLERANCE {
        return vec![(c(1.0), c(0.0))];
    }
    // qa s^2 + qb s t + qc t^2 = 0, roots (q, qa) and (qc, q) with the
    // sign of the square root chosen against cancellation
    let disc = (qb * qb - qa * qc * 4.0).sqrt();
    let plus = qb + disc;
    let minus = qb - disc;
    let q = if plus.norm() >= minus.norm() { -plus / 2.0 } else { -minus / 2.0 };
    let mut roots = Vec::with_capacity(2);
    for (s, t) in [(q, qa), (qc, q)] {
        let n = (s.norm_sqr() + t.norm_sqr()).sqrt();
        if n < DEGENERACY_TOLERANCE {
            continue;
        }
        let root = (s / n, t / n);
        // rotation with first row (s, t) is only defined up to phase: fix
        // the first nonzero component real and positive
        let ph = if root.0.norm() > DEGENERACY_TOLERANCE { phase_of(root.0) } else { phase_of(root.1) };
        roots.push((root.0 / ph, root.1 / ph));
    }
    if roots.is_empty() {
        roots.push((c(1.0), c(0.0)));
    }
    roots
}

/// Unitary with first column `u`.
fn unitary_with_first_column(u: [Complex64; 2]) -> Matrix2c {
    Matrix2c::new(u[0], -u[1].conj(), u[1], u[0].conj())
}

struct Candidate {
    params: CanonicalParams,
    in_range: bool,
}

fn canonicalize_root(slices: &[Matrix2c; 2], root: (Complex64, Complex64)) -> Candidate {
    let (s, t) = root;
    // first-qubit rotation G with rows (s, t) and (-t*, s*)
    let g = Matrix2c::new(s, t, -t.conj(), s.conj());
    let zero_slice = slices[0] * g[(0, 0)] + slices[1] * g[(0, 1)];
    let one_slice = slices[0] * g[(1, 0)] + slices[1] * g[(1, 1)];

    // rank-one factorisation zero_slice = sigma * u v^T
    let col0 = zero_slice.column(0).norm();
    let col1 = zero_slice.column(1).norm();
    let (l2, l3) = if col0.max(col1) < DEGENERACY_TOLERANCE {
        (Matrix2c::identity(), Matrix2c::identity())
    } else {
        let column = if col0 >= col1 { zero_slice.column(0) } else { zero_slice.column(1) };
        let norm = column.norm();
        let u = [column[0] / norm, column[1] / norm];
        // v^T = u^dagger zero_slice
        let v0 = u[0].conj() * zero_slice[(0, 0)] + u[1].conj() * zero_slice[(1, 0)];
        let v1 = u[0].conj() * zero_slice[(0, 1)] + u[1].conj() * zero_slice[(1, 1)];
        let vn = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
        (unitary_with_first_column(u), unitary_with_first_column([v0 / vn, v1 / vn]))
    };
    // slices transform as T -> L2^dagger T conj(L3)
    let to_local = |m: &Matrix2c| l2.adjoint() * m * l3.map(|z| z.conj());
    let n0 = to_local(&zero_slice);
    let n1 = to_local(&one_slice);

    let a = n0[(0, 0)];
    let b = n1[(0, 0)];
    let d = n1[(0, 1)];
    let cc = n1[(1, 0)];
    let e = n1[(1, 1)];

    // diagonal gauge: phases p1 on qubit-1 |1>, p2 on qubit-2 |1>, p3 on
    // qubit-3 |1>, p0 on qubit-1 |0>. Term phases: b:p1, c:p1+p2, d:p1+p3,
    // e:p1+p2+p3, a:p0. Four of the five can be made real.
    let arg = |z: Complex64| z.arg();
    let small = |z: Complex64| z.norm() < DEGENERACY_TOLERANCE;
    let (p1, p2, p3) = if !small(cc) && !small(d) && !small(e) {
        // c, d, e fix all three; whatever phase b has left is the invariant one
        let p1 = -arg(cc) - arg(d) + arg(e);
        (p1, -arg(cc) - p1, -arg(d) - p1)
    } else if small(cc) {
        let p1 = -arg(b);
        let p3 = -arg(d) - p1;
        (p1, -arg(e) - p1 - p3, p3)
    } else if small(d) {
        let p1 = -arg(b);
        let p2 = -arg(cc) - p1;
        (p1, p2, -arg(e) - p1 - p2)
    } else {
        let p1 = -arg(b);
        (p1, -arg(cc) - p1, -arg(d) - p1)
    };
    let p0 = -arg(a);
    let rot = |x: f64| Complex64::from_polar(1.0, x);
    let b_phased = b * rot(p1);
    let mut phi = if small(b) { 0.0 } else { b_phased.arg() };
    // -pi and pi describe the same phase
    if phi <= -PI + 1e-15 {
        phi = PI;
    }
    let in_range = (0.0..=PI).contains(&phi);

    let mut coefficients = [a.norm(), b.norm(), cc.norm(), d.norm(), e.norm()];
    let total = coefficients.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in coefficients.iter_mut() {
        *x /= total;
    }

    let d1 = Matrix2c::new(rot(p0), c(0.0), c(0.0), rot(p1));
    let d2 = Matrix2c::new(c(1.0), c(0.0), c(0.0), rot(p2));
    let d3 = Matrix2c::new(c(1.0), c(0.0), c(0.0), rot(p3));
    // state = (G^dagger ⊗ L2 ⊗ L3) N and canonical = (D1 ⊗ D2 ⊗ D3) N
    let locals = [g.adjoint() * d1.adjoint(), l2 * d2.adjoint(), l3 * d3.adjoint()];
    let params = CanonicalParams {
        a: coefficients[0],
        b: coefficients[1],
        c: coefficients[2],
        d: coefficients[3],
        e: coefficients[4],
        phi: phi.clamp(0.0, PI),
        locals,
    };
    Candidate { params, in_range }
}

/// Canonical form of a normalized three-qubit state.
///
/// When both roots of the slice quadratic give a phase in range, the one with
/// the smaller `a` wins, then the smaller `phi`, then the first root found.
pub fn decompose(state: &ThreeQubitState) -> Result<CanonicalParams> {
    let norm = state.norm();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized { norm });
    }
    let slices = state.slices();
    let candidates: Vec<Candidate> = slice_roots(&slices[0], &slices[1])
        .into_iter()
        .map(|root| canonicalize_root(&slices, root))
        .collect();
    let mut best: Option<&Candidate> = None;
    for cand in &candidates {
        best = match best {
            None => Some(cand),
            Some(current) => {
                let better = match (cand.in_range, current.in_range) {
                    (true, false) => true,
                    (false, true) => false,
                    _ => {
                        let da = cand.params.a - current.params.a;
                        if da.abs() > DEGENERACY_TOLERANCE {
                            da < 0.0
                        } else {
                            cand.params.phi < current.params.phi - DEGENERACY_TOLERANCE
                        }
                    }
                };
                Some(if better { cand } else { current })
            }
        };
    }
    let params = best.expect("at least one root").params.clone();
    // run through validation so callers only ever see well-formed parameters
    CanonicalParams::new(params.coefficients(), params.phi, params.locals)
}

/// Amplitudes left on `|001>`, `|010>`, `|011>` when only the five canonical
/// terms are kept; used to check the form leaves nothing behind.
pub fn off_canonical_residual(state: &ThreeQubitState, params: &CanonicalParams) -> f64 {
    let inverse = [
        params.locals[0].adjoint(),
        params.locals[1].adjoint(),
        params.locals[2].adjoint(),
    ];
    let core = state.apply_local(&inverse);
    [basis_index(0, 0, 1), basis_index(0, 1, 0), basis_index(0, 1, 1)]
        .iter()
        .map(|&idx| core.amplitudes()[idx].norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-10;

    fn assert_roundtrip(state: &ThreeQubitState) -> CanonicalParams {
        let params = decompose(state).unwrap();
        let back = reconstruct(&params).unwrap();
        assert!(state.fidelity(&back) >= 1.0 - 1e-9, "fidelity {}", state.fidelity(&back));
        assert!(off_canonical_residual(state, &params) < 1e-9);
        params
    }

    #[test]
    fn ghz_is_already_canonical() {
        let p = assert_roundtrip(&ThreeQubitState::ghz());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((p.a - h).abs() < TOL && (p.e - h).abs() < TOL);
        assert!(p.b < TOL && p.c < TOL && p.d < TOL);
        for l in &p.locals {
            assert!((l - Matrix2c::identity()).norm() < TOL);
        }
    }

    #[test]
    fn basis_state_000() {
        let p = assert_roundtrip(&ThreeQubitState::basis(0, 0, 0));
        assert!((p.a - 1.0).abs() < TOL);
        assert!(p.b + p.c + p.d + p.e < TOL);
    }

    #[test]
    fn w_state_canonical_values() {
        // pinned from a BFGS fit of infidelity over canonical parameters and SU(2) locals
        let p = assert_roundtrip(&ThreeQubitState::w());
        let t = 1.0 / 3f64.sqrt();
        let expected = [t, 0.0, t, t, 0.0];
        for (got, want) in p.coefficients().iter().zip(expected) {
            assert!((got - want).abs() < TOL, "{:?}", p.coefficients());
        }
        assert_eq!(p.phi, 0.0);
    }

    #[test]
    fn every_basis_state_round_trips() {
        for idx in 0..8 {
            assert_roundtrip(&ThreeQubitState::basis(idx >> 2, (idx >> 1) & 1, idx & 1));
        }
    }

    #[test]
    fn non_normalized_input_is_rejected() {
        let mut amps = [c(0.0); 8];
        amps[0] = c(2.0);
        assert!(ThreeQubitState::new(amps).is_err());
        let bogus = ThreeQubitState { amplitudes: amps };
        assert!(matches!(decompose(&bogus), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn reconstruct_rejects_bad_constraints() {
        let mut p = CanonicalParams::core_only([1.0, 0.0, 0.0, 0.0, 0.0], 0.0).unwrap();
        p.b = 0.5;
        assert!(matches!(reconstruct(&p), Err(Error::ConstraintViolation { .. })));
        assert!(CanonicalParams::core_only([1.0, 0.0, 0.0, 0.0, 0.0], -0.1).is_err());
        assert!(CanonicalParams::core_only([-1.0, 0.0, 0.0, 0.0, 0.0], 0.0).is_err());
    }

    #[test]
    fn core_only_reconstruction() {
        let p = CanonicalParams::core_only([1.0, 0.0, 0.0, 0.0, 0.0], 0.0).unwrap();
        assert_eq!(reconstruct(&p).unwrap(), ThreeQubitState::basis(0, 0, 0));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let p = CanonicalParams::core_only([h, 0.0, 0.0, 0.0, h], 0.0).unwrap();
        assert!(reconstruct(&p).unwrap().fidelity(&ThreeQubitState::ghz()) > 1.0 - 1e-15);
    }

    #[test]
    fn random_state_is_seeded() {
        let s = random_state(11);
        assert!((s.norm() - 1.0).abs() < 1e-12);
        assert_eq!(s, random_state(11));
        assert!(s.fidelity(&random_state(12)) < 1.0 - 1e-6);
    }

    #[test]
    fn json_round_trip() {
        let state = random_state(3);
        let text = serde_json::to_string(&state).unwrap();
        let back: ThreeQubitState = serde_json::from_str(&text).unwrap();
        assert_eq!(back, state);
        let params = decompose(&state).unwrap();
        let back: CanonicalParams = serde_json::from_str(&serde_json::to_string(&params).unwrap()).unwrap();
        assert_eq!(back, params);
        assert!(serde_json::from_str::<ThreeQubitState>(r#"{"amplitudes": [[1,0],[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]}"#).is_err());
        assert!(serde_json::from_str::<ThreeQubitState>(r#"{"amplitudes": [[1,0]]}"#).is_err());
    }
}
