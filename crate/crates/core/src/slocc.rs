//! GHZ-class states reached from `|GHZ>` by local filtering.
//!
//! A GHZ-class state with parameters `(chi, theta, alpha_1..3)` is
//! `sqrt(K)(cos chi |000> + sin chi e^{i theta} |s1 s2 s3>)`, with
//! `|s_i> = cos alpha_i |0> + sin alpha_i |1>` and
//! `K = 1 / (1 + 2 cos chi sin chi cos alpha_1 cos alpha_2 cos alpha_3 cos theta)`.
//! The local operator `M = sqrt(2K) M1 ⊗ M2 ⊗ M3` maps `|GHZ>` onto it; as a
//! two-outcome measurement with success operator `M / ||M||` it succeeds with
//! probability `1 / ||M||^2`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix2, SMatrix, SymmetricEigen, Vector2};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::protocol::SUCCESS_PROBABILITY;
use crate::schmidt::ThreeQubitState;

pub type Matrix8c = SMatrix<Complex64, 8, 8>;

/// Slack allowed on `P^dagger P <= 1`.
pub const POVM_TOLERANCE: f64 = 1e-10;

/// Open lower ends of the parameter ranges are enforced at this tolerance.
const RANGE_TOLERANCE: f64 = 1e-15;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GhzClassParams {
    pub chi: f64,
    pub theta: f64,
    pub alpha: [f64; 3],
}

impl GhzClassParams {
    /// `chi` in `(0, pi/4]`, `theta` in `[0, 2 pi)`, each `alpha_i` in `(0, pi/2]`.
    pub fn new(chi: f64, theta: f64, alpha: [f64; 3]) -> Result<Self> {
        if !(chi > RANGE_TOLERANCE && chi <= FRAC_PI_4 + RANGE_TOLERANCE) {
            return Err(Error::ParameterOutOfRange { name: "chi", value: chi });
        }
        if !(0.0..2.0 * PI).contains(&theta) {
            return Err(Error::ParameterOutOfRange { name: "theta", value: theta });
        }
        for a in alpha {
            if !(a > RANGE_TOLERANCE && a <= FRAC_PI_2 + RANGE_TOLERANCE) {
                return Err(Error::ParameterOutOfRange { name: "alpha", value: a });
            }
        }
        Ok(Self { chi, theta, alpha })
    }

    /// The GHZ state itself: `chi = pi/4`, `theta = 0`, `alpha_i = pi/2`.
    pub fn ghz_point() -> Self {
        Self { chi: FRAC_PI_4, theta: 0.0, alpha: [FRAC_PI_2; 3] }
    }

    /// Symmetric slice `(chi, pi, alpha, alpha, alpha)`.
    pub fn symmetric(chi: f64, alpha: f64) -> Result<Self> {
        Self::new(chi, PI, [alpha; 3])
    }

    /// Normalisation constant `K`.
    pub fn normalization(&self) -> f64 {
        let [a1, a2, a3] = self.alpha;
        let overlap = 2.0 * self.chi.cos() * self.chi.sin() * a1.cos() * a2.cos() * a3.cos() * self.theta.cos();
        1.0 / (1.0 + overlap)
    }

    fn local_state(&self, i: usize) -> Vector2<Complex64> {
        Vector2::new(c(self.alpha[i].cos()), c(self.alpha[i].sin()))
    }
}

pub fn ghz_class_state(params: &GhzClassParams) -> ThreeQubitState {
    let k = params.normalization();
    let weight = Complex64::from_polar(params.chi.sin(), params.theta);
    let s = [params.local_state(0), params.local_state(1), params.local_state(2)];
    let mut amplitudes = [c(0.0); 8];
    for (idx, amp) in amplitudes.iter_mut().enumerate() {
        *amp = weight * s[0][idx >> 2] * s[1][(idx >> 1) & 1] * s[2][idx & 1];
    }
    amplitudes[0] += c(params.chi.cos());
    ThreeQubitState::normalized(amplitudes.map(|z| z * k.sqrt()))
        .expect("GHZ-class amplitudes are nonzero within range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NormKind {
    #[default]
    Spectral,
    Frobenius,
}

impl FromStr for NormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "spectral" => Ok(Self::Spectral),
            "frobenius" => Ok(Self::Frobenius),
            other => Err(Error::Parse(format!("unknown norm {other:?}"))),
        }
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Spectral => write!(f, "spectral"),
            Self::Frobenius => write!(f, "frobenius"),
        }
    }
}

pub fn kron2(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> SMatrix<Complex64, 4, 4> {
    SMatrix::<Complex64, 4, 4>::from_fn(|r, col| a[(r >> 1, col >> 1)] * b[(r & 1, col & 1)])
}

/// Local filter taking `|GHZ>` to a GHZ-class state.
#[derive(Clone, Debug, PartialEq)]
pub struct SloccOperator {
    pub params: GhzClassParams,
    /// The three 2x2 factors without the `sqrt(2K)` prefactor.
    pub factors: [Matrix2<Complex64>; 3],
    pub scale: f64,
    pub matrix: Matrix8c,
    pub norm_kind: NormKind,
}

pub fn slocc_operator(params: &GhzClassParams, norm_kind: NormKind) -> SloccOperator {
    let (sc, cc) = (params.chi.sin(), params.chi.cos());
    let e = Complex64::from_polar(1.0, params.theta);
    let [a1, a2, a3] = params.alpha;
    let first = Matrix2::new(c(cc), e * sc * a1.cos(), c(0.0), e * sc * a1.sin());
    let factor = |a: f64| Matrix2::new(c(1.0), c(a.cos()), c(0.0), c(a.sin()));
    let factors = [first, factor(a2), factor(a3)];
    let scale = (2.0 * params.normalization()).sqrt();
    let inner = kron2(&factors[1], &factors[2]);
    let matrix = Matrix8c::from_fn(|r, col| {
        factors[0][(r >> 2, col >> 2)] * inner[(r & 3, col & 3)] * scale
    });
    SloccOperator { params: *params, factors, scale, matrix, norm_kind }
}

impl SloccOperator {
    /// Eigenvalues of `M^dagger M`, ascending.
    pub fn gram_eigenvalues(&self) -> Vec<f64> {
        let gram = self.matrix.adjoint() * self.matrix;
        let mut values: Vec<f64> = SymmetricEigen::new(gram).eigenvalues.iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values
    }

    pub fn spectral_norm(&self) -> f64 {
        self.gram_eigenvalues().last().copied().unwrap_or(0.0).max(0.0).sqrt()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm(&self) -> f64 {
        match self.norm_kind {
            NormKind::Spectral => self.spectral_norm(),
            NormKind::Frobenius => self.frobenius_norm(),
        }
    }

    /// Success branch `P = M / ||M||` of the filtering measurement.
    pub fn success_operator(&self) -> Matrix8c {
        self.matrix / c(self.norm())
    }

    /// `1 / ||M||^2`, after checking `P^dagger P <= 1`.
    pub fn success_probability(&self) -> Result<f64> {
        let norm = self.norm();
        let max_eigenvalue = self.gram_eigenvalues().last().copied().unwrap_or(0.0) / (norm * norm);
        if max_eigenvalue.is_nan() || max_eigenvalue > 1.0 + POVM_TOLERANCE {
            return Err(Error::InvalidPovm { max_eigenvalue });
        }
        Ok(1.0 / (norm * norm))
    }

    /// `M |psi>` without renormalisation.
    pub fn apply(&self, state: &ThreeQubitState) -> [Complex64; 8] {
        let v = SMatrix::<Complex64, 8, 1>::from_column_slice(state.amplitudes());
        let out = self.matrix * v;
        let mut amplitudes = [c(0.0); 8];
        amplitudes.copy_from_slice(out.as_slice());
        amplitudes
    }
}

/// Rectangular grid over `(chi, alpha)` for the symmetric slice `theta = pi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepGrid {
    pub chi_range: (f64, f64),
    pub alpha_range: (f64, f64),
    pub chi_points: usize,
    pub alpha_points: usize,
}

impl SweepGrid {
    pub const DEFAULT_CHI_RANGE: (f64, f64) = (0.01, FRAC_PI_4);
    pub const DEFAULT_ALPHA_RANGE: (f64, f64) = (0.001, FRAC_PI_2);

    pub fn new(chi_points: usize, alpha_points: usize) -> Result<Self> {
        Self::with_ranges(Self::DEFAULT_CHI_RANGE, Self::DEFAULT_ALPHA_RANGE, chi_points, alpha_points)
    }

    pub fn with_ranges(
        chi_range: (f64, f64),
        alpha_range: (f64, f64),
        chi_points: usize,
        alpha_points: usize,
    ) -> Result<Self> {
        for (name, n) in [("chi points", chi_points), ("alpha points", alpha_points)] {
            if n < 2 {
                return Err(Error::ParameterOutOfRange { name, value: n as f64 });
            }
        }
        // validates both corners
        GhzClassParams::symmetric(chi_range.0, alpha_range.0)?;
        GhzClassParams::symmetric(chi_range.1, alpha_range.1)?;
        if chi_range.0 >= chi_range.1 || alpha_range.0 >= alpha_range.1 {
            return Err(Error::Parse("grid ranges must be increasing".into()));
        }
        Ok(Self { chi_range, alpha_range, chi_points, alpha_points })
    }

    fn point(range: (f64, f64), k: usize, n: usize) -> f64 {
        if k == n - 1 {
            return range.1;
        }
        range.0 + (range.1 - range.0) * k as f64 / (n - 1) as f64
    }

    pub fn chi(&self, k: usize) -> f64 {
        Self::point(self.chi_range, k, self.chi_points)
    }

    pub fn alpha(&self, k: usize) -> f64 {
        Self::point(self.alpha_range, k, self.alpha_points)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint {
    pub chi: f64,
    pub alpha: f64,
    pub p_succ: f64,
}

/// Row-major (chi, then alpha) table of success probabilities.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub grid: SweepGrid,
    pub norm_kind: NormKind,
    pub points: Vec<SweepPoint>,
}

impl SweepTable {
    pub fn get(&self, chi_index: usize, alpha_index: usize) -> &SweepPoint {
        &self.points[chi_index * self.grid.alpha_points + alpha_index]
    }

    pub fn minimum(&self) -> &SweepPoint {
        self.points
            .iter()
            .min_by(|a, b| a.p_succ.total_cmp(&b.p_succ))
            .expect("grid has at least four points")
    }

    /// Cells where filtering does worse than the optical protocol's `1/18`.
    pub fn below_protocol(&self) -> Vec<&SweepPoint> {
        self.points.iter().filter(|p| p.p_succ < SUCCESS_PROBABILITY).collect()
    }

    /// Whether `p_succ` at `chi = pi/4` falls strictly as `alpha` falls over
    /// the first `cells` grid columns.
    pub fn vanishes_at_corner(&self, cells: usize) -> bool {
        let row = self.grid.chi_points - 1;
        let cells = cells.min(self.grid.alpha_points);
        (1..cells).all(|k| self.get(row, k - 1).p_succ < self.get(row, k).p_succ)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("chi,alpha,p_succ\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{}\n",
                format_significant(p.chi, 12),
                format_significant(p.alpha, 12),
                format_significant(p.p_succ, 12)
            ));
        }
        out
    }
}

/// Evaluates the success probability on every grid cell, in parallel.
pub fn sweep(grid: &SweepGrid, norm_kind: NormKind) -> Result<SweepTable> {
    let points = (0..grid.chi_points * grid.alpha_points)
        .into_par_iter()
        .map(|idx| {
            let chi = grid.chi(idx / grid.alpha_points);
            let alpha = grid.alpha(idx % grid.alpha_points);
            let params = GhzClassParams::symmetric(chi, alpha)?;
            let p_succ = slocc_operator(&params, norm_kind).success_probability()?;
            Ok(SweepPoint { chi, alpha, p_succ })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { grid: *grid, norm_kind, points })
}

/// `%.{digits}g`-style formatting.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent present");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if exponent < -4 || exponent >= digits as i32 {
        let sign = if exponent < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim(mantissa), sign, exponent.abs())
    } else {
        let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
        trim(&format!("{:.*}", decimals, x))
    }
}
