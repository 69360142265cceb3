//! Closed-form multi-particle transition amplitudes.
//!
//! Bosonic amplitudes are permanents and fermionic amplitudes determinants of
//! the submatrix of the mode transformation selected by the occupied modes.
//! Nothing here goes through [`crate::fock::OperatorPolynomial`], so the two
//! can be checked against each other.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{ExchangeStatistics, FockBasisState, StatisticsKind};

/// Permanent by Ryser's inclusion-exclusion formula.
pub fn permanent(matrix: &DMatrix<Complex64>) -> Complex64 {
    let n = matrix.nrows();
    assert_eq!(n, matrix.ncols(), "permanent needs a square matrix");
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut total = Complex64::new(0.0, 0.0);
    for subset in 1u64..(1u64 << n) {
        let mut product = Complex64::new(1.0, 0.0);
        for i in 0..n {
            let row_sum: Complex64 = (0..n)
                .filter(|&j| subset & (1 << j) != 0)
                .map(|j| matrix[(i, j)])
                .sum();
            product *= row_sum;
        }
        if subset.count_ones() % 2 == 0 {
            total += product;
        } else {
            total -= product;
        }
    }
    if n % 2 == 1 {
        -total
    } else {
        total
    }
}

/// Determinant; closed form up to 3x3, partial-pivot elimination beyond.
pub fn determinant(matrix: &DMatrix<Complex64>) -> Complex64 {
    let n = matrix.nrows();
    assert_eq!(n, matrix.ncols(), "determinant needs a square matrix");
    let m = |i, j| matrix[(i, j)];
    match n {
        0 => Complex64::new(1.0, 0.0),
        1 => m(0, 0),
        2 => m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0),
        3 => {
            m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
        }
        _ => {
            let mut a = matrix.clone();
            let mut det = Complex64::new(1.0, 0.0);
            for col in 0..n {
                let pivot = (col..n)
                    .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
                    .unwrap();
                if a[(pivot, col)].norm() == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                if pivot != col {
                    a.swap_rows(pivot, col);
                    det = -det;
                }
                det *= a[(col, col)];
                for row in col + 1..n {
                    let f = a[(row, col)] / a[(col, col)];
                    for k in col..n {
                        let v = a[(col, k)];
                        a[(row, k)] -= f * v;
                    }
                }
            }
            det
        }
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `<output| U(T) |input>` for the Fock-space map induced by `transform`.
///
/// `transform` follows the column convention `a+_j -> sum_i T_ij a+_i`.
pub fn transition_amplitude(
    input: &FockBasisState,
    output: &FockBasisState,
    transform: &DMatrix<Complex64>,
    statistics: ExchangeStatistics,
) -> Result<Complex64> {
    if input.particle_number() != output.particle_number() {
        return Err(Error::ParticleNumberMismatch {
            input: input.particle_number(),
            output: output.particle_number(),
        });
    }
    let dim = transform.nrows();
    if transform.ncols() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: transform.ncols() });
    }
    for state in [input, output] {
        if state.num_modes() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: state.num_modes() });
        }
    }
    let rows = output.mode_list();
    let cols = input.mode_list();
    let n = rows.len();
    let sub = DMatrix::from_fn(n, n, |r, c| transform[(rows[r], cols[c])]);
    match statistics.kind() {
        StatisticsKind::Bosons => {
            let weight: f64 = input
                .occupation()
                .iter()
                .chain(output.occupation())
                .map(|&k| factorial(k))
                .product();
            Ok(permanent(&sub) / weight.sqrt())
        }
        StatisticsKind::Fermions => {
            if input.occupation().iter().chain(output.occupation()).any(|&k| k > 1) {
                return Ok(Complex64::new(0.0, 0.0));
            }
            Ok(determinant(&sub))
        }
        StatisticsKind::Anyons => Err(Error::AnyonOracle),
    }
}
