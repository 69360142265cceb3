//! Seeded Monte Carlo checks used by the command-line tool.
//!
//! Trial `i` of a run with master seed `s` uses seed `s + i`; results are
//! gathered by index, so thread count never changes the output.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::fock::{ExchangeStatistics, FockBasisState, ModeImages, OperatorPolynomial, COMPARISON_TOLERANCE};
use crate::interferometer::{check_unitary, random_unitary, UNITARITY_TOLERANCE};
use crate::oracle::transition_amplitude;
use crate::protocol::{input_state, prepare, INPUT_MODES, SUCCESS_PROBABILITY};
use crate::schmidt::random_state;

/// Pass thresholds of a preparation run.
pub const FIDELITY_THRESHOLD: f64 = 1.0 - 1e-9;
pub const PROBABILITY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifySummary {
    pub statistics: String,
    pub trials: usize,
    pub min_fidelity: f64,
    pub max_prob_deviation: f64,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.min_fidelity >= FIDELITY_THRESHOLD && self.max_prob_deviation < PROBABILITY_TOLERANCE
    }
}

/// Prepares `trials` random targets and records the worst fidelity and the
/// largest deviation of the success probability from `1/18`.
pub fn verify(trials: usize, seed: u64, statistics: ExchangeStatistics) -> Result<VerifySummary> {
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|i| {
            let target = random_state(seed.wrapping_add(i as u64));
            let prep = prepare(&target, statistics)?;
            Ok((prep.fidelity, (prep.result.success_probability - SUCCESS_PROBABILITY).abs()))
        })
        .collect::<Result<Vec<_>>>()?;
    let min_fidelity = outcomes.iter().map(|o| o.0).fold(f64::INFINITY, f64::min);
    let max_prob_deviation = outcomes.iter().map(|o| o.1).fold(0.0, f64::max);
    Ok(VerifySummary { statistics: statistics.to_string(), trials, min_fidelity, max_prob_deviation })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub unitaries: usize,
    pub comparisons: usize,
    /// Largest `|polynomial - oracle|` over all output states.
    pub worst_deviation: f64,
    /// Largest `|sum |amp|^2 - 1|` over unitaries and statistics.
    pub worst_norm_deviation: f64,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.worst_deviation <= COMPARISON_TOLERANCE && self.worst_norm_deviation <= COMPARISON_TOLERANCE
    }
}

/// Compares polynomial expansion against permanents and determinants for one
/// transformation; returns (comparisons, worst deviation, worst norm deviation).
pub fn compare_with_oracle(transform: &DMatrix<Complex64>) -> Result<(usize, f64, f64)> {
    check_unitary(transform, UNITARITY_TOLERANCE)?;
    let input = FockBasisState::from_modes(&INPUT_MODES)?;
    let images = ModeImages::from_matrix(transform)?;
    let mut comparisons = 0;
    let mut worst: f64 = 0.0;
    let mut worst_norm: f64 = 0.0;
    for statistics in [ExchangeStatistics::BOSONS, ExchangeStatistics::FERMIONS] {
        let evolved: OperatorPolynomial = input_state(statistics)?.substitute_modes(&images)?;
        let mut total = 0.0;
        for output in FockBasisState::enumerate(INPUT_MODES.len(), statistics) {
            let monomial = output.to_monomial()?;
            // coefficient of the unnormalised monomial -> amplitude of |n>
            let engine = evolved.amplitude(&monomial) * monomial.occupation_factorial().sqrt();
            let oracle = transition_amplitude(&input, &output, transform, statistics)?;
            worst = worst.max((engine - oracle).norm());
            total += oracle.norm_sqr();
            comparisons += 1;
        }
        worst_norm = worst_norm.max((total - 1.0).abs());
    }
    Ok((comparisons, worst, worst_norm))
}

pub fn oracle_check_unitaries(unitaries: &[DMatrix<Complex64>]) -> Result<OracleReport> {
    // reject malformed input before any comparison
    for u in unitaries {
        check_unitary(u, UNITARITY_TOLERANCE)?;
    }
    let results = unitaries.par_iter().map(compare_with_oracle).collect::<Result<Vec<_>>>()?;
    Ok(OracleReport {
        unitaries: unitaries.len(),
        comparisons: results.iter().map(|r| r.0).sum(),
        worst_deviation: results.iter().map(|r| r.1).fold(0.0, f64::max),
        worst_norm_deviation: results.iter().map(|r| r.2).fold(0.0, f64::max),
    })
}

/// Seeded Haar-random 10x10 unitaries; unitary `i` uses seed `seed + i`.
pub fn seeded_unitaries(count: usize, seed: u64) -> Vec<DMatrix<Complex64>> {
    (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            random_unitary(crate::fock::NUM_MODES, &mut rng)
        })
        .collect()
}

pub fn oracle_check(count: usize, seed: u64) -> Result<OracleReport> {
    oracle_check_unitaries(&seeded_unitaries(count, seed))
}
