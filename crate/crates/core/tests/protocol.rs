use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use triqubit::harness::verify;
use triqubit::interferometer::CircuitSpec;
use triqubit::oracle::transition_amplitude;
use triqubit::protocol::{run_with_params, term_phases, INPUT_MODES};
use triqubit::{
    decompose, prepare, random_state, run, solve_params, CanonicalParams, ExchangeStatistics, FockBasisState,
    PostSelectionResult, ThreeQubitState, SUCCESS_PROBABILITY,
};

const SURVIVORS: [[u8; 3]; 5] = [[1, 6, 9], [2, 6, 9], [2, 7, 9], [2, 6, 10], [2, 7, 10]];
const LABELS: [(usize, usize, usize); 5] = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1)];

fn anyons() -> ExchangeStatistics {
    ExchangeStatistics::new(PI / 3.0).unwrap()
}

fn amplitude_of(result: &PostSelectionResult, modes: &[u8]) -> Complex64 {
    result.raw_terms.iter().find(|(m, _)| m.modes() == modes).map(|t| t.1).unwrap()
}

#[test]
fn five_surviving_terms_with_expected_amplitudes() {
    let scale = 1.0 / (3.0 * 2f64.sqrt());
    for seed in 0..100 {
        let canonical = decompose(&random_state(seed)).unwrap();
        let params = solve_params(&canonical, ExchangeStatistics::BOSONS).unwrap();
        let result = run_with_params(&params, ExchangeStatistics::BOSONS).unwrap();
        let mut modes: Vec<Vec<u8>> = result.raw_terms.iter().map(|(m, _)| m.modes().to_vec()).collect();
        modes.sort();
        let mut expected: Vec<Vec<u8>> = SURVIVORS.iter().map(|s| s.to_vec()).collect();
        expected.sort();
        assert_eq!(modes, expected);
        for (word, p) in SURVIVORS.iter().zip(params.term_parameters()) {
            assert!((amplitude_of(&result, word) - p * scale).norm() < 1e-12);
        }
        let total: f64 = result.raw_terms.iter().map(|t| t.1.norm_sqr()).sum();
        assert!((total - result.success_probability).abs() < 1e-15);
        assert!((result.success_probability - SUCCESS_PROBABILITY).abs() < 1e-10);
    }
}

#[test]
fn fermions_without_compensation_flip_two_signs() {
    for seed in 0..20 {
        let canonical = decompose(&random_state(seed)).unwrap();
        let params = solve_params(&canonical, ExchangeStatistics::BOSONS).unwrap();
        let bosons = run_with_params(&params, ExchangeStatistics::BOSONS).unwrap();
        let fermions = run_with_params(&params, ExchangeStatistics::FERMIONS).unwrap();
        for (word, (i, j, k)) in SURVIVORS.iter().zip(LABELS) {
            let sign = if (i, j, k) == (1, 1, 0) || (i, j, k) == (1, 0, 1) { -1.0 } else { 1.0 };
            let b = amplitude_of(&bosons, word);
            let f = amplitude_of(&fermions, word);
            assert!((f - b * sign).norm() < 1e-12, "{word:?}");
            let (fq, bq) = (fermions.qubit_state.amplitude(i, j, k), bosons.qubit_state.amplitude(i, j, k));
            assert!((fq - bq * sign).norm() < 1e-12);
        }
    }
}

#[test]
fn term_phases_match_full_pipeline_ratios() {
    let params = solve_params(&decompose(&random_state(8)).unwrap(), ExchangeStatistics::BOSONS).unwrap();
    let bosons = run_with_params(&params, ExchangeStatistics::BOSONS).unwrap();
    for theta in [0.3, PI / 3.0, 1.0, 2.0, PI - 0.1, PI] {
        let stats = ExchangeStatistics::new(theta).unwrap();
        let other = run_with_params(&params, stats).unwrap();
        for (word, phase) in SURVIVORS.iter().zip(term_phases(stats).unwrap()) {
            let ratio = amplitude_of(&other, word) / amplitude_of(&bosons, word);
            assert!((ratio - phase).norm() < 1e-12, "theta {theta}, {word:?}");
        }
    }
}

#[test]
fn compensation_restores_the_core_for_any_exchange_phase() {
    let canonical = decompose(&random_state(21)).unwrap();
    let target = canonical.core_state();
    for k in 0..=20 {
        let stats = ExchangeStatistics::new(PI * k as f64 / 20.0).unwrap();
        let result = run(&canonical, stats).unwrap();
        assert!(target.fidelity(&result.qubit_state) >= 1.0 - 1e-12);
        assert!((result.success_probability - SUCCESS_PROBABILITY).abs() < 1e-12);
    }
}

#[test]
fn permanent_and_determinant_route_agrees() {
    let input = FockBasisState::from_modes(&INPUT_MODES).unwrap();
    for seed in 0..20 {
        for stats in [ExchangeStatistics::BOSONS, ExchangeStatistics::FERMIONS] {
            let canonical = decompose(&random_state(seed)).unwrap();
            let params = solve_params(&canonical, stats).unwrap();
            let total = CircuitSpec::build(&params).unwrap().total();
            let result = run_with_params(&params, stats).unwrap();
            let mut probability = 0.0;
            for word in SURVIVORS {
                let output = FockBasisState::from_modes(&word).unwrap();
                let oracle = transition_amplitude(&input, &output, &total, stats).unwrap();
                assert!((oracle - amplitude_of(&result, &word)).norm() < 1e-10);
                probability += oracle.norm_sqr();
            }
            assert!((probability - result.success_probability).abs() < 1e-10);
        }
    }
}

#[test]
fn ghz_parameters_and_output() {
    let h = FRAC_1_SQRT_2;
    let canonical = CanonicalParams::core_only([h, 0.0, 0.0, 0.0, h], 0.0).unwrap();
    for stats in [ExchangeStatistics::BOSONS, ExchangeStatistics::FERMIONS] {
        let p = solve_params(&canonical, stats).unwrap();
        assert!(p.nu.norm() < 1e-15 && p.xi.norm() < 1e-15);
        let result = run(&canonical, stats).unwrap();
        assert!(ThreeQubitState::ghz().fidelity(&result.qubit_state) >= 1.0 - 1e-10);
    }
}

#[test]
fn vanishing_mu_picks_xi_one() {
    let canonical = CanonicalParams::core_only([0.6, 0.0, 0.0, 0.8, 0.0], 0.0).unwrap();
    let p = solve_params(&canonical, ExchangeStatistics::BOSONS).unwrap();
    assert_eq!((p.xi, p.tau), (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
    let result = run(&canonical, ExchangeStatistics::BOSONS).unwrap();
    assert!((result.success_probability - SUCCESS_PROBABILITY).abs() < 1e-12);
}

#[test]
fn prepare_named_targets() {
    for target in [ThreeQubitState::ghz(), ThreeQubitState::w(), ThreeQubitState::basis(0, 1, 1)] {
        for stats in [ExchangeStatistics::BOSONS, ExchangeStatistics::FERMIONS, anyons()] {
            let prep = prepare(&target, stats).unwrap();
            assert!(prep.fidelity >= 1.0 - 1e-9);
            assert!((prep.result.success_probability - SUCCESS_PROBABILITY).abs() < 1e-10);
            assert!(prep.core.raw_terms.len() <= 5);
        }
    }
}

#[test]
fn thousand_random_targets_per_statistics() {
    for stats in [ExchangeStatistics::BOSONS, ExchangeStatistics::FERMIONS, anyons()] {
        let summary = verify(1000, 0, stats).unwrap();
        assert!(summary.min_fidelity >= 1.0 - 1e-9, "{summary:?}");
        assert!(summary.max_prob_deviation < 1e-10, "{summary:?}");
    }
}

#[test]
fn result_json_round_trip() {
    let result = prepare(&random_state(2), ExchangeStatistics::FERMIONS).unwrap().core;
    let text = serde_json::to_string(&result).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["terms"].as_array().unwrap().len(), 5);
    assert!(value["state"]["amplitudes"].is_array());
    let back: PostSelectionResult = serde_json::from_str(&text).unwrap();
    assert_eq!(back, result);
}
