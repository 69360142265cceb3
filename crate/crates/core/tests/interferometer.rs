use num_complex::Complex64;

use triqubit::fock::ExchangeStatistics;
use triqubit::interferometer::{
    build_fixed_stages, complete_to_unitary, output_unitaries, unitarity_residual, CircuitSpec, ModeGrouping,
    ModePermutation, ModeUnitary,
};
use triqubit::{decompose, random_state, solve_params, CanonicalParams, Error};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn generic_params(seed: u64) -> triqubit::ProtocolParams {
    let canonical = decompose(&random_state(seed)).unwrap();
    solve_params(&canonical, ExchangeStatistics::BOSONS).unwrap()
}

#[test]
fn every_stage_is_unitary() {
    for seed in 0..50 {
        let circuit = CircuitSpec::build(&generic_params(seed)).unwrap();
        assert!(circuit.max_unitarity_residual() < 1e-12);
        assert!(unitarity_residual(&circuit.total()) < 1e-12);
    }
}

#[test]
fn output_unitary_keeps_the_specified_rows() {
    for seed in 0..50 {
        let p = generic_params(seed);
        let (v, w) = output_unitaries(&p).unwrap();
        let v = v.entries();
        let first = [p.kappa, c(0.0, 0.0), c(0.0, 0.0), p.delta, p.epsilon];
        let second = [p.delta.conj(), p.mu, p.nu, -p.kappa.conj(), c(0.0, 0.0)];
        for j in 0..5 {
            assert_eq!(v[(0, j)], first[j]);
            assert_eq!(v[(1, j)], second[j]);
        }
        // the two given rows are orthogonal for any kappa, delta
        let overlap: Complex64 = (0..5).map(|j| first[j] * second[j].conj()).sum();
        assert!(overlap.norm() < 1e-15);
        assert_eq!(w.entries()[(0, 0)], p.xi);
        assert_eq!(w.entries()[(0, 1)], p.tau);
        assert_eq!(w.support(), &[7, 8]);
    }
}

#[test]
fn mode_six_is_untouched() {
    let stage3 = CircuitSpec::build(&generic_params(3)).unwrap().stage3;
    for i in 0..10 {
        let expected = if i == 5 { c(1.0, 0.0) } else { c(0.0, 0.0) };
        assert_eq!(stage3[(i, 5)], expected);
        assert_eq!(stage3[(5, i)], expected);
    }
}

#[test]
fn completion_is_bit_identical() {
    let p = generic_params(11);
    let a = CircuitSpec::build(&p).unwrap();
    let b = CircuitSpec::build(&p).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_json().to_string(), b.to_json().to_string());
}

#[test]
fn two_mode_completion() {
    assert_eq!(complete_to_unitary(&[vec![c(1.0, 0.0), c(0.0, 0.0)]], 2).unwrap(), nalgebra::DMatrix::identity(2, 2));
    let (xi, tau) = (c(0.6, 0.0), c(0.0, 0.8));
    let u = complete_to_unitary(&[vec![xi, tau]], 2).unwrap();
    // second row is (conj tau, -conj xi) up to a phase
    let phase = u[(1, 0)] / tau.conj();
    assert!((phase.norm() - 1.0).abs() < 1e-12);
    assert!((u[(1, 1)] - phase * -xi.conj()).norm() < 1e-12);
}

#[test]
fn completion_rejects_non_orthonormal_rows() {
    let rows = [vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.1, 0.0), c(1.0, 0.0)]];
    assert!(matches!(complete_to_unitary(&rows, 2), Err(Error::NotOrthonormal { .. })));
}

#[test]
fn permutation_carries_first_group_to_one_mode_per_output_system() {
    let sigma = ModePermutation::rearrangement();
    let mut image: Vec<u8> = [1, 2, 3].iter().map(|&m| sigma.image(m)).collect();
    image.sort();
    assert_eq!(image, vec![1, 7, 10]);
    assert!(ModePermutation::new([1, 1, 3, 4, 5, 6, 7, 8, 9, 10]).is_err());
}

#[test]
fn fixed_stage_first_columns() {
    let (stage1, _) = build_fixed_stages();
    let third = 1.0 / 3f64.sqrt();
    let half = 1.0 / 2f64.sqrt();
    for (col, rows, value) in [(0, [0, 1, 2].as_slice(), third), (5, &[5, 6], half), (7, &[7, 8, 9], third)] {
        for i in 0..10 {
            let expected = if rows.contains(&i) { value } else { 0.0 };
            assert!((stage1[(i, col)] - c(expected, 0.0)).norm() < 1e-15);
        }
    }
}

#[test]
fn basis_target_gives_trivial_first_column() {
    let canonical = CanonicalParams::core_only([1.0, 0.0, 0.0, 0.0, 0.0], 0.0).unwrap();
    let p = solve_params(&canonical, ExchangeStatistics::BOSONS).unwrap();
    let (v, _) = output_unitaries(&p).unwrap();
    for i in 0..5 {
        let expected = if i == 0 { 1.0 } else { 0.0 };
        assert!((v.entries()[(i, 0)] - c(expected, 0.0)).norm() < 1e-15);
    }
}

#[test]
fn grouping_is_a_partition() {
    let grouping = ModeGrouping::standard();
    grouping.validate().unwrap();
    assert_eq!(grouping.idle_outputs(), vec![3, 4, 5, 8]);
}

#[test]
fn mode_unitary_validates_shape_and_unitarity() {
    let m = nalgebra::DMatrix::from_element(2, 2, c(1.0, 0.0));
    assert!(matches!(ModeUnitary::new(m, vec![1, 2]), Err(Error::NotUnitary { .. })));
    let id = nalgebra::DMatrix::identity(2, 2);
    assert!(ModeUnitary::new(id, vec![1, 2, 3]).is_err());
}

#[test]
fn circuit_export_lists_three_dense_stages() {
    let json = CircuitSpec::build(&generic_params(4)).unwrap().to_json();
    let stages = json["stages"].as_array().unwrap();
    assert_eq!(stages.len(), 3);
    for stage in stages {
        let rows = stage["matrix"].as_array().unwrap();
        assert_eq!(rows.len(), 10);
        assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 10));
    }
    assert_eq!(stages[1]["matrix"][6][1], serde_json::json!([1.0, 0.0]));
}
