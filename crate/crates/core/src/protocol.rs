//! The preparation protocol end to end.
//!
//! Three particles enter modes 1, 6 and 8 and pass through the input
//! splitters, the path rearrangement and the output unitaries. Keeping only
//! outcomes with one particle in each dual-rail pair {1,2}, {6,7}, {9,10}
//! leaves a three-qubit state with amplitude `1/(3 sqrt 2)` times
//! `(kappa, conj(delta), xi mu, nu, mu tau)` on `|000>, |100>, |110>, |101>, |111>`,
//! so the success probability is `1/18` whatever the target.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{normal_order, ExchangeStatistics, Mode, ModeImages, Monomial, OperatorPolynomial};
use crate::interferometer::{build_fixed_stages, build_output_stage, dual_rail_local_stage, ModeGrouping};
use crate::schmidt::{basis_index, decompose, CanonicalParams, ThreeQubitState};

/// Probability of the coincidence outcome, `(1/(3 sqrt 2))^2`.
pub const SUCCESS_PROBABILITY: f64 = 1.0 / 18.0;

/// Constraint tolerance on the circuit parameters.
pub const CONSTRAINT_TOLERANCE: f64 = 1e-10;

/// Modes the three particles are injected into.
pub const INPUT_MODES: [Mode; 3] = [1, 6, 8];

/// Each post-selected term as the operator word the circuit produces it in,
/// before normal ordering, paired with its qubit basis label `(i, j, k)`.
pub const TERM_WORDS: [([Mode; 3], (usize, usize, usize)); 5] = [
    ([1, 6, 9], (0, 0, 0)),
    ([2, 6, 9], (1, 0, 0)),
    ([7, 2, 9], (1, 1, 0)),
    ([10, 6, 2], (1, 0, 1)),
    ([10, 2, 7], (1, 1, 1)),
];

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Free entries of the two output unitaries.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolParams {
    pub kappa: Complex64,
    pub delta: Complex64,
    pub nu: Complex64,
    pub epsilon: Complex64,
    pub mu: Complex64,
    pub xi: Complex64,
    pub tau: Complex64,
}

impl ProtocolParams {
    /// Row normalisation of `W` and of the two specified rows of `V`.
    pub fn validate(&self) -> Result<()> {
        let n = |z: Complex64| z.norm_sqr();
        let checks = [
            ("|xi|^2+|tau|^2=1", n(self.xi) + n(self.tau)),
            ("|kappa|^2+|delta|^2+|epsilon|^2=1", n(self.kappa) + n(self.delta) + n(self.epsilon)),
            ("|delta|^2+|mu|^2+|nu|^2+|kappa|^2=1", n(self.delta) + n(self.mu) + n(self.nu) + n(self.kappa)),
        ];
        for (name, value) in checks {
            let residual = (value - 1.0).abs();
            if residual.is_nan() || residual > CONSTRAINT_TOLERANCE {
                return Err(Error::ConstraintViolation { name, residual });
            }
        }
        Ok(())
    }

    /// `(kappa, conj(delta), xi mu, nu, mu tau)`, the post-selected amplitudes
    /// up to the common factor `1/(3 sqrt 2)`.
    pub fn term_parameters(&self) -> [Complex64; 5] {
        [self.kappa, self.delta.conj(), self.xi * self.mu, self.nu, self.mu * self.tau]
    }
}

/// Exchange phase each post-selected term picks up while being normal ordered.
pub fn term_phases(statistics: ExchangeStatistics) -> Result<[Complex64; 5]> {
    let mut out = [c(1.0); 5];
    for (slot, (word, _)) in out.iter_mut().zip(TERM_WORDS) {
        let (_, phase) = normal_order(&word, statistics)?.ok_or(Error::EmptyPostSelection)?;
        *slot = phase;
    }
    Ok(out)
}

/// Parameters for bosons, read off the canonical coefficients.
fn bosonic_params(canonical: &CanonicalParams) -> ProtocolParams {
    let (a, b, cc, d, e) = (canonical.a, canonical.b, canonical.c, canonical.d, canonical.e);
    let mu = (cc * cc + e * e).sqrt();
    let (xi, tau) = if mu > 0.0 { (c(cc / mu), c(e / mu)) } else { (c(1.0), c(0.0)) };
    ProtocolParams {
        kappa: c(a),
        delta: Complex64::from_polar(b, -canonical.phi),
        nu: c(d),
        epsilon: c((1.0 - a * a - b * b).max(0.0).sqrt()),
        mu: c(mu),
        xi,
        tau,
    }
}

/// Circuit parameters that produce the canonical core of `canonical` under the
/// given statistics. Non-bosonic exchange phases are undone term by term.
pub fn solve_params(canonical: &CanonicalParams, statistics: ExchangeStatistics) -> Result<ProtocolParams> {
    let canonical = CanonicalParams::new(canonical.coefficients(), canonical.phi, canonical.locals)?;
    let mut params = bosonic_params(&canonical);
    let [p000, p100, p110, p101, p111] = term_phases(statistics)?;
    params.kappa *= p000.conj();
    // the |100> term carries conj(delta)
    params.delta *= p100;
    params.xi *= p110.conj();
    params.nu *= p101.conj();
    params.tau *= p111.conj();
    params.validate()?;
    Ok(params)
}

/// Outcome of the coincidence post-selection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "ResultJson", try_from = "ResultJson")]
pub struct PostSelectionResult {
    pub qubit_state: ThreeQubitState,
    pub success_probability: f64,
    pub raw_terms: Vec<(Monomial, Complex64)>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    modes: Vec<Mode>,
    amp: [f64; 2],
}

#[derive(Serialize, Deserialize)]
struct ResultJson {
    state: ThreeQubitState,
    probability: f64,
    terms: Vec<TermJson>,
}

impl From<PostSelectionResult> for ResultJson {
    fn from(r: PostSelectionResult) -> Self {
        Self {
            state: r.qubit_state,
            probability: r.success_probability,
            terms: r
                .raw_terms
                .iter()
                .map(|(m, a)| TermJson { modes: m.modes().to_vec(), amp: [a.re, a.im] })
                .collect(),
        }
    }
}

impl TryFrom<ResultJson> for PostSelectionResult {
    type Error = Error;

    fn try_from(raw: ResultJson) -> Result<Self> {
        let raw_terms = raw
            .terms
            .iter()
            .map(|t| Ok((Monomial::from_sorted(&t.modes)?, Complex64::new(t.amp[0], t.amp[1]))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { qubit_state: raw.state, success_probability: raw.probability, raw_terms })
    }
}

/// The three-particle input `a+_1 a+_6 a+_8 |vacuum>`.
pub fn input_state(statistics: ExchangeStatistics) -> Result<OperatorPolynomial> {
    OperatorPolynomial::from_word(&INPUT_MODES, c(1.0), statistics)
}

/// Full output polynomial of the circuit, before post-selection.
pub fn evolve(params: &ProtocolParams, statistics: ExchangeStatistics) -> Result<OperatorPolynomial> {
    let (stage1, sigma) = build_fixed_stages();
    let stage3 = build_output_stage(params)?;
    evolve_through(&[stage1, sigma.to_matrix(), stage3], statistics)
}

/// Applies each 10x10 stage in turn to the three-particle input.
pub fn evolve_through(stages: &[DMatrix<Complex64>], statistics: ExchangeStatistics) -> Result<OperatorPolynomial> {
    let mut state = input_state(statistics)?;
    for stage in stages {
        state = state.substitute_modes(&ModeImages::from_matrix(stage)?)?;
    }
    Ok(state)
}

fn one_per_pair(monomial: &Monomial, grouping: &ModeGrouping) -> bool {
    grouping
        .dual_rail
        .iter()
        .all(|pair| pair.iter().map(|&m| monomial.occupation(m)).sum::<usize>() == 1)
}

fn idle_modes_empty(monomial: &Monomial, idle: &[Mode]) -> bool {
    idle.iter().all(|&m| monomial.occupation(m) == 0)
}

/// Keeps outcomes with exactly one particle per dual-rail pair and reads them
/// as qubits: the lower mode of each pair is `|0>`.
pub fn post_select(output: &OperatorPolynomial) -> Result<PostSelectionResult> {
    let grouping = ModeGrouping::standard();
    let idle = grouping.idle_outputs();
    let mut amplitudes = [c(0.0); 8];
    let mut raw_terms = Vec::new();
    for (monomial, &amp) in output.terms() {
        let paired = one_per_pair(monomial, &grouping);
        let idle_empty = idle_modes_empty(monomial, &idle);
        if paired && (!idle_empty || monomial.particle_number() != 3) {
            return Err(Error::PostSelectionInconsistent(monomial.modes().to_vec()));
        }
        if !(paired && idle_empty) {
            continue;
        }
        let bits: Vec<usize> = grouping
            .dual_rail
            .iter()
            .zip(monomial.modes())
            .map(|(pair, &m)| usize::from(m == pair[1]))
            .collect();
        amplitudes[basis_index(bits[0], bits[1], bits[2])] += amp;
        raw_terms.push((monomial.clone(), amp));
    }
    let success_probability: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
    if success_probability == 0.0 {
        return Err(Error::EmptyPostSelection);
    }
    Ok(PostSelectionResult {
        qubit_state: ThreeQubitState::normalized(amplitudes)?,
        success_probability,
        raw_terms,
    })
}

/// Runs the circuit with explicit parameters.
pub fn run_with_params(params: &ProtocolParams, statistics: ExchangeStatistics) -> Result<PostSelectionResult> {
    post_select(&evolve(params, statistics)?)
}

/// Prepares the canonical core of `canonical` (locals are not applied).
pub fn run(canonical: &CanonicalParams, statistics: ExchangeStatistics) -> Result<PostSelectionResult> {
    run_with_params(&solve_params(canonical, statistics)?, statistics)
}

/// Result of preparing an arbitrary target.
#[derive(Clone, Debug, PartialEq)]
pub struct Preparation {
    /// Post-selected output after the dual-rail local stage.
    pub result: PostSelectionResult,
    /// Post-selected output of the canonical circuit alone.
    pub core: PostSelectionResult,
    pub canonical: CanonicalParams,
    pub params: ProtocolParams,
    /// `|<target|prepared>|^2`.
    pub fidelity: f64,
}

/// Prepares `target`: canonical circuit followed by the three local
/// unitaries, realised on the dual-rail mode pairs.
pub fn prepare(target: &ThreeQubitState, statistics: ExchangeStatistics) -> Result<Preparation> {
    let canonical = decompose(target)?;
    let params = solve_params(&canonical, statistics)?;
    let evolved = evolve(&params, statistics)?;
    let core = post_select(&evolved)?;
    let local_stage = dual_rail_local_stage(&canonical.locals)?;
    let finished = evolved.substitute_modes(&ModeImages::from_matrix(&local_stage)?)?;
    let result = post_select(&finished)?;
    let fidelity = target.fidelity(&result.qubit_state);
    Ok(Preparation { result, core, canonical, params, fidelity })
}
