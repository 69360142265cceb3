//! Creation-operator polynomials over the ten optical modes.
//!
//! A multi-particle state is written as a polynomial in creation operators
//! acting on the vacuum. Every stored monomial is kept in canonical normal
//! order (ascending mode index); reordering a product of operators picks up
//! one factor of `e^{i theta}` per adjacent transposition, where `theta` is the
//! exchange phase of the particles. `theta = 0` gives bosons, `theta = pi`
//! fermions, anything in between hard-core anyons.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// One-based optical mode index.
pub type Mode = u8;

pub const NUM_MODES: usize = 10;

/// Terms with smaller magnitude are dropped from polynomials.
pub const PRUNE_TOLERANCE: f64 = 1e-14;

/// Default tolerance for comparing amplitudes.
pub const COMPARISON_TOLERANCE: f64 = 1e-10;

fn check_mode(mode: i64) -> Result<Mode> {
    if (1..=NUM_MODES as i64).contains(&mode) {
        Ok(mode as Mode)
    } else {
        Err(Error::InvalidMode(mode))
    }
}

/// Phase picked up when two creation operators are exchanged.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExchangeStatistics {
    exchange_phase: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StatisticsKind {
    Bosons,
    Fermions,
    Anyons,
}

impl ExchangeStatistics {
    pub const BOSONS: Self = Self { exchange_phase: 0.0 };
    pub const FERMIONS: Self = Self { exchange_phase: PI };

    pub fn new(exchange_phase: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&exchange_phase) {
            return Err(Error::InvalidExchangePhase(exchange_phase));
        }
        Ok(Self { exchange_phase })
    }

    pub fn exchange_phase(&self) -> f64 {
        self.exchange_phase
    }

    pub fn kind(&self) -> StatisticsKind {
        if self.exchange_phase == 0.0 {
            StatisticsKind::Bosons
        } else if self.exchange_phase == PI {
            StatisticsKind::Fermions
        } else {
            StatisticsKind::Anyons
        }
    }

    /// Whether two particles may share a mode.
    pub fn allows_double_occupancy(&self) -> bool {
        self.kind() == StatisticsKind::Bosons
    }

    /// `e^{i theta n}` for `n` adjacent transpositions. Exact for bosons and fermions.
    pub fn exchange_factor(&self, transpositions: usize) -> Complex64 {
        match self.kind() {
            StatisticsKind::Bosons => Complex64::new(1.0, 0.0),
            StatisticsKind::Fermions => {
                if transpositions.is_multiple_of(2) {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(-1.0, 0.0)
                }
            }
            StatisticsKind::Anyons => {
                Complex64::from_polar(1.0, self.exchange_phase * transpositions as f64)
            }
        }
    }
}

impl fmt::Display for ExchangeStatistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            StatisticsKind::Bosons => write!(f, "boson"),
            StatisticsKind::Fermions => write!(f, "fermion"),
            StatisticsKind::Anyons => write!(f, "anyon:{}", self.exchange_phase),
        }
    }
}

impl FromStr for ExchangeStatistics {
    type Err = Error;

    /// Accepts `boson`, `fermion` or `anyon:<radians>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "boson" | "bosons" => return Ok(Self::BOSONS),
            "fermion" | "fermions" => return Ok(Self::FERMIONS),
            _ => {}
        }
        let theta = s
            .strip_prefix("anyon:")
            .or_else(|| s.strip_prefix("anyons:"))
            .ok_or_else(|| Error::Parse(format!("unknown statistics {s:?}")))?;
        let theta: f64 = theta
            .parse()
            .map_err(|_| Error::Parse(format!("bad exchange phase {theta:?}")))?;
        Self::new(theta)
    }
}

/// Product of creation operators in canonical (ascending) normal order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(SmallVec<[Mode; 4]>);

impl Monomial {
    /// Builds a monomial from modes that are already nondecreasing.
    pub fn from_sorted(modes: &[Mode]) -> Result<Self> {
        for &m in modes {
            check_mode(m as i64)?;
        }
        if modes.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Parse(format!("modes {modes:?} are not sorted")));
        }
        Ok(Self(SmallVec::from_slice(modes)))
    }

    pub fn modes(&self) -> &[Mode] {
        &self.0
    }

    pub fn particle_number(&self) -> usize {
        self.0.len()
    }

    pub fn occupation(&self, mode: Mode) -> usize {
        self.0.iter().filter(|&&m| m == mode).count()
    }

    pub fn has_repeated_mode(&self) -> bool {
        self.0.windows(2).any(|w| w[0] == w[1])
    }

    /// `prod_i n_i!`, the squared norm of the unnormalized Fock vector.
    pub fn occupation_factorial(&self) -> f64 {
        let mut product = 1.0;
        let mut run = 1usize;
        for w in self.0.windows(2) {
            if w[0] == w[1] {
                run += 1;
                product *= run as f64;
            } else {
                run = 1;
            }
        }
        product
    }

    pub fn to_basis_state(&self) -> FockBasisState {
        let mut occupation = vec![0u32; NUM_MODES];
        for &m in &self.0 {
            occupation[m as usize - 1] += 1;
        }
        FockBasisState { occupation }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|m| format!("a+{m}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Sorts a word of creation operators into canonical order.
///
/// Returns the sorted monomial and the accumulated exchange phase, or `None`
/// when the word vanishes because a mode repeats under non-bosonic statistics.
pub fn normal_order(
    word: &[Mode],
    statistics: ExchangeStatistics,
) -> Result<Option<(Monomial, Complex64)>> {
    for &m in word {
        check_mode(m as i64)?;
    }
    let mut modes: SmallVec<[Mode; 4]> = SmallVec::from_slice(word);
    // insertion sort; each shift is one adjacent transposition
    let mut transpositions = 0usize;
    for i in 1..modes.len() {
        let mut j = i;
        while j > 0 && modes[j - 1] > modes[j] {
            modes.swap(j - 1, j);
            transpositions += 1;
            j -= 1;
        }
    }
    let monomial = Monomial(modes);
    if !statistics.allows_double_occupancy() && monomial.has_repeated_mode() {
        return Ok(None);
    }
    Ok(Some((monomial, statistics.exchange_factor(transpositions))))
}

/// Linear images of creation operators: `a+_j -> sum_i T_ij a+_i`.
#[derive(Clone, Debug, Default)]
pub struct ModeImages {
    images: BTreeMap<Mode, Vec<(Mode, Complex64)>>,
}

impl ModeImages {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, mode: Mode, image: Vec<(Mode, Complex64)>) -> Result<()> {
        check_mode(mode as i64)?;
        for &(m, _) in &image {
            check_mode(m as i64)?;
        }
        self.images.insert(mode, image);
        Ok(())
    }

    /// Column convention: column `j` of `matrix` is the image of mode `j + 1`.
    pub fn from_matrix(matrix: &DMatrix<Complex64>) -> Result<Self> {
        let n = matrix.nrows();
        if matrix.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: matrix.ncols() });
        }
        if n > NUM_MODES {
            return Err(Error::InvalidMode(n as i64));
        }
        let mut images = Self::new();
        for j in 0..n {
            let image = (0..n)
                .filter(|&i| matrix[(i, j)].norm() > 0.0)
                .map(|i| ((i + 1) as Mode, matrix[(i, j)]))
                .collect();
            images.insert((j + 1) as Mode, image)?;
        }
        Ok(images)
    }

    pub fn get(&self, mode: Mode) -> Option<&[(Mode, Complex64)]> {
        self.images.get(&mode).map(Vec::as_slice)
    }
}

/// Linear combination of normal-ordered creation-operator monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorPolynomial {
    terms: BTreeMap<Monomial, Complex64>,
    statistics: ExchangeStatistics,
}

impl OperatorPolynomial {
    pub fn zero(statistics: ExchangeStatistics) -> Self {
        Self { terms: BTreeMap::new(), statistics }
    }

    /// The identity operator, i.e. the vacuum when read as a state.
    pub fn vacuum(statistics: ExchangeStatistics) -> Self {
        let mut p = Self::zero(statistics);
        p.terms.insert(Monomial::default(), Complex64::new(1.0, 0.0));
        p
    }

    pub fn creation(mode: Mode, statistics: ExchangeStatistics) -> Result<Self> {
        Self::from_word(&[mode], Complex64::new(1.0, 0.0), statistics)
    }

    /// `amplitude` times the (possibly unordered) operator word.
    pub fn from_word(
        word: &[Mode],
        amplitude: Complex64,
        statistics: ExchangeStatistics,
    ) -> Result<Self> {
        let mut p = Self::zero(statistics);
        p.add_word(word, amplitude)?;
        p.prune();
        Ok(p)
    }

    /// `sum_k c_k a+_{m_k}`.
    pub fn linear(
        combination: &[(Mode, Complex64)],
        statistics: ExchangeStatistics,
    ) -> Result<Self> {
        let mut p = Self::zero(statistics);
        for &(m, c) in combination {
            p.add_word(&[m], c)?;
        }
        p.prune();
        Ok(p)
    }

    pub fn statistics(&self) -> ExchangeStatistics {
        self.statistics
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn amplitude(&self, monomial: &Monomial) -> Complex64 {
        self.terms.get(monomial).copied().unwrap_or_default()
    }

    fn add_word(&mut self, word: &[Mode], amplitude: Complex64) -> Result<()> {
        if let Some((monomial, phase)) = normal_order(word, self.statistics)? {
            *self.terms.entry(monomial).or_default() += amplitude * phase;
        }
        Ok(())
    }

    fn prune(&mut self) {
        self.terms.retain(|_, amp| amp.norm() >= PRUNE_TOLERANCE);
    }

    fn check_statistics(&self, other: &Self) -> Result<()> {
        if self.statistics != other.statistics {
            return Err(Error::StatisticsMismatch {
                left: self.statistics.exchange_phase,
                right: other.statistics.exchange_phase,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_statistics(other)?;
        let mut out = self.clone();
        for (m, &amp) in &other.terms {
            *out.terms.entry(m.clone()).or_default() += amp;
        }
        out.prune();
        Ok(out)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for amp in out.terms.values_mut() {
            *amp *= factor;
        }
        out.prune();
        out
    }

    /// Distributive product `self * other`, re-normal-ordered.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_statistics(other)?;
        let mut out = Self::zero(self.statistics);
        let mut word: SmallVec<[Mode; 8]> = SmallVec::new();
        for (left, &lamp) in &self.terms {
            for (right, &ramp) in &other.terms {
                word.clear();
                word.extend_from_slice(left.modes());
                word.extend_from_slice(right.modes());
                out.add_word(&word, lamp * ramp)?;
            }
        }
        out.prune();
        Ok(out)
    }

    /// Replaces every `a+_j` by its image and re-expands.
    pub fn substitute_modes(&self, images: &ModeImages) -> Result<Self> {
        let mut out = Self::zero(self.statistics);
        let mut word: SmallVec<[Mode; 8]> = SmallVec::new();
        for (monomial, &amp) in &self.terms {
            let factors = monomial
                .modes()
                .iter()
                .map(|&m| images.get(m).ok_or(Error::MissingImage(m)))
                .collect::<Result<SmallVec<[_; 4]>>>()?;
            word.clear();
            expand_product(&factors, 0, amp, &mut word, &mut out)?;
        }
        out.prune();
        Ok(out)
    }

    /// Keeps only the terms whose monomial satisfies `keep`.
    pub fn filter<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, a)| (m.clone(), *a))
                .collect(),
            statistics: self.statistics,
        }
    }

    /// Squared norm of the state `P|vacuum>`.
    pub fn norm_squared(&self) -> f64 {
        self.terms
            .iter()
            .map(|(m, a)| a.norm_sqr() * m.occupation_factorial())
            .sum()
    }

    /// Largest coefficient difference, taken over the union of monomials.
    pub fn max_difference(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (m, a) in &self.terms {
            worst = worst.max((a - other.amplitude(m)).norm());
        }
        for (m, a) in &other.terms {
            if !self.terms.contains_key(m) {
                worst = worst.max(a.norm());
            }
        }
        worst
    }

    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        self.statistics == other.statistics && self.max_difference(other) <= tolerance
    }
}

fn expand_product(
    factors: &[&[(Mode, Complex64)]],
    depth: usize,
    amp: Complex64,
    word: &mut SmallVec<[Mode; 8]>,
    out: &mut OperatorPolynomial,
) -> Result<()> {
    if depth == factors.len() {
        return out.add_word(word, amp);
    }
    for &(mode, coeff) in factors[depth] {
        word.push(mode);
        expand_product(factors, depth + 1, amp * coeff, word, out)?;
        word.pop();
    }
    Ok(())
}

impl fmt::Display for OperatorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, a)| format!("({:.6}{:+.6}i) {}", a.re, a.im, m))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Occupation-number basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FockBasisState {
    occupation: Vec<u32>,
}

impl FockBasisState {
    pub fn new(occupation: Vec<u32>) -> Self {
        Self { occupation }
    }

    /// Ten-mode state with one particle per listed mode (repeats add up).
    pub fn from_modes(modes: &[Mode]) -> Result<Self> {
        let mut occupation = vec![0u32; NUM_MODES];
        for &m in modes {
            check_mode(m as i64)?;
            occupation[m as usize - 1] += 1;
        }
        Ok(Self { occupation })
    }

    pub fn occupation(&self) -> &[u32] {
        &self.occupation
    }

    pub fn num_modes(&self) -> usize {
        self.occupation.len()
    }

    pub fn particle_number(&self) -> usize {
        self.occupation.iter().map(|&n| n as usize).sum()
    }

    /// Zero-based mode indices, each repeated by its occupation, ascending.
    pub fn mode_list(&self) -> Vec<usize> {
        self.occupation
            .iter()
            .enumerate()
            .flat_map(|(i, &n)| std::iter::repeat_n(i, n as usize))
            .collect()
    }

    pub fn to_monomial(&self) -> Result<Monomial> {
        let modes: Vec<Mode> = self.mode_list().into_iter().map(|i| (i + 1) as Mode).collect();
        Monomial::from_sorted(&modes)
    }

    /// All ten-mode states with `particles` particles, in ascending monomial order.
    pub fn enumerate(particles: usize, statistics: ExchangeStatistics) -> Vec<Self> {
        let mut out = Vec::new();
        let mut modes = Vec::with_capacity(particles);
        enumerate_rec(particles, 1, statistics.allows_double_occupancy(), &mut modes, &mut out);
        out
    }
}

fn enumerate_rec(
    remaining: usize,
    start: Mode,
    repeats: bool,
    modes: &mut Vec<Mode>,
    out: &mut Vec<FockBasisState>,
) {
    if remaining == 0 {
        out.push(FockBasisState::from_modes(modes).expect("modes in range"));
        return;
    }
    for m in start..=NUM_MODES as Mode {
        modes.push(m);
        let next = if repeats { m } else { m + 1 };
        enumerate_rec(remaining - 1, next, repeats, modes, out);
        modes.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn fermion_swap_picks_up_sign() {
        let (m, phase) = normal_order(&[3, 1], ExchangeStatistics::FERMIONS).unwrap().unwrap();
        assert_eq!(m.modes(), &[1, 3]);
        assert_eq!(phase, c(-1.0, 0.0));
    }

    #[test]
    fn bosons_commute() {
        let (m, phase) = normal_order(&[3, 1], ExchangeStatistics::BOSONS).unwrap().unwrap();
        assert_eq!(m.modes(), &[1, 3]);
        assert_eq!(phase, c(1.0, 0.0));
    }

    #[test]
    fn pauli_exclusion() {
        assert!(normal_order(&[2, 2], ExchangeStatistics::FERMIONS).unwrap().is_none());
        let anyons = ExchangeStatistics::new(0.4).unwrap();
        assert!(normal_order(&[5, 2, 5], anyons).unwrap().is_none());
        let (m, _) = normal_order(&[2, 2], ExchangeStatistics::BOSONS).unwrap().unwrap();
        assert_eq!(m.modes(), &[2, 2]);
    }

    #[test]
    fn invalid_modes_rejected() {
        assert_eq!(normal_order(&[0], ExchangeStatistics::BOSONS), Err(Error::InvalidMode(0)));
        assert_eq!(normal_order(&[11], ExchangeStatistics::BOSONS), Err(Error::InvalidMode(11)));
    }

    #[test]
    fn anyon_phase_counts_transpositions() {
        let theta = 0.7;
        let s = ExchangeStatistics::new(theta).unwrap();
        // 10 6 2 needs three transpositions
        let (m, phase) = normal_order(&[10, 6, 2], s).unwrap().unwrap();
        assert_eq!(m.modes(), &[2, 6, 10]);
        assert!((phase - Complex64::from_polar(1.0, 3.0 * theta)).norm() < 1e-15);
    }

    #[test]
    fn normal_order_is_idempotent() {
        let s = ExchangeStatistics::new(1.1).unwrap();
        let (m, _) = normal_order(&[9, 4, 7, 1], s).unwrap().unwrap();
        let (m2, phase2) = normal_order(m.modes(), s).unwrap().unwrap();
        assert_eq!(m, m2);
        assert_eq!(phase2, c(1.0, 0.0));
    }

    #[test]
    fn exclusion_plus_swap() {
        let s = ExchangeStatistics::FERMIONS;
        let p = OperatorPolynomial::linear(&[(1, c(1.0, 0.0)), (2, c(1.0, 0.0))], s).unwrap();
        let q = OperatorPolynomial::creation(1, s).unwrap();
        let r = p.multiply(&q).unwrap();
        assert_eq!(r.len(), 1);
        let m = Monomial::from_sorted(&[1, 2]).unwrap();
        assert_eq!(r.amplitude(&m), c(-1.0, 0.0));
    }

    #[test]
    fn boson_product_of_singles() {
        let s = ExchangeStatistics::BOSONS;
        let r = OperatorPolynomial::creation(1, s)
            .unwrap()
            .multiply(&OperatorPolynomial::creation(6, s).unwrap())
            .unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.amplitude(&Monomial::from_sorted(&[1, 6]).unwrap()), c(1.0, 0.0));
    }

    #[test]
    fn triple_symmetric_product_has_eighteen_terms() {
        let s = ExchangeStatistics::BOSONS;
        let one = c(1.0, 0.0);
        let p1 = OperatorPolynomial::linear(&[(1, one), (2, one), (3, one)], s).unwrap();
        let p2 = OperatorPolynomial::linear(&[(6, one), (7, one)], s).unwrap();
        let p3 = OperatorPolynomial::linear(&[(8, one), (9, one), (10, one)], s).unwrap();
        let norm = c(1.0 / (3.0 * 2f64.sqrt()), 0.0);
        let r = p1.multiply(&p2).unwrap().multiply(&p3).unwrap().scale(norm);
        assert_eq!(r.len(), 18);
        for (_, a) in r.terms() {
            assert!((a - norm).norm() < 1e-15);
        }
        assert!((r.norm_squared() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn statistics_mismatch_is_an_error() {
        let p = OperatorPolynomial::creation(1, ExchangeStatistics::BOSONS).unwrap();
        let q = OperatorPolynomial::creation(2, ExchangeStatistics::FERMIONS).unwrap();
        assert!(matches!(p.multiply(&q), Err(Error::StatisticsMismatch { .. })));
    }

    #[test]
    fn missing_image_is_an_error() {
        let p = OperatorPolynomial::creation(4, ExchangeStatistics::BOSONS).unwrap();
        let mut images = ModeImages::new();
        images.insert(1, vec![(1, c(1.0, 0.0))]).unwrap();
        assert_eq!(p.substitute_modes(&images), Err(Error::MissingImage(4)));
    }

    #[test]
    fn identity_substitution_is_a_no_op() {
        let s = ExchangeStatistics::FERMIONS;
        let p = OperatorPolynomial::linear(&[(3, c(0.5, 0.1)), (8, c(-0.2, 0.0))], s)
            .unwrap()
            .multiply(&OperatorPolynomial::linear(&[(1, c(1.0, 0.0)), (9, c(0.0, 1.0))], s).unwrap())
            .unwrap();
        let images = ModeImages::from_matrix(&DMatrix::identity(10, 10)).unwrap();
        assert_eq!(p.substitute_modes(&images).unwrap(), p);
    }

    #[test]
    fn boson_double_occupancy_norm() {
        // (a+_1)^2 |0> has squared norm 2
        let p = OperatorPolynomial::from_word(&[1, 1], c(1.0, 0.0), ExchangeStatistics::BOSONS).unwrap();
        assert_eq!(p.norm_squared(), 2.0);
    }

    #[test]
    fn statistics_parse_round_trip() {
        assert_eq!("boson".parse::<ExchangeStatistics>().unwrap(), ExchangeStatistics::BOSONS);
        assert_eq!("fermions".parse::<ExchangeStatistics>().unwrap(), ExchangeStatistics::FERMIONS);
        let a: ExchangeStatistics = "anyon:1.0471975512".parse().unwrap();
        assert_eq!(a.kind(), StatisticsKind::Anyons);
        assert_eq!(a.to_string().parse::<ExchangeStatistics>().unwrap(), a);
        assert!("anyon:4".parse::<ExchangeStatistics>().is_err());
        assert!("photon".parse::<ExchangeStatistics>().is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(FockBasisState::enumerate(3, ExchangeStatistics::BOSONS).len(), 220);
        assert_eq!(FockBasisState::enumerate(3, ExchangeStatistics::FERMIONS).len(), 120);
    }
}
