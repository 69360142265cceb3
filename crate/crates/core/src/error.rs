use thiserror::Error;

use crate::fock::Mode;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("mode index {0} outside 1..={max}", max = crate::fock::NUM_MODES)]
    InvalidMode(i64),

    #[error("exchange phase {0} outside [0, pi]")]
    InvalidExchangePhase(f64),

    #[error("operands carry different exchange statistics ({left} vs {right})")]
    StatisticsMismatch { left: f64, right: f64 },

    #[error("no image given for mode {0}")]
    MissingImage(Mode),

    #[error("particle numbers differ: input {input}, output {output}")]
    ParticleNumberMismatch { input: usize, output: usize },

    #[error("transition-amplitude oracle is only defined for bosons and fermions")]
    AnyonOracle,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("rows are not orthonormal (residual {residual:.3e})")]
    NotOrthonormal { residual: f64 },

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("mode map is not a bijection on 1..=10")]
    InvalidPermutation,

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("constraint {name} violated (residual {residual:.3e})")]
    ConstraintViolation { name: &'static str, residual: f64 },

    #[error("parameter {name} = {value} outside its allowed range")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("P^dagger P exceeds identity (largest eigenvalue {max_eigenvalue})")]
    InvalidPovm { max_eigenvalue: f64 },

    #[error("post-selection retained no amplitude")]
    EmptyPostSelection,

    #[error("post-selection predicates disagree on modes {0:?}")]
    PostSelectionInconsistent(Vec<Mode>),

    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
