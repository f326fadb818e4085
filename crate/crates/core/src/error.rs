use crate::quadrature::QuadratureReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("quantum number must be a positive integer, got {0}")]
    InvalidQuantumNumber(i64),

    #[error("position {0} lies outside the well [0, 1]")]
    PositionOutOfRange(f64),

    #[error("non-finite value for {0}")]
    NonFinite(&'static str),

    #[error("superposition is empty")]
    EmptySuperposition,

    #[error("quantum number {0} appears more than once")]
    DuplicateQuantumNumber(u32),

    #[error("all coefficients are zero")]
    ZeroCoefficients,

    #[error("quantum numbers must differ, both are {0}")]
    EqualQuantumNumbers(u32),

    #[error("P = {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("f and g both vanish; the wave function is zero for all t")]
    VanishingAmplitudes,

    #[error("relative tolerance {0} is outside [1e-6, 1e-2]")]
    ToleranceOutOfRange(f64),

    #[error("expected {expected} energies, got {got}")]
    EnergyCountMismatch { expected: usize, got: usize },

    #[error("root isolation for (n1={n1}, n2={n2}, P={p}) did not stabilise after {refinements} grid doublings")]
    RootIsolation {
        n1: u32,
        n2: u32,
        p: f64,
        refinements: u32,
    },

    #[error("quadrature did not converge after {} levels (last estimate {})", .0.levels, .0.value)]
    NotConverged(Box<QuadratureReport>),

    #[error("relative difference is undefined for a zero reference value")]
    ZeroReference,

    #[error("unknown figure preset `{0}`")]
    UnknownPreset(String),

    #[error("N must lie in [2, 6], got {0}")]
    StateCountOutOfRange(usize),

    #[error("P grid must be sorted, strictly increasing and inside [0, 1]")]
    InvalidGrid,

    #[error("at P = {p}: {source}")]
    AtProbability { p: f64, source: Box<Error> },
}

impl Error {
    /// True when the error comes from rejected input rather than from a
    /// numerical procedure.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::InvalidQuantumNumber(_)
            | Error::PositionOutOfRange(_)
            | Error::NonFinite(_)
            | Error::EmptySuperposition
            | Error::DuplicateQuantumNumber(_)
            | Error::ZeroCoefficients
            | Error::EqualQuantumNumbers(_)
            | Error::ProbabilityOutOfRange(_)
            | Error::ToleranceOutOfRange(_)
            | Error::EnergyCountMismatch { .. }
            | Error::UnknownPreset(_)
            | Error::StateCountOutOfRange(_)
            | Error::InvalidGrid => true,
            Error::VanishingAmplitudes
            | Error::RootIsolation { .. }
            | Error::NotConverged(_)
            | Error::ZeroReference => false,
            Error::AtProbability { source, .. } => source.is_input_error(),
        }
    }

    /// Short stable identifier, for machine-readable error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidQuantumNumber(_) => "invalid_quantum_number",
            Error::PositionOutOfRange(_) => "position_out_of_range",
            Error::NonFinite(_) => "non_finite",
            Error::EmptySuperposition => "empty_superposition",
            Error::DuplicateQuantumNumber(_) => "duplicate_quantum_number",
            Error::ZeroCoefficients => "zero_coefficients",
            Error::EqualQuantumNumbers(_) => "equal_quantum_numbers",
            Error::ProbabilityOutOfRange(_) => "probability_out_of_range",
            Error::VanishingAmplitudes => "vanishing_amplitudes",
            Error::ToleranceOutOfRange(_) => "tolerance_out_of_range",
            Error::EnergyCountMismatch { .. } => "energy_count_mismatch",
            Error::RootIsolation { .. } => "root_isolation",
            Error::NotConverged(_) => "not_converged",
            Error::ZeroReference => "zero_reference",
            Error::UnknownPreset(_) => "unknown_preset",
            Error::StateCountOutOfRange(_) => "state_count_out_of_range",
            Error::InvalidGrid => "invalid_grid",
            Error::AtProbability { source, .. } => source.kind(),
        }
    }
}
