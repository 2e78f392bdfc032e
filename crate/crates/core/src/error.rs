//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("entry count {got} does not match {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, got: usize },

    #[error("matrix is not Hermitian (max |M - M^dag| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: &'static str },

    #[error("expected a state with subsystem dimensions {expected:?}, got {got:?}")]
    WrongSubsystemDims { expected: Vec<usize>, got: Vec<usize> },

    #[error("density matrix invariant violated: {check} (deviation {deviation:.3e})")]
    StateInvariant { check: &'static str, deviation: f64 },

    #[error("parameter {name} out of range (got {value})")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("Bloch vector has zero (or non-finite) norm")]
    ZeroBlochVector,

    #[error("gamma function domain error: x = {x} (requires x > 0)")]
    GammaDomain { x: f64 },

    #[error("integration interval is invalid: [{a}, {b}]")]
    BadInterval { a: f64, b: f64 },

    #[error("integrand is non-finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("quadrature did not converge within the subdivision cap (best estimate {best:.12e})")]
    QuadratureNoConvergence { best: f64 },

    #[error("eigensolver did not converge (off-diagonal norm {off_diagonal:.3e})")]
    EigenNoConvergence { off_diagonal: f64 },

    #[error("grid too short ({len} points, need at least {min})")]
    GridTooShort { len: usize, min: usize },

    #[error("grid is not strictly increasing at index {index}")]
    GridNotIncreasing { index: usize },

    #[error("grid is not uniform at index {index}")]
    GridNotUniform { index: usize },

    #[error("sample count {values} does not match grid length {times}")]
    SampleCountMismatch { times: usize, values: usize },

    #[error("index {index} out of range for trajectory of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("intermediate map is singular at step {index} (|denominator| = {magnitude:.3e})")]
    SingularIntermediateMap { index: usize, magnitude: f64 },

    #[error("Volterra step size too coarse (half-step disagreement {disagreement:.3e} > {tolerance:.1e})")]
    VolterraStepTooCoarse { disagreement: f64, tolerance: f64 },

    #[error("malformed trajectory CSV at line {line}: {reason}")]
    CsvFormat { line: usize, reason: String },
}

impl Error {
    /// True for failures of a numerical procedure (as opposed to invalid
    /// inputs or violated preconditions). The CLI maps these to a distinct
    /// exit code.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureNoConvergence { .. }
                | Error::EigenNoConvergence { .. }
                | Error::VolterraStepTooCoarse { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
