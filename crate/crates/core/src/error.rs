use thiserror::Error;

/// Errors produced by the parking-game library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    /// `car` is the 0-based index of the first car that could not park.
    #[error("not a parking function (car {} cannot park)", .car + 1)]
    NotAParkingFunction { car: usize },

    #[error("parking games are defined on n spots, got n = {n}, m = {m}")]
    SpotCountMismatch { n: usize, m: usize },

    #[error("resource limit exceeded for {what}: requires {required}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        required: u128,
        cap: u128,
    },

    #[error("division by zero")]
    DivisionByZero,

    #[error("car {} already belongs to the coalition", .car + 1)]
    CarInCoalition { car: usize },

    #[error("car index {car} out of range for {n} cars")]
    CarOutOfRange { car: usize, n: usize },

    #[error("operation requires a nonempty tuple")]
    EmptyTuple,

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("malformed linear program: {0}")]
    MalformedProgram(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
