use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("singular spinor: Theta^2 + Phi^2 = {invariant:e} is not above the regularity threshold {threshold:e} (relative to |psi|^4)")]
    SingularSpinor { invariant: f64, threshold: f64 },

    #[error("plane wave {index} is off shell: p.p = {p_squared} but m^2 = {mass_squared}")]
    OffShell {
        index: usize,
        p_squared: f64,
        mass_squared: f64,
    },

    #[error("plane wave {index} momentum is not timelike and future pointing")]
    NotTimelike { index: usize },

    #[error("point {point:?} is outside the field domain (stencil margin included)")]
    OutOfDomain { point: [f64; 4] },

    #[error("{quantity} jumps by {jump} across the stencil along axis {axis}; the branch cannot be resolved")]
    PhaseJump {
        quantity: &'static str,
        axis: usize,
        jump: f64,
    },

    #[error("compact scalar X = {value:e} is too small to invert the momentum relation")]
    DegenerateX { value: f64 },

    #[error("inversion denominator 1 + zeta^2 + (zeta.s)^2 = {value:e} vanishes")]
    DegenerateInversion { value: f64 },

    #[error("trajectory seed is singular: {0}")]
    ImmediateSingularity(Box<Error>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
