use thiserror::Error;

/// Error type shared by all modules of the crate.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("requested derivative order {requested} exceeds the provider's max order {max}")]
    OrderExceeded { requested: usize, max: usize },

    #[error("evaluation at t = {0} is outside the operator's domain")]
    DomainPoint(f64),

    #[error("support [{a}, {b}] violates the constraint [{lo}, {hi}]")]
    SupportConstraint { a: f64, b: f64, lo: f64, hi: f64 },

    #[error("moment {index} is {value:.3e} (normalized), exceeding {tol:.3e}: profile is not in the image of D^{order}")]
    NotInDPowerImage {
        index: usize,
        value: f64,
        tol: f64,
        order: usize,
    },

    #[error("moment {index} is {value:.3e} (normalized), exceeding {tol:.3e}: profile is not in the kernel of the backprojection")]
    NotInKernel { index: usize, value: f64, tol: f64 },

    #[error("calibration residual {residual:.3e} exceeds {tol:.3e}; upstream transform is inconsistent")]
    Calibration { residual: f64, tol: f64 },

    #[error("decomposition residual {residual:.3e} exceeds {tol:.3e}")]
    DecompositionFailure { residual: f64, tol: f64 },

    #[error("operand vanishes identically; the construction requires a nontrivial input")]
    DegenerateInput,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("dimension must be an odd integer >= 3, got {0}")]
    BadDimension(u32),

    #[error("harmonic index out of range: m = {m}, l = {l} (valid l: 1..={dm})")]
    HarmonicIndex { m: usize, l: usize, dm: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
