use thiserror::Error;

/// Errors raised by the numerical and modelling layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    #[error("{func} did not converge after {iterations} iterations")]
    NonConvergence { func: &'static str, iterations: usize },

    #[error("divergent integral: pole {pole:?} lies in the closure of the region and exponent {exponent} >= 2")]
    DivergentIntegral { pole: (f64, f64), exponent: f64 },

    #[error("tolerance not met: estimated error {estimate:e} exceeds requested {requested:e} after {subdivisions} subdivisions")]
    ToleranceNotMet {
        estimate: f64,
        requested: f64,
        subdivisions: usize,
    },

    #[error("no relays: relay density is zero, the signal Gamma fit is undefined")]
    DegenerateSignal,

    #[error("no jammers: jammer density is zero, the interference Gamma fit is undefined")]
    DegenerateJamming,

    #[error("probability {value} outside [0, 1] beyond the allowed slack")]
    Range { value: f64 },

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }

    /// Attach the name of the pipeline stage that produced this error.
    pub fn at(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Strip stage attribution and return the originating error.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    /// Whether the root cause is a configuration problem rather than a numerical one.
    pub fn is_config(&self) -> bool {
        matches!(self.root(), Error::Config(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
