use thiserror::Error;

/// Errors raised by the analysis engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the formula it feeds.
    #[error("{what} = {value} is outside its valid domain ({expected})")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// Section dimensions that cannot form a valid partition.
    #[error("inconsistent section geometry: {0}")]
    Geometry(String),

    /// A partition area came out negative.
    #[error("partition area {area} is negative ({value:.3} mm²)")]
    NegativeArea { area: &'static str, value: f64 },

    /// Missing or contradictory configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// A plasticity stage formula was called outside its stress range.
    #[error("{stage} step requested at Mises stress {mises:.3} MPa, outside [{lower:.3}, {upper:.3}] MPa")]
    Stage {
        stage: &'static str,
        mises: f64,
        lower: f64,
        upper: f64,
    },

    /// The plastic stiffness denominator vanished.
    #[error("singular plastic state (Q = {q:e}) at sigma_h = {sigma_h:.3} MPa, sigma_v = {sigma_v:.3} MPa")]
    SingularPlastic { q: f64, sigma_h: f64, sigma_v: f64 },

    /// A derived quantity cannot be evaluated from the supplied data.
    #[error("not computable: {0}")]
    NotComputable(String),

    /// Bisection could not bracket a root.
    #[error("root not bracketed on [{lower}, {upper}]: f(lower) = {f_lower}, f(upper) = {f_upper}")]
    Bracket {
        lower: f64,
        upper: f64,
        f_lower: f64,
        f_upper: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(what: &'static str, value: f64, expected: &'static str) -> Result<T> {
    Err(Error::Domain { what, value, expected })
}
