use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid slope {p}/{q}: need q >= 1 and gcd(|p|, q) = 1")]
    InvalidSlope { p: i64, q: i64 },

    #[error("Dedekind sum s({p}, {q}) needs coprime arguments")]
    NotCoprime { p: i64, q: i64 },

    #[error("Dedekind sum needs a nonzero modulus")]
    DedekindZeroModulus,

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("missing Conway data (a1hat) for sublink {{{0}}}")]
    MissingConwayData(String),

    #[error("theta is not computable for sublink {{{0}}}: no component of it is unlinked from the rest, and no override was given")]
    UnsupportedTheta(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("first homology is infinite (det E = 0)")]
    ZeroOrderHomology,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("PD code error at crossing {crossing}: {message}")]
    Pd { crossing: usize, message: String },

    #[error("diagram has {found} crossings, above the configured bound of {bound}")]
    CrossingBound { found: usize, bound: usize },

    #[error("unknown builtin link {0:?}")]
    UnknownLink(String),
}

impl Error {
    /// True for errors that mean the input lies outside what the data or the
    /// implemented correction terms can evaluate.
    pub fn is_unsupported_data(&self) -> bool {
        matches!(self, Error::MissingConwayData(_) | Error::UnsupportedTheta(_))
    }
}
