use thiserror::Error;

/// Errors raised while building algebras, complexes and dg structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("not artinian: variable {variable} has no pure-power leading term")]
    NotArtinian { variable: String },

    #[error("not local: variable {variable} is not nilpotent")]
    NotLocal { variable: String },

    #[error("augmentation undefined: ideal generator {generator} has a nonzero constant term")]
    AugmentationUndefined { generator: String },

    #[error("resource limit: Groebner basis exceeded {limit} elements")]
    ResourceLimit { limit: usize },

    #[error("no preimage: target is not in the image of the map")]
    NoPreimage,

    #[error("fM != 0: f does not annihilate the module")]
    NotAnnihilated,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("out of truncation: i + n = {} exceeds degree {degree}", i + n)]
    OutOfTruncation { i: usize, n: usize, degree: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code: 1 for a failed guaranteed identity, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
