use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Cg3Error {
    #[error("singular inverse: {context}")]
    SingularInverse { context: String },

    #[error("polynomial is not a simultaneous eigenvector of E11, E22, E33")]
    NotAWeightVector,

    #[error("the zero polynomial has no weight")]
    ZeroPolynomial,

    #[error("invalid Gelfand-Tsetlin diagram {0:?}")]
    InvalidDiagram([i64; 6]),

    #[error("invalid highest weight ({0}, {1}); need m1 >= m2 >= 0")]
    InvalidWeight(i64, i64),

    #[error("invalid highest-vector label: {0}")]
    InvalidLabel(String),

    #[error("invalid descent ({0}, {1}, {2}) for this label")]
    InvalidDescent(i64, i64, i64),

    #[error("split rejected: {0}")]
    RejectSplit(String),

    #[error("vector is not in the span of the product basis ({residual_terms} residual terms)")]
    NotInSpan { residual_terms: usize },

    #[error("product basis is rank deficient: rank {rank} of {size}")]
    RankDeficient { rank: usize, size: usize },

    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),

    #[error("restriction point must have nonzero coordinates")]
    ZeroCoordinate,

    #[error("unsupported Γ-series parameters: {0}")]
    UnsupportedGamma(String),
}

pub type Result<T> = std::result::Result<T, Cg3Error>;
