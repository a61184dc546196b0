use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CarlitzError {
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("precision cap {cap} reached: {what}")]
    PrecisionCap { cap: usize, what: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("rank deficient lattice: rank {rank} in dimension {dim}")]
    RankDeficient { rank: usize, dim: usize },
    #[error("torsion does not split: {0}")]
    Unsplit(String),
    #[error("trivial character has a pole: {0}")]
    Pole(String),
    #[error("non-rational value where a rational one is forced: {0}")]
    NonRational(String),
    #[error("group too large: |G| = {order} exceeds cap {cap}")]
    GroupCap { order: usize, cap: usize },
    #[error("L(chi, 0) vanishes for a nontrivial real character: {0}")]
    VanishingLValue(String),
}

pub type Result<T> = std::result::Result<T, CarlitzError>;
