use thiserror::Error;

use crate::lie::Weight;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("unsupported group `{0}`: expected A_r (r>=1), B_r/C_r (r>=2), D_r (r>=3), E6, E7, E8, F4 or G2")]
    UnsupportedGroup(String),

    #[error("Weyl group of {group} has order {order}, above the enumeration cap of {cap}")]
    WeylGroupTooLarge { group: String, order: u64, cap: u64 },

    #[error("expected a vector of length {expected}, found length {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("weight ({weight}) is not a level {level} weight")]
    NotLevelWeight { weight: Weight, level: u32 },

    #[error("weight ({0}) is not dominant")]
    NotDominant(Weight),

    #[error("torus point is not regular: |J(t)| = {abs_denominator:e}")]
    NonRegularPoint { abs_denominator: f64 },

    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    #[error("inconsistent value vector ({context}): residual {residual:e} exceeds {tolerance:e}")]
    Inconsistent { context: String, residual: f64, tolerance: f64 },

    #[error("degenerate normal weight ({weight}): t^weight = 1 at the evaluation point")]
    DegenerateWeight { weight: Weight },

    #[error("independent computations disagree: {0}")]
    RouteMismatch(String),

    #[error("invalid weight `{0}`: expected comma-separated integer Dynkin labels")]
    ParseWeight(String),
}

impl Error {
    /// Whether the error signals a mathematical consistency failure, as
    /// opposed to bad input or an exhausted resource.
    pub fn is_consistency_failure(&self) -> bool {
        matches!(
            self,
            Error::Inconsistent { .. } | Error::RouteMismatch(_) | Error::NonRegularPoint { .. }
        )
    }

    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::WeylGroupTooLarge { .. } | Error::CapExceeded(_))
    }
}
