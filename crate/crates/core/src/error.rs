use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus must be monic with integer coefficients")]
    NonMonic,
    #[error("modulus must have degree >= 1")]
    EmptyModulus,
    #[error("modulus coefficients must be integers")]
    NonIntegerModulus,
    #[error("operands belong to different rings")]
    MixedParents,
    #[error("element is a zero divisor (gcd with the modulus is nontrivial)")]
    ZeroDivisor,
    #[error("inverse of zero")]
    ZeroInput,
    #[error("operation requires an irreducible modulus (field case)")]
    RequiresField,
    #[error("operation is not defined over the rational function field")]
    FunctionFieldUnsupported,
    #[error("map is not a homothety")]
    NotHomothety,
    #[error("both maps must be homotheties")]
    NotTwoHomotheties,
    #[error("homotheties share a fixed point")]
    EqualFixedPoints,
    #[error("ratio of an affine map must be invertible")]
    NonInvertibleRatio,
    #[error("word letter {0} is out of range for {1} generators")]
    IndexOutOfRange(usize, usize),
    #[error("place does not belong to this ring")]
    PlaceRingMismatch,
    #[error("memory budget exhausted")]
    MemoryBudget,
    #[error("precision budget exhausted")]
    BudgetExhausted,
    #[error("trial-division bound exceeded while factoring a norm")]
    NormFactorizationBudget,
    #[error("no contraction exponent within the requested bound")]
    NotFoundWithinBound,
    #[error("degree budget exceeded")]
    DegreeBudget,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("element is a root of unity")]
    RootOfUnityInput,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
