use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("modulus must have degree at least 1")]
    ConstantModulus,
    #[error("polynomial {0} is not irreducible")]
    NotIrreducible(String),
    #[error("polynomial must be nonzero and non-constant")]
    NotFactorable,
    #[error("the modulus X is not allowed here")]
    ModulusIsX,
    #[error("degree {degree} exceeds the cap of {cap} for this operation")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("cycle count overflowed 128 bits")]
    CountOverflow,
    #[error("cycle length overflowed 64 bits")]
    LengthOverflow,
    #[error("operation requires a nonempty cycle type")]
    EmptyCycleType,
    #[error("matrix dimensions {0}x{1} and {2}x{3} are incompatible")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("operation requires a square matrix, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("matrix dimension {dim} exceeds the cap of {cap}")]
    MatrixTooLarge { dim: usize, cap: usize },
    #[error("{role} register is not periodic: its update function does not split off x0")]
    NotPeriodic { role: &'static str },
    #[error("transition function is not a single cycle of full length")]
    NotDeBruijn,
    #[error("update function is not linear")]
    NotLinear,
    #[error("map is not a permutation: state {witness} has two preimages")]
    NotAPermutation { witness: u64 },
    #[error("state space of {states} states exceeds the cap of {cap}")]
    StateCapExceeded { states: u128, cap: u128 },
    #[error("stage count {n} is out of range (1..={cap})")]
    StageCountOutOfRange { n: usize, cap: usize },
    #[error("multiplier exponent {l} is unsupported here: only 0 and powers of 2 have a closed form")]
    UnsupportedMultiplier { l: u64 },
    #[error("exponent {l} is not coprime to the map order {order}")]
    NotCoprime { l: u64, order: u128 },
    #[error("exponent {l} does not divide {divisor} as required")]
    DivisibilityViolated { l: u64, divisor: u128 },
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
